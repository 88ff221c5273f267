#include "losp/engine.hpp"

#include <cmath>
#include <stdexcept>

#include "losp/evader.hpp"

namespace losp {

long default_max_turns(const Decomposition& dec) {
    double n = static_cast<double>(dec.polygon().size());
    double a = dec.polygon().area();
    double bound = dec.kind() == SweepKind::SWEEPABLE ? 64 * n * a : 64 * (n + a);
    return static_cast<long>(std::ceil(bound));
}

const char* violation_name(Violation v) {
    switch (v) {
        case Violation::NONE: return "NONE";
        case Violation::TOO_FAR: return "TOO_FAR";
        case Violation::EXITS_POLYGON: return "EXITS_POLYGON";
        case Violation::OUTSIDE: return "OUTSIDE";
    }
    return "?";
}

const char* actor_name(Actor a) { return a == Actor::EVADER ? "EVADER" : "PURSUER"; }

const char* phase_name(Phase p) {
    switch (p) {
        case Phase::EVADER_TO_MOVE: return "EVADER_TO_MOVE";
        case Phase::PURSUER_TO_MOVE: return "PURSUER_TO_MOVE";
        case Phase::CAPTURED: return "CAPTURED";
        case Phase::BOUND_EXCEEDED: return "BOUND_EXCEEDED";
    }
    return "?";
}

MoveCheck validate_move(const Polygon& q, Point from, Point to) {
    MoveCheck r;
    if (!contains(q, from) || !std::isfinite(to.x) || !std::isfinite(to.y)) {
        r.violation = Violation::OUTSIDE;
        return r;
    }
    if (dist(from, to) > 1 + kGeomEps) {
        r.violation = Violation::TOO_FAR;
        return r;
    }
    if (!segment_inside(q, from, to)) {
        r.violation = Violation::EXITS_POLYGON;
        r.obstruction = clip_segment(q, from, to);
    }
    return r;
}

Observation observe(const Polygon& q, Point pursuer, Point evader) {
    if (segment_inside(q, pursuer, evader)) return Observation::seen(evader);
    return Observation::hidden();
}

bool capture_check(const Polygon& q, Point pursuer, Point evader, const RuleConfig& cfg) {
    return dist(pursuer, evader) <= cfg.epsilon + kGeomEps && segment_inside(q, pursuer, evader);
}

Game::Game(const Decomposition& dec, Point evader_start, RuleConfig cfg)
    : dec_(&dec), cfg_(cfg), strategy_(dec, StrategyConfig{cfg.epsilon}), evader_(evader_start) {
    if (!(cfg.epsilon > 0 && cfg.epsilon <= 1)) throw std::invalid_argument("capture radius must lie in (0, 1]");
    if (!contains(dec.polygon(), evader_start)) throw std::invalid_argument("evader start lies outside the polygon");
    max_turns_ = cfg.max_turns > 0 ? cfg.max_turns : default_max_turns(dec);
    if (capture_check(dec.polygon(), strategy_.position(), evader_, cfg_)) {
        phase_ = Phase::CAPTURED;
        return;
    }
    strategy_.settle(observe(dec.polygon(), strategy_.position(), evader_));
}

MoveCheck Game::evader_move(Point to) {
    const Polygon& q = dec_->polygon();
    if (finished()) throw std::logic_error("game is over");
    MoveCheck mc = validate_move(q, evader_, to);
    if (!mc.ok()) return mc;
    ++turn_;
    TraceRecord er;
    er.turn = turn_;
    er.actor = Actor::EVADER;
    er.from = evader_;
    er.to = to;
    er.mode = strategy_.mode();
    er.frame = strategy_.headway();
    evader_ = to;
    Observation before = observe(q, strategy_.position(), evader_);
    er.visible = before.visible;
    records_.push_back(er);

    phase_ = Phase::PURSUER_TO_MOVE;
    Point from = strategy_.position();
    Point p = strategy_.respond(before);
    MoveCheck pc = validate_move(q, from, p);
    if (!pc.ok())
        throw std::logic_error(std::string("pursuer strategy produced an illegal move: ") + violation_name(pc.violation));
    Observation after = observe(q, p, evader_);
    const StepReport& rep = strategy_.last_step();
    TraceRecord pr;
    pr.turn = turn_;
    pr.actor = Actor::PURSUER;
    pr.from = from;
    pr.to = p;
    pr.mode = rep.mode;
    pr.gambit = rep.gambit.kind;
    pr.visible = after.visible;
    pr.advance = rep.advance;
    pr.frame = rep.frame;
    records_.push_back(pr);
    if (capture_check(q, p, evader_, cfg_)) {
        phase_ = Phase::CAPTURED;
        return mc;
    }
    strategy_.settle(after);
    phase_ = turn_ >= max_turns_ ? Phase::BOUND_EXCEEDED : Phase::EVADER_TO_MOVE;
    return mc;
}

void Game::play(EvaderPolicy& policy) {
    while (!finished()) {
        EvaderView view{*dec_, evader_, strategy_.position(), strategy_, turn_, cfg_};
        Point to = policy.next(view);
        MoveCheck mc = evader_move(to);
        if (!mc.ok())
            throw std::logic_error("evader policy " + policy.name() + " produced an illegal move: " +
                                   violation_name(mc.violation));
    }
}

}  // namespace losp
