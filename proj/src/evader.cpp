#include "losp/evader.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace losp {

namespace {

bool legal_move(const Polygon& q, Point from, Point to) {
    return dist(from, to) <= 1 && segment_inside(q, from, to);
}

// Indices of up to k legal candidates in decreasing score order.
std::vector<std::size_t> best_legal(const Polygon& q, Point e, const std::vector<Point>& c,
                                    const std::vector<double>& score, std::size_t k) {
    std::vector<std::size_t> idx(c.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });
    std::vector<std::size_t> out;
    for (std::size_t i : idx) {
        if (!legal_move(q, e, c[i])) continue;
        out.push_back(i);
        if (out.size() >= k) break;
    }
    return out;
}

// Forward progress of a point along the sweep, comparable within a game.
double sweep_progress(const Decomposition& dec, Point p) {
    SweepKey k = dec.key(p);
    return k.piece * 1e6 + k.local;
}

}  // namespace

std::vector<Point> candidate_targets(const EvaderView& view) {
    const Polygon& q = view.dec.polygon();
    Point e = view.evader, p = view.pursuer;
    std::vector<Point> out;
    out.reserve(64 * 8 + 64);
    for (int k = 0; k < 64; ++k) {
        double a = 2 * M_PI * k / 64;
        Point d{std::cos(a), std::sin(a)};
        for (int r = 8; r >= 1; --r) out.push_back(e + (r / 8.0) * d);
    }
    out.push_back(e);
    // just behind reflex vertices as seen from the pursuer
    for (std::size_t i = 0; i < q.size(); ++i) {
        Point v = q[i];
        if (!q.is_reflex(i) || dist(v, e) > 2) continue;
        Point away = unit(v - p);
        for (double s : {0.05, 0.3}) {
            for (double side : {-0.1, 0.0, 0.1}) {
                Point t = v + s * away + side * rot_ccw(away);
                if (dist(e, t) > 1) t = e + unit(t - e);
                out.push_back(t);
            }
        }
    }
    const Frame& f = view.strategy.active_frame();
    for (double s : {-1.0, -0.5, 0.5, 1.0}) out.push_back(e + s * f.horizontal);
    return out;
}

Lookahead simulate_response(const EvaderView& view, Point to) {
    const Polygon& q = view.dec.polygon();
    Pursuer copy = view.strategy;
    Lookahead r;
    r.pursuer = copy.respond(observe(q, view.pursuer, to));
    r.gambit = copy.last_step().gambit.kind;
    r.captured = capture_check(q, r.pursuer, to, view.rules);
    r.visible = segment_inside(q, r.pursuer, to);
    return r;
}

Point ZigzagPolicy::next(const EvaderView& view) {
    const Polygon& q = view.dec.polygon();
    Point e = view.evader;
    Point h = view.strategy.active_frame().horizontal;
    for (int attempt = 0; attempt < 2; ++attempt) {
        Point t = e + dir_ * h;
        if (legal_move(q, e, t)) return t;
        Point c = clip_segment(q, e, t);
        if (dist(e, c) >= 0.25) {
            Point back = lerp(e, c, 0.999);
            if (legal_move(q, e, back)) return back;
        }
        dir_ = -dir_;
    }
    return e;
}

Point GreedyDistancePolicy::next(const EvaderView& view) {
    auto c = candidate_targets(view);
    std::vector<double> score(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) score[i] = dist(view.pursuer, c[i]);
    auto best = best_legal(view.dec.polygon(), view.evader, c, score, 1);
    return best.empty() ? view.evader : c[best[0]];
}

Point HiderPolicy::next(const EvaderView& view) {
    const Polygon& q = view.dec.polygon();
    auto c = candidate_targets(view);
    std::vector<double> score(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        score[i] = dist(view.pursuer, c[i]) + (segment_inside(q, view.pursuer, c[i]) ? 0 : 100);
    auto top = best_legal(q, view.evader, c, score, 12);
    Point best = view.evader;
    double bs = -1e300;
    for (std::size_t i : top) {
        Lookahead l = simulate_response(view, c[i]);
        double s = (l.captured ? 0 : 1000) + (l.visible ? 0 : 200) + (l.gambit == GambitKind::HIDING ? 100 : 0) +
                   dist(l.pursuer, c[i]);
        if (s > bs) {
            bs = s;
            best = c[i];
        }
    }
    return best;
}

Point BlockerPolicy::next(const EvaderView& view) {
    const Polygon& q = view.dec.polygon();
    auto c = candidate_targets(view);
    std::vector<double> score(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) score[i] = dist(view.pursuer, c[i]);
    auto top = best_legal(q, view.evader, c, score, 16);
    Point best = view.evader;
    double bs = -1e300;
    for (std::size_t i : top) {
        Lookahead l = simulate_response(view, c[i]);
        double s = (l.captured ? 0 : 1000) + dist(l.pursuer, c[i]);
        if (l.gambit == GambitKind::BLOCKING || l.gambit == GambitKind::ESCAPE) s += 100;
        if (l.gambit == GambitKind::HIDING) s += 80;
        if (s > bs) {
            bs = s;
            best = c[i];
        }
    }
    return best;
}

Point EscaperPolicy::next(const EvaderView& view) {
    const Polygon& q = view.dec.polygon();
    auto c = candidate_targets(view);
    std::vector<double> score(c.size());
    double base = sweep_progress(view.dec, view.evader);
    for (std::size_t i = 0; i < c.size(); ++i)
        score[i] = std::clamp(sweep_progress(view.dec, c[i]) - base, -2.0, 2.0) + 0.5 * dist(view.pursuer, c[i]);
    auto top = best_legal(q, view.evader, c, score, 16);
    Point best = view.evader;
    double bs = -1e300;
    for (std::size_t i : top) {
        Lookahead l = simulate_response(view, c[i]);
        double s = (l.captured ? 0 : 1000) + score[i] + dist(l.pursuer, c[i]);
        if (l.gambit == GambitKind::ESCAPE) s += 100;
        else if (l.gambit != GambitKind::NONE) s += 50;
        if (s > bs) {
            bs = s;
            best = c[i];
        }
    }
    return best;
}

Point RandomPolicy::next(const EvaderView& view) {
    const Polygon& q = view.dec.polygon();
    std::uniform_real_distribution<double> ang(0, 2 * M_PI), rad(0, 1);
    for (int i = 0; i < 200; ++i) {
        double a = ang(rng_), r = std::sqrt(rad(rng_));
        Point t = view.evader + r * Point{std::cos(a), std::sin(a)};
        if (legal_move(q, view.evader, t)) return t;
    }
    return view.evader;
}

Point ScriptedPolicy::next(const EvaderView& view) {
    if (i_ >= moves_.size()) return view.evader;
    return moves_[i_++];
}

void ExternalPolicy::push(Point p) {
    {
        std::lock_guard<std::mutex> lk(mu_);
        queue_.push_back(p);
    }
    cv_.notify_one();
}

Point ExternalPolicy::next(const EvaderView&) {
    std::unique_lock<std::mutex> lk(mu_);
    cv_.wait(lk, [&] { return !queue_.empty(); });
    Point p = queue_.front();
    queue_.pop_front();
    return p;
}

std::vector<std::string> standard_policies() { return {"zigzag", "greedy", "hider", "blocker", "escaper", "random"}; }

std::unique_ptr<EvaderPolicy> make_policy(const std::string& name, std::uint64_t seed) {
    if (name == "zigzag") return std::make_unique<ZigzagPolicy>();
    if (name == "greedy") return std::make_unique<GreedyDistancePolicy>();
    if (name == "hider") return std::make_unique<HiderPolicy>();
    if (name == "blocker") return std::make_unique<BlockerPolicy>();
    if (name == "escaper") return std::make_unique<EscaperPolicy>();
    if (name == "random") return std::make_unique<RandomPolicy>(seed);
    throw std::invalid_argument("unknown evader policy: " + name);
}

}  // namespace losp
