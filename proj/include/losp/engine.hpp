#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "losp/geom.hpp"
#include "losp/strategy.hpp"
#include "losp/sweep.hpp"

namespace losp {

struct RuleConfig {
    double epsilon = 1.0;  // capture radius, 0 < epsilon <= 1
    long max_turns = 0;    // 0 selects the default bound
};

// 64 (n + area) for monotone and scallop polygons, 64 n area for sweepable ones.
long default_max_turns(const Decomposition& dec);

enum class Violation { NONE, TOO_FAR, EXITS_POLYGON, OUTSIDE };
const char* violation_name(Violation v);

struct MoveCheck {
    Violation violation = Violation::NONE;
    std::optional<Point> obstruction;  // first point where the move leaves the polygon
    bool ok() const { return violation == Violation::NONE; }
};

MoveCheck validate_move(const Polygon& q, Point from, Point to);
Observation observe(const Polygon& q, Point pursuer, Point evader);
bool capture_check(const Polygon& q, Point pursuer, Point evader, const RuleConfig& cfg);

enum class Actor { EVADER, PURSUER };
enum class Phase { EVADER_TO_MOVE, PURSUER_TO_MOVE, CAPTURED, BOUND_EXCEEDED };
const char* actor_name(Actor a);
const char* phase_name(Phase p);

struct TraceRecord {
    long turn = 0;
    Actor actor = Actor::EVADER;
    Point from;
    Point to;
    Mode mode = Mode::SEARCH;
    GambitKind gambit = GambitKind::NONE;
    bool visible = false;  // evader visible from the pursuer after this move
    double advance = 0;    // rook frontier advance (pursuer records)
    int frame = 0;         // headway after this move
};

class EvaderPolicy;

// One game: evader moves first each round, the pursuer answers, capture is
// checked after the pursuer's move.
class Game {
public:
    Game(const Decomposition& dec, Point evader_start, RuleConfig cfg = {});

    const Decomposition& decomposition() const { return *dec_; }
    const RuleConfig& config() const { return cfg_; }
    Phase phase() const { return phase_; }
    bool finished() const { return phase_ == Phase::CAPTURED || phase_ == Phase::BOUND_EXCEEDED; }
    long turn() const { return turn_; }
    long max_turns() const { return max_turns_; }
    Point pursuer() const { return strategy_.position(); }
    Point evader() const { return evader_; }
    const Pursuer& strategy() const { return strategy_; }
    const std::vector<TraceRecord>& records() const { return records_; }

    // Applies a legal evader move and the pursuer's answer. Illegal moves
    // change nothing and are reported.
    MoveCheck evader_move(Point to);
    // Runs the policy until the game ends.
    void play(EvaderPolicy& policy);

private:
    const Decomposition* dec_;
    RuleConfig cfg_;
    long max_turns_;
    Pursuer strategy_;
    Point evader_;
    long turn_ = 0;
    Phase phase_ = Phase::EVADER_TO_MOVE;
    std::vector<TraceRecord> records_;
};

}  // namespace losp
