#pragma once

#include <memory>
#include <optional>
#include <string>

#include "losp/geom.hpp"
#include "losp/search_path.hpp"
#include "losp/sweep.hpp"

namespace losp {

enum class Mode { SEARCH, ROOK, CAUTIOUS_SEARCH };
enum class GambitKind { NONE, HIDING, BLOCKING, ESCAPE };

const char* mode_name(Mode m);
const char* gambit_name(GambitKind g);

// What the pursuer may know about the evader: the position only when seen.
struct Observation {
    bool visible = false;
    std::optional<Point> evader;

    static Observation hidden() { return {}; }
    static Observation seen(Point e) { return {true, e}; }
};

struct Gambit {
    GambitKind kind = GambitKind::NONE;
    Point point;      // obstruction point for BLOCKING/ESCAPE, hiding vertex for HIDING
    int vertex = -1;  // polygon vertex for HIDING
};

enum class RookClass { UPPER_POCKET, LOWER_POCKET, UPPER_CHUTE, LOWER_CHUTE };
const char* rook_class_name(RookClass c);

struct RookContext {
    double dx = 0;  // x(P) - x(E)
    double dy = 0;  // y(E) - y(P)
    RookClass cls = RookClass::UPPER_POCKET;
    bool left_offset = false;  // P left of E
};

// Pocket vs chute from the chains holding the endpoints of the horizontal
// chord through p; upper vs lower from the side of e, both in `frame`.
RookContext classify_rook_position(const Decomposition& dec, const Frame& frame, Point p, Point e);

struct StrategyConfig {
    double epsilon = 1.0;  // capture radius
};

struct StepReport {
    Mode mode = Mode::SEARCH;  // mode that produced the move
    Gambit gambit;
    int frame = 0;       // headway after the move
    double advance = 0;  // rook frontier advance of this move
    bool capture_move = false;
};

struct StrategyStats {
    int rook_entries = 0;
    int escapes = 0;
    int blockings = 0;
    int hidings = 0;
    int reverts = 0;
    int tilted_entries = 0;
    int invariant_breaks = 0;  // rook invariants lost without a gambit; new search started
    int hide_round_overruns = 0;
    int failsafe_sweeps = 0;
    int stray_slides = 0;  // evader seen more than 1/2 left of the pursuer during search
    int direct_approaches = 0;  // blocked rook move with no room to the obstruction
};

class Pursuer {
public:
    // Starts at the first vertex of the sweep, in search mode.
    explicit Pursuer(const Decomposition& dec, StrategyConfig cfg = {});

    Point position() const { return pos_; }
    Mode mode() const { return mode_; }
    int headway() const { return headway_; }
    const Decomposition& decomposition() const { return *dec_; }
    const Frame& active_frame() const;
    std::optional<Frame> secondary_frame() const;
    const SearchPath& path() const { return path_; }
    // Horizontal chord through the pursuer in the rook frame (rook mode only).
    std::optional<Segment> rook_frontier() const;
    GuardedFrontier guarded() const;
    const StepReport& last_step() const { return report_; }
    const StrategyStats& stats() const { return stats_; }

    // E_t as seen from P_{t-1}; returns P_t. The caller must then move the
    // pursuer there and call settle().
    Point respond(const Observation& obs);
    // E_t as seen from P_t: mode entries and rook invariant checks.
    void settle(const Observation& obs);

    // Put the pursuer at p in rook mode against a visible evader e, using
    // `frame` oriented so that e is above.
    void enter_rook(Point p, const Frame& frame, Point e);

private:
    const Decomposition* dec_;
    const Decomposition* original_ = nullptr;
    std::shared_ptr<const Decomposition> reversed_;
    StrategyConfig cfg_;
    Point pos_;
    Mode mode_ = Mode::SEARCH;
    int headway_ = 0;

    // search
    SearchPath path_;
    std::size_t arc_ = 0;
    std::size_t next_arc_ = 0;
    bool on_path_ = true;
    std::optional<Point> checkpoint_;  // last established lower-chain checkpoint

    // rook
    Frame rook_;
    Point seen_;  // last seen evader position
    bool seen_fresh_ = false;
    std::optional<Frame> prior_rook_;  // cautious search and hiding keep the old rook frame
    int hide_vertex_ = -1;
    int hide_rounds_ = 0;

    GambitKind pending_ = GambitKind::NONE;  // applied by settle()
    StepReport report_;
    StrategyStats stats_;

    const Polygon& q() const { return dec_->polygon(); }
    bool legal(Point a, Point b) const;
    Point toward(Point target, double reach = 1.0) const;

    void start_search(Point from, Mode m);
    void failsafe();
    const PathArc& arc() const { return path_.arcs[arc_]; }
    bool path_done() const { return path_.empty() || arc_ >= path_.arcs.size(); }
    void move_on_path(std::size_t next_arc);
    Point finish(Point from, Point target, bool was_rook, const Frame& before);
    bool scallop_here() const;
    int pick_hiding_vertex() const;

    Point search_step(const Observation& obs);
    Point advance_along_path(std::optional<double> limit);
    Point rook_step(const Observation& obs);
    Point hiding_step(const Observation& obs);
    Point engage(const Frame& base, Point e);
    Point gambit_move(Point intended, bool from_hidden, std::optional<Point> e = std::nullopt);

    std::optional<Point> highest_on_vertical(const Frame& r, double alpha, std::optional<Point> must_see,
                                             std::optional<double> cap = std::nullopt) const;
    Frame oriented(const Frame& base, Point e) const;
    bool try_rook_entry(const Frame& f, Point e);
    std::optional<Frame> spoke_frame_ahead() const;
};

}  // namespace losp
