#pragma once

#include <optional>
#include <vector>

#include "losp/geom.hpp"
#include "losp/sweep.hpp"

namespace losp {

enum class ArcKind { HORIZONTAL, CHAIN, DESCENT };

struct PathArc {
    Point a;
    Point b;
    ArcKind kind = ArcKind::HORIZONTAL;
    int frame = 0;
    int edge = -1;    // boundary edge that ended a horizontal arc, or the edge walked
    int vertex = -1;  // polygon vertex at b, when b is a vertex
    // vertex abscissae (in the arc's frame) strictly inside the arc's x-range
    std::vector<double> stops;
};

enum class MarkKind { CHECKPOINT, AUXILIARY };

struct Checkpoint {
    Point location;
    MarkKind kind = MarkKind::CHECKPOINT;
    int frame = 0;
    int arc = -1;  // established once the pursuer reaches the end of this arc
};

struct SearchPath {
    std::vector<PathArc> arcs;
    std::vector<Checkpoint> checkpoints;
    int start_frame = 0;

    bool empty() const { return arcs.empty(); }
    std::vector<Point> polyline() const;
    double length() const;
    int end_frame() const { return arcs.empty() ? start_frame : arcs.back().frame; }
};

class PathError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// General builder: horizontal moves in the current frame, chain climbs and
// descents, and protective descents whenever a new frame is adopted. The
// optional `guarded` point is the last guarded lower-chain point before start.
SearchPath build_search_path(const Decomposition& dec, Point start, int frame,
                             std::optional<Point> guarded = std::nullopt);

// Single-family entry points; each checks the annotation kind.
SearchPath build_monotone_path(const Decomposition& dec, Point start);
SearchPath build_scallop_path(const Decomposition& dec, Point start);
SearchPath build_sweepable_path(const Decomposition& dec, Point start);

struct GuardedFrontier {
    Segment frontier;  // from the far endpoint to the checkpoint
    Checkpoint checkpoint;
    std::vector<Point> pursuer_side;  // boundary of the pursuer territory
    double evader_area = 0;
    double pursuer_area = 0;
};

GuardedFrontier guarded_frontier(const Decomposition& dec, const Frame& frame, Point pursuer);

// Maximal chord of q along the frame's horizontal through p.
struct Chord {
    Point left;
    Point right;
    int left_edge = -1;
    int right_edge = -1;
};
Chord horizontal_chord(const Polygon& q, const Frame& frame, Point p);

// Smallest vertex abscissa in the frame strictly greater than x (+inf when none).
double next_vertex_abscissa(const Polygon& q, const Frame& frame, double x);

}  // namespace losp
