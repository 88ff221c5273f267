#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "losp/geom.hpp"

namespace losp {

enum class SweepKind { MONOTONE, SCALLOP, SWEEPABLE };

struct PieceAnnotation {
    SweepKind kind = SweepKind::MONOTONE;  // MONOTONE or SCALLOP
    Point axis{1, 0};
    Point center{0, 0};
    bool clockwise = true;  // scallop rotation sense
    // Optional sweep-order positions [first, last]; validated when present.
    int first = -1;
    int last = -1;
};

struct SweepAnnotation {
    SweepKind kind = SweepKind::MONOTONE;
    Point axis{1, 0};
    Point center{0, 0};
    std::vector<PieceAnnotation> pieces;

    static SweepAnnotation monotone(Point axis) { return {SweepKind::MONOTONE, axis, {}, {}}; }
    static SweepAnnotation scallop(Point center) { return {SweepKind::SCALLOP, {1, 0}, center, {}}; }
    static SweepAnnotation sweepable(std::vector<PieceAnnotation> p) {
        return {SweepKind::SWEEPABLE, {1, 0}, {}, std::move(p)};
    }
};

class SweepError : public std::runtime_error {
public:
    SweepError(const std::string& what, int vertex = -1) : std::runtime_error(what), vertex_(vertex) {}
    int vertex() const { return vertex_; }

private:
    int vertex_;
};

enum class FrameKind { MONOTONE, SPOKE, TILTED };

// Local coordinates: x along `horizontal` (the sweep direction), y along
// `vertical` ("up"). Mirrored frames have horizontal = vertical rotated +90.
struct Frame {
    FrameKind kind = FrameKind::MONOTONE;
    Point origin{0, 0};
    Point vertical{0, 1};
    Point horizontal{1, 0};
    int index = 0;    // position in the frame sequence (headway)
    int piece = 0;
    int vertex = -1;  // polygon vertex for spoke frames
    bool mirrored = false;

    static Frame make(FrameKind kind, Point origin, Point vertical, bool mirrored);
    // Frame sharing handedness with `like`, with the given vertical.
    static Frame tilted(const Frame& like, Point origin, Point vertical);
};

Point to_frame(const Frame& f, Point world);
Point from_frame(const Frame& f, Point local);
// Direction vectors (no origin shift).
Point dir_to_frame(const Frame& f, Point world_dir);
Point dir_from_frame(const Frame& f, Point local_dir);

enum class Chain { A = 0, B = 1 };  // A: counter-clockwise from v1 to vn
inline Chain other(Chain c) { return c == Chain::A ? Chain::B : Chain::A; }

struct ChainPos {
    Chain chain = Chain::A;
    double pos = 0;  // edge ordinal along the chain plus fractional position
};

struct PieceInfo {
    SweepKind kind = SweepKind::MONOTONE;
    Point axis{1, 0};
    Point center{0, 0};
    bool clockwise = true;
    Point ref{1, 0};  // reference ray for polar angles
    int first_frame = 0;
    int last_frame = 0;
    int first = 0;  // sweep-order positions
    int last = 0;
    // transition line at the end of this piece (absent for the last piece)
    bool has_exit = false;
    Point exit_point;
    Point exit_dir;
    Point exit_ahead;  // normal pointing into the next piece
};

struct SweepKey {
    int piece = 0;
    double local = 0;
};
inline bool operator<(const SweepKey& a, const SweepKey& b) {
    return a.piece != b.piece ? a.piece < b.piece : a.local < b.local;
}

class Decomposition {
public:
    Decomposition() = default;
    Decomposition(const Polygon& q, const SweepAnnotation& ann);

    const Polygon& polygon() const { return q_; }
    const SweepAnnotation& annotation() const { return ann_; }
    SweepKind kind() const { return ann_.kind; }
    const std::vector<Frame>& frames() const { return frames_; }
    const Frame& frame(int i) const { return frames_.at(i); }
    int frame_count() const { return static_cast<int>(frames_.size()); }
    const std::vector<PieceInfo>& pieces() const { return pieces_; }

    int first_vertex() const { return v1_; }
    int last_vertex() const { return vn_; }
    // polygon vertex indices in sweep order
    const std::vector<int>& sweep_order() const { return order_; }
    const std::vector<int>& chain_vertices(Chain c) const { return chains_[static_cast<int>(c)]; }

    Chain lower_chain(const Frame& f) const { return f.mirrored ? Chain::B : Chain::A; }
    Chain chain_of_edge(std::size_t e) const { return edge_chain_[e]; }
    // chains containing polygon vertex i (both for v1 and vn)
    bool vertex_on_chain(int i, Chain c) const;

    SweepKey key(Point p) const;
    int piece_of(Point p) const;
    // Frame whose region contains p (regions are delimited by start lines).
    int frame_at(Point p) const;
    // Whether p is at or past the start line of frame k.
    bool past_start(int k, Point p) const;
    // Start line of frame k (none for the first frame of the first piece).
    bool start_line(int k, Point& point, Point& dir) const;

    // Position along a chain of a boundary point on edge e.
    ChainPos chain_pos(std::size_t e, Point p) const;
    // Boundary point location; nullopt when p is not on the boundary.
    std::optional<ChainPos> boundary_pos(Point p, std::optional<Chain> prefer = std::nullopt) const;

    double polar_angle(int piece, Point p) const;

private:
    Polygon q_;
    SweepAnnotation ann_;
    std::vector<Frame> frames_;
    std::vector<PieceInfo> pieces_;
    int v1_ = 0, vn_ = 0;
    std::vector<int> order_;
    std::vector<int> chains_[2];
    std::vector<Chain> edge_chain_;
    std::vector<int> edge_ordinal_;
    std::vector<SweepKey> frame_start_;
    std::vector<bool> frame_has_start_;

    double local_param(int piece, Point p) const;
    void build_chains();
    void validate_chains();
    void build_frames();
};

struct MonotoneCheck {
    bool ok = false;
    int first = -1, last = -1;
    int violating_vertex = -1;
    std::string message;
};

MonotoneCheck verify_monotone(const Polygon& q, Point axis);
MonotoneCheck verify_scallop(const Polygon& q, Point center);
// Candidate monotone axis (unit), or nullopt when the polygon is not monotone.
std::optional<Point> auto_detect_monotone(const Polygon& q);

}  // namespace losp
