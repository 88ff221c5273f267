#include "losp/search_path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace losp {

namespace {

constexpr double kTol = 1e-9;

struct BoundaryLoc {
    std::size_t edge;
    ChainPos pos;
};

std::optional<BoundaryLoc> locate_boundary(const Decomposition& dec, Point p, std::optional<std::size_t> hint = {}) {
    const Polygon& q = dec.polygon();
    if (hint) {
        Segment s = q.edge(*hint);
        if (dist_point_segment(p, s.a, s.b) <= 1e-7) return BoundaryLoc{*hint, dec.chain_pos(*hint, p)};
    }
    auto es = edges_containing(q, p);
    if (!es.empty()) return BoundaryLoc{es.front(), dec.chain_pos(es.front(), p)};
    double best = 1e-7;
    std::optional<BoundaryLoc> r;
    for (std::size_t i = 0; i < q.size(); ++i) {
        Segment s = q.edge(i);
        double d = dist_point_segment(p, s.a, s.b);
        if (d <= best) {
            best = d;
            r = BoundaryLoc{i, dec.chain_pos(i, p)};
        }
    }
    return r;
}

class Builder {
public:
    Builder(const Decomposition& dec, Point start, int frame) : dec_(dec), q_(dec.polygon()), p_(start), f_(frame) {
        path_.start_frame = frame;
        vn_ = q_[dec.last_vertex()];
    }

    void set_guard(Chain c, Point pt, double pos) {
        guard_[static_cast<int>(c)] = pt;
        guard_pos_[static_cast<int>(c)] = pos;
    }

    SearchPath run() {
        if (auto loc = locate_boundary(dec_, p_)) {
            set_guard(loc->pos.chain, p_, loc->pos.pos);
            if (loc->pos.pos <= kTol) set_guard(other(loc->pos.chain), p_, 0);
        }
        int cap = 8 * static_cast<int>(q_.size()) + 32;
        for (int it = 0; it < cap; ++it) {
            if (at_end()) return std::move(path_);
            int nf = std::max(f_, dec_.frame_at(p_));
            if (nf != f_) {
                f_ = nf;
                protect();
                if (at_end()) return std::move(path_);
            }
            step();
        }
        throw PathError("search path construction did not reach the last vertex");
    }

private:
    const Decomposition& dec_;
    const Polygon& q_;
    SearchPath path_;
    Point p_;
    int f_;
    Point vn_;
    std::optional<Point> guard_[2];
    double guard_pos_[2] = {0, 0};

    bool at_end() const { return dist(p_, vn_) <= kTol; }

    void add_arc(Point b, ArcKind kind, int edge = -1, int vertex = -1) {
        if (dist(p_, b) <= 0) return;
        PathArc arc;
        arc.a = p_;
        arc.b = b;
        arc.kind = kind;
        arc.frame = f_;
        arc.edge = edge;
        arc.vertex = vertex;
        const Frame& F = dec_.frame(f_);
        double xa = to_frame(F, p_).x, xb = to_frame(F, b).x;
        double lo = std::min(xa, xb), hi = std::max(xa, xb);
        for (Point v : q_.vertices()) {
            double x = to_frame(F, v).x;
            if (x > lo + kTol && x < hi - kTol) arc.stops.push_back(x);
        }
        std::sort(arc.stops.begin(), arc.stops.end());
        arc.stops.erase(std::unique(arc.stops.begin(), arc.stops.end()), arc.stops.end());
        path_.arcs.push_back(std::move(arc));
        p_ = b;
    }

    void mark(Point loc, Chain ch, double pos) {
        Checkpoint c;
        c.location = loc;
        c.kind = ch == dec_.lower_chain(dec_.frame(f_)) ? MarkKind::CHECKPOINT : MarkKind::AUXILIARY;
        c.frame = f_;
        c.arc = static_cast<int>(path_.arcs.size()) - 1;
        path_.checkpoints.push_back(c);
        if (!guard_[static_cast<int>(ch)] || pos >= guard_pos_[static_cast<int>(ch)]) set_guard(ch, loc, pos);
    }

    bool on_chain(Point p, Chain ch) const {
        auto loc = locate_boundary(dec_, p);
        if (!loc) return false;
        if (loc->pos.chain == ch) return true;
        for (std::size_t e : edges_containing(q_, p))
            if (dec_.chain_of_edge(e) == ch) return true;
        return false;
    }

    // Walk along chain ch from the current boundary point toward v_n while
    // the chain keeps rising (up) or falling (!up) in each vertex's frame.
    void walk(Chain ch, bool up, std::optional<std::size_t> edge_hint, bool force_step) {
        const auto& cv = dec_.chain_vertices(ch);
        auto loc = locate_boundary(dec_, p_, edge_hint);
        std::size_t cur;
        double pos = 0;
        if (loc && loc->pos.chain == ch) pos = loc->pos.pos;
        else if (auto l2 = dec_.boundary_pos(p_, ch); l2 && l2->chain == ch) pos = l2->pos;
        else throw PathError("walk start is not on the requested chain");
        std::size_t j = static_cast<std::size_t>(std::floor(pos + 1e-12));
        if (j + 1 >= cv.size()) j = cv.size() - 1;
        bool moved = false;
        if (dist(p_, q_[cv[j]]) <= kTol) {
            cur = j;
        } else if (j + 1 < cv.size() && dist(p_, q_[cv[j + 1]]) <= kTol) {
            cur = j + 1;
        } else {
            cur = j + 1;
            if (!chain_arc(ch, cur)) return;
            moved = true;
        }
        while (cv[cur] != dec_.last_vertex()) {
            if (moved && dec_.frame_at(p_) > f_) return;
            Point w = q_[cv[cur]];
            Point nx = q_[cv[cur + 1]];
            const Frame& fw = dec_.frame(std::max(f_, dec_.frame_at(w)));
            double d = dot(nx - w, fw.vertical);
            bool go = up ? d > 0 : d < 0;
            if (!go && !(force_step && !moved)) break;
            ++cur;
            if (!chain_arc(ch, cur)) return;
            moved = true;
        }
    }

    // Chain arc to vertex ordinal `cur`, cut where it enters the next frame.
    // Returns false when cut.
    bool chain_arc(Chain ch, std::size_t cur) {
        const auto& cv = dec_.chain_vertices(ch);
        Point nx = q_[cv[cur]];
        if (auto x = next_start_crossing(p_, nx)) {
            add_arc(*x, ArcKind::CHAIN, edge_of(ch, cur - 1));
            return false;
        }
        add_arc(nx, ArcKind::CHAIN, edge_of(ch, cur - 1), cv[cur]);
        mark(nx, ch, static_cast<double>(cur));
        return true;
    }

    // Point strictly inside ab where it crosses the start line of frame f+1.
    std::optional<Point> next_start_crossing(Point a, Point b) const {
        if (f_ + 1 >= dec_.frame_count()) return std::nullopt;
        Point sp, sd;
        if (!dec_.start_line(f_ + 1, sp, sd)) return std::nullopt;
        Point dir = b - a;
        double len = norm(dir);
        if (len <= kTol) return std::nullopt;
        auto x = line_intersection(a, dir, sp, sd);
        if (!x) return std::nullopt;
        double t = dot(*x - a, dir) / len;
        if (t <= kTol || t >= len - kTol) return std::nullopt;
        const Frame& nf = dec_.frame(f_ + 1);
        if (nf.kind == FrameKind::SPOKE && dot(*x - sp, sd) <= 0) return std::nullopt;
        if (dec_.past_start(f_ + 1, a)) return std::nullopt;
        return pull_inside(q_, a, *x);
    }

    int edge_of(Chain ch, std::size_t ordinal) const {
        const auto& cv = dec_.chain_vertices(ch);
        int a = cv[ordinal];
        int b = cv[ordinal + 1];
        return ch == Chain::A ? a : b;
    }

    void step() {
        const Frame& F = dec_.frame(f_);
        Chain lower = dec_.lower_chain(F);
        Point dir = F.horizontal;
        auto hit = try_first_boundary_hit(q_, p_, dir);
        // a boundary start whose ray leaves at once (possibly hidden by rounding)
        if (hit && !contains(q_, lerp(p_, hit->point, std::min(0.5, 1e-3 / std::max(hit->t, 1e-300)))) &&
            locate_boundary(dec_, p_))
            hit.reset();
        if (!hit) {
            auto loc = locate_boundary(dec_, p_);
            if (!loc) throw PathError("horizontal ray leaves the polygon from an interior point");
            Chain ch = loc->pos.chain;
            if (on_chain(p_, Chain::A) && on_chain(p_, Chain::B)) {
                // shared endpoint: a falling upper chain blocks, otherwise the lower one rises
                Chain up = other(lower);
                const auto& cv = dec_.chain_vertices(up);
                std::size_t j = 0;
                while (j + 1 < cv.size() && dist(q_[cv[j]], p_) > kTol) ++j;
                bool falls = j + 1 < cv.size() && dot(q_[cv[j + 1]] - p_, F.vertical) < 0;
                ch = falls ? up : lower;
                walk(ch, ch == lower, std::nullopt, true);
                return;
            }
            walk(ch, ch == lower, loc->edge, true);
            return;
        }
        if (f_ + 1 < dec_.frame_count()) {
            Point sp, sd;
            if (dec_.start_line(f_ + 1, sp, sd)) {
                auto x = line_intersection(p_, dir, sp, sd);
                if (x) {
                    double t = dot(*x - p_, dir);
                    const Frame& nf = dec_.frame(f_ + 1);
                    bool half_ok = nf.kind != FrameKind::SPOKE || dot(*x - sp, sd) > 0;
                    if (t > kTol && t < hit->t - kTol && half_ok) {
                        add_arc(*x, ArcKind::HORIZONTAL);
                        f_ = std::max(f_ + 1, dec_.frame_at(p_));
                        protect();
                        return;
                    }
                }
            }
        }
        int hv = -1;
        for (std::size_t i = 0; i < q_.size(); ++i)
            if (dist(hit->point, q_[i]) <= kTol) hv = static_cast<int>(i);
        Point target = hv >= 0 ? q_[hv] : hit->point;
        add_arc(target, ArcKind::HORIZONTAL, static_cast<int>(hit->edge), hv);
        if (at_end()) return;
        Chain ch = dec_.chain_of_edge(hit->edge);
        ChainPos cp = dec_.chain_pos(hit->edge, p_);
        mark(p_, ch, cp.pos);
        walk(ch, ch == lower, hit->edge, false);
    }

    // Move down the current vertical until the leftward horizontal line
    // protects the last guarded point on the lower chain.
    void protect() {
        const Frame& F = dec_.frame(f_);
        Chain low = dec_.lower_chain(F);
        if (on_chain(p_, low)) {
            auto loc = dec_.boundary_pos(p_, low);
            if (loc && loc->chain == low) set_guard(low, p_, loc->pos);
            return;
        }
        const auto& cv = dec_.chain_vertices(low);
        double hstar = -std::numeric_limits<double>::infinity();
        Point wstar{};
        bool have = false;
        std::size_t from = 0;
        if (guard_[static_cast<int>(low)]) {
            Point g = *guard_[static_cast<int>(low)];
            hstar = to_frame(F, g).y;
            wstar = g;
            have = true;
            from = static_cast<std::size_t>(std::ceil(guard_pos_[static_cast<int>(low)] - 1e-12));
        }
        SweepKey kp = dec_.key(p_);
        for (std::size_t j = from; j < cv.size(); ++j) {
            Point w = q_[cv[j]];
            SweepKey kw = dec_.key(w);
            if (kp < kw) break;
            double y = to_frame(F, w).y;
            if (!have || y >= hstar) {
                hstar = y;
                wstar = w;
                have = true;
            }
        }
        if (!have) return;
        double yp = to_frame(F, p_).y;
        double need = yp - hstar;
        if (need <= kTol) return;
        auto hit = try_first_boundary_hit(q_, p_, -1.0 * F.vertical);
        if (!hit) return;
        if (hit->t <= need + kTol) {
            add_arc(hit->point, ArcKind::DESCENT, static_cast<int>(hit->edge));
            Chain ch = dec_.chain_of_edge(hit->edge);
            mark(p_, ch, dec_.chain_pos(hit->edge, p_).pos);
            return;
        }
        Point target = p_ - need * F.vertical;
        add_arc(target, ArcKind::DESCENT);
        if (segment_inside(q_, target, wstar)) {
            auto loc = dec_.boundary_pos(wstar, low);
            if (loc && loc->chain == low) mark(wstar, low, loc->pos);
        }
    }
};

}  // namespace

std::vector<Point> SearchPath::polyline() const {
    std::vector<Point> out;
    if (arcs.empty()) return out;
    out.push_back(arcs.front().a);
    for (const auto& a : arcs) out.push_back(a.b);
    return out;
}

double SearchPath::length() const {
    double s = 0;
    for (const auto& a : arcs) s += dist(a.a, a.b);
    return s;
}

SearchPath build_search_path(const Decomposition& dec, Point start, int frame, std::optional<Point> guarded) {
    if (!contains(dec.polygon(), start)) throw PathError("search path start lies outside the polygon");
    if (frame < 0 || frame >= dec.frame_count()) throw PathError("search path frame out of range");
    Builder b(dec, start, frame);
    if (guarded) {
        auto loc = dec.boundary_pos(*guarded);
        if (loc) b.set_guard(loc->chain, *guarded, loc->pos);
    }
    return b.run();
}

SearchPath build_monotone_path(const Decomposition& dec, Point start) {
    if (dec.kind() != SweepKind::MONOTONE) throw PathError("monotone path requires a monotone annotation");
    return build_search_path(dec, start, 0);
}

SearchPath build_scallop_path(const Decomposition& dec, Point start) {
    if (dec.kind() != SweepKind::SCALLOP) throw PathError("scallop path requires a scallop annotation");
    return build_search_path(dec, start, dec.frame_at(start));
}

SearchPath build_sweepable_path(const Decomposition& dec, Point start) {
    return build_search_path(dec, start, dec.frame_at(start));
}

Chord horizontal_chord(const Polygon& q, const Frame& frame, Point p) {
    Chord c;
    c.left = c.right = p;
    if (auto h = try_first_boundary_hit(q, p, -1.0 * frame.horizontal)) {
        c.left = h->point;
        c.left_edge = static_cast<int>(h->edge);
    } else if (auto es = edges_containing(q, p); !es.empty()) {
        c.left_edge = static_cast<int>(es.front());
    }
    if (auto h = try_first_boundary_hit(q, p, frame.horizontal)) {
        c.right = h->point;
        c.right_edge = static_cast<int>(h->edge);
    } else if (auto es = edges_containing(q, p); !es.empty()) {
        c.right_edge = static_cast<int>(es.front());
    }
    return c;
}

double next_vertex_abscissa(const Polygon& q, const Frame& frame, double x) {
    double best = std::numeric_limits<double>::infinity();
    for (Point v : q.vertices()) {
        double vx = to_frame(frame, v).x;
        if (vx > x + 1e-7 * std::max(1.0, std::abs(x)) && vx < best) best = vx;
    }
    return best;
}

namespace {

double edge_param(const Polygon& q, std::size_t e, Point p) {
    Segment s = q.edge(e);
    Point d = s.b - s.a;
    double dd = dot(d, d);
    return dd > 0 ? dot(p - s.a, d) / dd : 0;
}

// Boundary walk counter-clockwise from u (on edge eu) to w (on edge ew).
std::vector<Point> boundary_walk(const Polygon& q, Point u, std::size_t eu, Point w, std::size_t ew,
                                 std::vector<int>& verts) {
    std::vector<Point> out{u};
    verts.clear();
    if (eu == ew && edge_param(q, eu, u) <= edge_param(q, ew, w)) {
        out.push_back(w);
        return out;
    }
    std::size_t i = eu;
    for (std::size_t k = 0; k <= q.size(); ++k) {
        std::size_t v = q.next(i);
        out.push_back(q[v]);
        verts.push_back(static_cast<int>(v));
        if (v == ew) break;
        i = v;
    }
    out.push_back(w);
    return out;
}

}  // namespace

GuardedFrontier guarded_frontier(const Decomposition& dec, const Frame& frame, Point pursuer) {
    const Polygon& q = dec.polygon();
    GuardedFrontier g;
    Point c = pursuer;
    std::optional<std::size_t> ce;
    if (auto loc = locate_boundary(dec, pursuer)) {
        ce = loc->edge;
    } else if (auto h = try_first_boundary_hit(q, pursuer, -1.0 * frame.horizontal)) {
        c = h->point;
        ce = h->edge;
    }
    Point a = c;
    std::optional<std::size_t> ae = ce;
    for (std::size_t k = 0; k < q.size(); ++k) {
        auto nx = try_first_boundary_hit(q, a, -1.0 * frame.horizontal);
        if (!nx || !contains(q, lerp(a, nx->point, 0.5))) break;
        a = nx->point;
        ae = nx->edge;
    }
    g.frontier = {a, c};
    g.checkpoint.location = c;
    g.checkpoint.frame = frame.index;
    g.checkpoint.kind = MarkKind::CHECKPOINT;
    if (ce) {
        Chain ch = dec.chain_of_edge(*ce);
        if (ch != dec.lower_chain(frame)) g.checkpoint.kind = MarkKind::AUXILIARY;
    }
    double total = q.area();
    if (!ce || !ae || dist(a, c) <= kTol) {
        g.pursuer_side = {c};
        g.evader_area = total;
        g.pursuer_area = 0;
        return g;
    }
    std::vector<int> v1, v2;
    auto side1 = boundary_walk(q, c, *ce, a, *ae, v1);
    auto side2 = boundary_walk(q, a, *ae, c, *ce, v2);
    int vn = dec.last_vertex();
    bool in1 = std::find(v1.begin(), v1.end(), vn) != v1.end();
    bool in2 = std::find(v2.begin(), v2.end(), vn) != v2.end();
    double a1 = std::abs(signed_area(side1)), a2 = std::abs(signed_area(side2));
    if (in1 && !in2) {
        g.evader_area = a1;
        g.pursuer_side = side2;
    } else if (in2 && !in1) {
        g.evader_area = a2;
        g.pursuer_side = side1;
    } else {
        g.evader_area = 0;
        g.pursuer_side = q.vertices();
    }
    g.pursuer_area = total - g.evader_area;
    return g;
}

}  // namespace losp
