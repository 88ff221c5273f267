#include "losp/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace losp {

Frame Frame::make(FrameKind kind, Point origin, Point vertical, bool mirrored) {
    Frame f;
    f.kind = kind;
    f.origin = origin;
    f.vertical = unit(vertical);
    f.horizontal = mirrored ? rot_ccw(f.vertical) : rot_cw(f.vertical);
    f.mirrored = mirrored;
    return f;
}

Frame Frame::tilted(const Frame& like, Point origin, Point vertical) {
    Frame f = make(FrameKind::TILTED, origin, vertical, like.mirrored);
    f.index = like.index;
    f.piece = like.piece;
    return f;
}

Point to_frame(const Frame& f, Point p) {
    Point d = p - f.origin;
    return {dot(d, f.horizontal), dot(d, f.vertical)};
}

Point from_frame(const Frame& f, Point l) { return f.origin + l.x * f.horizontal + l.y * f.vertical; }

Point dir_to_frame(const Frame& f, Point d) { return {dot(d, f.horizontal), dot(d, f.vertical)}; }

Point dir_from_frame(const Frame& f, Point l) { return l.x * f.horizontal + l.y * f.vertical; }

namespace {

// Chord of q on the line through p with direction d: [lo, hi] parameters.
bool chord_on_line(const Polygon& q, Point p, Point d, Point& mid) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t i = 0; i < q.size(); ++i) {
        Segment e = q.edge(i);
        Point ev = e.b - e.a;
        double den = cross(d, ev);
        if (std::abs(den) < 1e-300) continue;
        Point ap = e.a - p;
        double s = cross(ap, d) / den;
        if (s < -1e-12 || s > 1 + 1e-12) continue;
        double t = cross(ap, ev) / den;
        lo = std::min(lo, t);
        hi = std::max(hi, t);
    }
    if (!(lo <= hi)) return false;
    mid = p + (0.5 * (lo + hi)) * d;
    return true;
}

}  // namespace

Decomposition::Decomposition(const Polygon& q, const SweepAnnotation& ann) : q_(q), ann_(ann) {
    if (ann.kind == SweepKind::MONOTONE) {
        PieceInfo p;
        p.kind = SweepKind::MONOTONE;
        if (!(norm(ann.axis) > 0)) throw SweepError("monotone axis must be nonzero");
        p.axis = unit(ann.axis);
        p.first = p.last = -1;
        pieces_.push_back(p);
    } else if (ann.kind == SweepKind::SCALLOP) {
        PieceInfo p;
        p.kind = SweepKind::SCALLOP;
        p.center = ann.center;
        p.clockwise = true;
        p.first = p.last = -1;
        pieces_.push_back(p);
    } else {
        if (ann.pieces.empty()) throw SweepError("sweepable annotation has no pieces");
        for (const auto& pa : ann.pieces) {
            PieceInfo p;
            p.kind = pa.kind;
            if (pa.kind == SweepKind::SWEEPABLE) throw SweepError("nested sweepable piece");
            if (pa.kind == SweepKind::MONOTONE) {
                if (!(norm(pa.axis) > 0)) throw SweepError("monotone axis must be nonzero");
                p.axis = unit(pa.axis);
            }
            p.center = pa.center;
            p.clockwise = pa.clockwise;
            p.first = pa.first;
            p.last = pa.last;
            pieces_.push_back(p);
        }
    }

    // scallop centers must lie strictly outside
    for (std::size_t i = 0; i < pieces_.size(); ++i)
        if (pieces_[i].kind == SweepKind::SCALLOP && point_in_polygon(q_, pieces_[i].center) != Location::EXTERIOR)
            throw SweepError("scallop center must lie strictly outside the polygon");

    // transition lines
    int k = static_cast<int>(pieces_.size());
    std::vector<Point> chord_mid(k > 0 ? k - 1 : 0);
    for (int i = 0; i + 1 < k; ++i) {
        PieceInfo& a = pieces_[i];
        const PieceInfo& b = pieces_[i + 1];
        Point pt, dir;
        if (a.kind == SweepKind::MONOTONE && b.kind == SweepKind::MONOTONE)
            throw SweepError("adjacent monotone pieces must be merged");
        if (a.kind == SweepKind::MONOTONE) {
            pt = b.center;
            dir = rot_ccw(a.axis);
        } else if (b.kind == SweepKind::MONOTONE) {
            pt = a.center;
            dir = rot_ccw(b.axis);
        } else {
            if (dist(a.center, b.center) <= kGeomEps) throw SweepError("adjacent scallop pieces share a center");
            pt = a.center;
            dir = unit(b.center - a.center);
        }
        Point mid;
        if (!chord_on_line(q_, pt, dir, mid)) throw SweepError("transition line misses the polygon");
        chord_mid[i] = mid;
        a.has_exit = true;
        a.exit_point = pt;
        a.exit_dir = dir;
        Point ahead;
        if (a.kind == SweepKind::MONOTONE) {
            ahead = a.axis;
        } else {
            Point r = unit(mid - a.center);
            ahead = a.clockwise ? rot_cw(r) : rot_ccw(r);
        }
        // consistency with the next piece
        Point ahead_b;
        if (b.kind == SweepKind::MONOTONE) {
            ahead_b = b.axis;
        } else {
            Point r = unit(mid - b.center);
            ahead_b = b.clockwise ? rot_cw(r) : rot_ccw(r);
        }
        if (dot(ahead, ahead_b) <= 0)
            throw SweepError("pieces " + std::to_string(i) + " and " + std::to_string(i + 1) +
                             " sweep in opposite directions across their transition line");
        if (a.kind == SweepKind::MONOTONE && std::abs(dot(b.center - pt, a.axis)) > kGeomEps)
            throw SweepError("transition line does not pass through the scallop center");
        a.exit_ahead = ahead;
    }

    // polar reference rays
    for (int i = 0; i < k; ++i) {
        PieceInfo& p = pieces_[i];
        if (p.kind != SweepKind::SCALLOP) continue;
        bool has_in = i > 0, has_out = i + 1 < k;
        if (has_in && has_out) {
            Point rin = unit(chord_mid[i - 1] - p.center), rout = unit(chord_mid[i] - p.center);
            Point s = rin + rout;
            p.ref = norm(s) > 1e-12 ? unit(s) : rot_cw(rin);
        } else if (has_in) {
            p.ref = unit(chord_mid[i - 1] - p.center);
        } else if (has_out) {
            p.ref = unit(chord_mid[i] - p.center);
        } else {
            Point c{0, 0};
            for (Point v : q_.vertices()) c = c + v;
            c = c * (1.0 / static_cast<double>(q_.size()));
            p.ref = unit(c - p.center);
        }
    }

    // endpoints of the sweep
    v1_ = vn_ = 0;
    SweepKey kmin = key(q_[0]), kmax = kmin;
    for (std::size_t i = 1; i < q_.size(); ++i) {
        SweepKey kk = key(q_[i]);
        if (kk < kmin) {
            kmin = kk;
            v1_ = static_cast<int>(i);
        }
        if (kmax < kk) {
            kmax = kk;
            vn_ = static_cast<int>(i);
        }
    }
    if (v1_ == vn_) throw SweepError("degenerate sweep");
    build_chains();
    validate_chains();
    build_frames();
}

double Decomposition::polar_angle(int piece, Point p) const {
    const PieceInfo& pc = pieces_.at(piece);
    Point d = p - pc.center;
    return std::atan2(cross(pc.ref, d), dot(pc.ref, d));
}

double Decomposition::local_param(int piece, Point p) const {
    const PieceInfo& pc = pieces_.at(piece);
    if (pc.kind == SweepKind::MONOTONE) return dot(p, pc.axis);
    double th = polar_angle(piece, p);
    return pc.clockwise ? -th : th;
}

int Decomposition::piece_of(Point p) const {
    int i = 0;
    int k = static_cast<int>(pieces_.size());
    while (i + 1 < k && dot(p - pieces_[i].exit_point, pieces_[i].exit_ahead) >= -kGeomEps) ++i;
    return i;
}

SweepKey Decomposition::key(Point p) const {
    int i = piece_of(p);
    return {i, local_param(i, p)};
}

void Decomposition::build_chains() {
    int n = static_cast<int>(q_.size());
    chains_[0].clear();
    chains_[1].clear();
    for (int i = v1_;; i = (i + 1) % n) {
        chains_[0].push_back(i);
        if (i == vn_) break;
    }
    for (int i = v1_;; i = (i + n - 1) % n) {
        chains_[1].push_back(i);
        if (i == vn_) break;
    }
    edge_chain_.assign(n, Chain::A);
    edge_ordinal_.assign(n, 0);
    for (std::size_t j = 0; j + 1 < chains_[0].size(); ++j) {
        int e = chains_[0][j];
        edge_chain_[e] = Chain::A;
        edge_ordinal_[e] = static_cast<int>(j);
    }
    for (std::size_t j = 0; j + 1 < chains_[1].size(); ++j) {
        int e = chains_[1][j + 1];  // edge from vertex chains_[1][j+1] to chains_[1][j]
        edge_chain_[e] = Chain::B;
        edge_ordinal_[e] = static_cast<int>(j);
    }
    // sweep order: merge by key
    order_.clear();
    std::size_t ia = 1, ib = 1;
    order_.push_back(v1_);
    const auto& ca = chains_[0];
    const auto& cb = chains_[1];
    while (ia + 1 < ca.size() || ib + 1 < cb.size()) {
        bool take_a;
        if (ia + 1 >= ca.size()) take_a = false;
        else if (ib + 1 >= cb.size()) take_a = true;
        else {
            SweepKey ka = key(q_[ca[ia]]), kb = key(q_[cb[ib]]);
            if (ka < kb) take_a = true;
            else if (kb < ka) take_a = false;
            else take_a = ca[ia] < cb[ib];
        }
        if (take_a) order_.push_back(ca[ia++]);
        else order_.push_back(cb[ib++]);
    }
    order_.push_back(vn_);
}

void Decomposition::validate_chains() {
    for (int c = 0; c < 2; ++c) {
        const auto& ch = chains_[c];
        for (std::size_t j = 0; j + 1 < ch.size(); ++j) {
            SweepKey a = key(q_[ch[j]]), b = key(q_[ch[j + 1]]);
            bool bad = b.piece < a.piece || (a.piece == b.piece && b.local < a.local - 1e-12 * std::max(1.0, std::abs(a.local)));
            if (bad) {
                int prev = j > 0 ? ch[j - 1] : ch[j];
                throw SweepError("sweep order violated along chain at vertices " + std::to_string(prev) + "," +
                                     std::to_string(ch[j]) + "," + std::to_string(ch[j + 1]),
                                 ch[j + 1]);
            }
        }
    }
    int k = static_cast<int>(pieces_.size());
    std::vector<int> lo(k, -1), hi(k, -1);
    for (std::size_t j = 0; j < order_.size(); ++j) {
        int pc = piece_of(q_[order_[j]]);
        if (lo[pc] < 0) lo[pc] = static_cast<int>(j);
        hi[pc] = static_cast<int>(j);
    }
    for (int i = 0; i < k; ++i) {
        PieceInfo& p = pieces_[i];
        if (p.kind == SweepKind::SCALLOP) {
            if (lo[i] < 0) throw SweepError("scallop piece " + std::to_string(i) + " contains no vertex");
            double amin = std::numeric_limits<double>::infinity(), amax = -amin;
            for (int j = lo[i]; j <= hi[i]; ++j) {
                Point v = q_[order_[j]];
                if (dist(v, p.center) <= kGeomEps) throw SweepError("vertex coincides with scallop center", order_[j]);
                double th = polar_angle(i, v);
                amin = std::min(amin, th);
                amax = std::max(amax, th);
            }
            if (amax - amin >= M_PI) throw SweepError("scallop angular span must be below pi");
        }
        if (p.first >= 0 || p.last >= 0) {
            if (p.first != lo[i] || p.last != hi[i])
                throw SweepError("piece " + std::to_string(i) + " vertex range [" + std::to_string(p.first) + "," +
                                 std::to_string(p.last) + "] does not match geometry [" + std::to_string(lo[i]) +
                                 "," + std::to_string(hi[i]) + "]");
        }
        p.first = lo[i];
        p.last = hi[i];
    }
}

void Decomposition::build_frames() {
    frames_.clear();
    frame_start_.clear();
    frame_has_start_.clear();
    int k = static_cast<int>(pieces_.size());
    for (int i = 0; i < k; ++i) {
        PieceInfo& p = pieces_[i];
        p.first_frame = static_cast<int>(frames_.size());
        if (p.kind == SweepKind::MONOTONE) {
            Frame f = Frame::make(FrameKind::MONOTONE, {0, 0}, rot_ccw(p.axis), false);
            f.piece = i;
            frames_.push_back(f);
            frame_start_.push_back({i, -std::numeric_limits<double>::infinity()});
            frame_has_start_.push_back(i > 0);
        } else if (p.first >= 0) {
            for (int j = p.first; j <= p.last; ++j) {
                int v = order_[j];
                Frame f = Frame::make(FrameKind::SPOKE, p.center, q_[v] - p.center, !p.clockwise);
                f.piece = i;
                f.vertex = v;
                frames_.push_back(f);
                frame_start_.push_back({i, local_param(i, q_[v])});
                frame_has_start_.push_back(true);
            }
        }
        p.last_frame = static_cast<int>(frames_.size()) - 1;
    }
    for (std::size_t j = 0; j < frames_.size(); ++j) frames_[j].index = static_cast<int>(j);
}

bool Decomposition::vertex_on_chain(int i, Chain c) const {
    const auto& ch = chains_[static_cast<int>(c)];
    return std::find(ch.begin(), ch.end(), i) != ch.end();
}

int Decomposition::frame_at(Point p) const {
    SweepKey kp = key(p);
    int best = 0;
    for (int j = 0; j < frame_count(); ++j) {
        const SweepKey& s = frame_start_[j];
        bool past = s.piece < kp.piece || (s.piece == kp.piece && s.local <= kp.local + 1e-12);
        if (past) best = j;
    }
    return best;
}

bool Decomposition::past_start(int k, Point p) const {
    SweepKey kp = key(p);
    const SweepKey& s = frame_start_.at(k);
    return s.piece < kp.piece || (s.piece == kp.piece && s.local <= kp.local + 1e-12);
}

bool Decomposition::start_line(int k, Point& point, Point& dir) const {
    const Frame& f = frames_.at(k);
    if (f.kind == FrameKind::SPOKE) {
        point = f.origin;
        dir = f.vertical;
        return true;
    }
    if (!frame_has_start_[k]) return false;
    const PieceInfo& prev = pieces_.at(f.piece - 1);
    point = prev.exit_point;
    dir = prev.exit_dir;
    return true;
}

ChainPos Decomposition::chain_pos(std::size_t e, Point p) const {
    Chain c = edge_chain_[e];
    Segment s = q_.edge(e);
    Point start = c == Chain::A ? s.a : s.b;
    Point end = c == Chain::A ? s.b : s.a;
    double len = dist(start, end);
    double f = len > 0 ? std::clamp(dist(start, p) / len, 0.0, 1.0) : 0.0;
    (void)end;
    return {c, edge_ordinal_[e] + f};
}

std::optional<ChainPos> Decomposition::boundary_pos(Point p, std::optional<Chain> prefer) const {
    auto es = edges_containing(q_, p);
    if (es.empty()) {
        // computed boundary points may sit a rounding step off their edge
        double best = 1e-9 * std::max(1.0, std::max(std::abs(p.x), std::abs(p.y)));
        for (std::size_t i = 0; i < q_.size(); ++i) {
            Segment s = q_.edge(i);
            double d = dist_point_segment(p, s.a, s.b);
            if (d <= best) es.push_back(i);
        }
        if (es.empty()) return std::nullopt;
    }
    std::optional<ChainPos> first;
    for (std::size_t e : es) {
        ChainPos cp = chain_pos(e, p);
        if (!first) first = cp;
        if (prefer && cp.chain == *prefer) {
            // for a vertex shared by two edges of the chain, report the larger position
            if (!first || first->chain != *prefer || cp.pos > first->pos) first = cp;
        }
    }
    return first;
}

MonotoneCheck verify_monotone(const Polygon& q, Point axis) {
    MonotoneCheck r;
    try {
        Decomposition d(q, SweepAnnotation::monotone(axis));
        r.ok = true;
        r.first = d.first_vertex();
        r.last = d.last_vertex();
    } catch (const SweepError& e) {
        r.message = e.what();
        r.violating_vertex = e.vertex();
    }
    return r;
}

MonotoneCheck verify_scallop(const Polygon& q, Point center) {
    MonotoneCheck r;
    try {
        Decomposition d(q, SweepAnnotation::scallop(center));
        r.ok = true;
        r.first = d.first_vertex();
        r.last = d.last_vertex();
    } catch (const SweepError& e) {
        r.message = e.what();
        r.violating_vertex = e.vertex();
    }
    return r;
}

std::optional<Point> auto_detect_monotone(const Polygon& q) {
    std::vector<Point> cand{{1, 0}, {0, 1}};
    for (std::size_t i = 0; i < q.size(); ++i) {
        Segment e = q.edge(i);
        cand.push_back(unit(rot_cw(e.b - e.a)));
    }
    for (Point a : cand)
        if (verify_monotone(q, a).ok) return a;
    return std::nullopt;
}

}  // namespace losp
