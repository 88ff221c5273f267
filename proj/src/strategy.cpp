#include "losp/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace losp {

namespace {

constexpr double kTiny = 1e-12;
const double kGuard = std::sqrt(3.0) / 2;
constexpr double kSlideLift = 1e-3;

double sgn(double v) { return v < 0 ? -1.0 : 1.0; }

Frame with_origin(const Frame& base, Point origin, Point vertical, bool mirrored) {
    Frame f = Frame::make(base.kind, origin, vertical, mirrored);
    f.index = base.index;
    f.piece = base.piece;
    f.vertex = base.vertex;
    return f;
}

SweepAnnotation reversed_annotation(const Decomposition& dec) {
    const SweepAnnotation& a = dec.annotation();
    auto flip = [](PieceAnnotation p) {
        if (p.kind == SweepKind::MONOTONE) p.axis = -1.0 * p.axis;
        else p.clockwise = !p.clockwise;
        p.first = p.last = -1;
        return p;
    };
    switch (a.kind) {
        case SweepKind::MONOTONE:
            return SweepAnnotation::monotone(-1.0 * a.axis);
        case SweepKind::SCALLOP: {
            PieceAnnotation p{SweepKind::SCALLOP, {1, 0}, a.center, false, -1, -1};
            return SweepAnnotation::sweepable({p});
        }
        case SweepKind::SWEEPABLE: {
            std::vector<PieceAnnotation> ps(a.pieces.rbegin(), a.pieces.rend());
            for (auto& p : ps) p = flip(p);
            return SweepAnnotation::sweepable(ps);
        }
    }
    return a;
}

}  // namespace

const char* mode_name(Mode m) {
    switch (m) {
        case Mode::SEARCH: return "SEARCH";
        case Mode::ROOK: return "ROOK";
        case Mode::CAUTIOUS_SEARCH: return "CAUTIOUS_SEARCH";
    }
    return "?";
}

const char* gambit_name(GambitKind g) {
    switch (g) {
        case GambitKind::NONE: return "NONE";
        case GambitKind::HIDING: return "HIDING";
        case GambitKind::BLOCKING: return "BLOCKING";
        case GambitKind::ESCAPE: return "ESCAPE";
    }
    return "?";
}

const char* rook_class_name(RookClass c) {
    switch (c) {
        case RookClass::UPPER_POCKET: return "UPPER_POCKET";
        case RookClass::LOWER_POCKET: return "LOWER_POCKET";
        case RookClass::UPPER_CHUTE: return "UPPER_CHUTE";
        case RookClass::LOWER_CHUTE: return "LOWER_CHUTE";
    }
    return "?";
}

RookContext classify_rook_position(const Decomposition& dec, const Frame& frame, Point p, Point e) {
    const Polygon& q = dec.polygon();
    RookContext r;
    Point lp = to_frame(frame, p), le = to_frame(frame, e);
    r.dx = lp.x - le.x;
    r.dy = le.y - lp.y;
    r.left_offset = r.dx <= 0;
    bool above = r.dy >= 0;
    Chain lower = dec.lower_chain(frame);
    Chain side = above ? other(lower) : lower;
    Chord c = horizontal_chord(q, frame, p);
    auto on_side = [&](Point x, int edge) {
        for (std::size_t i = 0; i < q.size(); ++i)
            if (q[i] == x && dec.vertex_on_chain(static_cast<int>(i), side)) return true;
        if (edge >= 0 && dec.chain_of_edge(static_cast<std::size_t>(edge)) == side) return true;
        auto bp = dec.boundary_pos(x, side);
        return bp && bp->chain == side;
    };
    bool pocket = on_side(c.left, c.left_edge) && on_side(c.right, c.right_edge);
    if (above) r.cls = pocket ? RookClass::UPPER_POCKET : RookClass::UPPER_CHUTE;
    else r.cls = pocket ? RookClass::LOWER_POCKET : RookClass::LOWER_CHUTE;
    return r;
}

Pursuer::Pursuer(const Decomposition& dec, StrategyConfig cfg) : dec_(&dec), cfg_(cfg) {
    pos_ = dec.polygon()[dec.first_vertex()];
    start_search(pos_, Mode::SEARCH);
}

const Frame& Pursuer::active_frame() const {
    if (mode_ == Mode::ROOK) return rook_;
    if (!path_done()) return dec_->frame(arc().frame);
    return dec_->frame(std::min(headway_, dec_->frame_count() - 1));
}

std::optional<Frame> Pursuer::secondary_frame() const {
    if (prior_rook_ && (mode_ == Mode::CAUTIOUS_SEARCH || hide_vertex_ >= 0)) return prior_rook_;
    if (mode_ != Mode::ROOK && !path_done() && arc().kind == ArcKind::DESCENT && arc_ > 0)
        return dec_->frame(path_.arcs[arc_ - 1].frame);
    return std::nullopt;
}

std::optional<Segment> Pursuer::rook_frontier() const {
    if (mode_ != Mode::ROOK) return std::nullopt;
    Chord c = horizontal_chord(q(), rook_, pos_);
    return Segment{c.left, c.right};
}

GuardedFrontier Pursuer::guarded() const {
    const Frame& f = mode_ == Mode::ROOK ? dec_->frame(std::min(headway_, dec_->frame_count() - 1)) : active_frame();
    return guarded_frontier(*dec_, f, pos_);
}

bool Pursuer::legal(Point a, Point b) const { return dist(a, b) <= 1 + kTiny && segment_inside(q(), a, b); }

Point Pursuer::toward(Point target, double reach) const {
    double d = dist(pos_, target);
    Point t = d <= reach ? target : pos_ + (reach / d) * (target - pos_);
    return legal(pos_, t) ? t : pull_inside(q(), pos_, t);
}

void Pursuer::start_search(Point from, Mode m) {
    int f = std::max(headway_, dec_->frame_at(from));
    f = std::min(f, dec_->frame_count() - 1);
    std::optional<Point> guard;
    if (checkpoint_ && !(dec_->key(from) < dec_->key(*checkpoint_))) guard = checkpoint_;
    try {
        path_ = build_search_path(*dec_, from, f, guard);
    } catch (const PathError&) {
        path_ = SearchPath{};
    }
    arc_ = 0;
    on_path_ = true;
    mode_ = m;
    hide_vertex_ = -1;
    if (m != Mode::CAUTIOUS_SEARCH) prior_rook_.reset();
    if (!path_done() && arc().kind != ArcKind::DESCENT) headway_ = std::max(headway_, arc().frame);
}

void Pursuer::failsafe() {
    ++stats_.failsafe_sweeps;
    if (!reversed_) {
        original_ = dec_;
        try {
            reversed_ = std::make_shared<const Decomposition>(dec_->polygon(), reversed_annotation(*dec_));
        } catch (const std::exception&) {
            reversed_.reset();
        }
    }
    if (reversed_) dec_ = dec_ == reversed_.get() ? original_ : reversed_.get();
    headway_ = 0;
    checkpoint_.reset();
    start_search(pos_, Mode::SEARCH);
}

void Pursuer::move_on_path(std::size_t next_arc) {
    while (arc_ < next_arc && arc_ < path_.arcs.size()) {
        for (const auto& c : path_.checkpoints)
            if (c.arc == static_cast<int>(arc_) && c.kind == MarkKind::CHECKPOINT) checkpoint_ = c.location;
        headway_ = std::max(headway_, path_.arcs[arc_].frame);
        ++arc_;
    }
    if (!path_done() && arc().kind != ArcKind::DESCENT) headway_ = std::max(headway_, arc().frame);
}

std::optional<Frame> Pursuer::spoke_frame_ahead() const {
    if (path_done() || arc_ == 0) return std::nullopt;
    if (dist(pos_, arc().a) > kTiny) return std::nullopt;
    if (path_.arcs[arc_ - 1].frame >= arc().frame) return std::nullopt;
    return dec_->frame(arc().frame);
}

Frame Pursuer::oriented(const Frame& base, Point e) const {
    Point lp = to_frame(base, pos_), le = to_frame(base, e);
    if (le.y >= lp.y) return with_origin(base, pos_, base.vertical, base.mirrored);
    return with_origin(base, pos_, -1.0 * base.vertical, !base.mirrored);
}

bool Pursuer::try_rook_entry(const Frame& f, Point e) {
    Point lp = to_frame(f, pos_), le = to_frame(f, e);
    double dx = le.x - lp.x;
    if (dx < -kTiny || dx > 0.5 + kTiny) return false;
    rook_ = oriented(f, e);
    seen_ = e;
    mode_ = Mode::ROOK;
    hide_vertex_ = -1;
    prior_rook_.reset();
    headway_ = std::max(headway_, f.index);
    ++stats_.rook_entries;
    return true;
}

void Pursuer::enter_rook(Point p, const Frame& frame, Point e) {
    pos_ = p;
    rook_ = oriented(frame, e);
    seen_ = e;
    mode_ = Mode::ROOK;
    hide_vertex_ = -1;
    prior_rook_.reset();
    pending_ = GambitKind::NONE;
}

std::optional<Point> Pursuer::highest_on_vertical(const Frame& r, double alpha, std::optional<Point> must_see,
                                                  std::optional<double> cap) const {
    Point lp = to_frame(r, pos_);
    double dx = alpha - lp.x;
    if (std::abs(dx) > 1) return std::nullopt;
    double h = std::sqrt(std::max(0.0, 1 - dx * dx)) * (1 - kTiny);
    double top = lp.y + h, bottom = lp.y;
    if (cap) top = std::min(top, *cap);
    if (top < bottom) top = bottom;
    auto at = [&](double y) { return from_frame(r, {alpha, y}); };
    auto good = [&](double y) {
        Point pt = at(y);
        return legal(pos_, pt) && (!must_see || visible(q(), pt, *must_see));
    };
    const int samples = 48;
    double prev = top;
    for (int k = 0; k <= samples; ++k) {
        double y = top - (top - bottom) * k / samples;
        if (!good(y)) {
            prev = y;
            continue;
        }
        if (k == 0) return at(y);
        double lo = y, hi = prev;
        for (int i = 0; i < 40; ++i) {
            double mid = 0.5 * (lo + hi);
            if (good(mid)) lo = mid;
            else hi = mid;
        }
        return at(lo);
    }
    return std::nullopt;
}

Point Pursuer::respond(const Observation& obs) {
    report_ = StepReport{};
    report_.mode = mode_;
    pending_ = GambitKind::NONE;
    next_arc_ = arc_;
    Point from = pos_;
    Frame before = rook_;
    bool was_rook = mode_ == Mode::ROOK;
    Point target = pos_;
    if (obs.visible && dist(pos_, *obs.evader) <= cfg_.epsilon && legal(pos_, *obs.evader)) {
        target = *obs.evader;
        report_.capture_move = true;
    } else if (mode_ == Mode::ROOK) {
        target = hide_vertex_ >= 0 ? hiding_step(obs) : rook_step(obs);
    } else {
        if (mode_ == Mode::CAUTIOUS_SEARCH && obs.visible && prior_rook_) {
            Point lp = to_frame(*prior_rook_, pos_), le = to_frame(*prior_rook_, *obs.evader);
            if (le.x > lp.x) {
                ++stats_.reverts;
                Frame old = *prior_rook_;
                mode_ = Mode::ROOK;
                prior_rook_.reset();
                target = engage(old, *obs.evader);
                return finish(from, target, was_rook, before);
            }
        }
        target = search_step(obs);
    }
    return finish(from, target, was_rook, before);
}

Point Pursuer::finish(Point from, Point target, bool was_rook, const Frame& before) {
    if (!legal(from, target)) target = pull_inside(q(), from, dist(from, target) > 1 ? from + (1 / dist(from, target)) * (target - from) : target);
    if (was_rook) report_.advance = to_frame(before, target).y - to_frame(before, from).y;
    pos_ = target;
    if (mode_ != Mode::ROOK && on_path_) move_on_path(next_arc_);
    report_.frame = headway_;
    return target;
}

Point Pursuer::search_step(const Observation& obs) {
    if (path_done()) failsafe();
    if (path_done()) return pos_;
    const Frame& F = dec_->frame(arc().frame);
    if (!obs.visible) return advance_along_path(std::nullopt);
    Point e = *obs.evader;
    if (auto f2 = spoke_frame_ahead()) {
        Point d = to_frame(*f2, e) - to_frame(*f2, pos_);
        if (d.x < 0 && d.y < 0) {
            Frame t = Frame::tilted(*f2, pos_, unit(pos_ - e));
            rook_ = oriented(t, e);
            seen_ = e;
            mode_ = Mode::ROOK;
            prior_rook_.reset();
            headway_ = std::max(headway_, f2->index);
            ++stats_.tilted_entries;
            ++stats_.rook_entries;
            return pos_;
        }
    }
    // an evader two or more sectors ahead is not comparable in this frame
    if (dec_->frame_at(e) > arc().frame + 1) return advance_along_path(std::nullopt);
    Point lp = to_frame(F, pos_), le = to_frame(F, e);
    double dx = le.x - lp.x;
    // Sliding back along the path would retrace it, so the slide is lifted
    // slightly toward the evader's side.
    auto slide = [&](double x) {
        double lift = kSlideLift * sgn(le.y - lp.y);
        Point t = from_frame(F, {x, lp.y + lift});
        if (legal(pos_, t)) return t;
        t = from_frame(F, {x, lp.y});
        return legal(pos_, t) ? t : toward(t);
    };
    if (dx >= -0.5 && dx < 0) {
        on_path_ = false;
        return slide(le.x);
    }
    if (dx >= 0 && dx <= 0.5) return pos_;
    if (dx < -0.5) {
        ++stats_.stray_slides;
        on_path_ = false;
        return slide(std::max(le.x, lp.x - 0.999));
    }
    return advance_along_path(le.x - 0.5);
}

Point Pursuer::advance_along_path(std::optional<double> limit) {
    const Frame& F = dec_->frame(arc().frame);
    double px = to_frame(F, pos_).x;
    double xlim = next_vertex_abscissa(q(), F, px);
    if (limit) xlim = std::min(xlim, *limit);
    Point best = pos_;
    std::size_t best_arc = arc_;
    for (std::size_t i = arc_; i < path_.arcs.size(); ++i) {
        const PathArc& a = path_.arcs[i];
        if (a.frame != arc().frame) break;
        if (i > arc_ && a.kind == ArcKind::DESCENT) break;
        Point s0 = i == arc_ ? pos_ : a.a;
        Point d = a.b - s0;
        double len2 = dot(d, d);
        if (len2 == 0) {
            best = a.b;
            best_arc = i + 1;
            continue;
        }
        // largest s in [0,1] with |s0 + s d - pos| <= 1
        Point w = s0 - pos_;
        double bq = 2 * dot(w, d), cq = dot(w, w) - 1;
        double disc = bq * bq - 4 * len2 * cq;
        if (disc < 0) break;
        double smax = std::min(1.0, (-bq + std::sqrt(disc)) / (2 * len2));
        if (a.kind != ArcKind::DESCENT) {
            double x0 = to_frame(F, s0).x, x1 = to_frame(F, a.b).x;
            if (x1 > x0 + kTiny) smax = std::min(smax, (xlim - x0) / (x1 - x0));
            else if (x0 > xlim) smax = 0;
        }
        if (smax <= 0) break;
        if (smax >= 1) {
            best = a.b;
            best_arc = i + 1;
            continue;
        }
        best = s0 + smax * d;
        best_arc = i;
        break;
    }
    if (best != pos_ && !legal(pos_, best)) {
        // stay on the current arc, which is a straight piece of the path
        const PathArc& a = arc();
        double L = dist(pos_, a.b);
        if (L <= 1 && legal(pos_, a.b)) {
            best = a.b;
            best_arc = arc_ + 1;
        } else {
            best = toward(a.b, std::min(1.0, dist(pos_, best)));
            best_arc = arc_;
        }
    }
    next_arc_ = best_arc;
    return best;
}

Point Pursuer::engage(const Frame& base, Point e) {
    rook_ = oriented(base, e);
    seen_ = e;
    Point lp = to_frame(rook_, pos_), le = to_frame(rook_, e);
    double a1 = le.x - 0.5, a2 = le.x + 0.5;
    double alpha = std::abs(a1 - lp.x) <= std::abs(a2 - lp.x) ? a1 : a2;
    if (std::abs(alpha - lp.x) <= 1) {
        if (auto h = highest_on_vertical(rook_, alpha, e)) return *h;
    }
    return toward(e);
}

Point Pursuer::rook_step(const Observation& obs) {
    const Frame& R = rook_;
    Point lp = to_frame(R, pos_), lep = to_frame(R, seen_);
    if (!obs.visible) {
        double dx = std::clamp(lep.x - lp.x, -1.0, 1.0);
        Point cand = from_frame(R, {lp.x + dx, lp.y + std::sqrt(std::max(0.0, 1 - dx * dx)) * (1 - kTiny)});
        if (legal(pos_, cand)) return cand;
        return gambit_move(cand, true);
    }
    Point e = *obs.evader;
    Point le = to_frame(R, e);
    if (le.y < lp.y) {
        if (lep.y > lp.y) {
            double s = (lep.y - lp.y) / (lep.y - le.y);
            Point z = lerp(seen_, e, s);
            if (legal(pos_, z)) return z;
        }
        return toward(e);
    }
    if (le.y - lp.y <= kGuard) return toward(e);
    double gap = le.x - lp.x;
    if (std::abs(gap) <= 1) {
        double a1 = le.x - 0.5, a2 = le.x + 0.5;
        double alpha = std::abs(a1 - lp.x) <= std::abs(a2 - lp.x) ? a1 : a2;
        Point z0 = from_frame(R, {alpha, lp.y});
        Point w = z0 - pos_, d = e - z0;
        double aq = dot(d, d), bq = 2 * dot(w, d), cq = dot(w, w) - 1;
        double s = std::clamp((-bq + std::sqrt(std::max(0.0, bq * bq - 4 * aq * cq))) / (2 * aq), 0.0, 1.0);
        Point cand = z0 + s * d;
        if (dist(pos_, cand) > 1) cand = pos_ + (1 / dist(pos_, cand)) * (cand - pos_);
        if (legal(pos_, cand) && visible(q(), cand, e)) return cand;
        if (auto h = highest_on_vertical(R, alpha, e)) return *h;
        return gambit_move(cand, false, e);
    }
    double alpha = le.x - sgn(gap) * 0.5;
    double dx = alpha - lp.x;
    if (std::abs(dx) <= 1) {
        if (auto h = highest_on_vertical(R, alpha, e)) return *h;
        return gambit_move(from_frame(R, {alpha, lp.y + std::sqrt(std::max(0.0, 1 - dx * dx))}), false, e);
    }
    Point side = from_frame(R, {lp.x + sgn(dx), lp.y});
    if (legal(pos_, side)) return side;
    return gambit_move(side, false, e);
}

Point Pursuer::gambit_move(Point intended, bool from_hidden, std::optional<Point> e) {
    Point z = clip_segment(q(), pos_, intended);
    if (!legal(pos_, z)) z = pull_inside(q(), pos_, z);
    // already at the obstruction: close in on the evader (or its last sighting)
    if (dist(pos_, z) < 1e-6) {
        ++stats_.direct_approaches;
        if (e) return toward(*e);
        z = toward(seen_);
    }
    GambitKind kind = GambitKind::ESCAPE;
    if (from_hidden) {
        kind = GambitKind::HIDING;
    } else if (auto bp = dec_->boundary_pos(z)) {
        Chain upper = other(dec_->lower_chain(rook_));
        bool upper_hit = bp->chain == upper;
        for (std::size_t e : edges_containing(q(), z))
            if (dec_->chain_of_edge(e) == upper) upper_hit = true;
        kind = upper_hit ? GambitKind::BLOCKING : GambitKind::ESCAPE;
    }
    report_.gambit.kind = kind;
    report_.gambit.point = z;
    pending_ = kind;
    if (kind == GambitKind::ESCAPE) ++stats_.escapes;
    if (kind == GambitKind::BLOCKING) ++stats_.blockings;
    if (kind == GambitKind::HIDING) ++stats_.hidings;
    return z;
}

bool Pursuer::scallop_here() const {
    const auto& ps = dec_->pieces();
    if (ps.empty()) return dec_->kind() == SweepKind::SCALLOP;
    int k = dec_->piece_of(pos_);
    if (k < 0 || k >= static_cast<int>(ps.size())) return false;
    return ps[k].kind == SweepKind::SCALLOP;
}

int Pursuer::pick_hiding_vertex() const {
    Point lp = to_frame(rook_, pos_);
    int best = -1;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < q().size(); ++i) {
        if (!q().is_reflex(i)) continue;
        Point v = q()[i];
        if (to_frame(rook_, v).y <= lp.y + kTiny) continue;
        double d = dist(v, seen_);
        if (d > 1 + 1e-9 || d >= bd) continue;
        if (!visible(q(), pos_, v)) continue;
        bd = d;
        best = static_cast<int>(i);
    }
    return best;
}

Point Pursuer::hiding_step(const Observation& obs) {
    const Frame R = prior_rook_ ? *prior_rook_ : rook_;
    if (obs.visible) {
        hide_vertex_ = -1;
        prior_rook_.reset();
        return engage(R, *obs.evader);
    }
    Point v = q()[hide_vertex_];
    Point lp = to_frame(R, pos_), lv = to_frame(R, v);
    ++hide_rounds_;
    if (std::abs(lv.x - lp.x) > 1e-9) {
        if (hide_rounds_ > 2) ++stats_.hide_round_overruns;
        double dx = lv.x - lp.x;
        if (std::abs(dx) <= 1) {
            if (auto h = highest_on_vertical(R, lv.x, std::nullopt, lv.y)) return *h;
        }
        Point t = toward(from_frame(R, {lp.x + std::clamp(dx, -1.0, 1.0), lp.y}));
        // pinned against the boundary: head for the vertex directly
        if (dist(t, pos_) < 1e-6) t = toward(v);
        return t;
    }
    return toward(v);
}

void Pursuer::settle(const Observation& obs) {
    if (obs.visible) seen_ = *obs.evader;
    GambitKind g = pending_;
    pending_ = GambitKind::NONE;
    if (g != GambitKind::NONE) {
        bool scallop = scallop_here();
        if (g == GambitKind::ESCAPE) {
            if (scallop && obs.visible && !(dec_->key(pos_) < dec_->key(*obs.evader))) {
                Frame base = dec_->frame(std::min(std::max(headway_, dec_->frame_at(pos_)), dec_->frame_count() - 1));
                rook_ = oriented(Frame::tilted(base, pos_, unit(*obs.evader - pos_)), *obs.evader);
                mode_ = Mode::ROOK;
                ++stats_.tilted_entries;
                ++stats_.rook_entries;
                return;
            }
            start_search(pos_, Mode::SEARCH);
        } else if (g == GambitKind::BLOCKING) {
            if (scallop) {
                Frame old = rook_;
                start_search(pos_, Mode::CAUTIOUS_SEARCH);
                prior_rook_ = old;
            } else {
                start_search(pos_, Mode::SEARCH);
            }
        } else {
            Frame old = rook_;
            int v = scallop && !obs.visible ? pick_hiding_vertex() : -1;
            if (v >= 0) {
                mode_ = Mode::ROOK;
                hide_vertex_ = v;
                hide_rounds_ = 0;
                prior_rook_ = old;
                return;
            }
            start_search(pos_, Mode::SEARCH);
        }
        if (obs.visible && mode_ != Mode::ROOK && !path_done()) try_rook_entry(dec_->frame(arc().frame), *obs.evader);
        return;
    }
    if (mode_ == Mode::ROOK) {
        if (hide_vertex_ >= 0) {
            if (!obs.visible && dist(pos_, q()[hide_vertex_]) <= kTiny) {
                Frame old = prior_rook_ ? *prior_rook_ : rook_;
                start_search(pos_, Mode::CAUTIOUS_SEARCH);
                prior_rook_ = old;
            } else if (obs.visible) {
                hide_vertex_ = -1;
                prior_rook_.reset();
                rook_ = oriented(rook_, *obs.evader);
            }
            return;
        }
        if (!obs.visible) {
            int v = scallop_here() ? pick_hiding_vertex() : -1;
            if (v >= 0) {
                ++stats_.hidings;
                hide_vertex_ = v;
                hide_rounds_ = 0;
                prior_rook_ = rook_;
                return;
            }
            ++stats_.invariant_breaks;
            start_search(pos_, Mode::SEARCH);
            return;
        }
        Point lp = to_frame(rook_, pos_), le = to_frame(rook_, *obs.evader);
        if (le.y < lp.y) {
            ++stats_.invariant_breaks;
            rook_ = oriented(rook_, *obs.evader);
        } else {
            rook_ = with_origin(rook_, pos_, rook_.vertical, rook_.mirrored);
        }
        return;
    }
    if (!on_path_) {
        if (obs.visible && !path_done() && try_rook_entry(dec_->frame(arc().frame), *obs.evader)) return;
        std::optional<Frame> keep = prior_rook_;
        start_search(pos_, mode_);
        if (mode_ == Mode::CAUTIOUS_SEARCH) prior_rook_ = keep;
        if (obs.visible && !path_done()) try_rook_entry(dec_->frame(arc().frame), *obs.evader);
        return;
    }
    if (!obs.visible || path_done()) return;
    if (try_rook_entry(dec_->frame(arc().frame), *obs.evader)) return;
    if (arc().kind == ArcKind::DESCENT && arc_ > 0) try_rook_entry(dec_->frame(path_.arcs[arc_ - 1].frame), *obs.evader);
}

}  // namespace losp
