#include <gtest/gtest.h>

#include "losp/fixtures.hpp"
#include "losp/search_path.hpp"

using namespace losp;

namespace {

void expect_polyline(const std::vector<Point>& got, const std::vector<Point>& want, double tol) {
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
        EXPECT_NEAR(got[i].x, want[i].x, tol) << "vertex " << i;
        EXPECT_NEAR(got[i].y, want[i].y, tol) << "vertex " << i;
    }
}

void expect_path_valid(const Decomposition& d, const SearchPath& sp, const std::string& label) {
    ASSERT_FALSE(sp.empty()) << label;
    EXPECT_LT(dist(sp.arcs.back().b, d.polygon()[d.last_vertex()]), 1e-9) << label;
    for (std::size_t i = 0; i < sp.arcs.size(); ++i) {
        const auto& a = sp.arcs[i];
        EXPECT_TRUE(segment_inside(d.polygon(), a.a, a.b)) << label << " arc " << i;
        if (i > 0) EXPECT_EQ(sp.arcs[i - 1].b, a.a) << label;
        EXPECT_GE(a.frame, i > 0 ? sp.arcs[i - 1].frame : 0) << label;
    }
}

}  // namespace

TEST(MonotonePath, HandTracedExample) {
    Polygon p({{0, 0}, {1, -1}, {2.5, 1}, {4, 0.5}, {2, 3}});
    Decomposition d(p, SweepAnnotation::monotone({1, 0}));
    auto sp = build_monotone_path(d, {0, 0});
    expect_polyline(sp.polyline(), {{0, 0}, {1.75, 0}, {2.5, 1}, {3.6, 1}, {4, 0.5}}, 1e-12);
    EXPECT_EQ(sp.arcs[0].kind, ArcKind::HORIZONTAL);
    EXPECT_EQ(sp.arcs[1].kind, ArcKind::CHAIN);
    EXPECT_EQ(sp.arcs[2].kind, ArcKind::HORIZONTAL);
    EXPECT_EQ(sp.arcs[3].kind, ArcKind::CHAIN);
}

TEST(MonotonePath, ConvexIsOneHorizontalThenChain) {
    Polygon p({{0, 0}, {2, -1}, {4, -1}, {5, 1}, {3, 2}, {1, 2}});
    Decomposition d(p, SweepAnnotation::monotone({1, 0}));
    auto sp = build_monotone_path(d, {0, 0});
    ASSERT_EQ(sp.arcs.size(), 2u);
    EXPECT_EQ(sp.arcs[0].kind, ArcKind::HORIZONTAL);
    EXPECT_NEAR(sp.arcs[0].b.x, 4.5, 1e-12);
    EXPECT_EQ(sp.arcs[1].kind, ArcKind::CHAIN);
    EXPECT_EQ(sp.arcs[1].b, (Point{5, 1}));
}

TEST(MonotonePath, AlternatingTeethFixture) {
    Fixture f = fixture("two-escape-monotone");
    Decomposition d(f.polygon, f.sweep);
    auto sp = build_monotone_path(d, f.polygon[d.first_vertex()]);
    // hand trace at unit scale: horizontal runs alternate with climbs to
    // lower maxima and descents to upper minima
    std::vector<Point> want{{0, 1},          {.75, 1},   {1, 0},         {1.7 + 0.2 / 1.5, 0}, {1.9, .5},
                            {2.1 + 0.5 * 1.4 / 1.7, .5}, {2.6, .2},      {4.3 - 0.4 * 0.4 / 0.7, .2},
                            {4.3, -.2},      {5.4035087719298245, -.2},  {5.5, -.75},
                            {6.0 + 0.5 * 0.95 / 1.7, -.75},              {6.5, 0}};
    for (auto& w : want) w = f.scale * w;
    expect_polyline(sp.polyline(), want, 1e-9);
    expect_path_valid(d, sp, f.name);
}

TEST(MonotonePath, CheckpointsOnTheirChains) {
    Fixture f = fixture("bumpy-monotone");
    Decomposition d(f.polygon, f.sweep);
    auto sp = build_monotone_path(d, f.polygon[d.first_vertex()]);
    expect_path_valid(d, sp, f.name);
    ASSERT_FALSE(sp.checkpoints.empty());
    double lastx = -1e300;
    for (const auto& c : sp.checkpoints) {
        auto loc = d.boundary_pos(c.location);
        ASSERT_TRUE(loc.has_value());
        bool lower = d.lower_chain(d.frame(c.frame)) == loc->chain || d.vertex_on_chain(d.last_vertex(), loc->chain);
        if (c.kind == MarkKind::CHECKPOINT) EXPECT_TRUE(lower);
        if (c.kind == MarkKind::CHECKPOINT) {
            EXPECT_GE(c.location.x, lastx);
            lastx = c.location.x;
        }
    }
}

TEST(MonotonePath, HorizontalArcsAdvance) {
    for (const auto& name : {"bumpy-monotone", "notched-monotone", "two-escape-monotone", "square"}) {
        Fixture f = fixture(name);
        Decomposition d(f.polygon, f.sweep);
        auto sp = build_monotone_path(d, f.polygon[d.first_vertex()]);
        expect_path_valid(d, sp, name);
        for (const auto& a : sp.arcs) EXPECT_GE(to_frame(d.frame(0), a.b).x, to_frame(d.frame(0), a.a).x - 1e-12);
    }
}

TEST(ScallopPath, FixturesReachTheEnd) {
    for (const auto& name : {"fan-scallop", "mono-to-scallop", "five-piece-sweepable"}) {
        Fixture f = fixture(name);
        Decomposition d(f.polygon, f.sweep);
        auto sp = build_search_path(d, f.polygon[d.first_vertex()], 0);
        expect_path_valid(d, sp, name);
        // every arc runs in a frame at least as far as the one its start lies in
        for (const auto& a : sp.arcs) EXPECT_GE(a.frame, d.frame_at(a.a)) << name;
        EXPECT_GT(sp.end_frame(), sp.start_frame) << name;
        for (const auto& c : sp.checkpoints) {
            auto loc = d.boundary_pos(c.location);
            ASSERT_TRUE(loc.has_value()) << name;
            if (c.kind == MarkKind::CHECKPOINT && loc->pos > 1e-9)
                EXPECT_TRUE(loc->chain == d.lower_chain(d.frame(c.frame)) ||
                            d.polygon()[d.last_vertex()] == c.location)
                    << name;
        }
    }
}

TEST(ScallopPath, ConvexScallopHasNoChainClimbs) {
    std::vector<Point> pts;
    for (int i = 0; i <= 6; ++i) {
        double a = (40 + 15 * i) * M_PI / 180;
        pts.push_back({8 * std::cos(a), 8 * std::sin(a)});
    }
    for (int i = 6; i >= 0; --i) {
        double a = (40 + 15 * i) * M_PI / 180;
        pts.push_back({5 * std::cos(a), 5 * std::sin(a)});
    }
    Polygon p(pts);
    Decomposition d(p, SweepAnnotation::scallop({0, 0}));
    auto sp = build_scallop_path(d, p[d.first_vertex()]);
    expect_path_valid(d, sp, "convex scallop");
    // only the closing radial edge is walked
    for (std::size_t i = 0; i + 1 < sp.arcs.size(); ++i) {
        EXPECT_GE(sp.arcs[i].frame, d.frame_at(sp.arcs[i].a));
        EXPECT_NE(sp.arcs[i].kind, ArcKind::CHAIN);
    }
}

TEST(ScallopPath, WrongKindRejected) {
    Fixture f = fixture("fan-scallop");
    Decomposition d(f.polygon, f.sweep);
    EXPECT_THROW(build_monotone_path(d, f.polygon[0]), PathError);
}

TEST(GuardedFrontier, AtFirstVertexTerritoryIsAPoint) {
    Fixture f = fixture("two-escape-monotone");
    Decomposition d(f.polygon, f.sweep);
    Point v1 = f.polygon[d.first_vertex()];
    auto g = guarded_frontier(d, d.frame(0), v1);
    EXPECT_EQ(g.checkpoint.location, v1);
    EXPECT_DOUBLE_EQ(g.evader_area, f.polygon.area());
    EXPECT_EQ(g.pursuer_side.size(), 1u);
}

TEST(GuardedFrontier, GrazedUpperMinimum) {
    Fixture f = fixture("two-escape-monotone");
    Decomposition d(f.polygon, f.sweep);
    double s = f.scale;
    // pursuer on the horizontal run at height 0.2 beyond the upper minimum (2.6, 0.2)
    auto g = guarded_frontier(d, d.frame(0), s * Point{3.5, 0.2});
    EXPECT_NEAR(g.checkpoint.location.x, s * 2.6, 1e-9);
    EXPECT_NEAR(g.checkpoint.location.y, s * 0.2, 1e-9);
    EXPECT_EQ(g.checkpoint.kind, MarkKind::AUXILIARY);
    EXPECT_NEAR(g.frontier.a.x, s * (1.9 + 1.1 * 0.3 / 2.25), 1e-9);
    EXPECT_GT(g.evader_area, 0);
    EXPECT_GT(g.pursuer_area, 0);
    EXPECT_NEAR(g.evader_area + g.pursuer_area, f.polygon.area(), 1e-9);
}

TEST(GuardedFrontier, PursuerOnBoundaryIsItsOwnCheckpoint) {
    Fixture f = fixture("two-escape-monotone");
    Decomposition d(f.polygon, f.sweep);
    double s = f.scale;
    Point p = s * Point{4.3 - 0.2 * 0.4 / 0.7, 0.0};
    auto g = guarded_frontier(d, d.frame(0), p);
    EXPECT_LT(dist(g.checkpoint.location, p), 1e-9);
    EXPECT_NEAR(g.frontier.a.y, 0, 1e-9);
    EXPECT_LT(g.frontier.a.x, s * 2.2);
}

TEST(Chord, SquareChord) {
    Polygon sq({{0, 0}, {4, 0}, {4, 4}, {0, 4}});
    Frame f = Frame::make(FrameKind::MONOTONE, {0, 0}, {0, 1}, false);
    auto c = horizontal_chord(sq, f, {1, 1});
    EXPECT_EQ(c.left, (Point{0, 1}));
    EXPECT_EQ(c.right, (Point{4, 1}));
    EXPECT_DOUBLE_EQ(next_vertex_abscissa(sq, f, 1), 4);
    EXPECT_TRUE(std::isinf(next_vertex_abscissa(sq, f, 4)));
}
