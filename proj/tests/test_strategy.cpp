#include <gtest/gtest.h>

#include <cmath>

#include "losp/engine.hpp"
#include "losp/strategy.hpp"
#include "pocket.hpp"

using namespace losp;

namespace {

// Wide x-monotone hexagon; the origin is deep inside.
Decomposition open_field() {
    Polygon q({{-12, 0}, {-10, -3}, {10, -3}, {12, 0}, {10, 8}, {-10, 8}});
    return Decomposition(q, SweepAnnotation::monotone({1, 0}));
}

// Starts at the origin with a straight bottom edge along y = 0.
Decomposition flat_floor() {
    Polygon q({{0, 0}, {10, 0}, {12, 3}, {2, 4}});
    return Decomposition(q, SweepAnnotation::monotone({1, 0}));
}

Point rook_reply(const Decomposition& dec, Point p, Point e1, const Observation& obs) {
    Pursuer pur(dec);
    pur.enter_rook(p, dec.frame(0), e1);
    return pur.respond(obs);
}

const double kGuard = std::sqrt(3.0) / 2;

}  // namespace

TEST(RookStep, NearHorizontalMoveSolvesTheUnitStepQuadratic) {
    Decomposition dec = open_field();
    Point t = rook_reply(dec, {0, 0}, {0.2, 1.2}, Observation::seen({-0.45, 0.9}));
    // alpha = 0.05; the point of segment (0.05, 0) -> E at distance 1
    double s = (0.05 + std::sqrt(0.05 * 0.05 + 4 * 1.06 * 0.9975)) / (2 * 1.06);
    EXPECT_NEAR(t.x, 0.05 - 0.5 * s, 1e-9);
    EXPECT_NEAR(t.y, 0.9 * s, 1e-9);
    EXPECT_NEAR(t.x, -0.447, 1e-3);
    EXPECT_NEAR(t.y, 0.894, 1e-3);
    EXPECT_NEAR(dist({0, 0}, t), 1, 1e-9);
}

TEST(RookStep, HiddenEvaderClimbsBelowTheLastSighting) {
    Decomposition dec = open_field();
    Point t = rook_reply(dec, {0, 0}, {0.5, 2}, Observation::hidden());
    EXPECT_NEAR(t.x, 0.5, 1e-12);
    EXPECT_NEAR(t.y, kGuard, 1e-9);
    EXPECT_GE(t.y, kGuard - 1e-9);
}

TEST(RookStep, GuardZoneMovesStraightAtTheEvader) {
    Decomposition dec = open_field();
    Point e{1.2, 0.5};
    Point t = rook_reply(dec, {0, 0}, {0.5, 1.2}, Observation::seen(e));
    EXPECT_NEAR(dist({0, 0}, t), 1, 1e-9);
    EXPECT_NEAR(dist(t, e), 0.3, 1e-9);
    EXPECT_NEAR(cross(t, e), 0, 1e-12);
}

TEST(RookStep, CapturesWithinReach) {
    Decomposition dec = open_field();
    Point e{0.3, 0.9};
    EXPECT_EQ(rook_reply(dec, {0, 0}, {0.4, 1.5}, Observation::seen(e)), e);
}

TEST(RookStep, SidewaysRunKeepsTheOffsetAndClimbs) {
    Decomposition dec = open_field();
    Point e{1.2, 3};
    Point t = rook_reply(dec, {0, 0}, {0.3, 3}, Observation::seen(e));
    // more than 1 to the side: straight up the vertical at x(E) - 1/2
    EXPECT_NEAR(t.x, 0.7, 1e-9);
    EXPECT_NEAR(t.y, std::sqrt(1 - 0.49), 1e-9);
    EXPECT_LE(std::abs(t.x - e.x), 0.5 + 1e-9);
    EXPECT_GE(t.y, 7.0 / 22);
}

TEST(SearchStep, UnconstrainedUnitAdvance) {
    Decomposition dec = flat_floor();
    Pursuer pur(dec);
    ASSERT_EQ(pur.position(), (Point{0, 0}));
    Point t = pur.respond(Observation::seen({5, 3}));
    EXPECT_NEAR(t.x, 1, 1e-12);
    EXPECT_NEAR(t.y, 0, 1e-12);
}

TEST(SearchStep, StopsAtTheNextVertexAbscissa) {
    Polygon q({{0, 0}, {0.4, 0}, {10, -2}, {12, 2}, {1, 3}});
    Decomposition dec(q, SweepAnnotation::monotone({1, 0}));
    Pursuer pur(dec);
    Point t = pur.respond(Observation::hidden());
    EXPECT_NEAR(t.x, 0.4, 1e-12);
    EXPECT_NEAR(t.y, 0, 1e-12);
}

TEST(SearchStep, LeftSlipIsMatchedHorizontally) {
    Decomposition dec = flat_floor();
    Pursuer pur(dec);
    pur.settle(Observation::hidden());
    pur.respond(Observation::hidden());
    pur.settle(Observation::hidden());
    Point p = pur.respond(Observation::hidden());
    pur.settle(Observation::hidden());
    ASSERT_NEAR(p.x, 2, 1e-12);
    Point t = pur.respond(Observation::seen({p.x - 0.3, 2}));
    EXPECT_NEAR(t.x, p.x - 0.3, 1e-12);
    // lifted off the path toward the evader so the path is not retraced
    EXPECT_GT(t.y, 0);
    EXPECT_LE(t.y, 1e-3 + 1e-12);
}

TEST(SearchStep, EntersRookWhenTheEvaderIsJustAhead) {
    Decomposition dec = flat_floor();
    Pursuer pur(dec);
    Point e{0.8, 2};
    Point t = pur.respond(Observation::seen(e));
    EXPECT_NEAR(t.x, 0.3, 1e-12);
    pur.settle(Observation::seen(e));
    EXPECT_EQ(pur.mode(), Mode::ROOK);
    auto f = pur.rook_frontier();
    ASSERT_TRUE(f);
    EXPECT_NEAR(f->a.y, 0, 1e-9);
    EXPECT_NEAR(f->b.y, 0, 1e-9);
}

TEST(Classify, ChuteFromFrontierEndChains) {
    // slanted channel: the chord through (5, 3) starts on the upper chain and
    // ends on the lower one
    Polygon q({{0, 0}, {10, 4}, {12, 8}, {2, 4}});
    Decomposition dec(q, SweepAnnotation::monotone({1, 0}));
    Frame f = dec.frame(0);
    EXPECT_EQ(classify_rook_position(dec, f, {5, 3}, {5.2, 3.5}).cls, RookClass::UPPER_CHUTE);
    EXPECT_EQ(classify_rook_position(dec, f, {5, 3}, {5.2, 2.5}).cls, RookClass::LOWER_CHUTE);
    RookContext r = classify_rook_position(dec, f, {5, 3}, {5.2, 3.5});
    EXPECT_NEAR(r.dx, -0.2, 1e-12);
    EXPECT_NEAR(r.dy, 0.5, 1e-12);
    EXPECT_TRUE(r.left_offset);
}

TEST(Classify, LowerPocketFromLowerChainEnds) {
    // a V-shaped floor: the chord through (5, 3) meets the lower chain twice
    Polygon q({{0, 7}, {4, 1}, {6, 1}, {10, 7}, {9, 9}, {1, 9}});
    Decomposition dec(q, SweepAnnotation::monotone({1, 0}));
    Frame f = dec.frame(0);
    EXPECT_EQ(classify_rook_position(dec, f, {5, 3}, {5.2, 2}).cls, RookClass::LOWER_POCKET);
    EXPECT_EQ(classify_rook_position(dec, f, {5, 3}, {4.8, 2}).cls, RookClass::LOWER_POCKET);
    EXPECT_FALSE(classify_rook_position(dec, f, {5, 3}, {4.8, 2}).left_offset);
}

TEST(Classify, GeneratedPocketsArePockets) {
    std::mt19937_64 rng(41);
    int checked = 0;
    for (int i = 0; i < 40; ++i) {
        pocket::PocketCase c = pocket::make_case(rng);
        Point e = c.pk.world({0.2, 1.05});
        if (!contains(c.pk.polygon, e) || !visible(c.pk.polygon, c.P, e)) continue;
        RookClass k = classify_rook_position(c.dec, c.dec.frame(0), c.P, e).cls;
        EXPECT_TRUE(k == RookClass::UPPER_POCKET || k == RookClass::LOWER_POCKET) << rook_class_name(k);
        ++checked;
    }
    EXPECT_GT(checked, 20);
}

// Rook guarantees checked on a few hundred random pocket states.
TEST(RookProperties, GuardCapturesEveryMoveNearTheFrontier) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0, 1);
    int cases = 0;
    while (cases < 300) {
        pocket::PocketCase c = pocket::make_case(rng);
        for (int k = 0; k < 200 && cases < 300; ++k) {
            Point E1 = c.pk.world({u(rng) - 0.5, u(rng) * (kGuard + 1)});
            if (!pocket::rook_state(c, E1)) continue;
            double a = 2 * M_PI * u(rng), r = std::sqrt(u(rng));
            Point E2 = E1 + r * Point{std::cos(a), std::sin(a)};
            if (!validate_move(c.pk.polygon, E1, E2).ok() || c.pk.local(E2).y > kGuard) continue;
            ++cases;
            Observation obs;
            Point t = pocket::reply(c, E1, E2, obs);
            EXPECT_TRUE(validate_move(c.pk.polygon, c.P, t).ok());
            EXPECT_LE(dist(t, E2), 1 + 1e-9);
            EXPECT_TRUE(oracle::segment_inside(c.oq, t, E2));
        }
    }
}

TEST(RookProperties, VisibleNearHorizontalMovesAdvanceTheFrontier) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0, 1);
    int cases = 0;
    while (cases < 200) {
        pocket::PocketCase c = pocket::make_case(rng);
        for (int k = 0; k < 200 && cases < 200; ++k) {
            Point E1 = c.pk.world({u(rng) - 0.5, u(rng) * 3.5});
            if (!pocket::rook_state(c, E1)) continue;
            double a = 2 * M_PI * u(rng), r = std::sqrt(u(rng));
            Point E2 = E1 + r * Point{std::cos(a), std::sin(a)};
            if (!validate_move(c.pk.polygon, E1, E2).ok()) continue;
            Point l2 = c.pk.local(E2);
            if (l2.y <= kGuard || std::abs(l2.x) > 1 || dist(c.P, E2) <= 1) continue;
            Observation obs;
            Point t = pocket::reply(c, E1, E2, obs);
            if (!obs.visible) continue;
            ++cases;
            EXPECT_TRUE(validate_move(c.pk.polygon, c.P, t).ok());
            EXPECT_GE(c.pk.local(t).y, 7.0 / 22 - 1e-9);
        }
    }
}

TEST(RookProperties, HiddenMovesAreAnsweredWithFullProgress) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0, 1);
    int cases = 0;
    while (cases < 100) {
        pocket::PocketCase c = pocket::make_case(rng);
        for (int k = 0; k < 400 && cases < 100; ++k) {
            Point l2{2.4 * u(rng) - 1.2, 1 + 3 * u(rng)};
            Point E2 = c.pk.world(l2);
            if (!contains(c.pk.polygon, E2) || observe(c.pk.polygon, c.P, E2).visible) continue;
            Point E1 = c.pk.world({u(rng) - 0.5, l2.y - 1 + 2 * u(rng)});
            if (dist(E1, E2) > 1 || !validate_move(c.pk.polygon, E1, E2).ok() || !pocket::rook_state(c, E1)) continue;
            ++cases;
            Observation obs;
            Point t = pocket::reply(c, E1, E2, obs);
            Point lt = c.pk.local(t);
            EXPECT_GE(lt.y, kGuard - 1e-9);
            EXPECT_TRUE(oracle::segment_inside(c.oq, t, E2));
            EXPECT_LE(std::abs(lt.x - l2.x), 0.5 + 1e-9);
        }
    }
}
