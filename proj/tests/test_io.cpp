#include <gtest/gtest.h>

#include <cstdio>

#include "losp/evader.hpp"
#include "losp/fixtures.hpp"
#include "losp/generators.hpp"
#include "losp/io.hpp"

using namespace losp;

namespace {

PolygonDoc doc_of(const Fixture& f) { return {f.polygon.vertices(), f.sweep, f.evader_start}; }

TraceFile play(const PolygonDoc& doc, const std::string& policy, std::uint64_t seed, RuleConfig cfg = {}) {
    Polygon q(doc.vertices);
    Decomposition dec(q, doc.sweep);
    Game g(dec, *doc.evader_start, cfg);
    auto pol = make_policy(policy, seed);
    g.play(*pol);
    return make_trace(doc, g, seed, policy);
}

}  // namespace

TEST(PolygonDoc, RoundTripsEveryFixtureBitExactly) {
    for (const auto& name : fixture_names()) {
        PolygonDoc d = doc_of(fixture(name));
        PolygonDoc back = parse_polygon_doc(dump_polygon_doc(d));
        ASSERT_EQ(back.vertices.size(), d.vertices.size()) << name;
        for (std::size_t i = 0; i < d.vertices.size(); ++i) EXPECT_EQ(back.vertices[i], d.vertices[i]) << name;
        EXPECT_EQ(back.sweep.kind, d.sweep.kind) << name;
        EXPECT_EQ(back.sweep.axis, d.sweep.axis) << name;
        EXPECT_EQ(back.sweep.center, d.sweep.center) << name;
        ASSERT_EQ(back.sweep.pieces.size(), d.sweep.pieces.size()) << name;
        for (std::size_t i = 0; i < d.sweep.pieces.size(); ++i) {
            EXPECT_EQ(back.sweep.pieces[i].kind, d.sweep.pieces[i].kind);
            EXPECT_EQ(back.sweep.pieces[i].axis, d.sweep.pieces[i].axis);
            EXPECT_EQ(back.sweep.pieces[i].center, d.sweep.pieces[i].center);
            EXPECT_EQ(back.sweep.pieces[i].clockwise, d.sweep.pieces[i].clockwise);
        }
        ASSERT_TRUE(back.evader_start);
        EXPECT_EQ(*back.evader_start, *d.evader_start);
    }
}

TEST(PolygonDoc, AwkwardDoublesSurvive) {
    PolygonDoc d;
    d.vertices = {{0.1, 1.0 / 3}, {1e-17 + 7, -2.0 / 7}, {M_PI, M_E}};
    d.sweep = SweepAnnotation::monotone({std::cos(0.3), std::sin(0.3)});
    PolygonDoc back = parse_polygon_doc(dump_polygon_doc(d));
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(back.vertices[i], d.vertices[i]);
    EXPECT_EQ(back.sweep.axis, d.sweep.axis);
    EXPECT_FALSE(back.evader_start);
}

TEST(PolygonDoc, StructuralErrors) {
    EXPECT_THROW(parse_polygon_doc("not json"), FormatError);
    EXPECT_THROW(parse_polygon_doc(R"({"sweep": {"kind": "monotone", "axis": [1, 0]}})"), FormatError);
    EXPECT_THROW(parse_polygon_doc(R"({"vertices": [[0, 0], [1]], "sweep": {"kind": "monotone", "axis": [1, 0]}})"),
                 FormatError);
    EXPECT_THROW(parse_polygon_doc(R"({"vertices": [], "sweep": {"kind": "spiral"}})"), FormatError);
    EXPECT_THROW(parse_polygon_doc(R"({"vertices": [], "sweep": {"kind": "sweepable", "pieces": []}})"), FormatError);
}

TEST(PolygonDoc, SweepablePiecesKeepRanges) {
    PieceAnnotation a{SweepKind::MONOTONE, {1, 0}, {}, true, 0, 3};
    PieceAnnotation b{SweepKind::SCALLOP, {1, 0}, {2, -5}, false, 3, 8};
    PolygonDoc d{{{0, 0}, {1, 0}, {0, 1}}, SweepAnnotation::sweepable({a, b}), std::nullopt};
    PolygonDoc back = parse_polygon_doc(dump_polygon_doc(d));
    ASSERT_EQ(back.sweep.pieces.size(), 2u);
    EXPECT_EQ(back.sweep.pieces[0].first, 0);
    EXPECT_EQ(back.sweep.pieces[0].last, 3);
    EXPECT_EQ(back.sweep.pieces[1].first, 3);
    EXPECT_EQ(back.sweep.pieces[1].last, 8);
    EXPECT_FALSE(back.sweep.pieces[1].clockwise);
}

TEST(Sha256, KnownDigests) {
    EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Trace, DumpParseReplayIsBitExact) {
    for (const auto& name : fixture_names()) {
        for (const char* policy : {"zigzag", "hider", "random"}) {
            TraceFile t = play(doc_of(fixture(name)), policy, 11);
            TraceFile back = parse_trace(dump_trace(t));
            EXPECT_EQ(back.header.hash, t.header.hash);
            EXPECT_EQ(trace_hash(back), t.header.hash);
            ASSERT_EQ(back.records.size(), t.records.size());
            ReplayReport r = replay_trace(back);
            EXPECT_TRUE(r.ok) << name << " " << policy << ": " << r.message;
            EXPECT_EQ(r.outcome, t.outcome);
            EXPECT_EQ(r.actual_hash, t.header.hash);
        }
    }
}

TEST(Trace, SameSeedSameBytes) {
    PolygonDoc d = doc_of(fixture("bumpy-monotone"));
    EXPECT_EQ(dump_trace(play(d, "random", 5)), dump_trace(play(d, "random", 5)));
    EXPECT_NE(dump_trace(play(d, "random", 5)), dump_trace(play(d, "random", 6)));
}

TEST(Trace, TamperedBodyIsRejected) {
    std::string text = dump_trace(play(doc_of(fixture("square")), "greedy", 1));
    std::size_t at = text.find("\"visible\":");
    ASSERT_NE(at, std::string::npos);
    std::string bad = text;
    bad.replace(at, 16, bad.substr(at, 16).find("true") != std::string::npos ? "\"visible\":false" : "\"visible\":true");
    EXPECT_THROW(parse_trace(bad), FormatError);
}

TEST(Trace, EditedMoveFailsReplayEvenWithFreshHash) {
    TraceFile t = play(doc_of(fixture("bumpy-monotone")), "zigzag", 1);
    ASSERT_GE(t.records.size(), 4u);
    ASSERT_EQ(t.records[3].actor, Actor::PURSUER);
    t.records[3].to.x += 1e-9;
    t.header.hash = trace_hash(t);
    ReplayReport r = replay_trace(parse_trace(dump_trace(t)));
    EXPECT_FALSE(r.ok);
    EXPECT_EQ(r.first_mismatch, 3);
}

TEST(Trace, BoundExceededOutcomeRoundTrips) {
    RuleConfig cfg;
    cfg.max_turns = 1;
    TraceFile t = play(doc_of(fixture("bumpy-monotone")), "greedy", 1, cfg);
    EXPECT_EQ(t.outcome, Phase::BOUND_EXCEEDED);
    EXPECT_EQ(t.turns, 1);
    ReplayReport r = replay_trace(parse_trace(dump_trace(t)));
    EXPECT_TRUE(r.ok) << r.message;
    EXPECT_EQ(r.outcome, Phase::BOUND_EXCEEDED);
}

TEST(Trace, FileRoundTrip) {
    TraceFile t = play(doc_of(fixture("fan-scallop")), "blocker", 2);
    std::string path = ::testing::TempDir() + "losp_trace_test.ndjson";
    save_trace(path, t);
    TraceFile back = load_trace(path);
    EXPECT_EQ(dump_trace(back), dump_trace(t));
    std::remove(path.c_str());
}

TEST(Render, WellFormedWithModeColours) {
    TraceFile t = play(doc_of(fixture("two-escape-monotone")), "zigzag", 1);
    std::string svg = render_svg(t.header.polygon, t.records);
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
    EXPECT_NE(svg.find("class=\"search-path\""), std::string::npos);
    EXPECT_NE(svg.find("class=\"pursuer\""), std::string::npos);
    EXPECT_NE(svg.find("stroke=\"#000000\""), std::string::npos);  // search
    EXPECT_NE(svg.find("stroke=\"#aaaaaa\""), std::string::npos);  // rook
}

TEST(Render, EmptyTraceDrawsBoundaryOnly) {
    PolygonDoc d = doc_of(fixture("square"));
    std::string svg = render_svg(d, {}, RenderOptions{40, false});
    EXPECT_NE(svg.find("<polygon"), std::string::npos);
    EXPECT_EQ(svg.find("<line"), std::string::npos);
}

TEST(Generators, OutputVerifiesThroughTheFileFormat) {
    for (const char* fam : {"monotone", "scallop", "sweepable"}) {
        for (std::uint64_t s = 1; s <= 5; ++s) {
            Generated g = generate(fam, s, 0);
            PolygonDoc back = parse_polygon_doc(dump_polygon_doc({g.polygon.vertices(), g.sweep, std::nullopt}));
            Polygon q(back.vertices);
            EXPECT_NO_THROW(Decomposition(q, back.sweep)) << fam << " " << s;
            EXPECT_GE(q.min_feature(), 1.0 - 1e-9) << fam << " " << s;
        }
    }
}
