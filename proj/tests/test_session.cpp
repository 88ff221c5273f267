#include <gtest/gtest.h>

#include <atomic>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "losp/evader.hpp"
#include "losp/fixtures.hpp"
#include "losp/io.hpp"
#include "losp/session.hpp"

using namespace losp;
using json = nlohmann::json;

namespace {

std::string create_body(const std::string& name) {
    Fixture f = fixture(name);
    return dump_polygon_doc({f.polygon.vertices(), f.sweep, f.evader_start});
}

std::string move_body(Point p, long turn = -1) {
    json j{{"to", {p.x, p.y}}};
    if (turn >= 0) j["turn"] = turn;
    return j.dump();
}

Point point(const json& j) { return {j[0].get<double>(), j[1].get<double>()}; }

std::string error_code(const std::function<void()>& f) {
    try {
        f();
    } catch (const SessionError& e) {
        return e.code();
    }
    return "";
}

}  // namespace

TEST(Session, CreateReturnsFreshState) {
    SessionManager m;
    json s = json::parse(m.create(create_body("bumpy-monotone")));
    EXPECT_EQ(s["status"], "AWAITING_EVADER");
    EXPECT_EQ(s["turn"], 0);
    EXPECT_EQ(s["to_move"], "EVADER");
    EXPECT_TRUE(s["outcome"].is_null());
    EXPECT_FALSE(s["search_path"].empty());
    EXPECT_EQ(s["polygon"]["vertices"].size(), fixture("bumpy-monotone").polygon.size());
    Fixture f = fixture("bumpy-monotone");
    EXPECT_EQ(point(s["evader"]), f.evader_start);
    EXPECT_EQ(json::parse(m.state(s["id"])), s);
}

TEST(Session, CreateErrors) {
    SessionManager m;
    EXPECT_EQ(error_code([&] { m.create("{"); }), "invalid-document");
    Fixture f = fixture("square");
    EXPECT_EQ(error_code([&] { m.create(dump_polygon_doc({f.polygon.vertices(), f.sweep, std::nullopt})); }),
              "missing-evader-start");
    std::string bowtie = R"({"vertices": [[0,0],[4,4],[4,0],[0,4]], "sweep": {"kind": "monotone", "axis": [1,0]},
                             "evader_start": [1, 2]})";
    EXPECT_EQ(error_code([&] { m.create(bowtie); }), "invalid-polygon");
    std::string inside_center = R"({"vertices": [[-2,-2],[2,-2],[2,2],[-2,2]], "sweep": {"kind": "scallop",
                                    "center": [0, 0]}, "evader_start": [1, 1]})";
    EXPECT_EQ(error_code([&] { m.create(inside_center); }), "invalid-polygon");
    EXPECT_EQ(m.size(), 0u);
}

TEST(Session, UnknownIdIsNotFound) {
    SessionManager m;
    EXPECT_EQ(error_code([&] { m.state("nope"); }), "not-found");
    EXPECT_EQ(error_code([&] { m.move("nope", move_body({0, 0})); }), "not-found");
}

TEST(Session, LegalMoveGetsThePursuerReply) {
    SessionManager m;
    json s = json::parse(m.create(create_body("bumpy-monotone")));
    Point e = point(s["evader"]), p = point(s["pursuer"]);
    json after = json::parse(m.move(s["id"], move_body(e + Point{0.5, 0})));
    EXPECT_EQ(after["turn"], 1);
    EXPECT_EQ(point(after["evader"]), (e + Point{0.5, 0}));
    EXPECT_NE(point(after["pursuer"]), p);
}

TEST(Session, IllegalMoveKeepsTheTurn) {
    SessionManager m;
    json s = json::parse(m.create(create_body("bumpy-monotone")));
    std::string id = s["id"];
    Point e = point(s["evader"]);
    try {
        m.move(id, move_body(e + Point{1.5, 0}));
        FAIL() << "accepted a move of length 1.5";
    } catch (const SessionError& err) {
        EXPECT_EQ(err.code(), "illegal-move");
        EXPECT_EQ(err.status(), 422);
        json b = json::parse(err.body());
        EXPECT_EQ(b["violation"], "TOO_FAR");
        EXPECT_EQ(b["state"]["turn"], 0);
    }
    json now = json::parse(m.state(id));
    EXPECT_EQ(now["turn"], 0);
    EXPECT_EQ(now["status"], "AWAITING_EVADER");
    EXPECT_EQ(point(now["evader"]), e);
    EXPECT_EQ(json::parse(m.move(id, move_body(e + Point{0.3, 0})))["turn"], 1);
}

TEST(Session, MoveThroughAWallReportsTheObstruction) {
    SessionManager m;
    // a V notch hangs from the top edge with its tip at (3, 2)
    std::string notched = R"({"vertices": [[0,0],[6,0],[6,4],[4,4],[3,2],[2,4],[0,4]],
                              "sweep": {"kind": "monotone", "axis": [1,0]}, "evader_start": [3, 1.8]})";
    json s = json::parse(m.create(notched));
    try {
        m.move(s["id"], move_body({3, 2.6}));
        FAIL() << "accepted a move into the notch";
    } catch (const SessionError& err) {
        json b = json::parse(err.body());
        EXPECT_EQ(b["violation"], "EXITS_POLYGON");
        EXPECT_TRUE(b.contains("obstruction"));
        EXPECT_EQ(b["state"]["turn"], 0);
    }
}

TEST(Session, StaleTurnIsAConflict) {
    SessionManager m;
    json s = json::parse(m.create(create_body("bumpy-monotone")));
    std::string id = s["id"];
    Point e = point(s["evader"]);
    m.move(id, move_body(e + Point{0.2, 0}, 0));
    EXPECT_EQ(error_code([&] { m.move(id, move_body(e + Point{0.4, 0}, 0)); }), "turn-conflict");
    EXPECT_EQ(json::parse(m.state(id))["turn"], 1);
}

TEST(Session, ConcurrentSubmissionsApplyExactlyOne) {
    for (int round = 0; round < 20; ++round) {
        SessionManager m;
        json s = json::parse(m.create(create_body("two-escape-monotone")));
        std::string id = s["id"];
        Point e = point(s["evader"]);
        std::atomic<int> applied{0}, conflicts{0};
        std::atomic<bool> go{false};
        std::vector<std::thread> ts;
        for (int i = 0; i < 4; ++i)
            ts.emplace_back([&, i] {
                while (!go) std::this_thread::yield();
                try {
                    m.move(id, move_body(e + Point{0.1 * (i + 1), 0}, 0));
                    ++applied;
                } catch (const SessionError& err) {
                    if (err.code() == "turn-conflict") ++conflicts;
                }
            });
        go = true;
        for (auto& t : ts) t.join();
        EXPECT_EQ(applied.load(), 1);
        EXPECT_EQ(conflicts.load(), 3);
        EXPECT_EQ(json::parse(m.state(id))["turn"], 1);
    }
}

TEST(Session, ScriptedClientMatchesTheOfflineEngine) {
    Fixture f = fixture("two-escape-monotone");
    Decomposition dec(f.polygon, f.sweep);
    Game offline(dec, f.evader_start);
    auto pol = make_policy("zigzag", 1);
    offline.play(*pol);
    ASSERT_EQ(offline.phase(), Phase::CAPTURED);

    SessionManager m;
    json s = json::parse(m.create(create_body("two-escape-monotone")));
    std::string id = s["id"];
    std::size_t k = 0;
    for (const auto& r : offline.records()) {
        if (r.actor != Actor::EVADER) continue;
        s = json::parse(m.move(id, move_body(r.to, s["turn"].get<long>())));
        const auto& reply = offline.records()[++k * 2 - 1];
        EXPECT_EQ(point(s["pursuer"]), reply.to);
    }
    EXPECT_EQ(s["status"], "FINISHED");
    EXPECT_EQ(s["outcome"]["phase"], "CAPTURED");
    EXPECT_EQ(s["turn"], offline.turn());
    EXPECT_EQ(point(s["outcome"]["capture_point"]), offline.pursuer());
    EXPECT_EQ(error_code([&] { m.move(id, move_body(offline.evader())); }), "game-over");
}

TEST(Session, VisibilityOverlayFollowsThePursuer) {
    SessionManager m;
    std::string notched = R"({"vertices": [[0,0],[6,0],[6,4],[4,4],[3,2],[2,4],[0,4]],
                              "sweep": {"kind": "monotone", "axis": [1,0]}, "evader_start": [5, 3.5]})";
    json s = json::parse(m.create(notched));
    json v = json::parse(m.visibility(s["id"]));
    EXPECT_EQ(v["turn"], 0);
    EXPECT_EQ(point(v["pursuer"]), point(s["pursuer"]));
    std::vector<Point> ring;
    for (const auto& p : v["region"]) ring.push_back(point(p));
    ASSERT_GE(ring.size(), 3u);
    // the pursuer starts at the left end, so the notch hides part of the right side
    double a = std::abs(signed_area(ring));
    EXPECT_GT(a, 10);
    EXPECT_LT(a, Polygon({{0, 0}, {6, 0}, {6, 4}, {4, 4}, {3, 2}, {2, 4}, {0, 4}}).area() - 1e-6);
    EXPECT_EQ(error_code([&] { m.visibility("nope"); }), "not-found");
}

TEST(SessionServer, HttpRoundTrip) {
    SessionManager m;
    SessionServer server(m);
    int port = server.bind("127.0.0.1", 0);
    ASSERT_GT(port, 0);
    std::thread t([&] { server.run(); });
    httplib::Client c("127.0.0.1", port);
    auto created = c.Post("/create", create_body("square"), "application/json");
    ASSERT_TRUE(created);
    ASSERT_EQ(created->status, 200);
    json s = json::parse(created->body);
    std::string id = s["id"];

    auto st = c.Get(("/state/" + id).c_str());
    ASSERT_TRUE(st);
    EXPECT_EQ(json::parse(st->body)["turn"], 0);

    Point e = point(s["evader"]);
    auto bad = c.Post(("/move/" + id).c_str(), move_body(e + Point{3, 0}), "application/json");
    ASSERT_TRUE(bad);
    EXPECT_EQ(bad->status, 422);
    EXPECT_EQ(json::parse(bad->body)["error"], "illegal-move");

    auto good = c.Post(("/move/" + id).c_str(), move_body(e + Point{0, -0.5}, 0), "application/json");
    ASSERT_TRUE(good);
    EXPECT_EQ(good->status, 200);
    EXPECT_EQ(json::parse(good->body)["turn"], 1);

    auto vis = c.Get(("/visibility/" + id).c_str());
    ASSERT_TRUE(vis);
    EXPECT_EQ(vis->status, 200);
    EXPECT_EQ(json::parse(vis->body)["region"].size(), 4u);

    auto missing = c.Get("/state/zzz");
    ASSERT_TRUE(missing);
    EXPECT_EQ(missing->status, 404);
    server.stop();
    t.join();
}
