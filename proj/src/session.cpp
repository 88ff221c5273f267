#include "losp/session.hpp"

#include "httplib.h"
#include "json.hpp"
#include "losp/search_path.hpp"
#include "losp/strategy.hpp"

namespace losp {

using json = nlohmann::json;

namespace {

json pt(Point p) { return json::array({p.x, p.y}); }

json error_doc(const std::string& code, const std::string& message) {
    return json{{"error", code}, {"message", message}};
}

[[noreturn]] void fail(const std::string& code, int status, const std::string& message, json extra = json::object()) {
    json body = error_doc(code, message);
    for (auto it = extra.begin(); it != extra.end(); ++it) body[it.key()] = it.value();
    throw SessionError(code, status, message, body.dump());
}

}  // namespace

const char* session_status_name(SessionStatus s) {
    switch (s) {
        case SessionStatus::AWAITING_EVADER: return "AWAITING_EVADER";
        case SessionStatus::RESOLVING: return "RESOLVING";
        case SessionStatus::FINISHED: return "FINISHED";
    }
    return "?";
}

Session::Session(std::string id, PolygonDoc doc, RuleConfig cfg) : id_(std::move(id)), doc_(std::move(doc)) {
    if (!doc_.evader_start) fail("missing-evader-start", 400, "the polygon document has no evader_start");
    try {
        Polygon q(doc_.vertices);
        dec_ = std::make_unique<Decomposition>(q, doc_.sweep);
        game_ = std::make_unique<Game>(*dec_, *doc_.evader_start, cfg);
    } catch (const SessionError&) {
        throw;
    } catch (const std::exception& e) {
        fail("invalid-polygon", 422, e.what());
    }
    if (game_->finished()) status_ = SessionStatus::FINISHED;
}

std::string Session::state() const {
    std::lock_guard<std::mutex> lk(data_);
    return state_locked();
}

std::string Session::visibility() const {
    Point p;
    long turn;
    {
        std::lock_guard<std::mutex> lk(data_);
        p = game_->pursuer();
        turn = game_->turn();
    }
    json region = json::array();
    for (Point v : visibility_region(dec_->polygon(), p)) region.push_back(pt(v));
    return json{{"id", id_}, {"turn", turn}, {"pursuer", pt(p)}, {"region", region}}.dump();
}

std::string Session::state_locked() const {
    const Game& g = *game_;
    const Pursuer& s = g.strategy();
    json j;
    j["id"] = id_;
    j["turn"] = g.turn();
    j["max_turns"] = g.max_turns();
    j["status"] = session_status_name(status_);
    j["phase"] = phase_name(g.phase());
    j["to_move"] = g.finished() ? json(nullptr) : json("EVADER");
    j["pursuer"] = pt(g.pursuer());
    j["evader"] = pt(g.evader());
    j["mode"] = mode_name(s.mode());
    j["gambit"] = gambit_name(s.last_step().gambit.kind);
    j["headway"] = s.headway();
    j["evader_visible"] = observe(dec_->polygon(), g.pursuer(), g.evader()).visible;
    if (auto f = s.rook_frontier()) j["rook_frontier"] = json::array({pt(f->a), pt(f->b)});
    else j["rook_frontier"] = nullptr;
    try {
        GuardedFrontier gf = s.guarded();
        j["guarded_frontier"] = json{{"frontier", json::array({pt(gf.frontier.a), pt(gf.frontier.b)})},
                                     {"checkpoint", pt(gf.checkpoint.location)}};
    } catch (const std::exception&) {
        j["guarded_frontier"] = nullptr;
    }
    json path = json::array();
    for (const auto& a : s.path().arcs) path.push_back(json::array({pt(a.a), pt(a.b)}));
    j["search_path"] = path;
    if (g.finished()) {
        json o{{"phase", phase_name(g.phase())}, {"turns", g.turn()}};
        if (g.phase() == Phase::CAPTURED) o["capture_point"] = pt(g.pursuer());
        j["outcome"] = o;
    } else {
        j["outcome"] = nullptr;
    }
    j["polygon"] = json::parse(dump_polygon_doc(doc_));
    return j.dump();
}

std::string Session::move(Point to, long expected_turn) {
    std::unique_lock<std::mutex> writer(writer_, std::try_to_lock);
    if (!writer.owns_lock()) fail("turn-conflict", 409, "another move is being applied to this session");
    Game next = [&] {
        std::lock_guard<std::mutex> lk(data_);
        if (game_->finished()) fail("game-over", 409, "the game is over", json{{"state", json::parse(state_locked())}});
        if (expected_turn >= 0 && expected_turn != game_->turn())
            fail("turn-conflict", 409, "the move was made against a stale turn",
                 json{{"state", json::parse(state_locked())}});
        status_ = SessionStatus::RESOLVING;
        return *game_;
    }();
    MoveCheck mc;
    std::string internal;
    try {
        mc = next.evader_move(to);
    } catch (const std::exception& e) {
        internal = e.what();
    }
    std::lock_guard<std::mutex> lk(data_);
    if (!internal.empty()) {
        status_ = SessionStatus::AWAITING_EVADER;
        throw std::runtime_error(internal);
    }
    if (!mc.ok()) {
        status_ = SessionStatus::AWAITING_EVADER;
        json extra{{"violation", violation_name(mc.violation)}, {"state", json::parse(state_locked())}};
        if (mc.obstruction) extra["obstruction"] = pt(*mc.obstruction);
        fail("illegal-move", 422, std::string("illegal evader move: ") + violation_name(mc.violation), extra);
    }
    *game_ = std::move(next);
    status_ = game_->finished() ? SessionStatus::FINISHED : SessionStatus::AWAITING_EVADER;
    return state_locked();
}

std::string SessionManager::create(const std::string& body) {
    PolygonDoc doc;
    RuleConfig cfg;
    try {
        doc = parse_polygon_doc(body);
        json j = json::parse(body);
        if (j.contains("epsilon")) cfg.epsilon = j["epsilon"].get<double>();
        if (j.contains("max_turns")) cfg.max_turns = j["max_turns"].get<long>();
    } catch (const std::exception& e) {
        fail("invalid-document", 400, e.what());
    }
    std::string id;
    {
        std::unique_lock<std::shared_mutex> lk(mu_);
        id = "s" + std::to_string(next_++);
    }
    auto s = std::make_shared<Session>(id, std::move(doc), cfg);
    std::string st = s->state();
    std::unique_lock<std::shared_mutex> lk(mu_);
    sessions_[id] = s;
    return st;
}

std::shared_ptr<Session> SessionManager::find(const std::string& id) const {
    std::shared_lock<std::shared_mutex> lk(mu_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) fail("not-found", 404, "no session " + id);
    return it->second;
}

std::string SessionManager::state(const std::string& id) const { return find(id)->state(); }

std::string SessionManager::visibility(const std::string& id) const { return find(id)->visibility(); }

std::string SessionManager::move(const std::string& id, const std::string& body) {
    auto s = find(id);
    Point to;
    long turn = -1;
    try {
        json j = json::parse(body);
        const json& t = j.at("to");
        if (!t.is_array() || t.size() != 2) throw std::invalid_argument("to must be an [x, y] pair");
        to = {t[0].get<double>(), t[1].get<double>()};
        if (j.contains("turn") && !j["turn"].is_null()) turn = j["turn"].get<long>();
    } catch (const std::exception& e) {
        fail("invalid-document", 400, e.what());
    }
    return s->move(to, turn);
}

std::size_t SessionManager::size() const {
    std::shared_lock<std::shared_mutex> lk(mu_);
    return sessions_.size();
}

struct SessionServer::Impl {
    httplib::Server http;
};

SessionServer::SessionServer(SessionManager& m) : impl_(std::make_unique<Impl>()) {
    auto guard = [](httplib::Response& res, auto&& f) {
        try {
            res.set_content(f(), "application/json");
        } catch (const SessionError& e) {
            res.status = e.status();
            res.set_content(e.body(), "application/json");
        } catch (const std::exception& e) {
            res.status = 500;
            res.set_content(error_doc("internal", e.what()).dump(), "application/json");
        }
    };
    impl_->http.Post("/create", [&m, guard](const httplib::Request& req, httplib::Response& res) {
        guard(res, [&] { return m.create(req.body); });
    });
    impl_->http.Get(R"(/state/([A-Za-z0-9]+))", [&m, guard](const httplib::Request& req, httplib::Response& res) {
        guard(res, [&] { return m.state(req.matches[1]); });
    });
    impl_->http.Get(R"(/visibility/([A-Za-z0-9]+))", [&m, guard](const httplib::Request& req, httplib::Response& res) {
        guard(res, [&] { return m.visibility(req.matches[1]); });
    });
    impl_->http.Post(R"(/move/([A-Za-z0-9]+))", [&m, guard](const httplib::Request& req, httplib::Response& res) {
        guard(res, [&] { return m.move(req.matches[1], req.body); });
    });
}

SessionServer::~SessionServer() { stop(); }

int SessionServer::bind(const std::string& host, int port) {
    if (port == 0) return impl_->http.bind_to_any_port(host);
    return impl_->http.bind_to_port(host, port) ? port : -1;
}

void SessionServer::run() { impl_->http.listen_after_bind(); }

void SessionServer::stop() {
    if (impl_) impl_->http.stop();
}

}  // namespace losp
