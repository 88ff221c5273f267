#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>

#include "losp/engine.hpp"
#include "losp/io.hpp"
#include "losp/sweep.hpp"

namespace losp {

// code is one of: invalid-document, invalid-polygon, missing-evader-start,
// not-found, illegal-move, turn-conflict, game-over. body is the JSON error
// document sent to the client.
class SessionError : public std::runtime_error {
public:
    SessionError(std::string code, int status, const std::string& message, std::string body)
        : std::runtime_error(message), code_(std::move(code)), status_(status), body_(std::move(body)) {}
    const std::string& code() const { return code_; }
    int status() const { return status_; }
    const std::string& body() const { return body_; }

private:
    std::string code_;
    int status_;
    std::string body_;
};

enum class SessionStatus { AWAITING_EVADER, RESOLVING, FINISHED };
const char* session_status_name(SessionStatus s);

// One live game. Moves are applied by a single writer; a second concurrent
// submission gets turn-conflict instead of waiting. Reads never block on a
// move in progress: they see the last settled state marked RESOLVING.
class Session {
public:
    Session(std::string id, PolygonDoc doc, RuleConfig cfg);

    const std::string& id() const { return id_; }
    // State document (JSON text).
    std::string state() const;
    // to is the evader's destination; expected_turn, when >= 0, must equal the
    // current turn. Throws SessionError; an illegal move leaves the turn as is.
    std::string move(Point to, long expected_turn = -1);
    // Region the pursuer currently sees: {"turn", "pursuer", "region"}.
    std::string visibility() const;

private:
    std::string id_;
    PolygonDoc doc_;
    std::unique_ptr<Decomposition> dec_;
    std::unique_ptr<Game> game_;
    SessionStatus status_ = SessionStatus::AWAITING_EVADER;
    mutable std::mutex data_;
    std::mutex writer_;

    std::string state_locked() const;
};

// Transport-independent protocol: every call takes and returns JSON text.
class SessionManager {
public:
    // body: polygon document with evader_start, optionally "epsilon" and "max_turns".
    std::string create(const std::string& body);
    std::string state(const std::string& id) const;
    // body: {"to": [x, y], "turn": n} (turn optional)
    std::string move(const std::string& id, const std::string& body);
    std::string visibility(const std::string& id) const;
    std::size_t size() const;

private:
    mutable std::shared_mutex mu_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    long next_ = 1;

    std::shared_ptr<Session> find(const std::string& id) const;
};

// HTTP on a local socket: POST /create, GET /state/<id>, POST /move/<id>,
// GET /visibility/<id>.
class SessionServer {
public:
    explicit SessionServer(SessionManager& m);
    ~SessionServer();
    // Binds host:port (port 0 picks a free one) and returns the bound port, or -1.
    int bind(const std::string& host, int port);
    // Serves until stop(); call after bind.
    void run();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace losp
