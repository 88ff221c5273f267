#pragma once

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "losp/engine.hpp"
#include "losp/geom.hpp"
#include "losp/strategy.hpp"

namespace losp {

// Everything the evader knows: the map, both positions and the pursuer's
// (deterministic) controller.
struct EvaderView {
    const Decomposition& dec;
    Point evader;
    Point pursuer;
    const Pursuer& strategy;
    long turn;
    RuleConfig rules;
};

class EvaderPolicy {
public:
    virtual ~EvaderPolicy() = default;
    virtual std::string name() const = 0;
    // A legal move: length <= 1 and inside the polygon.
    virtual Point next(const EvaderView& view) = 0;
};

// Fan of 64 directions x 8 radii around e plus vertex-shadow and
// frontier-parallel targets; unfiltered (legality is checked lazily).
std::vector<Point> candidate_targets(const EvaderView& view);

struct Lookahead {
    Point pursuer;
    GambitKind gambit = GambitKind::NONE;
    bool captured = false;
    bool visible = false;
};
// The pursuer's answer to the evader moving to `to`.
Lookahead simulate_response(const EvaderView& view, Point to);

class ZigzagPolicy : public EvaderPolicy {
public:
    std::string name() const override { return "zigzag"; }
    Point next(const EvaderView& view) override;

private:
    double dir_ = 1;
};

class GreedyDistancePolicy : public EvaderPolicy {
public:
    std::string name() const override { return "greedy"; }
    Point next(const EvaderView& view) override;
};

class HiderPolicy : public EvaderPolicy {
public:
    std::string name() const override { return "hider"; }
    Point next(const EvaderView& view) override;
};

class BlockerPolicy : public EvaderPolicy {
public:
    std::string name() const override { return "blocker"; }
    Point next(const EvaderView& view) override;
};

class EscaperPolicy : public EvaderPolicy {
public:
    std::string name() const override { return "escaper"; }
    Point next(const EvaderView& view) override;
};

class RandomPolicy : public EvaderPolicy {
public:
    explicit RandomPolicy(std::uint64_t seed) : rng_(seed) {}
    std::string name() const override { return "random"; }
    Point next(const EvaderView& view) override;

private:
    std::mt19937_64 rng_;
};

class ScriptedPolicy : public EvaderPolicy {
public:
    explicit ScriptedPolicy(std::vector<Point> moves) : moves_(std::move(moves)) {}
    std::string name() const override { return "scripted"; }
    // The next scripted target; stays put once the script runs out.
    Point next(const EvaderView& view) override;

private:
    std::vector<Point> moves_;
    std::size_t i_ = 0;
};

// Moves supplied from outside (one per turn); blocks until one is queued.
class ExternalPolicy : public EvaderPolicy {
public:
    std::string name() const override { return "external"; }
    void push(Point p);
    Point next(const EvaderView& view) override;

private:
    std::mutex mu_;
    std::condition_variable cv_;
    std::deque<Point> queue_;
};

// The six built-in adversaries used by the batch harness.
std::vector<std::string> standard_policies();
// zigzag, greedy, hider, blocker, escaper, random. Throws std::invalid_argument.
std::unique_ptr<EvaderPolicy> make_policy(const std::string& name, std::uint64_t seed);

}  // namespace losp
