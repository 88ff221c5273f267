#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "losp/geom.hpp"
#include "losp/sweep.hpp"

namespace losp {

// A random polygon whose annotation has been verified and whose minimum
// feature size is at least 1. Deterministic in the seed.
struct Generated {
    std::string family;
    std::uint64_t seed = 0;
    Polygon polygon;
    SweepAnnotation sweep;
};

// x-sorted vertex walk with chain jitter, randomly rotated. n = 0 picks a
// size in [6, 30]. Area stays <= max_area.
Generated random_monotone(std::uint64_t seed, int n = 0, double max_area = 300);
// Angle-sorted radial walk about a center, span < pi. n = 0 picks [6, 30].
Generated random_scallop(std::uint64_t seed, int n = 0);
// Monotone piece into a scallop piece, optionally followed by a second
// monotone piece leaving along the last spoke. pieces is 2 or 3.
Generated random_sweepable(std::uint64_t seed, int pieces = 2);
// family: monotone | scallop | sweepable (n selects pieces for sweepable).
// Throws std::invalid_argument for an unknown family.
Generated generate(const std::string& family, std::uint64_t seed, int n = 0);

// Uniform interior point (rejection sampling over the bounding box).
Point random_interior_point(const Polygon& q, std::mt19937_64& rng);
std::vector<Point> random_starts(const Polygon& q, std::uint64_t seed, int count);

}  // namespace losp
