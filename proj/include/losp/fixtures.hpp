#pragma once

#include <optional>
#include <string>
#include <vector>

#include "losp/geom.hpp"
#include "losp/sweep.hpp"

namespace losp {

// Named polygons with verified sweep annotations, rescaled so the minimum
// feature size is at least 1.
struct Fixture {
    std::string name;
    std::string description;
    Polygon polygon;
    SweepAnnotation sweep;
    Point evader_start;
    double scale = 1;
};

std::vector<std::string> fixture_names();
// Throws std::out_of_range for an unknown name.
Fixture fixture(const std::string& name);

// Smallest integer factor bringing the minimum feature size to >= 1.
double feature_scale(const std::vector<Point>& pts);

}  // namespace losp
