#include "losp/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace losp {

namespace {

Point polar(double deg, double r) {
    double a = deg * M_PI / 180.0;
    return {r * std::cos(a), r * std::sin(a)};
}

std::vector<Point> scaled(const std::vector<Point>& pts, double s) {
    std::vector<Point> out;
    out.reserve(pts.size());
    for (Point p : pts) out.push_back(s * p);
    return out;
}

struct Raw {
    std::string description;
    std::vector<Point> pts;
    SweepAnnotation sweep;
    Point evader;
};

Raw raw_fixture(const std::string& name) {
    if (name == "square")
        return {"4x4 axis-aligned square", {{0, 0}, {4, 0}, {4, 4}, {0, 4}}, SweepAnnotation::monotone({1, 0}), {3, 3}};

    if (name == "bumpy-monotone") {
        std::vector<Point> lower{{0.75, 0.5}, {1.1, -2},   {1.4, -.75}, {1.9, 0}, {3, -2.25},
                                 {3.25, 0},   {3.5, .1},   {3.7, -0.05}, {4.2, -2}, {4.5, 0}};
        std::vector<Point> upper{{3.75, 2.3}, {3.5, 1.5}, {3.2, 2.5}, {2.6, -.5}, {2.1, 2.4}, {1.7, 1.8}, {1.3, 2.3}};
        lower.insert(lower.end(), upper.begin(), upper.end());
        return {"17-vertex monotone polygon with deep teeth on both chains", lower, SweepAnnotation::monotone({1, 0}),
                {4.0, 0.5}};
    }

    if (name == "fan-scallop") {
        std::vector<Point> pts{polar(60, 5),  polar(80, 3),  polar(85, 4),    polar(110, 5),
                               polar(115, 3), polar(130, 5), polar(145, 3.5), polar(120, 2),
                               polar(100, 3.7), polar(95, 3.7), polar(85, 1),  polar(70, 1)};
        return {"12-vertex scallop about the origin", pts, SweepAnnotation::scallop({0, 0}), polar(70, 2.5)};
    }

    if (name == "two-escape-monotone") {
        std::vector<Point> pts{{0, 1},    {0.45, -.3}, {.6, .2},   {1.1, -1.5},  {1.4, -.4},  {1.7, -1},
                               {1.9, 0.5}, {3, -1.75}, {3.5, -.75}, {4.2, -1.5}, {4.9, -.5},  {5.5, -1.6},
                               {5.75, -1}, {6, -1.7},  {6.5, 0},   {6.25, 1.5},  {5.5, -.75}, {5, 2.1},
                               {4.3, -.2}, {3.9, .5},  {3.75, 1.8}, {3.5, 1},    {3.2, 2},    {2.6, .2},
                               {2.1, 1.9}, {1.7, 1.3}, {1.3, 1.8}, {1, 0},      {0.5, 2}};
        return {"29-vertex monotone polygon with alternating teeth", pts, SweepAnnotation::monotone({1, 0}), {6.0, 0.0}};
    }

    if (name == "notched-monotone") {
        std::vector<Point> pts{{-1.7, 1},  {-1, 0},     {.5, 0},   {1, 1.175}, {1.5, 0},   {2, 0},
                               {3.2, .25}, {3.3, .5},   {3.5, .2}, {4.15, -.2}, {4.85, .2}, {5, .5},
                               {6, .3},    {6, 3.6},    {4.35, 3.2}, {3.6, 3.2}, {2.93, 2.7}, {2.2, 3},
                               {2.18, 2.5}, {2, 3},     {0, 2.5},  {-0.8, 1},  {-1.25, 2.5}, {-1.7, 2.5}};
        return {"monotone polygon with a deep upper notch and a lower spike", pts, SweepAnnotation::monotone({1, 0}),
                {5.5, 2.0}};
    }

    if (name == "mono-to-scallop") {
        std::vector<Point> pts{{0, 0},   {.25, 0}, {.5, 1.25}, {.75, 0},   {1.75, -.25}, {2.33, 0}, {2.2, -.75},
                               {2.5, -1}, {4, -1},  {3.2, 1.5}, {1.5, 2}, {1.25, 1},   {1, 2},    {0, 2}};
        PieceAnnotation m;
        m.kind = SweepKind::MONOTONE;
        m.axis = {1, 0};
        PieceAnnotation s;
        s.kind = SweepKind::SCALLOP;
        s.center = {1.75, -1.5};
        s.clockwise = true;
        return {"monotone piece followed by a scallop piece", pts, SweepAnnotation::sweepable({m, s}), {3.3, -0.5}};
    }

    if (name == "five-piece-sweepable") {
        std::vector<Point> pts{{.75, 2},   {1, 2.5},   {1.25, 2.5}, {1.5, 1},   {1.75, 2.5}, {2, 2.5},
                               {4, 1.75},  {4, 2.68},  {5, 3},      {7.25, 2.75}, {8.25, 2}, {8.19, .5},
                               {7.25, 1},  {6.5, 1.84}, {6.5, 1},   {6, .9},    {5.64, .5},  {3.64, 1},
                               {3, 0},     {2.5, 1.5}, {2, 0},      {1, 0}};
        std::reverse(pts.begin(), pts.end());
        PieceAnnotation q1{SweepKind::MONOTONE, {1, 0}, {0, 0}, true, -1, -1};
        PieceAnnotation q2{SweepKind::SCALLOP, {1, 0}, {3, 4}, false, -1, -1};
        PieceAnnotation q3{SweepKind::MONOTONE, {0.8, 0.6}, {0, 0}, true, -1, -1};
        PieceAnnotation q4{SweepKind::SCALLOP, {1, 0}, {7.25, 0}, true, -1, -1};
        PieceAnnotation q5{SweepKind::SCALLOP, {1, 0}, {7.25, 4.25}, false, -1, -1};
        return {"five pieces: monotone, scallop above, tilted monotone, scallop below, scallop above", pts,
                SweepAnnotation::sweepable({q1, q2, q3, q4, q5}), {8.0, 1.5}};
    }

    throw std::out_of_range("unknown fixture: " + name);
}

}  // namespace

double feature_scale(const std::vector<Point>& pts) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) m = std::min(m, dist(pts[i], pts[j]));
    if (m >= 1) return 1;
    return std::ceil(1.0 / m);
}

std::vector<std::string> fixture_names() {
    return {"square",          "bumpy-monotone",  "fan-scallop",         "two-escape-monotone",
            "notched-monotone", "mono-to-scallop", "five-piece-sweepable"};
}

Fixture fixture(const std::string& name) {
    Raw r = raw_fixture(name);
    double s = feature_scale(r.pts);
    Fixture f;
    f.name = name;
    f.description = r.description;
    f.scale = s;
    f.polygon = Polygon(scaled(r.pts, s));
    f.sweep = r.sweep;
    f.sweep.center = s * f.sweep.center;
    for (auto& p : f.sweep.pieces) p.center = s * p.center;
    f.evader_start = s * r.evader;
    return f;
}

}  // namespace losp
