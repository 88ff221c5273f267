#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "losp/engine.hpp"
#include "losp/geom.hpp"
#include "losp/sweep.hpp"

namespace losp {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Polygon file: {"vertices": [[x, y], ...], "sweep": {...}, "evader_start": [x, y]}.
// sweep is {"kind": "monotone", "axis": [x, y]}, {"kind": "scallop", "center": [x, y]}
// or {"kind": "sweepable", "pieces": [{"kind", "axis" | "center", "clockwise", "first", "last"}]}.
struct PolygonDoc {
    std::vector<Point> vertices;
    SweepAnnotation sweep;
    std::optional<Point> evader_start;
};

// Structural parse only; geometric validation happens in Polygon and
// Decomposition. Throws FormatError.
PolygonDoc parse_polygon_doc(const std::string& text);
std::string dump_polygon_doc(const PolygonDoc& doc);
PolygonDoc load_polygon_doc(const std::string& path);
void save_polygon_doc(const std::string& path, const PolygonDoc& doc);

const char* sweep_kind_name(SweepKind k);

struct TraceHeader {
    PolygonDoc polygon;  // evader_start is always set
    RuleConfig config;
    std::uint64_t seed = 0;
    std::string policy;
    std::string hash;  // SHA-256 of the body lines
};

struct TraceFile {
    TraceHeader header;
    std::vector<TraceRecord> records;
    Phase outcome = Phase::EVADER_TO_MOVE;
    long turns = 0;
};

// Builds the trace of a game (the header hash is filled in).
TraceFile make_trace(const PolygonDoc& polygon, const Game& game, std::uint64_t seed, const std::string& policy);

// Newline-delimited: one header line, one line per record, one outcome line.
std::string dump_trace(const TraceFile& t);
// Throws FormatError, also when the body does not match the header hash.
TraceFile parse_trace(const std::string& text);
TraceFile load_trace(const std::string& path);
void save_trace(const std::string& path, const TraceFile& t);

// Hex SHA-256 of the body lines (records and outcome) as dumped.
std::string trace_hash(const TraceFile& t);
std::string sha256_hex(const std::string& bytes);

struct ReplayReport {
    bool ok = false;
    std::string message;
    Phase outcome = Phase::EVADER_TO_MOVE;
    std::string expected_hash;
    std::string actual_hash;
    long first_mismatch = -1;  // record index, -1 when none
};

// Feeds the recorded evader moves to a fresh engine and compares every
// record bit for bit, then the body hash.
ReplayReport replay_trace(const TraceFile& t);

struct RenderOptions {
    double scale = 40;       // pixels per unit
    bool search_path = true;  // the initial search path, dashed
};

// SVG with the boundary, the initial search path and both polylines; pursuer
// segments are dark in search modes and light in rook mode.
std::string render_svg(const PolygonDoc& polygon, const std::vector<TraceRecord>& records,
                       const RenderOptions& opt = {});

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace losp
