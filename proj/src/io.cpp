#include "losp/io.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "losp/strategy.hpp"

namespace losp {

using json = nlohmann::json;

namespace {

json pt(Point p) { return json::array({p.x, p.y}); }

Point get_pt(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw FormatError(std::string(what) + " must be an [x, y] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

const json& field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw FormatError(std::string("missing field: ") + key);
    return *it;
}

SweepKind kind_from(const std::string& s) {
    if (s == "monotone") return SweepKind::MONOTONE;
    if (s == "scallop") return SweepKind::SCALLOP;
    if (s == "sweepable") return SweepKind::SWEEPABLE;
    throw FormatError("unknown sweep kind: " + s);
}

json piece_json(const PieceAnnotation& p) {
    json j{{"kind", sweep_kind_name(p.kind)}};
    if (p.kind == SweepKind::MONOTONE) j["axis"] = pt(p.axis);
    else {
        j["center"] = pt(p.center);
        j["clockwise"] = p.clockwise;
    }
    if (p.first >= 0) j["first"] = p.first;
    if (p.last >= 0) j["last"] = p.last;
    return j;
}

PieceAnnotation piece_from(const json& j) {
    if (!j.is_object()) throw FormatError("sweep piece must be an object");
    PieceAnnotation p;
    p.kind = kind_from(field(j, "kind").get<std::string>());
    if (p.kind == SweepKind::SWEEPABLE) throw FormatError("sweep pieces are monotone or scallop");
    if (p.kind == SweepKind::MONOTONE) p.axis = get_pt(field(j, "axis"), "axis");
    else p.center = get_pt(field(j, "center"), "center");
    p.clockwise = j.value("clockwise", true);
    p.first = j.value("first", -1);
    p.last = j.value("last", -1);
    return p;
}

json sweep_json(const SweepAnnotation& a) {
    json j{{"kind", sweep_kind_name(a.kind)}};
    switch (a.kind) {
        case SweepKind::MONOTONE: j["axis"] = pt(a.axis); break;
        case SweepKind::SCALLOP: j["center"] = pt(a.center); break;
        case SweepKind::SWEEPABLE: {
            json ps = json::array();
            for (const auto& p : a.pieces) ps.push_back(piece_json(p));
            j["pieces"] = ps;
            break;
        }
    }
    return j;
}

SweepAnnotation sweep_from(const json& j) {
    if (!j.is_object()) throw FormatError("sweep must be an object");
    SweepKind k = kind_from(field(j, "kind").get<std::string>());
    switch (k) {
        case SweepKind::MONOTONE: return SweepAnnotation::monotone(get_pt(field(j, "axis"), "axis"));
        case SweepKind::SCALLOP: return SweepAnnotation::scallop(get_pt(field(j, "center"), "center"));
        case SweepKind::SWEEPABLE: {
            const json& ps = field(j, "pieces");
            if (!ps.is_array() || ps.empty()) throw FormatError("pieces must be a non-empty array");
            std::vector<PieceAnnotation> out;
            for (const auto& p : ps) out.push_back(piece_from(p));
            return SweepAnnotation::sweepable(out);
        }
    }
    throw FormatError("unknown sweep kind");
}

json doc_json(const PolygonDoc& d) {
    json vs = json::array();
    for (auto p : d.vertices) vs.push_back(pt(p));
    json j{{"vertices", vs}, {"sweep", sweep_json(d.sweep)}};
    if (d.evader_start) j["evader_start"] = pt(*d.evader_start);
    return j;
}

PolygonDoc doc_from(const json& j) {
    if (!j.is_object()) throw FormatError("polygon document must be an object");
    PolygonDoc d;
    const json& vs = field(j, "vertices");
    if (!vs.is_array()) throw FormatError("vertices must be an array");
    for (const auto& v : vs) d.vertices.push_back(get_pt(v, "vertex"));
    d.sweep = sweep_from(field(j, "sweep"));
    if (j.contains("evader_start") && !j["evader_start"].is_null())
        d.evader_start = get_pt(j["evader_start"], "evader_start");
    return d;
}

template <class E>
E enum_from(const std::string& s, std::initializer_list<E> all, const char* (*name)(E), const char* what) {
    for (E e : all)
        if (s == name(e)) return e;
    throw FormatError(std::string("unknown ") + what + ": " + s);
}

json record_json(const TraceRecord& r) {
    return json{{"turn", r.turn},         {"actor", actor_name(r.actor)},   {"from", pt(r.from)},
                {"to", pt(r.to)},         {"mode", mode_name(r.mode)},      {"gambit", gambit_name(r.gambit)},
                {"visible", r.visible},   {"advance", r.advance},           {"frame", r.frame}};
}

TraceRecord record_from(const json& j) {
    TraceRecord r;
    r.turn = field(j, "turn").get<long>();
    r.actor = enum_from(field(j, "actor").get<std::string>(), {Actor::EVADER, Actor::PURSUER}, actor_name, "actor");
    r.from = get_pt(field(j, "from"), "from");
    r.to = get_pt(field(j, "to"), "to");
    r.mode = enum_from(field(j, "mode").get<std::string>(), {Mode::SEARCH, Mode::ROOK, Mode::CAUTIOUS_SEARCH},
                       mode_name, "mode");
    r.gambit = enum_from(field(j, "gambit").get<std::string>(),
                         {GambitKind::NONE, GambitKind::HIDING, GambitKind::BLOCKING, GambitKind::ESCAPE},
                         gambit_name, "gambit");
    r.visible = field(j, "visible").get<bool>();
    r.advance = field(j, "advance").get<double>();
    r.frame = field(j, "frame").get<int>();
    return r;
}

std::vector<std::string> body_lines(const TraceFile& t) {
    std::vector<std::string> out;
    for (const auto& r : t.records) out.push_back(record_json(r).dump());
    out.push_back(json{{"outcome", phase_name(t.outcome)}, {"turns", t.turns}}.dump());
    return out;
}

std::string join_lines(const std::vector<std::string>& lines) {
    std::string s;
    for (const auto& l : lines) s += l + "\n";
    return s;
}

bool same_record(const TraceRecord& a, const TraceRecord& b) {
    return a.turn == b.turn && a.actor == b.actor && a.from == b.from && a.to == b.to && a.mode == b.mode &&
           a.gambit == b.gambit && a.visible == b.visible && a.advance == b.advance && a.frame == b.frame;
}

}  // namespace

const char* sweep_kind_name(SweepKind k) {
    switch (k) {
        case SweepKind::MONOTONE: return "monotone";
        case SweepKind::SCALLOP: return "scallop";
        case SweepKind::SWEEPABLE: return "sweepable";
    }
    return "?";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write " + path);
    out << text;
}

PolygonDoc parse_polygon_doc(const std::string& text) {
    try {
        return doc_from(json::parse(text));
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed polygon document: ") + e.what());
    }
}

std::string dump_polygon_doc(const PolygonDoc& doc) { return doc_json(doc).dump(2) + "\n"; }

PolygonDoc load_polygon_doc(const std::string& path) { return parse_polygon_doc(read_file(path)); }

void save_polygon_doc(const std::string& path, const PolygonDoc& doc) { write_file(path, dump_polygon_doc(doc)); }

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
    std::ostringstream ss;
    for (unsigned int i = 0; i < len; ++i) ss << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return ss.str();
}

std::string trace_hash(const TraceFile& t) { return sha256_hex(join_lines(body_lines(t))); }

TraceFile make_trace(const PolygonDoc& polygon, const Game& game, std::uint64_t seed, const std::string& policy) {
    TraceFile t;
    t.header.polygon = polygon;
    // the start the game actually used
    t.header.polygon.evader_start = game.records().empty() ? game.evader() : game.records().front().from;
    t.header.config = game.config();
    t.header.config.max_turns = game.max_turns();
    t.header.seed = seed;
    t.header.policy = policy;
    t.records = game.records();
    t.outcome = game.phase();
    t.turns = game.turn();
    t.header.hash = trace_hash(t);
    return t;
}

std::string dump_trace(const TraceFile& t) {
    json h{{"format", "losp-trace/1"},
           {"polygon", doc_json(t.header.polygon)},
           {"config", {{"epsilon", t.header.config.epsilon}, {"max_turns", t.header.config.max_turns}}},
           {"seed", t.header.seed},
           {"policy", t.header.policy},
           {"hash", t.header.hash}};
    return h.dump() + "\n" + join_lines(body_lines(t));
}

TraceFile parse_trace(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line))
        if (!line.empty()) lines.push_back(line);
    if (lines.size() < 2) throw FormatError("trace needs a header and an outcome line");
    TraceFile t;
    try {
        json h = json::parse(lines[0]);
        if (h.value("format", "") != "losp-trace/1") throw FormatError("not a losp trace");
        t.header.polygon = doc_from(field(h, "polygon"));
        if (!t.header.polygon.evader_start) throw FormatError("trace polygon lacks evader_start");
        const json& c = field(h, "config");
        t.header.config.epsilon = field(c, "epsilon").get<double>();
        t.header.config.max_turns = field(c, "max_turns").get<long>();
        t.header.seed = field(h, "seed").get<std::uint64_t>();
        t.header.policy = field(h, "policy").get<std::string>();
        t.header.hash = field(h, "hash").get<std::string>();
        for (std::size_t i = 1; i + 1 < lines.size(); ++i) t.records.push_back(record_from(json::parse(lines[i])));
        json o = json::parse(lines.back());
        t.outcome = enum_from(field(o, "outcome").get<std::string>(),
                              {Phase::EVADER_TO_MOVE, Phase::PURSUER_TO_MOVE, Phase::CAPTURED, Phase::BOUND_EXCEEDED},
                              phase_name, "outcome");
        t.turns = field(o, "turns").get<long>();
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed trace: ") + e.what());
    }
    std::vector<std::string> body(lines.begin() + 1, lines.end());
    if (sha256_hex(join_lines(body)) != t.header.hash) throw FormatError("trace body does not match its hash");
    return t;
}

TraceFile load_trace(const std::string& path) { return parse_trace(read_file(path)); }

void save_trace(const std::string& path, const TraceFile& t) { write_file(path, dump_trace(t)); }

ReplayReport replay_trace(const TraceFile& t) {
    ReplayReport rep;
    rep.expected_hash = t.header.hash;
    try {
        Polygon q(t.header.polygon.vertices);
        Decomposition dec(q, t.header.polygon.sweep);
        Game g(dec, *t.header.polygon.evader_start, t.header.config);
        for (const auto& r : t.records) {
            if (r.actor != Actor::EVADER) continue;
            if (g.finished()) break;
            MoveCheck mc = g.evader_move(r.to);
            if (!mc.ok()) {
                rep.message = std::string("recorded evader move rejected: ") + violation_name(mc.violation);
                break;
            }
        }
        rep.outcome = g.phase();
        TraceFile again = make_trace(t.header.polygon, g, t.header.seed, t.header.policy);
        rep.actual_hash = again.header.hash;
        std::size_t n = std::min(again.records.size(), t.records.size());
        for (std::size_t i = 0; i < n; ++i)
            if (!same_record(again.records[i], t.records[i])) {
                rep.first_mismatch = static_cast<long>(i);
                break;
            }
        if (rep.first_mismatch < 0 && again.records.size() != t.records.size())
            rep.first_mismatch = static_cast<long>(n);
        rep.ok = rep.message.empty() && rep.first_mismatch < 0 && rep.outcome == t.outcome &&
                 rep.actual_hash == rep.expected_hash;
        if (rep.message.empty() && !rep.ok) rep.message = "replay diverges from the recorded trace";
    } catch (const std::exception& e) {
        rep.message = e.what();
    }
    return rep;
}

std::string render_svg(const PolygonDoc& polygon, const std::vector<TraceRecord>& records, const RenderOptions& opt) {
    const auto& vs = polygon.vertices;
    double lox = 0, loy = 0, hix = 1, hiy = 1;
    if (!vs.empty()) {
        lox = hix = vs[0].x;
        loy = hiy = vs[0].y;
        for (auto p : vs) {
            lox = std::min(lox, p.x);
            hix = std::max(hix, p.x);
            loy = std::min(loy, p.y);
            hiy = std::max(hiy, p.y);
        }
    }
    const double pad = 1, s = opt.scale;
    double w = (hix - lox + 2 * pad) * s, h = (hiy - loy + 2 * pad) * s;
    // y grows upward in the document, downward in SVG
    auto X = [&](Point p) { return (p.x - lox + pad) * s; };
    auto Y = [&](Point p) { return (hiy - p.y + pad) * s; };
    std::ostringstream o;
    o << std::setprecision(10);
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
      << " " << h << "\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!vs.empty()) {
        o << "<polygon fill=\"#f4f4f4\" stroke=\"black\" stroke-width=\"2\" points=\"";
        for (auto p : vs) o << X(p) << "," << Y(p) << " ";
        o << "\"/>\n";
    }
    if (opt.search_path && vs.size() >= 3) {
        try {
            Polygon q(vs);
            Decomposition dec(q, polygon.sweep);
            Pursuer p(dec);
            for (const auto& a : p.path().arcs)
                o << "<line class=\"search-path\" x1=\"" << X(a.a) << "\" y1=\"" << Y(a.a) << "\" x2=\"" << X(a.b)
                  << "\" y2=\"" << Y(a.b) << "\" stroke=\"#888\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";
        } catch (const std::exception&) {
            // an invalid polygon still renders its boundary
        }
    }
    for (const auto& r : records) {
        bool pursuer = r.actor == Actor::PURSUER;
        const char* color = !pursuer ? "#3b7dd8" : (r.mode == Mode::ROOK ? "#aaaaaa" : "#000000");
        o << "<line class=\"" << (pursuer ? "pursuer" : "evader") << "\" x1=\"" << X(r.from) << "\" y1=\"" << Y(r.from)
          << "\" x2=\"" << X(r.to) << "\" y2=\"" << Y(r.to) << "\" stroke=\"" << color << "\" stroke-width=\""
          << (pursuer ? 3 : 1.5) << "\"/>\n";
    }
    if (!records.empty()) {
        Point pe = records.front().from;
        o << "<circle class=\"evader-start\" cx=\"" << X(pe) << "\" cy=\"" << Y(pe)
          << "\" r=\"4\" fill=\"#3b7dd8\"/>\n";
        const TraceRecord& last = records.back();
        if (last.actor == Actor::PURSUER)
            o << "<circle class=\"pursuer-end\" cx=\"" << X(last.to) << "\" cy=\"" << Y(last.to)
              << "\" r=\"5\" fill=\"black\"/>\n";
    }
    o << "</svg>\n";
    return o.str();
}

}  // namespace losp
