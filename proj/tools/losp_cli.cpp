#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "losp/engine.hpp"
#include "losp/evader.hpp"
#include "losp/fixtures.hpp"
#include "losp/generators.hpp"
#include "losp/io.hpp"
#include "losp/session.hpp"

using namespace losp;
using json = nlohmann::json;

namespace {

struct GameRow {
    std::string label;
    std::size_t n = 0;
    double area = 0, diam = 0;
    std::string policy;
    long turns = 0;
    Phase outcome = Phase::EVADER_TO_MOVE;
    int switches = 0;  // rook entries plus gambits
    std::string error;
};

struct Fit {
    double slope = 0, intercept = 0, r2 = 0;
};

Fit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    Fit f;
    double n = static_cast<double>(x.size());
    if (n < 2) return f;
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    double den = n * sxx - sx * sx;
    if (den == 0) return f;
    f.slope = (n * sxy - sx * sy) / den;
    f.intercept = (sy - f.slope * sx) / n;
    double ss_tot = syy - sy * sy / n, ss_res = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double r = y[i] - (f.slope * x[i] + f.intercept);
        ss_res += r * r;
    }
    f.r2 = ss_tot > 0 ? 1 - ss_res / ss_tot : 1;
    return f;
}

int worker_count() {
    if (const char* w = std::getenv("LOSP_WORKERS")) {
        int k = std::atoi(w);
        if (k > 0) return k;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

Point parse_point(const std::string& s) {
    double x = 0, y = 0;
    char comma = 0;
    std::istringstream in(s);
    if (!(in >> x >> comma >> y) || comma != ',') throw std::invalid_argument("expected x,y but got " + s);
    return {x, y};
}

int cmd_verify(const std::string& path) {
    PolygonDoc doc;
    try {
        doc = load_polygon_doc(path);
        Polygon q(doc.vertices);
        Decomposition dec(q, doc.sweep);
        std::printf("ok %s n=%zu area=%.6g diameter=%.6g min_feature=%.6g frames=%d\n", sweep_kind_name(dec.kind()),
                    q.size(), q.area(), q.diameter(), q.min_feature(), dec.frame_count());
        if (q.min_feature() < 1) std::printf("warning: minimum feature size %.6g is below 1\n", q.min_feature());
        if (doc.evader_start && !contains(q, *doc.evader_start)) {
            std::printf("invalid: evader_start lies outside the polygon\n");
            return 1;
        }
        return 0;
    } catch (const SweepError& e) {
        std::printf("invalid: %s", e.what());
        if (e.vertex() >= 0) std::printf(" (witness vertex %d)", e.vertex());
        std::printf("\n");
    } catch (const std::exception& e) {
        std::printf("invalid: %s\n", e.what());
    }
    return 1;
}

int cmd_run(const std::string& path, const std::string& policy, std::uint64_t seed, const std::string& start,
            long max_turns, double epsilon, const std::string& out) {
    PolygonDoc doc = load_polygon_doc(path);
    if (!start.empty()) doc.evader_start = parse_point(start);
    if (!doc.evader_start) throw std::invalid_argument("no evader start: pass --evader-start or set evader_start");
    Polygon q(doc.vertices);
    Decomposition dec(q, doc.sweep);
    Game g(dec, *doc.evader_start, RuleConfig{epsilon, max_turns});
    auto pol = make_policy(policy, seed);
    g.play(*pol);
    TraceFile t = make_trace(doc, g, seed, policy);
    if (!out.empty()) save_trace(out, t);
    const auto& st = g.strategy().stats();
    std::printf("%s turns=%ld bound=%ld rook_entries=%d escapes=%d blockings=%d hidings=%d hash=%s\n",
                phase_name(g.phase()), g.turn(), g.max_turns(), st.rook_entries, st.escapes, st.blockings, st.hidings,
                t.header.hash.c_str());
    return g.phase() == Phase::CAPTURED ? 0 : 2;
}

struct BatchSpec {
    std::string family = "monotone";
    int count = 0;
    std::uint64_t seed = 1;
    int starts = 1;
    int pieces = 0;
    std::vector<std::string> policies;
    long max_turns = 0;
    double epsilon = 1;
};

int cmd_batch(BatchSpec spec, const std::string& spec_file, const std::string& csv) {
    if (!spec_file.empty()) {
        json j = json::parse(read_file(spec_file));
        spec.family = j.value("family", spec.family);
        spec.count = j.value("count", spec.count);
        spec.seed = j.value("seed", spec.seed);
        spec.starts = j.value("starts", spec.starts);
        spec.pieces = j.value("pieces", spec.pieces);
        if (j.contains("policies")) spec.policies = j["policies"].get<std::vector<std::string>>();
    }
    if (spec.policies.empty()) spec.policies = standard_policies();
    if (spec.count <= 0 || spec.starts <= 0) throw std::invalid_argument("empty batch: count and starts must be positive");
    for (const auto& p : spec.policies) make_policy(p, 0);

    struct Job {
        int poly;
        int start;
        std::size_t policy;
    };
    std::vector<Generated> polys;
    std::vector<std::unique_ptr<Decomposition>> decs;
    std::vector<std::vector<Point>> starts;
    for (int i = 0; i < spec.count; ++i) {
        std::uint64_t s = spec.seed + i;
        polys.push_back(generate(spec.family, s, spec.pieces));
        decs.push_back(std::make_unique<Decomposition>(polys.back().polygon, polys.back().sweep));
        starts.push_back(random_starts(polys.back().polygon, s * 7919, spec.starts));
    }
    std::vector<Job> jobs;
    for (int i = 0; i < spec.count; ++i)
        for (int k = 0; k < spec.starts; ++k)
            for (std::size_t p = 0; p < spec.policies.size(); ++p) jobs.push_back({i, k, p});
    std::vector<GameRow> rows(jobs.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t j; (j = next++) < jobs.size();) {
            const Job& job = jobs[j];
            const Generated& g = polys[job.poly];
            GameRow& r = rows[j];
            r.label = g.family + "#" + std::to_string(g.seed) + "/" + std::to_string(job.start);
            r.n = g.polygon.size();
            r.area = g.polygon.area();
            r.diam = g.polygon.diameter();
            r.policy = spec.policies[job.policy];
            try {
                Game game(*decs[job.poly], starts[job.poly][job.start], RuleConfig{spec.epsilon, spec.max_turns});
                auto pol = make_policy(r.policy, g.seed);
                game.play(*pol);
                r.turns = game.turn();
                r.outcome = game.phase();
                const auto& st = game.strategy().stats();
                r.switches = st.rook_entries + st.escapes + st.blockings + st.hidings;
            } catch (const std::exception& e) {
                r.error = e.what();
            }
        }
    };
    int w = std::min<int>(worker_count(), static_cast<int>(jobs.size()));
    std::vector<std::thread> pool;
    for (int i = 0; i < w; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();

    std::ostringstream table;
    table << "game,n,area,diam,policy,turns,outcome,mode_switches\n";
    std::printf("%-22s %4s %9s %8s %-8s %7s %-15s %s\n", "game", "n", "area", "diam", "policy", "turns", "outcome",
                "switches");
    int captured = 0;
    std::vector<double> x1, x2, y;
    double worst = 0;
    for (const auto& r : rows) {
        const char* outcome = r.error.empty() ? phase_name(r.outcome) : "ERROR";
        std::printf("%-22s %4zu %9.2f %8.2f %-8s %7ld %-15s %d%s%s\n", r.label.c_str(), r.n, r.area, r.diam,
                    r.policy.c_str(), r.turns, outcome, r.switches, r.error.empty() ? "" : " ", r.error.c_str());
        table << r.label << "," << r.n << "," << r.area << "," << r.diam << "," << r.policy << "," << r.turns << ","
              << outcome << "," << r.switches << "\n";
        if (r.error.empty() && r.outcome == Phase::CAPTURED) ++captured;
        x1.push_back(static_cast<double>(r.n) + r.area);
        x2.push_back(static_cast<double>(r.n) * r.area);
        y.push_back(static_cast<double>(r.turns));
        worst = std::max(worst, r.turns / x1.back());
    }
    Fit f1 = linear_fit(x1, y), f2 = linear_fit(x2, y);
    std::printf("captured %d/%zu\n", captured, rows.size());
    std::printf("fit turns ~ %.4f (n + area) + %.3f  r2=%.3f\n", f1.slope, f1.intercept, f1.r2);
    std::printf("fit turns ~ %.6f (n area) + %.3f  r2=%.3f\n", f2.slope, f2.intercept, f2.r2);
    std::printf("max turns/(n + area) = %.4f\n", worst);
    if (!csv.empty()) write_file(csv, table.str());
    return captured == static_cast<int>(rows.size()) ? 0 : 2;
}

int cmd_render(const std::string& input, const std::string& polygon, const std::string& out) {
    PolygonDoc doc;
    std::vector<TraceRecord> records;
    if (!input.empty()) {
        TraceFile t = load_trace(input);
        doc = t.header.polygon;
        records = t.records;
    }
    if (!polygon.empty()) doc = load_polygon_doc(polygon);
    if (doc.vertices.empty()) throw std::invalid_argument("nothing to render: pass a trace or --polygon");
    std::string svg = render_svg(doc, records);
    if (out.empty()) std::cout << svg;
    else write_file(out, svg);
    return 0;
}

int cmd_replay(const std::string& path) {
    TraceFile t = load_trace(path);
    ReplayReport r = replay_trace(t);
    std::printf("%s outcome=%s expected=%s actual=%s%s%s\n", r.ok ? "bit-exact" : "MISMATCH", phase_name(r.outcome),
                r.expected_hash.c_str(), r.actual_hash.c_str(), r.message.empty() ? "" : " ", r.message.c_str());
    return r.ok ? 0 : 1;
}

int cmd_generate(const std::string& family, std::uint64_t seed, int n, const std::string& out) {
    Generated g = generate(family, seed, n);
    PolygonDoc doc{g.polygon.vertices(), g.sweep, random_starts(g.polygon, seed * 7919, 1).front()};
    std::string text = dump_polygon_doc(doc);
    if (out.empty()) std::cout << text;
    else write_file(out, text);
    return 0;
}

int cmd_fixture(const std::string& name, const std::string& out) {
    if (name.empty()) {
        for (const auto& f : fixture_names()) std::printf("%-22s %s\n", f.c_str(), fixture(f).description.c_str());
        return 0;
    }
    Fixture f = fixture(name);
    std::string text = dump_polygon_doc({f.polygon.vertices(), f.sweep, f.evader_start});
    if (out.empty()) std::cout << text;
    else write_file(out, text);
    return 0;
}

int cmd_serve(const std::string& host, int port) {
    SessionManager m;
    SessionServer s(m);
    int bound = s.bind(host, port);
    if (bound < 0) {
        std::fprintf(stderr, "cannot bind %s:%d\n", host.c_str(), port);
        return 1;
    }
    std::printf("serving on http://%s:%d (POST /create, GET /state/<id>, POST /move/<id>)\n", host.c_str(), bound);
    std::fflush(stdout);
    s.run();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"line-of-sight pursuit in sweepable polygons"};
    app.require_subcommand(1);

    std::string path, policy = "greedy", start, out, polygon, csv, spec_file, host = "127.0.0.1", family = "monotone",
                      name;
    std::uint64_t seed = 1;
    long max_turns = 0;
    double epsilon = 1;
    int port = 8765, n = 0;
    BatchSpec spec;
    std::string policies;

    auto* verify = app.add_subcommand("verify", "check a polygon file and its sweep annotation");
    verify->add_option("polygon", path, "polygon file")->required();

    auto* run = app.add_subcommand("run", "play one game and write its trace");
    run->add_option("polygon", path, "polygon file")->required();
    run->add_option("--policy", policy, "evader policy")->capture_default_str();
    run->add_option("--seed", seed, "seed for the random policy")->capture_default_str();
    run->add_option("--evader-start", start, "x,y (overrides the file)");
    run->add_option("--max-turns", max_turns, "turn bound (0 = default)");
    run->add_option("--epsilon", epsilon, "capture radius in (0, 1]")->capture_default_str();
    run->add_option("-o,--out", out, "trace file");

    auto* batch = app.add_subcommand("batch", "play generated polygons against evader policies");
    batch->add_option("--spec", spec_file, "JSON spec {family, count, seed, starts, pieces, policies}");
    batch->add_option("--family", spec.family, "monotone | scallop | sweepable")->capture_default_str();
    batch->add_option("--count", spec.count, "number of polygons");
    batch->add_option("--seed", spec.seed, "first seed")->capture_default_str();
    batch->add_option("--starts", spec.starts, "evader starts per polygon")->capture_default_str();
    batch->add_option("--pieces", spec.pieces, "polygon size, or pieces for sweepable");
    batch->add_option("--policy", policies, "comma separated policies (default: all six)");
    batch->add_option("--max-turns", spec.max_turns, "turn bound (0 = default)");
    batch->add_option("--epsilon", spec.epsilon, "capture radius in (0, 1]")->capture_default_str();
    batch->add_option("--csv", csv, "write the table as CSV");

    auto* render = app.add_subcommand("render", "draw a trace (or a bare polygon) as SVG");
    render->add_option("trace", path, "trace file");
    render->add_option("--polygon", polygon, "polygon file (without a trace: boundary only)");
    render->add_option("-o,--out", out, "SVG file (default stdout)");

    auto* replay = app.add_subcommand("replay", "re-run a trace and check it bit for bit");
    replay->add_option("trace", path, "trace file")->required();

    auto* gen = app.add_subcommand("generate", "write a random polygon file");
    gen->add_option("family", family, "monotone | scallop | sweepable")->required();
    gen->add_option("--seed", seed, "seed")->capture_default_str();
    gen->add_option("-n", n, "vertex count, or pieces for sweepable (0 = random)");
    gen->add_option("-o,--out", out, "polygon file (default stdout)");

    auto* fix = app.add_subcommand("fixture", "list fixtures or write one as a polygon file");
    fix->add_option("name", name, "fixture name (omit to list)");
    fix->add_option("-o,--out", out, "polygon file (default stdout)");

    auto* serve = app.add_subcommand("serve", "run the session service");
    serve->add_option("--host", host, "bind address")->capture_default_str();
    serve->add_option("--port", port, "port (0 picks a free one)")->capture_default_str();

    CLI11_PARSE(app, argc, argv);
    try {
        if (*verify) return cmd_verify(path);
        if (*run) return cmd_run(path, policy, seed, start, max_turns, epsilon, out);
        if (*batch) {
            std::stringstream ss(policies);
            for (std::string p; std::getline(ss, p, ',');)
                if (!p.empty()) spec.policies.push_back(p);
            return cmd_batch(spec, spec_file, csv);
        }
        if (*render) return cmd_render(path, polygon, out);
        if (*replay) return cmd_replay(path);
        if (*gen) return cmd_generate(family, seed, n, out);
        if (*fix) return cmd_fixture(name, out);
        if (*serve) return cmd_serve(host, port);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
