#include "fc/cli.hpp"

#include <CLI11.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "fc/binom_oracle.hpp"
#include "fc/certify.hpp"
#include "fc/graphsim.hpp"
#include "fc/selftest.hpp"

namespace fc {

namespace {

struct Usage : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SimConfig {
    int n2 = 0;
    int H = 0;
    std::string mode = "exhaustive";
    std::uint64_t samples = 100000;
    int restarts = 20;
    std::string graph;
};

struct Context {
    RunConfig cfg;
    SimConfig sim;
    int sets = 10;
    bool inject_fault = false;
    std::ostream& out;
    std::ostream& err;
};

void require_literal(const std::string& g) {
    try {
        parse_decimal(g);
    } catch (const std::exception&) {
        throw Usage("--gamma must be a decimal literal, got '" + g + "'");
    }
}

Mode run_mode(const RunConfig& c) {
    try {
        return parse_mode(c.mode);
    } catch (const std::exception&) {
        throw Usage("--mode must be fast or certified");
    }
}

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

// Writes the report and prints the summary line; exit code follows the verdict.
int finish(Context& ctx, ClaimReport r, Mode mode, const std::string& extra) {
    r.mode = to_string(mode);
    if (mode == Mode::fast && r.verdict == Verdict::certified) r.verdict = Verdict::estimated;
    std::string path = write_report(r, ctx.cfg.output_dir);
    ctx.out << r.claim_id << ": " << to_string(r.verdict);
    if (!extra.empty()) ctx.out << " " << extra;
    if (const Check* f = r.first_failure()) ctx.out << " first failure: " << f->name;
    ctx.out << " (" << fmt("%.1f", r.wall_seconds) << " s) report " << path << "\n";
    return exit_code(r.verdict);
}

std::string bracket(const ClaimReport& r, const char* label) {
    auto v = r.find(label);
    return v ? std::string(label) + " " + format_interval(*v) : "";
}

int cmd_gamma_bounds(Context& ctx) {
    Mode mode = run_mode(ctx.cfg);
    auto r = certify_gamma_bounds({}, mode);
    GammaBoundsInput in;
    return finish(ctx, r, mode, "bracket [" + in.gamma_lo + ", " + in.gamma_hi + "]");
}

int cmd_claim_b1(Context& ctx) {
    Mode mode = run_mode(ctx.cfg);
    std::string g = ctx.cfg.gamma.empty() ? sweep_gamma : ctx.cfg.gamma;
    require_literal(g);
    return finish(ctx, certify_initial_interval(g, mode), mode, "gamma " + g);
}

int cmd_sweep(Context& ctx, const std::string& claim, bool b3) {
    Mode mode = run_mode(ctx.cfg);
    if (ctx.cfg.refine < 0 || ctx.cfg.refine > 4) throw Usage("--refine must lie in [0, 4]");
    if (ctx.cfg.parallelism < 1) throw Usage("--parallelism must be positive");
    std::vector<SegmentPlan> plan;
    try {
        for (auto& s : resolve_manifest(ctx.cfg.manifest))
            if ((s.tag == CaseTag::b3_local) == b3 && s.tag != CaseTag::b1_tail) plan.push_back(s);
    } catch (const ManifestError& e) {
        throw Usage(std::string("manifest: ") + e.what());
    }
    std::string g = ctx.cfg.gamma.empty() ? sweep_gamma : ctx.cfg.gamma;
    require_literal(g);
    SweepOptions opt{ctx.cfg.parallelism, ctx.cfg.refine, mode};
    auto r = certify_sweep(claim, plan, g, opt);
    return finish(ctx, r, mode,
                  std::to_string(r.segments_checked) + " segments, worst " + r.worst_segment);
}

int cmd_claim_b4(Context& ctx) {
    Mode mode = run_mode(ctx.cfg);
    std::string lo = hessian_gamma_lo, hi = hessian_gamma_hi;
    if (!ctx.cfg.gamma.empty()) {
        auto comma = ctx.cfg.gamma.find(',');
        lo = ctx.cfg.gamma.substr(0, comma);
        hi = comma == std::string::npos ? lo : ctx.cfg.gamma.substr(comma + 1);
    }
    require_literal(lo);
    require_literal(hi);
    auto r = certify_hessian(lo, hi);
    return finish(ctx, r, mode, bracket(r, "delta"));
}

int cmd_assumption(Context& ctx) {
    std::vector<ClaimReport> inputs;
    for (const auto& id : assumption_inputs)
        if (auto r = load_latest(ctx.cfg.output_dir, id)) inputs.push_back(*r);
    auto a = assemble_assumption_report(inputs);
    Mode mode = a.report.mode == "fast" ? Mode::fast : Mode::certified;
    std::string extra;
    for (const auto& n : a.report.notes)
        if (n.rfind("IncompleteInputs", 0) == 0) extra = n;
    return finish(ctx, a.report, mode, extra);
}

int cmd_oracle_binomial(Context& ctx) {
    if (ctx.sets < 1) throw Usage("--sets must be positive");
    auto t0 = std::chrono::steady_clock::now();
    std::uint64_t seed = ctx.cfg.seed.value_or(1);
    auto study = rate_study(ctx.sets, seed);
    ClaimReport r;
    r.claim_id = "oracle-binomial";
    r.verdict = Verdict::estimated;
    std::vector<RateRow> rows;
    double lo = 1e300, hi = 0;
    for (std::size_t i = 0; i < study.size(); ++i) {
        const auto& s = study[i];
        rows.insert(rows.end(), s.rows.begin(), s.rows.end());
        for (double x : s.ratios) lo = std::min(lo, x), hi = std::max(hi, x);
        std::ostringstream d;
        d << "a1 " << s.a1 << " a2 " << s.a2 << " m " << s.m << " ratios " << s.ratios[0] << ", "
          << s.ratios[1];
        r.check("rate set " + std::to_string(i), s.within(2.5, 6.0), d.str());
    }
    r.notes.push_back("seed " + std::to_string(seed));
    r.notes.push_back("csv " + write_artifact(ctx.cfg.output_dir, "oracle-binomial", ".csv", rates_csv(rows)));
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return finish(ctx, r, Mode::certified,
                  "error ratios in [" + fmt("%.3f", lo) + ", " + fmt("%.3f", hi) + "]");
}

std::string reduced_fraction(std::uint64_t num, std::size_t pairs) {
    using boost::multiprecision::cpp_rational;
    cpp_rational q(num, boost::multiprecision::cpp_int(1) << pairs);
    return numerator(q).str() + "/" + denominator(q).str();
}

int cmd_simulate(Context& ctx) {
    const auto& s = ctx.sim;
    std::uint64_t seed = ctx.cfg.seed.value_or(1);
    int threads = ctx.cfg.parallelism;
    if (threads < 1) throw Usage("--parallelism must be positive");
    std::optional<Graph> given;
    if (!s.graph.empty()) {
        try {
            given = from_hex(s.graph);
        } catch (const std::exception& e) {
            throw Usage(std::string("--graph: ") + e.what());
        }
    }
    int n2 = given ? given->n() : s.n2;
    if (n2 < 2) throw Usage("--n2 must be at least 2");
    std::vector<CsvRow> rows;
    std::string summary;
    try {
        if (s.mode == "exhaustive" && given) {
            auto c = count_friendly_exhaustive(*given, s.H);
            rows.push_back({seed, n2, s.H, std::to_string(c)});
            summary = "X_" + std::to_string(s.H) + " = " + std::to_string(c);
        } else if (s.mode == "exhaustive") {
            auto m = threads > 1 ? first_moment_exhaustive(n2, s.H) : first_moment_exhaustive_serial(n2, s.H);
            std::string q = reduced_fraction(m.numerator, pair_count(n2));
            rows.push_back({seed, n2, s.H, q});
            summary = "E X_" + std::to_string(s.H) + " = " + q + " = " + fmt("%.12g", m.mean);
        } else if (s.mode == "monte-carlo") {
            if (s.samples < 2) throw Usage("--samples must be at least 2");
            auto m = first_moment_monte_carlo(n2, s.H, s.samples, seed, threads);
            rows.push_back({seed, n2, s.H, fmt("%.17g", m.mean)});
            summary = "E X_" + std::to_string(s.H) + " ~ " + fmt("%.6g", m.mean) + " +- " + fmt("%.3g", m.stderr_) +
                      " (" + std::to_string(m.samples) + " samples)";
        } else if (s.mode == "search") {
            if (s.restarts < 1) throw Usage("--restarts must be positive");
            Graph g = given ? *given : sample_gnp_half(n2, seed);
            auto res = local_search_max_margin(g, s.restarts, seed, threads);
            rows.push_back({seed, n2, res.best_H, std::to_string(res.best_H)});
            summary = "best_H " + std::to_string(res.best_H) + ", best_H/sqrt(n2/2) " +
                      fmt("%.5f", normalized_margin(res.best_H, n2)) + " (context: .17566)";
        } else {
            throw Usage("simulate --mode must be exhaustive, monte-carlo or search");
        }
    } catch (const TooLarge& e) {
        throw Usage(e.what());
    }
    std::string path = write_artifact(ctx.cfg.output_dir, "simulate", ".csv", graph_csv(rows));
    ctx.out << "simulate " << s.mode << " n2=" << n2 << ": " << summary << " csv " << path << "\n";
    return 0;
}

int cmd_selftest(Context& ctx) {
    SelftestOptions opt;
    opt.seed = ctx.cfg.seed.value_or(1);
    opt.inject_rounding_fault = ctx.inject_fault;
    std::ostringstream log;
    int rc = run_selftest(log, opt);
    ctx.err << log.str();
    std::string path = write_artifact(ctx.cfg.output_dir, "selftest", ".log", log.str());
    std::string last;
    std::istringstream is(log.str());
    for (std::string line; std::getline(is, line);)
        if (line.rfind("FAIL", 0) == 0 && last.empty()) last = line;
    ctx.out << "selftest: " << (rc == 0 ? "passed" : "failed");
    if (!last.empty()) ctx.out << " (" << last << ")";
    ctx.out << " log " << path << "\n";
    return rc;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Context ctx{RunConfig{}, SimConfig{}, 10, false, out, err};
    RunConfig& c = ctx.cfg;

    CLI::App app{"Certified numerics for friendly bisections of G(n, 1/2)", "fc"};
    app.require_subcommand(1, 1);

    auto common = [&](CLI::App* s) {
        s->add_option("--out", c.output_dir, "report directory (FC_OUT overrides)");
        s->add_option("--seed", c.seed, "64-bit seed");
        s->add_option("--parallelism", c.parallelism, "worker threads")->check(CLI::PositiveNumber);
    };
    auto certifying = [&](CLI::App* s) {
        common(s);
        s->add_option("--mode", c.mode, "fast or certified")->check(CLI::IsMember({"fast", "certified"}));
        s->add_option("--gamma", c.gamma, "gamma as a decimal literal");
    };

    auto* gb = app.add_subcommand("gamma-bounds", "bracket the critical gamma");
    common(gb);
    gb->add_option("--mode", c.mode, "fast or certified")->check(CLI::IsMember({"fast", "certified"}));
    auto* b1 = app.add_subcommand("claim-b1", "initial interval beta in [0, .001]");
    certifying(b1);
    auto* b2 = app.add_subcommand("claim-b2", "middle-segment sweep");
    auto* b3 = app.add_subcommand("claim-b3", "local-box sweep");
    for (auto* s : {b2, b3}) {
        certifying(s);
        s->add_option("--manifest", c.manifest, "bundled, smoke, or a path");
        s->add_option("--refine", c.refine, "bisections per failing segment (0..4)");
    }
    auto* b4 = app.add_subcommand("claim-b4", "Hessian certificate near beta = 1/2");
    certifying(b4);
    auto* as = app.add_subcommand("assumption", "combine the latest claim reports");
    common(as);
    auto* ob = app.add_subcommand("oracle-binomial", "exact binomial tail vs Gaussian rate study");
    common(ob);
    ob->add_option("--sets", ctx.sets, "random parameter sets");
    auto* sim = app.add_subcommand("simulate", "random-graph laboratory");
    common(sim);
    sim->add_option("--n2", ctx.sim.n2, "number of vertices");
    sim->add_option("--H", ctx.sim.H, "margin threshold");
    sim->add_option("--mode", ctx.sim.mode, "exhaustive, monte-carlo or search")
        ->check(CLI::IsMember({"exhaustive", "monte-carlo", "search"}));
    sim->add_option("--samples", ctx.sim.samples, "Monte Carlo graphs");
    sim->add_option("--restarts", ctx.sim.restarts, "local search restarts");
    sim->add_option("--graph", ctx.sim.graph, "graph as <n2>:<hex>");
    auto* st = app.add_subcommand("selftest", "fast invariant suite");
    common(st);
    st->add_flag("--inject-rounding-fault", ctx.inject_fault, "narrow every rounding (must fail)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "fc: " << e.what() << "\n" << app.help();
        return exit_usage;
    }
    if (const char* env = std::getenv("FC_OUT"); env && *env) c.output_dir = env;

    CLI::App* sub = app.get_subcommands().front();
    c.command = sub->get_name();
    try {
        if (sub == gb) return cmd_gamma_bounds(ctx);
        if (sub == b1) return cmd_claim_b1(ctx);
        if (sub == b2) return cmd_sweep(ctx, "claim-b2", false);
        if (sub == b3) return cmd_sweep(ctx, "claim-b3", true);
        if (sub == b4) return cmd_claim_b4(ctx);
        if (sub == as) return cmd_assumption(ctx);
        if (sub == ob) return cmd_oracle_binomial(ctx);
        if (sub == sim) return cmd_simulate(ctx);
        return cmd_selftest(ctx);
    } catch (const Usage& e) {
        err << "fc " << c.command << ": " << e.what() << "\n" << sub->help();
        return exit_usage;
    } catch (const std::logic_error& e) {
        // malformed literals and out-of-range parameters
        err << "fc " << c.command << ": " << e.what() << "\n";
        return exit_usage;
    }
}

}  // namespace fc
