#include "halfwave/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <sstream>

#include "halfwave/error.hpp"
#include "halfwave/profiles.hpp"
#include "halfwave/report.hpp"
#include "halfwave/seminorms.hpp"
#include "halfwave/solver.hpp"
#include "halfwave/suites.hpp"
#include "halfwave/traces.hpp"

namespace halfwave {

namespace {

using Json = nlohmann::ordered_json;
constexpr double kPi = std::numbers::pi;

std::size_t positive_count(const Config& c, const char* section, const char* key, long fallback) {
    const long v = c.get_int(section, key, fallback);
    if (v < 3) throw ConfigError(std::string("[") + section + "] " + key + " must be at least 3");
    return static_cast<std::size_t>(v);
}

}  // namespace

SpaceTimeGrid RunConfig::grid() const { return SpaceTimeGrid(x_min, x_max, m, t_max, n); }

StructuralFlux RunConfig::flux() const { return flux_by_name(flux_name, p, eps); }

RunConfig RunConfig::resolve(std::string command, Config cfg) {
    RunConfig rc;
    rc.command = std::move(command);
    rc.x_min = cfg.get_double("grid", "x_min", rc.x_min);
    rc.x_max = cfg.get_double("grid", "x_max", rc.x_max);
    rc.t_max = cfg.get_double("grid", "t_max", rc.t_max);
    rc.m = positive_count(cfg, "grid", "m", static_cast<long>(rc.m));
    rc.n = positive_count(cfg, "grid", "n", static_cast<long>(rc.n));
    if (!(rc.x_max > rc.x_min)) throw ConfigError("[grid] x_max must exceed x_min");
    if (!(rc.t_max > 0.0)) throw ConfigError("[grid] t_max must be positive");

    rc.flux_name = cfg.get_string("flux", "name", rc.flux_name);
    rc.p = cfg.get_double("flux", "p", rc.p);
    rc.eps = cfg.get_double("flux", "eps", rc.eps);

    rc.profile = cfg.get_string("problem", "profile", rc.profile);
    rc.constant = cfg.get_double("problem", "c", rc.constant);

    rc.tol = cfg.get_double("solver", "tol", rc.tol);
    rc.max_iter = static_cast<int>(cfg.get_int("solver", "max_iter", rc.max_iter));
    if (!(rc.tol > 0.0)) throw ConfigError("[solver] tol must be positive");
    if (rc.max_iter < 1) throw ConfigError("[solver] max_iter must be positive");

    const long samples = cfg.get_int("audit", "samples", static_cast<long>(rc.audit_samples));
    if (samples < 1) throw ConfigError("[audit] samples must be positive");
    rc.audit_samples = static_cast<std::size_t>(samples);

    static const char* known[] = {"zero", "heat", "separable", "manufactured", "constant", "lateral"};
    const bool is_csv = rc.profile.rfind("csv:", 0) == 0;
    if (is_csv) {
        const std::string path = rc.profile.substr(4);
        if (!std::filesystem::exists(path)) throw ConfigError("[problem] profile file '" + path + "' does not exist");
    } else if (std::find(std::begin(known), std::end(known), rc.profile) == std::end(known)) {
        throw ConfigError("[problem] unknown profile '" + rc.profile + "'");
    }
    try {
        (void)rc.grid();
        (void)rc.flux();
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
    rc.config = std::move(cfg);
    return rc;
}

namespace {

struct BuiltCase {
    WeakProblem problem;
    std::optional<SampledField2D> exact;
};

FieldFn manufactured_field() {
    return [](double x, double t) { return std::sin(kPi * x) * t * std::exp(-t); };
}

bool has_sweep(const RunConfig& rc) {
    return rc.profile == "heat" || rc.profile == "separable" || rc.profile == "manufactured";
}

ManufacturedCase manufactured_case(const RunConfig& rc, const SpaceTimeGrid& g) {
    const auto flux = rc.flux();
    ManufacturedCase c;
    if (rc.profile == "heat") {
        c = heat_manufactured(g, rc.tol);
    } else if (rc.profile == "separable") {
        c = heat_separable(g, rc.tol);
    } else if (rc.p >= 2.0) {
        c = rc.p == 2.0 ? heat_manufactured(g, rc.tol) : p_laplacian_manufactured(g, rc.p, rc.tol);
    } else {
        c = discrete_manufactured(g, flux, manufactured_field(), rc.tol);
    }
    c.problem.flux = flux;
    c.problem.max_iter = rc.max_iter;
    return c;
}

BuiltCase build_case(const RunConfig& rc, const SpaceTimeGrid& g) {
    BuiltCase b;
    if (has_sweep(rc)) {
        if ((rc.profile == "heat" || rc.profile == "separable") && rc.p != 2.0) {
            throw ConfigError("profile '" + rc.profile + "' needs p = 2");
        }
        auto c = manufactured_case(rc, g);
        b.problem = std::move(c.problem);
        b.exact = std::move(c.exact);
        return b;
    }
    b.problem.grid = g;
    b.problem.flux = rc.flux();
    b.problem.source = SourceData::zero(g);
    b.problem.tol = rc.tol;
    b.problem.max_iter = rc.max_iter;
    if (rc.profile == "zero") {
        b.problem.g = SampledField2D::zeros(g);
        b.exact = b.problem.g;
    } else if (rc.profile == "constant") {
        const double c = rc.constant;
        b.problem.g = SampledField2D::sample(g, [c](double, double) { return c; });
        b.exact = b.problem.g;
    } else if (rc.profile == "lateral") {
        // Time-constant wall data c (1 + x), zero initial values inside.
        const double c = rc.constant;
        const double x0 = g.x(0), x1 = g.x(g.m() - 1);
        b.problem.g = SampledField2D::sample(g, [=](double x, double t) {
            return (t > 0.0 || x == x0 || x == x1) ? c * (1.0 + x) : 0.0;
        });
    } else {
        try {
            b.problem.g = read_field_csv(rc.profile.substr(4), g);
        } catch (const Error& e) {
            throw ConfigError(e.what());
        }
    }
    return b;
}

SolverOptions solver_options(const RunConfig& rc) {
    SolverOptions o;
    o.audit_samples = static_cast<std::size_t>(rc.config.get_int("solver", "audit_samples", 4096));
    o.audit_seed = rc.seed;
    return o;
}

Json manifest_base(const RunConfig& rc) {
    Json j;
    j["command"] = rc.command;
    j["version"] = kVersion;
    j["seed"] = rc.seed;
    j["refine"] = rc.refine;
    Json cfg = Json::object();
    for (const auto& [k, v] : rc.config.flattened()) cfg[k] = v;
    j["config"] = cfg;
    j["resolved"] = {
        {"grid", {{"x_min", rc.x_min}, {"x_max", rc.x_max}, {"m", rc.m}, {"t_max", rc.t_max}, {"n", rc.n}}},
        {"flux", {{"name", rc.flux_name}, {"p", rc.p}, {"eps", rc.eps}}},
        {"problem", {{"profile", rc.profile}, {"c", rc.constant}}},
        {"solver", {{"tol", rc.tol}, {"max_iter", rc.max_iter}, {"eps_scale", SolverOptions{}.eps_scale},
                    {"switch_ratio", SolverOptions{}.switch_ratio},
                    {"audit_samples", rc.config.get_int("solver", "audit_samples", 4096)}}},
        {"audit", {{"samples", rc.audit_samples}}},
    };
    j["outputs"] = Json::array();
    return j;
}

std::string out_path(const RunConfig& rc, const std::string& name) {
    return (std::filesystem::path(rc.out_dir) / name).string();
}

void emit(const RunConfig& rc, Json& manifest, const std::string& name, const std::string& content) {
    write_atomic(out_path(rc, name), content);
    manifest["outputs"].push_back(name);
}

void write_manifest(const RunConfig& rc, const Json& manifest) {
    write_atomic(out_path(rc, "manifest.json"), manifest.dump(2) + "\n");
}

// Refinement sweeps in space (dt ~ dx^2) and in time; returns the orders.
Json run_sweeps(const RunConfig& rc, Json& manifest, std::ostream& out) {
    CsvTable table({"sweep", "m", "n", "dx", "dt", "max_error", "l2_error", "order"});
    Json orders = Json::object();
    auto build = [&rc](const SpaceTimeGrid& g) { return manufactured_case(rc, g); };
    for (const char* kind : {"dx", "dt"}) {
        SweepSpec spec;
        spec.x_min = rc.x_min;
        spec.x_max = rc.x_max;
        spec.t_max = rc.t_max;
        const bool space = std::string(kind) == "dx";
        // The time sweep runs on a space grid 2^refine times finer so that
        // the dx^2 error stays below the dt error.
        spec.m0 = space ? rc.m : (rc.m - 1) * (std::size_t{1} << rc.refine) + 1;
        spec.n0 = rc.n;
        spec.levels = rc.refine;
        spec.space_factor = space ? 2 : 1;
        spec.time_factor = space ? 4 : 2;
        const auto levels = refinement_sweep(spec, build);
        double last = std::nan("");
        for (std::size_t k = 0; k < levels.size(); ++k) {
            const auto& lv = levels[k];
            const double order = k == 0 ? std::nan("") : observed_order(levels[k - 1].max_error, lv.max_error, 2.0);
            table.add_row({kind, std::to_string(lv.m), std::to_string(lv.n), format_number(lv.dx),
                           format_number(lv.dt), format_number(lv.max_error), format_number(lv.l2_error),
                           format_number(order)});
            last = order;
        }
        orders[kind] = last;
        out << "order in " << kind << ": " << format_number(last) << "\n";
    }
    emit(rc, manifest, "errors.csv", table.str());
    return orders;
}

int cmd_solve(const RunConfig& rc, std::ostream& out, std::ostream& err) {
    Json manifest = manifest_base(rc);
    const auto grid = rc.grid();
    const auto built = build_case(rc, grid);
    try {
        const auto res = solve_nonhomogeneous(built.problem, solver_options(rc));
        emit(rc, manifest, "solution.csv", field_table(res.u).str());
        CsvTable hist({"iteration", "energy", "residual_dual_norm"});
        for (std::size_t k = 0; k < res.energy_trace.size(); ++k) {
            hist.add_numbers({static_cast<double>(k), res.energy_trace[k], std::sqrt(2.0 * res.energy_trace[k])});
        }
        emit(rc, manifest, "residual_history.csv", hist.str());
        manifest["result"] = {{"iterations", res.iterations},
                              {"residual_dual_norm", res.residual_dual_norm},
                              {"regularized_residual", res.regularized_residual},
                              {"newton_from", res.newton_from},
                              {"eps", res.eps}};
        if (built.exact) {
            double e = 0.0;
            for (std::size_t k = 0; k < res.u.values.size(); ++k)
                e = std::max(e, std::abs(res.u.values[k] - built.exact->values[k]));
            manifest["result"]["max_error"] = e;
        }
        out << "solved in " << res.iterations << " iterations, residual "
            << format_number(res.residual_dual_norm) << "\n";
        if (has_sweep(rc) && rc.refine >= 2) manifest["convergence_orders"] = run_sweeps(rc, manifest, out);
        manifest["status"] = "ok";
        manifest["partial"] = false;
        write_manifest(rc, manifest);
        return kExitPass;
    } catch (const NonConvergence& e) {
        manifest["status"] = "nonconvergence";
        manifest["partial"] = true;
        manifest["error"] = e.what();
        manifest["best_residual"] = e.best_residual();
        manifest["iterations"] = e.iterations();
        write_manifest(rc, manifest);
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const Error& e) {
        manifest["status"] = "failed";
        manifest["partial"] = true;
        manifest["error"] = e.what();
        write_manifest(rc, manifest);
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

int cmd_trace(const RunConfig& rc, std::ostream& out, std::ostream& err) {
    Json manifest = manifest_base(rc);
    try {
        const auto built = build_case(rc, rc.grid());
        const auto res = solve_nonhomogeneous(built.problem, solver_options(rc));
        const auto flux = rc.flux();
        const auto d = x_norm_upper(res.u, flux);
        const auto u0 = trace_initial(d);
        CsvTable tr({"x", "u0"});
        for (std::size_t i = 0; i < u0.values.size(); ++i) tr.add_numbers({u0.space.at(i), u0.values[i]});
        emit(rc, manifest, "trace_initial.csv", tr.str());

        const auto hv = hardy_vanishing_check(d.u1);
        static const char* verdicts[] = {"zero", "vanishes", "diverges"};
        manifest["decomposition"] = {{"u1_norm", d.u1_norm},
                                     {"u2_norm", d.u2_norm},
                                     {"norm_upper", d.norm_upper},
                                     {"u1_hardy_levels", hv.levels},
                                     {"u1_hardy_verdict", verdicts[static_cast<int>(hv.verdict)]}};
        if (rc.p == 2.0) {
            const auto lt = lateral_trace_p2(d, rc.p);
            CsvTable lat({"t", "left", "right"});
            for (std::size_t j = 0; j < lt.left.size(); ++j)
                lat.add_numbers({lt.left.grid.at(j), lt.left[j], lt.right[j]});
            emit(rc, manifest, "lateral_trace.csv", lat.str());
            manifest["lateral"] = {{"left_seminorm_sq", lt.left_seminorm_sq},
                                   {"right_seminorm_sq", lt.right_seminorm_sq}};
        }
        out << "norm_upper " << format_number(d.norm_upper) << ", initial trace L2 "
            << format_number(u0.l2_norm()) << "\n";
        manifest["status"] = "ok";
        manifest["partial"] = false;
        write_manifest(rc, manifest);
        return kExitPass;
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        manifest["status"] = "failed";
        manifest["partial"] = true;
        manifest["error"] = e.what();
        write_manifest(rc, manifest);
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

int cmd_audit(const RunConfig& rc, std::ostream& out) {
    Json manifest = manifest_base(rc);
    const auto rep = audit_flux(rc.flux(), rc.seed, rc.audit_samples);
    CsvTable t({"quantity", "count"});
    t.add_row({"samples", std::to_string(rep.samples)});
    t.add_row({"monotonicity_violations", std::to_string(rep.monotonicity_violations)});
    t.add_row({"coercivity_violations", std::to_string(rep.coercivity_violations)});
    t.add_row({"boundedness_violations", std::to_string(rep.boundedness_violations)});
    t.add_row({"weak_monotonicity", std::to_string(rep.weak_monotonicity)});
    t.add_row({"continuity_flags", std::to_string(rep.continuity_flags)});
    emit(rc, manifest, "audit.csv", t.str());
    out << t.str();
    manifest["status"] = rep.passed() ? "ok" : "failed";
    manifest["partial"] = false;
    write_manifest(rc, manifest);
    return rep.passed() ? kExitPass : kExitNumerical;
}

int cmd_verify(const RunConfig& rc, std::ostream& out) {
    SuiteSettings s;
    s.seed = rc.seed;
    s.refine = rc.refine;
    s.audit_samples = rc.audit_samples;
    if (rc.config.has("flux", "name")) s.configured_flux = rc.flux();
    const auto rows = run_suite(rc.suite, s);
    std::size_t failed = 0;
    for (const auto& r : rows) {
        if (!r.pass) ++failed;
        out << (r.pass ? "PASS " : "FAIL ") << r.identity << ": " << r.quantity << " = "
            << format_number(r.measured) << " (" << r.tolerance_text() << ")";
        if (!r.note.empty()) out << " [" << r.note << "]";
        out << "\n";
    }
    write_atomic(out_path(rc, "verify_" + rc.suite + ".csv"), suite_table(rows).str());
    out << rows.size() - failed << "/" << rows.size() << " checks passed\n";
    return failed == 0 ? kExitPass : kExitNumerical;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"halfwave: half-order time calculus and p-parabolic solvers"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_path, out_dir = "halfwave_out", suite = "all";
    std::uint64_t seed = 1;
    int refine = 3;
    app.add_option("--config", config_path, "configuration file");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "random seed");
    app.add_option("--refine", refine, "refinement sweep levels")->check(CLI::Range(1, 8));
    app.add_option("--suite", suite, "verification suite")->check(CLI::IsMember(suite_names()));
    app.set_version_flag("--version", kVersion);
    auto* verify = app.add_subcommand("verify", "run verification suites");
    auto* solve = app.add_subcommand("solve", "solve the configured problem");
    auto* trace = app.add_subcommand("trace", "decompose the configured solution and take its traces");
    auto* audit = app.add_subcommand("audit", "audit the configured flux");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << "\n";
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    std::string command = verify->parsed() ? "verify" : solve->parsed() ? "solve" : trace->parsed() ? "trace" : "audit";
    (void)audit;
    try {
        if (command != "verify" && config_path.empty()) throw ConfigError(command + " needs --config");
        Config cfg = config_path.empty() ? Config() : Config::load(config_path);
        RunConfig rc = RunConfig::resolve(command, std::move(cfg));
        rc.out_dir = out_dir;
        rc.seed = seed;
        rc.refine = refine;
        rc.suite = suite;
        if (command == "verify") return cmd_verify(rc, out);
        if (command == "solve") return cmd_solve(rc, out, err);
        if (command == "trace") return cmd_trace(rc, out, err);
        return cmd_audit(rc, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args;
    for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
    return run_cli(args, std::cout, std::cerr);
}

}  // namespace halfwave
