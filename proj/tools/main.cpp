#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "valbis/errors.hpp"
#include "valbis/extremum.hpp"
#include "valbis/rootfind.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 1;
constexpr int kExitNotConverged = 2;
constexpr int kExitIndeterminate = 3;
constexpr int kExitEvaluation = 4;

const char kNotConvergedMsg[] =
    "Maximum iterations reached without the desired tolerance. Input a "
    "bigger N_MAX";

struct SolveArgs {
    std::string fn;
    double a = 0.0;
    double b = 0.0;
    double m0 = 0.0;
    double u0 = 0.0;
    bool has_bracket = false;
    double tol = 1e-7;
    int max_iter = 200;
    std::string oracle = "hybrid";
    int grid_points = 1025;
    int max_depth = 40;
    std::string on_unknown = "treat-unreachable";
    double deriv_tol = 1e-6;
    bool json_out = false;
    bool trace = false;
    bool tangency = false;
};

void add_solve_options(CLI::App* cmd, SolveArgs& args) {
    cmd->add_option("-f,--function", args.fn, "expression in the variable x")
        ->required();
    cmd->add_option("--a", args.a, "left end of the domain")->required();
    cmd->add_option("--b", args.b, "right end of the domain")->required();
    cmd->add_option("--m0", args.m0, "lower end of the initial value bracket");
    cmd->add_option("--u0", args.u0, "upper end of the initial value bracket");
    cmd->add_option("--tol", args.tol,
                    "target half-width of the value bracket");
    cmd->add_option("--max-iter", args.max_iter, "iteration budget");
    cmd->add_option("--oracle", args.oracle,
                    "reachability oracle: grid, certified, or hybrid")
        ->check(CLI::IsMember({"grid", "certified", "hybrid"}));
    cmd->add_option("--grid-points", args.grid_points,
                    "sample count of the grid oracle");
    cmd->add_option("--max-depth", args.max_depth,
                    "branch-and-bound depth limit of the certified oracle");
    cmd->add_option("--on-unknown", args.on_unknown,
                    "what to do when the oracle cannot decide a level")
        ->check(CLI::IsMember({"treat-unreachable", "abort"}));
    cmd->add_flag("--tangency", args.tangency,
                  "stop early when a witness looks like a stationary point "
                  "at the probed level");
    cmd->add_option("--deriv-tol", args.deriv_tol,
                    "slope tolerance for --tangency");
    cmd->add_flag("--json", args.json_out, "emit a JSON report");
    cmd->add_flag("--trace", args.trace,
                  "print the per-iteration table (text output only)");
}

const char* validate_solve(const SolveArgs& s) {
    if (!std::isfinite(s.a) || !std::isfinite(s.b))
        return "a and b must be finite numbers";
    if (!(s.b > s.a)) return "b must be bigger than a";
    if (!std::isfinite(s.tol) || !(s.tol > 0.0))
        return "tol must be a positive number";
    if (s.max_iter < 1) return "max-iter must be a positive integer";
    if (s.has_bracket && (!std::isfinite(s.m0) || !std::isfinite(s.u0)))
        return "m0 and u0 must be finite numbers";
    if (s.has_bracket && !(s.u0 > s.m0)) return "u0 must be bigger than m0";
    if (s.grid_points < 2) return "grid-points must be at least 2";
    if (s.max_depth < 1) return "max-depth must be at least 1";
    if (!std::isfinite(s.deriv_tol) || !(s.deriv_tol > 0.0))
        return "deriv-tol must be a positive number";
    return nullptr;
}

valbis::SolverConfig make_config(const SolveArgs& s) {
    valbis::SolverConfig cfg;
    cfg.tol = s.tol;
    cfg.max_iter = s.max_iter;
    cfg.tangency_check = s.tangency;
    cfg.deriv_tol = s.deriv_tol;
    cfg.oracle.grid_points = s.grid_points;
    cfg.oracle.max_depth = s.max_depth;
    cfg.oracle.unknown_policy = s.on_unknown == "abort"
                                    ? valbis::UnknownPolicy::Abort
                                    : valbis::UnknownPolicy::TreatAsUnreachable;
    if (s.oracle == "grid")
        cfg.oracle.kind = valbis::OracleKind::Grid;
    else if (s.oracle == "certified")
        cfg.oracle.kind = valbis::OracleKind::Certified;
    else
        cfg.oracle.kind = valbis::OracleKind::Hybrid;
    return cfg;
}

const char* verdict_name(valbis::Reach kind) {
    switch (kind) {
        case valbis::Reach::Reachable: return "reachable";
        case valbis::Reach::Unreachable: return "unreachable";
        case valbis::Reach::Unknown: return "unknown";
    }
    return "unknown";
}

void print_extremum_json(const SolveArgs& s, bool is_min,
                         const valbis::ExtremumReport& rep) {
    json j;
    j["command"] = is_min ? "min" : "max";
    j["expression"] = s.fn;
    j["domain"] = {{"a", s.a}, {"b", s.b}};
    j["bracket0"] = {{"m", rep.bracket0.lo}, {"u", rep.bracket0.hi}};
    j["bracket"] = {{"m", rep.bracket.lo}, {"u", rep.bracket.hi}};
    j["estimate"] = rep.estimate;
    j["error_bound"] = rep.error_bound;
    j["iterations"] = rep.iterations;
    j["converged"] = rep.converged;
    j["exact_max_detected"] = rep.exact_extremum;
    if (rep.witness)
        j["witness"] = *rep.witness;
    else
        j["witness"] = nullptr;
    json hist = json::array();
    for (const valbis::IterationRecord& rec : rep.history)
        hist.push_back({{"n", rec.index},
                        {"c", rec.level},
                        {"verdict", verdict_name(rec.verdict.kind)},
                        {"certified", rec.verdict.certified},
                        {"m", rec.bracket_after.lo},
                        {"u", rec.bracket_after.hi}});
    j["history"] = std::move(hist);
    std::cout << j.dump(2) << "\n";
}

void print_extremum_text(const SolveArgs& s, bool is_min,
                         const valbis::ExtremumReport& rep) {
    std::printf("%-13s %s\n", "command", is_min ? "min" : "max");
    std::printf("%-13s %s\n", "expression", s.fn.c_str());
    std::printf("%-13s [%.10g, %.10g]\n", "domain", s.a, s.b);
    std::printf("%-13s [%.10g, %.10g]\n", "bracket0", rep.bracket0.lo,
                rep.bracket0.hi);
    std::printf("%-13s [%.10g, %.10g]\n", "bracket", rep.bracket.lo,
                rep.bracket.hi);
    std::printf("%-13s %.10g\n", "estimate", rep.estimate);
    std::printf("%-13s %.10g\n", "error bound", rep.error_bound);
    std::printf("%-13s %d\n", "iterations", rep.iterations);
    std::printf("%-13s %s\n", "converged", rep.converged ? "yes" : "no");
    std::printf("%-13s %s\n", "exact", rep.exact_extremum ? "yes" : "no");
    if (rep.witness)
        std::printf("%-13s %.10g\n", "witness", *rep.witness);
    else
        std::printf("%-13s n/a\n", "witness");
    if (s.trace && !rep.history.empty()) {
        std::printf("\n%4s %17s %13s %5s %17s %17s\n", "n", "c", "verdict",
                    "cert", "m", "u");
        for (const valbis::IterationRecord& rec : rep.history)
            std::printf("%4d %17.10g %13s %5s %17.10g %17.10g\n", rec.index,
                        rec.level, verdict_name(rec.verdict.kind),
                        rec.verdict.certified ? "yes" : "no",
                        rec.bracket_after.lo, rec.bracket_after.hi);
    }
}

int run_extremum(const SolveArgs& s, bool is_min) {
    if (const char* msg = validate_solve(s)) {
        std::cerr << "error: " << msg << "\n";
        return kExitInvalidInput;
    }
    valbis::Expr f = valbis::parse(s.fn);
    valbis::Interval domain{s.a, s.b};
    std::optional<valbis::ValueBracket> bracket;
    if (s.has_bracket) bracket = valbis::ValueBracket{s.m0, s.u0};
    valbis::ExtremumReport rep =
        is_min ? valbis::minimize(f, domain, bracket, make_config(s))
               : valbis::maximize(f, domain, bracket, make_config(s));
    if (s.json_out)
        print_extremum_json(s, is_min, rep);
    else
        print_extremum_text(s, is_min, rep);
    if (!rep.converged) {
        std::cerr << kNotConvergedMsg << "\n";
        return kExitNotConverged;
    }
    return kExitOk;
}

struct RootArgs {
    std::string fn;
    double a = 0.0;
    double b = 0.0;
    double level = 0.0;
    bool has_level = false;
    double tol = 1e-7;
    int max_iter = 200;
    bool json_out = false;
};

int run_root(const RootArgs& r) {
    const char* msg = nullptr;
    if (!std::isfinite(r.a) || !std::isfinite(r.b))
        msg = "a and b must be finite numbers";
    else if (!(r.b > r.a))
        msg = "b must be bigger than a";
    else if (!std::isfinite(r.tol) || !(r.tol > 0.0))
        msg = "tol must be a positive number";
    else if (r.max_iter < 1)
        msg = "max-iter must be a positive integer";
    else if (r.has_level && !std::isfinite(r.level))
        msg = "level must be a finite number";
    if (msg) {
        std::cerr << "error: " << msg << "\n";
        return kExitInvalidInput;
    }
    valbis::Expr f = valbis::parse(r.fn);
    valbis::RootResult res =
        r.has_level
            ? valbis::solve_level(f, r.level, r.a, r.b, r.tol, r.max_iter)
            : valbis::bisect_root(f, r.a, r.b, r.tol, r.max_iter);
    bool converged = res.bound <= r.tol;
    if (r.json_out) {
        json j;
        j["command"] = "root";
        j["expression"] = r.fn;
        j["domain"] = {{"a", r.a}, {"b", r.b}};
        j["level"] = r.level;
        j["root"] = res.root;
        j["iterations"] = res.iterations;
        j["residual"] = res.residual;
        j["bound"] = res.bound;
        j["converged"] = converged;
        std::cout << j.dump(2) << "\n";
    } else {
        std::printf("%-13s root\n", "command");
        std::printf("%-13s %s\n", "expression", r.fn.c_str());
        std::printf("%-13s [%.10g, %.10g]\n", "domain", r.a, r.b);
        std::printf("%-13s %.10g\n", "level", r.level);
        std::printf("%-13s %.10g\n", "root", res.root);
        std::printf("%-13s %d\n", "iterations", res.iterations);
        std::printf("%-13s %.10g\n", "residual", res.residual);
        std::printf("%-13s %.10g\n", "bound", res.bound);
        std::printf("%-13s %s\n", "converged", converged ? "yes" : "no");
    }
    if (!converged) {
        std::cerr << kNotConvergedMsg << "\n";
        return kExitNotConverged;
    }
    return kExitOk;
}

struct PredictArgs {
    double width = 0.0;
    double tol = 0.0;
    bool json_out = false;
};

int run_predict(const PredictArgs& p) {
    const char* msg = nullptr;
    if (!std::isfinite(p.width) || !(p.width > 0.0))
        msg = "width must be a positive number";
    else if (!std::isfinite(p.tol) || !(p.tol > 0.0))
        msg = "tol must be a positive number";
    if (msg) {
        std::cerr << "error: " << msg << "\n";
        return kExitInvalidInput;
    }
    int n = valbis::iterations_needed({0.0, p.width}, p.tol);
    if (p.json_out) {
        json j;
        j["iterations_needed"] = n;
        std::cout << j.dump(2) << "\n";
    } else {
        std::printf("%d\n", n);
    }
    return kExitOk;
}

int run_bench() {
    struct BenchCase {
        const char* fn;
        double a, b, m0, u0;
    };
    const BenchCase cases[] = {
        {"piecewise(x<=-1: x+5; x<0: 4; else: 3)", -4.0, 1.0, 3.0, 6.0},
        {"exp(x)-4*x", 0.0, 1.0, 0.5, 3.0},
        {"-(x-0.5)^2+1", 0.0, 1.0, 0.75, 2.0},
        {"sin(x)", 0.0, std::numbers::pi, 0.0, 2.0},
        {"abs(x-0.3)", 0.0, 1.0, 0.5, 1.0},
    };
    std::printf("%-40s %14s %6s %12s %8s %8s\n", "expression", "estimate",
                "iters", "width", "ratio", "order");
    for (const BenchCase& c : cases) {
        valbis::Expr f = valbis::parse(c.fn);
        valbis::SolverConfig cfg;
        valbis::ExtremumReport rep = valbis::maximize(
            f, {c.a, c.b}, valbis::ValueBracket{c.m0, c.u0}, cfg);
        auto diag = valbis::convergence_diagnostic(rep.history);
        if (diag)
            std::printf("%-40s %14.8g %6d %12.4g %8.4f %8.4f\n", c.fn,
                        rep.estimate, rep.iterations, valbis::width(rep.bracket),
                        diag->ratio_estimate, diag->order_estimate);
        else
            std::printf("%-40s %14.8g %6d %12.4g %8s %8s\n", c.fn,
                        rep.estimate, rep.iterations, valbis::width(rep.bracket),
                        "n/a", "n/a");
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Global extremum estimation by bisection on the value axis"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    CLI::App* max_cmd =
        app.add_subcommand("max", "approximate the global maximum");
    add_solve_options(max_cmd, solve_args);
    CLI::App* min_cmd =
        app.add_subcommand("min", "approximate the global minimum");
    add_solve_options(min_cmd, solve_args);

    RootArgs root_args;
    CLI::App* root_cmd =
        app.add_subcommand("root", "solve f(x) = level by bisection");
    root_cmd->add_option("-f,--function", root_args.fn,
                         "expression in the variable x")
        ->required();
    root_cmd->add_option("--a", root_args.a, "left bracketing point")
        ->required();
    root_cmd->add_option("--b", root_args.b, "right bracketing point")
        ->required();
    CLI::Option* level_opt =
        root_cmd->add_option("--level", root_args.level,
                             "solve f(x) = level instead of f(x) = 0");
    root_cmd->add_option("--tol", root_args.tol,
                         "target enclosure half-width");
    root_cmd->add_option("--max-iter", root_args.max_iter, "iteration budget");
    root_cmd->add_flag("--json", root_args.json_out, "emit a JSON report");

    PredictArgs predict_args;
    CLI::App* predict_cmd = app.add_subcommand(
        "predict", "iterations needed to reach a target tolerance");
    predict_cmd->add_option("--width", predict_args.width,
                            "initial bracket width")
        ->required();
    predict_cmd->add_option("--tol", predict_args.tol, "target half-width")
        ->required();
    predict_cmd->add_flag("--json", predict_args.json_out,
                          "emit a JSON report");

    CLI::App* bench_cmd =
        app.add_subcommand("bench", "solve a built-in corpus and report "
                                    "convergence diagnostics");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kExitInvalidInput;
    }

    CLI::App* solve_cmd = max_cmd->parsed() ? max_cmd
                          : min_cmd->parsed() ? min_cmd
                                              : nullptr;
    if (solve_cmd)
        solve_args.has_bracket =
            solve_cmd->count("--m0") > 0 || solve_cmd->count("--u0") > 0;
    if (solve_cmd && solve_cmd->count("--m0") != solve_cmd->count("--u0")) {
        std::cerr << "error: m0 and u0 must be supplied together\n";
        return kExitInvalidInput;
    }
    root_args.has_level = level_opt->count() > 0;

    try {
        if (max_cmd->parsed()) return run_extremum(solve_args, false);
        if (min_cmd->parsed()) return run_extremum(solve_args, true);
        if (root_cmd->parsed()) return run_root(root_args);
        if (predict_cmd->parsed()) return run_predict(predict_args);
        if (bench_cmd->parsed()) return run_bench();
    } catch (const valbis::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const valbis::OracleIndeterminate& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIndeterminate;
    } catch (const valbis::EvaluationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEvaluation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }
    return kExitInvalidInput;
}
