#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gevrey/problem.hpp"
#include "gevrey/report.hpp"
#include "gevrey/svg.hpp"

using namespace gevrey;

namespace
{

struct Options {
    std::string problem;
    std::string out;
    std::optional<std::size_t> t_order;
    std::string z_degree;
    std::string backend;
    std::optional<unsigned> precision;
    std::string r;
    std::string rho;
    std::string window;
    std::optional<double> tolerance;
    std::string mode;
    std::uint64_t seed = 7;
    std::size_t instances = 1000;
    std::string clip;
};

std::vector<std::string> split(const std::string &s, char sep)
{
    std::vector<std::string> parts;
    std::stringstream in(s);
    for (std::string item; std::getline(in, item, sep);) {
        parts.push_back(item);
    }
    return parts;
}

std::size_t to_size(const std::string &s, const std::string &flag)
{
    std::size_t used = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(s, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used != s.size() || s.empty() || s.front() == '-') {
        throw ParameterError(flag + ": expected a nonnegative integer, got '" + s + "'");
    }
    return v;
}

void write_output(const Options &opt, const std::string &text)
{
    if (opt.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(opt.out, std::ios::binary);
    if (!f) {
        throw Error("cannot write '" + opt.out + "'");
    }
    f << text;
}

ProblemSpec load(const Options &opt)
{
    auto spec = load_problem(opt.problem);
    if (opt.t_order) {
        if (*opt.t_order == 0) {
            throw ParameterError("--t-order must be positive");
        }
        spec.truncation.t_order = *opt.t_order;
    }
    if (!opt.z_degree.empty()) {
        const auto parts = split(opt.z_degree, ',');
        if (parts.size() != 1 && parts.size() != spec.variables) {
            throw ParameterError("--z-degree needs one value or one per variable");
        }
        for (std::size_t i = 0; i < spec.variables; ++i) {
            spec.truncation.z_degree[i] = static_cast<Degree>(to_size(parts[parts.size() == 1 ? 0 : i], "--z-degree"));
        }
    }
    if (!opt.backend.empty()) {
        spec.numerics.backend = opt.backend == "auto" ? std::nullopt : std::optional(backend_from_name(opt.backend));
    }
    if (opt.precision) {
        spec.numerics.precision_bits = *opt.precision;
    }
    if (!opt.r.empty()) {
        spec.estimation.r = parse_rational(opt.r);
    }
    if (!opt.rho.empty()) {
        spec.estimation.rho = parse_rational(opt.rho);
    }
    if (spec.estimation.r <= 0 || spec.estimation.rho <= 0) {
        throw ParameterError("r and rho must be positive");
    }
    if (!opt.window.empty()) {
        const auto parts = split(opt.window, ',');
        if (parts.size() != 2) {
            throw ParameterError("--window expects first,last");
        }
        spec.estimation.window = FitWindow{to_size(parts[0], "--window"), to_size(parts[1], "--window")};
    }
    if (opt.tolerance) {
        spec.estimation.tolerance = *opt.tolerance;
    }
    if (!opt.mode.empty()) {
        spec.estimation.mode = norm_mode_from_name(opt.mode);
    }
    return spec;
}

template <Scalar T>
int run_solve(const ProblemSpec &spec, const Options &opt)
{
    const auto p = build_problem<T>(spec);
    const auto sol = solve(p);
    Json out;
    out["problem"] = opt.problem;
    out["validation"] = validation_json(validate(p));
    out["solution"] = solution_json(sol);
    write_output(opt, out.dump(2) + "\n");
    return 0;
}

template <Scalar T>
int run_estimate(const ProblemSpec &spec, const Options &opt)
{
    const auto p = build_problem<T>(spec);
    const auto sol = solve(p);
    const auto rep = verify_theorem(p, sol, spec.estimation.config());
    Json out = theorem_json(rep);
    out["problem"] = opt.problem;
    out["backend"] = std::string(backend_name(backend_of<T>()));
    out["t_order"] = spec.truncation.t_order;
    write_output(opt, out.dump(2) + "\n");
    return rep.verdict ? 0 : 1;
}

template <template <Scalar> class F>
int dispatch(const ProblemSpec &spec, const Options &opt)
{
    if (spec.backend() == Backend::rational) {
        return F<Rational>{}(spec, opt);
    }
    PrecisionScope scope(spec.numerics.precision_bits);
    return F<BigFloat>{}(spec, opt);
}

template <Scalar T>
struct SolveCmd {
    int operator()(const ProblemSpec &s, const Options &o) const { return run_solve<T>(s, o); }
};

template <Scalar T>
struct EstimateCmd {
    int operator()(const ProblemSpec &s, const Options &o) const { return run_estimate<T>(s, o); }
};

int cmd_polygon(const Options &opt)
{
    const auto spec = load(opt);
    const auto shape = spec.shape();
    const auto np = build_polygon(shape);
    Json out = polygon_json(np);
    out["validation"] = validation_json(validate_shape(shape));
    write_output(opt, out.dump(2) + "\n");
    return 0;
}

int cmd_svg(const Options &opt)
{
    const auto spec = load(opt);
    const auto np = build_polygon(spec.shape());
    ClipBox clip = default_clip(np);
    if (!opt.clip.empty()) {
        const auto parts = split(opt.clip, ',');
        if (parts.size() != 4) {
            throw ParameterError("--clip expects x0,y0,x1,y1");
        }
        clip = {parse_rational(parts[0]), parse_rational(parts[1]), parse_rational(parts[2]), parse_rational(parts[3])};
    }
    write_output(opt, render_svg(np, clip));
    return 0;
}

int cmd_check(const Options &opt)
{
    LemmaBatteryConfig cfg;
    cfg.seed = opt.seed;
    cfg.instances = opt.instances;
    if (opt.precision) {
        cfg.precision_bits = *opt.precision;
    }
    const auto rep = run_lemma_battery(cfg);
    write_output(opt, battery_json(rep).dump(2) + "\n");
    return rep.ok() ? 0 : 1;
}

void add_problem_flags(CLI::App *cmd, Options &opt)
{
    cmd->add_option("problem", opt.problem, "problem file (JSON)")->required();
    cmd->add_option("--t-order", opt.t_order, "override truncation t-order");
    cmd->add_option("--z-degree", opt.z_degree, "override z-degree cap (one value or comma list)");
    cmd->add_option("--backend", opt.backend, "rational, bigfloat or auto")
        ->check(CLI::IsMember({"rational", "bigfloat", "auto"}));
    cmd->add_option("--precision", opt.precision, "bigfloat precision in bits");
    cmd->add_option("--out", opt.out, "write output to this file instead of stdout");
}

void add_estimation_flags(CLI::App *cmd, Options &opt)
{
    cmd->add_option("--r", opt.r, "Nagumo radius r (rational)");
    cmd->add_option("--rho", opt.rho, "sup-proxy radius rho (rational)");
    cmd->add_option("--window", opt.window, "fit window first,last");
    cmd->add_option("--tolerance", opt.tolerance, "verdict tolerance on s_hat");
    cmd->add_option("--mode", opt.mode, "sup_proxy or nagumo_profile")
        ->check(CLI::IsMember({"sup_proxy", "nagumo_profile"}));
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Formal solutions and Gevrey orders of moment partial differential equations"};
    app.require_subcommand(1);
    Options opt;

    auto *solve_cmd = app.add_subcommand("solve", "compute the formal solution and dump it as JSON");
    add_problem_flags(solve_cmd, opt);

    auto *polygon_cmd = app.add_subcommand("polygon", "Newton polygon and 1/k1 as JSON");
    add_problem_flags(polygon_cmd, opt);

    auto *estimate_cmd = app.add_subcommand("estimate", "fit the Gevrey order and compare it with 1/k1");
    add_problem_flags(estimate_cmd, opt);
    add_estimation_flags(estimate_cmd, opt);

    auto *check_cmd = app.add_subcommand("check", "run the randomised norm-inequality battery");
    check_cmd->add_option("--seed", opt.seed, "random seed");
    check_cmd->add_option("--instances", opt.instances, "instances per inequality");
    check_cmd->add_option("--precision", opt.precision, "bigfloat precision in bits");
    check_cmd->add_option("--out", opt.out, "write output to this file instead of stdout");

    auto *svg_cmd = app.add_subcommand("svg", "draw the Newton polygon as SVG");
    add_problem_flags(svg_cmd, opt);
    svg_cmd->add_option("--clip", opt.clip, "clip box x0,y0,x1,y1");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*solve_cmd) {
            return dispatch<SolveCmd>(load(opt), opt);
        }
        if (*estimate_cmd) {
            return dispatch<EstimateCmd>(load(opt), opt);
        }
        if (*polygon_cmd) {
            return cmd_polygon(opt);
        }
        if (*svg_cmd) {
            return cmd_svg(opt);
        }
        return cmd_check(opt);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
