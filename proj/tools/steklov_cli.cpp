// steklov: command-line front end for the Steklov-Dirichlet toolkit.
//
//   shell | solve | verify-main | counterexample | bounds | plot
//
// Single results go to stdout as JSON, sweeps as CSV, figures as SVG.
// Exit status is 0 iff every assertion the subcommand makes holds.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "steklov/steklov.hpp"

namespace {

using nlohmann::json;
using namespace steklov;

struct RunConfig {
    int n = 2;
    double r1 = 1.0;
    double r2 = 2.0;
    double b = 1.1;
    int orders = 24;
    int quad = 512;
    std::uint64_t seed = 42;
    int samples = 200;
    unsigned threads = 0;
    bool outside_rbar = false;
    std::string body;
    std::string body_file;
    std::string out;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(cfg.out, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + cfg.out);
    os << text;
}

AnnularDomain2D load_domain(const RunConfig& cfg) {
    if (cfg.body.empty() == cfg.body_file.empty()) {
        throw std::invalid_argument("exactly one of --body or --body-file is required");
    }
    const std::string text = cfg.body.empty() ? read_file(cfg.body_file) : cfg.body;
    return AnnularDomain2D(cfg.r1, body_from_json(text, cfg.quad));
}

int cmd_shell(const RunConfig& cfg) {
    const ShellSpec spec{cfg.n, cfg.r1, cfg.r2};
    const double sigma = shell_sigma1(spec);
    const double w2 = shell_eigenfunction(spec, spec.R2);
    // scale making the boundary mass of w on the outer sphere equal to one
    const double norm = 1.0 / (w2 * std::sqrt(unit_sphere_area(spec.n) * std::pow(spec.R2, spec.n - 1.0)));
    json j{{"n", spec.n}, {"r1", spec.R1}, {"r2", spec.R2}, {"sigma1", sigma}, {"w_normalization", norm}};
    emit(cfg, j.dump(2) + "\n");
    return 0;
}

int cmd_solve(const RunConfig& cfg) {
    const auto domain = load_domain(cfg);
    const auto res = solve_sigma1(domain, cfg.orders, cfg.quad);
    const bool residual_ok = res.residual <= 1e-8 * res.a_norm;
    json j{{"sigma1", res.sigma1},
           {"N", res.N},
           {"M", res.M},
           {"b_condition", res.b_condition},
           {"residual", res.residual},
           {"convex", res.convex},
           {"rayleigh_w", rayleigh_w(domain)}};
    emit(cfg, j.dump(2) + "\n");
    return residual_ok ? 0 : 1;
}

int cmd_verify_main(const RunConfig& cfg) {
    std::vector<VerificationRecord> rows;
    if (cfg.outside_rbar) {
        rows = check_key_outside_rbar(cfg.samples, cfg.seed, cfg.r1, cfg.orders, cfg.quad, cfg.threads);
    } else {
        SweepOptions opts;
        opts.seed = cfg.seed;
        opts.samples = cfg.samples;
        opts.R1 = cfg.r1;
        opts.N = cfg.orders;
        opts.M = cfg.quad;
        opts.threads = cfg.threads;
        rows = sweep_main(opts);
    }
    std::ostringstream os;
    write_csv(os, rows);
    emit(cfg, os.str());
    if (cfg.outside_rbar) return 0;
    int failures = 0;
    for (const auto& r : rows) failures += !(r.pass_main && r.pass_hl && r.pass_key);
    if (failures > 0) std::cerr << "verify-main: " << failures << " of " << rows.size() << " rows failed\n";
    return failures == 0 ? 0 : 1;
}

int cmd_counterexample(const RunConfig& cfg) {
    const auto rep = counterexample_ellipse(cfg.r1, cfg.b);
    json j{{"r1", rep.R1},
           {"a", rep.a},
           {"b", rep.b},
           {"perimeter_formula", rep.perimeter_formula},
           {"perimeter_exact", rep.perimeter_exact},
           {"radial_length", rep.radial_mean_length},
           {"perimeter_strict", rep.perimeter_strict},
           {"d_ellipse", rep.d_ellipse},
           {"d_shell", rep.d_shell},
           {"d_shell_closed_form", rep.d_shell_closed_form},
           {"difference", rep.difference},
           {"d_ellipse_gt_d_shell", rep.direction_holds},
           {"reference_d_ellipse", rep.reference_d_ellipse},
           {"reference_d_shell", rep.reference_d_shell},
           {"relative_gap_to_reference", rep.relative_gap_to_reference},
           {"alt_perimeter_matching", {{"d_ellipse", rep.d_ellipse_alt}, {"d_shell", rep.d_shell_alt}}}};
    emit(cfg, j.dump(2) + "\n");
    if (!rep.direction_holds) std::cerr << "counterexample: d_ellipse > d_shell does not hold\n";
    return rep.direction_holds ? 0 : 1;
}

int cmd_bounds(const RunConfig& cfg) {
    const auto domain = load_domain(cfg);
    const auto chk = check_bounds(domain, cfg.orders, cfg.quad);
    const auto rep = bounds_report(2, domain.R1, chk.volume, domain.outer.max_radius());
    json j{{"sigma1", chk.sigma1},
           {"N", chk.orders_used},
           {"volume", chk.volume},
           {"bound_volume", chk.bound_volume},
           {"bound_perimeter_chain", chk.bound_perimeter_chain},
           {"holds_volume", chk.holds_volume},
           {"holds_perimeter_chain", chk.holds_perimeter_chain},
           {"rbar", rep.rbar},
           {"alpha_minus", rep.alpha_minus},
           {"alpha_plus", rep.alpha_plus},
           {"inside_rbar", rep.inside_rbar}};
    emit(cfg, j.dump(2) + "\n");
    return chk.holds_volume && chk.holds_perimeter_chain ? 0 : 1;
}

int cmd_plot(const RunConfig& cfg) {
    const auto domain = load_domain(cfg);
    const auto res = solve_sigma1_adaptive(domain, cfg.orders, cfg.quad);
    emit(cfg, render_svg(domain, boundary_trace(domain, res)));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steklov-Dirichlet eigenvalues on annular domains"};
    app.require_subcommand(1);
    RunConfig cfg;

    const auto add_body = [&cfg](CLI::App* sub) {
        sub->add_option("--body", cfg.body, "inline body JSON");
        sub->add_option("--body-file", cfg.body_file, "path to body JSON");
    };
    const auto add_disc = [&cfg](CLI::App* sub) {
        sub->add_option("--orders", cfg.orders, "angular order N")->capture_default_str()->check(CLI::NonNegativeNumber);
        sub->add_option("--quad", cfg.quad, "boundary nodes M")->capture_default_str();
    };
    const auto add_out = [&cfg](CLI::App* sub) { sub->add_option("--out", cfg.out, "output path (default stdout)"); };

    auto* shell = app.add_subcommand("shell", "closed-form shell eigenvalue");
    shell->add_option("--n", cfg.n, "dimension")->capture_default_str();
    shell->add_option("--r1", cfg.r1, "inner radius")->capture_default_str();
    shell->add_option("--r2", cfg.r2, "outer radius")->capture_default_str();
    add_out(shell);

    auto* solve = app.add_subcommand("solve", "numerical sigma_1 of an annular domain");
    solve->add_option("--r1", cfg.r1, "inner radius")->capture_default_str();
    add_body(solve);
    add_disc(solve);
    add_out(solve);

    auto* verify = app.add_subcommand("verify-main", "random sweep of the shell comparison");
    verify->add_option("--seed", cfg.seed, "first seed")->capture_default_str();
    verify->add_option("--samples", cfg.samples, "number of bodies")->capture_default_str()->check(CLI::PositiveNumber);
    verify->add_option("--r1", cfg.r1, "inner radius")->capture_default_str();
    verify->add_option("--threads", cfg.threads, "worker threads (0 = hardware)")->capture_default_str();
    verify->add_flag("--outside-rbar", cfg.outside_rbar, "exploratory sweep with bodies reaching 3 rbar");
    add_disc(verify);
    add_out(verify);

    auto* counter = app.add_subcommand("counterexample", "ellipse versus circle under the perimeter constraint");
    cfg.r1 = 1.0;
    auto* counter_r1 = counter->add_option("--r1", cfg.r1, "inner radius (default 1e-5)");
    counter->add_option("--b", cfg.b, "ellipse semi-axis along y")->capture_default_str();
    add_out(counter);

    auto* bounds = app.add_subcommand("bounds", "explicit upper bounds versus sigma_1");
    bounds->add_option("--r1", cfg.r1, "inner radius")->capture_default_str();
    add_body(bounds);
    add_disc(bounds);
    add_out(bounds);

    auto* plot = app.add_subcommand("plot", "SVG of the domain and eigenfunction trace");
    plot->add_option("--r1", cfg.r1, "inner radius")->capture_default_str();
    add_body(plot);
    add_disc(plot);
    add_out(plot);

    CLI11_PARSE(app, argc, argv);
    if (counter->parsed() && counter_r1->count() == 0) cfg.r1 = 1e-5;

    try {
        if (shell->parsed()) return cmd_shell(cfg);
        if (solve->parsed()) return cmd_solve(cfg);
        if (verify->parsed()) return cmd_verify_main(cfg);
        if (counter->parsed()) return cmd_counterexample(cfg);
        if (bounds->parsed()) return cmd_bounds(cfg);
        if (plot->parsed()) return cmd_plot(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
