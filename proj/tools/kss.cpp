// Command-line driver: simulation runs, refinement studies and inequality checks.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "kss/config.hpp"
#include "kss/diagnostics.hpp"
#include "kss/error.hpp"
#include "kss/mms.hpp"
#include "kss/operators.hpp"
#include "kss/runner.hpp"

namespace {

int run_simulation(const std::string& config_path, const kss::ConfigOverrides& overrides,
                   bool quiet) {
    kss::SimulationConfig cfg = kss::load_config(config_path);
    kss::apply_overrides(cfg, overrides);
    auto progress = [&](std::size_t step, const kss::DiagnosticsRecord& r) {
        if (quiet) return;
        std::fprintf(stderr, "step %8zu  t=%10.4f  mass=%.12g  max n=%.6g  |u|max=%.4g\n", step,
                     r.t, r.mass, r.linf_n, r.linf_u);
    };
    const kss::RunResult res = kss::run(cfg, progress);
    std::printf("steps=%zu dt=%.6g t=%.6g verdict=%s\n", res.steps, res.dt,
                res.final_state.t, kss::to_string(res.verdict).c_str());
    return kss::exit_code(res.verdict);
}

int run_mms(int levels) {
    bool ok = true;
    for (const auto& c : kss::mms_convergence(levels)) {
        std::printf("%s (required order >= %.1f)\n", c.name.c_str(), c.required_order);
        for (const auto& l : c.levels) {
            if (std::isnan(l.order))
                std::printf("  %4d^2  error %.6e\n", l.n, l.error);
            else
                std::printf("  %4d^2  error %.6e  order %.3f\n", l.n, l.error, l.order);
        }
        std::printf("  %s\n", c.pass ? "PASS" : "FAIL");
        ok = ok && c.pass;
    }
    return ok ? 0 : 1;
}

int run_checks(std::size_t samples, std::uint64_t seed) {
    const kss::YoungReport young = kss::check_young(samples, seed);
    std::printf("young: %zu samples, %zu violations, max ratio %.12f, equality ratio %.12f\n",
                young.samples, young.violations, young.max_ratio, young.equality_ratio);

    // Smooth random Neumann fields: a few low cosine modes with random amplitudes.
    const kss::Grid g = kss::build_grid({1.0, 1.0}, 64, 64);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> amp(0.0, 1.0);
    std::size_t cs_violations = 0, sign_violations = 0;
    for (int trial = 0; trial < 100; ++trial) {
        double a[4][4];
        for (auto& row : a)
            for (double& v : row) v = amp(rng);
        const auto c = kss::ScalarField::sample(g, [&](double x, double y) {
            double s = 0.0;
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) s += a[k][l] * std::cos(k * M_PI * x) * std::cos(l * M_PI * y);
            return s;
        });
        cs_violations += kss::check_hessian_cs(c).violations;
        sign_violations += kss::check_boundary_sign(c).violations;
    }
    std::printf("hessian cauchy-schwarz: 100 fields, %zu violations\n", cs_violations);
    std::printf("boundary sign: 100 fields, %zu violations\n", sign_violations);
    return young.violations == 0 && cs_violations == 0 && sign_violations == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chemotaxis-Stokes finite-volume simulator"};
    app.require_subcommand(1);

    std::string config_path;
    kss::ConfigOverrides ov;
    bool quiet = false;
    auto* run = app.add_subcommand("run", "simulate a configuration");
    run->add_option("--config", config_path, "INI configuration file")->required();
    run->add_option_function<double>("--alpha", [&](double v) { ov.alpha = v; }, "production exponent");
    run->add_option_function<int>("--nx", [&](int v) { ov.nx = v; }, "cells in x");
    run->add_option_function<int>("--ny", [&](int v) { ov.ny = v; }, "cells in y");
    run->add_option_function<double>("--dt", [&](double v) { ov.dt = v; }, "time step");
    run->add_option_function<double>("--t-end", [&](double v) { ov.t_end = v; }, "final time");
    run->add_option_function<std::string>("--out", [&](const std::string& v) { ov.output_dir = v; },
                                          "output directory");
    run->add_option_function<std::uint64_t>("--seed", [&](std::uint64_t v) { ov.seed = v; }, "rng seed");
    run->add_flag("--quiet", quiet, "no progress lines");

    int levels = 3;
    auto* mms = app.add_subcommand("mms", "manufactured-solution refinement study");
    mms->add_option("--levels", levels, "refinement levels starting at 32^2")->check(CLI::Range(3, 6));

    std::size_t samples = 100000;
    std::uint64_t seed = 1;
    auto* check = app.add_subcommand("check", "inequality checkers on random inputs");
    check->add_option("--samples", samples, "Young inequality samples");
    check->add_option("--seed", seed, "rng seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return run_simulation(config_path, ov, quiet);
        if (*mms) return run_mms(levels);
        if (*check) return run_checks(samples, seed);
    } catch (const kss::StepFailure& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const kss::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
