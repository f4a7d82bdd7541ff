#include "kss/mms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "kss/density.hpp"
#include "kss/error.hpp"
#include "kss/norms.hpp"
#include "kss/operators.hpp"
#include "kss/signal.hpp"
#include "kss/stokes.hpp"

namespace kss {

namespace {

constexpr double pi = std::numbers::pi;

double l2_error(const ScalarField& a, const ScalarField& b) { return lp_norm(a - b, 2.0); }

double l2_error(const MacVectorField& a, const MacVectorField& b) {
    double sum = 0.0;
    for (std::size_t k = 0; k < a.xs().size(); ++k) sum += std::pow(a.xs()[k] - b.xs()[k], 2);
    for (std::size_t k = 0; k < a.ys().size(); ++k) sum += std::pow(a.ys()[k] - b.ys()[k], 2);
    return std::sqrt(sum * a.grid().cell_volume());
}

Grid unit_grid(int n) { return build_grid(Domain{1.0, 1.0}, n, n); }

// Backward-Euler heat steps on a cosine mode; the exact semi-discrete answer decays by
// (1 + 2 pi^2 dt)^-1 per step.
double heat_error(int n) {
    const Grid g = unit_grid(n);
    const double dt = 0.01;
    const int steps = 10;
    auto mode = [](double x, double y) { return std::cos(pi * x) * std::cos(pi * y); };
    ScalarField rho = ScalarField::sample(g, [&](double x, double y) { return 1.0 + mode(x, y); });
    const ScalarField flat(g, 1.0);
    const MacVectorField still(g);
    TransportConfig tc;
    tc.dt = dt;
    for (int k = 0; k < steps; ++k) rho = density_step(rho, flat, still, tc);
    const double decay = std::pow(1.0 + 2.0 * pi * pi * dt, -steps);
    const ScalarField exact =
        ScalarField::sample(g, [&](double x, double y) { return 1.0 + decay * mode(x, y); });
    return l2_error(rho, exact);
}

// Steady state of c_t = Lap c - c + k0 n^alpha with n chosen so that the exact steady
// signal is a non-separable Neumann profile.
double signal_error(int n) {
    const Grid g = unit_grid(n);
    const double base = 30.0;
    auto p = [](double x) { return x * x * (1 - x) * (1 - x); };
    auto pxx = [](double x) { return 2.0 - 12.0 * x + 12.0 * x * x; };
    auto exact_c = [&](double x, double y) { return base + 10.0 * p(x) * std::cos(pi * y); };
    auto source = [&](double x, double y) {
        return base + 10.0 * std::cos(pi * y) * (p(x) * (1.0 + pi * pi) - pxx(x));
    };
    const SignalProduction law{1.0, 0.5};
    const ScalarField density =
        ScalarField::sample(g, [&](double x, double y) { return std::pow(source(x, y), 2.0); });
    ScalarField c = ScalarField::sample(g, exact_c);
    const MacVectorField still(g);
    TransportConfig tc;
    tc.dt = 10.0;
    for (int k = 0; k < 6; ++k) c = signal_step(c, density, still, law, tc);
    return l2_error(c, ScalarField::sample(g, exact_c));
}

// n_t + div(u n) = S with u = curl(sin(pi x) sin(pi y) / pi), n = 2 + e^{-t}(cos pi x + cos pi y).
double transport_error(int n) {
    const Grid g = unit_grid(n);
    const MacVectorField u = MacVectorField::sample(
        g, [](double x, double y) { return std::sin(pi * x) * std::cos(pi * y); },
        [](double x, double y) { return -std::cos(pi * x) * std::sin(pi * y); });
    auto exact = [](double x, double y, double t) {
        return 2.0 + std::exp(-t) * (std::cos(pi * x) + std::cos(pi * y));
    };
    auto source = [](double x, double y, double t) {
        const double e = std::exp(-t);
        const double ux = std::sin(pi * x) * std::cos(pi * y);
        const double uy = -std::cos(pi * x) * std::sin(pi * y);
        return -e * (std::cos(pi * x) + std::cos(pi * y)) +
               e * (ux * (-pi * std::sin(pi * x)) + uy * (-pi * std::sin(pi * y)));
    };
    const double t_end = 0.5;
    const int steps = static_cast<int>(std::ceil(t_end / (0.25 * g.dx)));
    const double dt = t_end / steps;
    ScalarField rho = ScalarField::sample(g, [&](double x, double y) { return exact(x, y, 0.0); });
    for (int k = 0; k < steps; ++k) {
        const double t = k * dt;
        const ScalarField div = divergence(advective_flux(rho, u));
        const ScalarField s = ScalarField::sample(g, [&](double x, double y) { return source(x, y, t); });
        for (std::size_t m = 0; m < rho.size(); ++m) rho[m] += dt * (s[m] - div[m]);
    }
    return l2_error(rho, ScalarField::sample(g, [&](double x, double y) { return exact(x, y, t_end); }));
}

// (I - dt Lap) w = w - dt Lap w with w_x = e^x sin(pi x) sin(pi y), w_y = e^y sin(pi x) sin(pi y).
double viscous_error(int n) {
    const Grid g = unit_grid(n);
    const double dt = 0.1;
    auto wx = [](double x, double y) { return std::exp(x) * std::sin(pi * x) * std::sin(pi * y); };
    auto lap_wx = [](double x, double y) {
        return std::exp(x) * std::sin(pi * y) *
               ((1.0 - 2.0 * pi * pi) * std::sin(pi * x) + 2.0 * pi * std::cos(pi * x));
    };
    auto wy = [&](double x, double y) { return wx(y, x); };
    auto lap_wy = [&](double x, double y) { return lap_wx(y, x); };
    const MacVectorField rhs = MacVectorField::sample(
        g, [&](double x, double y) { return wx(x, y) - dt * lap_wx(x, y); },
        [&](double x, double y) { return wy(x, y) - dt * lap_wy(x, y); });
    const MacVectorField w = viscous_solve(rhs, dt, 1e-13, 200);
    return l2_error(w, MacVectorField::sample(g, wx, wy));
}

// Projection of w + grad g with w = curl(e^{x+y} sin^2(pi x) sin^2(pi y)) and
// g = x^2 (1-x)^2 cos(pi y). Both are chosen off the discrete eigenmodes.
double projection_error(int n) {
    const Grid g = unit_grid(n);
    auto s2 = [](double z) { return std::pow(std::sin(pi * z), 2); };
    auto wx = [&](double x, double y) {
        return s2(x) * std::exp(x + y) * (pi * std::sin(2.0 * pi * y) + s2(y));
    };
    auto wy = [&](double x, double y) {
        return -s2(y) * std::exp(x + y) * (pi * std::sin(2.0 * pi * x) + s2(x));
    };
    auto p = [](double x) { return x * x * (1 - x) * (1 - x); };
    auto dp = [](double x) { return 2.0 * x * (1 - x) * (1 - 2.0 * x); };
    const MacVectorField v = MacVectorField::sample(
        g, [&](double x, double y) { return wx(x, y) + dp(x) * std::cos(pi * y); },
        [&](double x, double y) { return wy(x, y) - pi * p(x) * std::sin(pi * y); });
    ProjectionConfig pc;
    pc.poisson_tol = 1e-13;
    const Projection proj = helmholtz_project(v, pc);
    return l2_error(proj.velocity, MacVectorField::sample(g, wx, wy));
}

MmsCase study(const std::string& name, double required, int levels,
              const std::function<double(int)>& error_at) {
    MmsCase c;
    c.name = name;
    c.required_order = required;
    c.min_order = std::numeric_limits<double>::infinity();
    for (int k = 0; k < levels; ++k) {
        MmsLevel lvl;
        lvl.n = 32 << k;
        lvl.error = error_at(lvl.n);
        lvl.order = std::numeric_limits<double>::quiet_NaN();
        if (k > 0) {
            lvl.order = std::log2(c.levels.back().error / lvl.error);
            c.min_order = std::min(c.min_order, lvl.order);
        }
        c.levels.push_back(lvl);
    }
    c.pass = c.min_order >= required;
    return c;
}

} // namespace

std::vector<MmsCase> mms_convergence(int levels) {
    if (levels < 3) throw InvalidArgument("refinement study needs at least 3 levels");
    return {
        study("heat", 1.8, levels, heat_error),
        study("signal", 1.8, levels, signal_error),
        study("upwind_transport", 0.8, levels, transport_error),
        study("stokes_viscous", 1.8, levels, viscous_error),
        study("stokes_projection", 1.8, levels, projection_error),
    };
}

} // namespace kss
