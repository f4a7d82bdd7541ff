#include "kss/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "kss/error.hpp"
#include "kss/norms.hpp"
#include "kss/operators.hpp"

namespace kss {

void MonitorConfig::validate() const {
    if (!(p >= 1.0)) throw InvalidArgument("monitor exponent p must be >= 1");
    if (!(q >= 1.0)) throw InvalidArgument("monitor exponent q must be >= 1");
    if (!(lambda > 0.0)) throw InvalidArgument("energy weight lambda must be positive");
    if (!(blow_up_threshold > 0.0)) throw InvalidArgument("blow-up threshold must be positive");
    if (sample_every < 1) throw InvalidArgument("sample_every must be >= 1");
}

ScalarField velocity_gradient_norm(const MacVectorField& u) {
    const Grid& g = u.grid();
    // Corner values (i, j) at (i dx, j dy), 0 <= i <= nx, 0 <= j <= ny.
    const int cx = g.nx + 1;
    std::vector<double> dux_dy(static_cast<std::size_t>(cx) * (g.ny + 1));
    std::vector<double> duy_dx(dux_dy.size());
    auto ux = [&](int i, int j) {
        if (j < 0) return -u.x(i, 0);
        if (j >= g.ny) return -u.x(i, g.ny - 1);
        return u.x(i, j);
    };
    auto uy = [&](int i, int j) {
        if (i < 0) return -u.y(0, j);
        if (i >= g.nx) return -u.y(g.nx - 1, j);
        return u.y(i, j);
    };
    for (int j = 0; j <= g.ny; ++j) {
        for (int i = 0; i <= g.nx; ++i) {
            const std::size_t k = static_cast<std::size_t>(j) * cx + i;
            dux_dy[k] = (ux(i, j) - ux(i, j - 1)) / g.dy;
            duy_dx[k] = (uy(i, j) - uy(i - 1, j)) / g.dx;
        }
    }
    auto corner_mean = [&](const std::vector<double>& v, int i, int j) {
        const std::size_t k0 = static_cast<std::size_t>(j) * cx + i;
        const std::size_t k1 = k0 + cx;
        return 0.25 * (v[k0] + v[k0 + 1] + v[k1] + v[k1 + 1]);
    };
    ScalarField out(g);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double a = (u.x(i + 1, j) - u.x(i, j)) / g.dx;
            const double d = (u.y(i, j + 1) - u.y(i, j)) / g.dy;
            const double b = corner_mean(dux_dy, i, j);
            const double c = corner_mean(duy_dx, i, j);
            out(i, j) = std::sqrt(a * a + b * b + c * c + d * d);
        }
    }
    return out;
}

DiagnosticsRecord record(const State& state, const MonitorConfig& cfg) {
    DiagnosticsRecord r;
    r.t = state.t;
    if (!state.n.all_finite() || !state.c.all_finite() || !state.u.all_finite()) {
        constexpr double nan = std::numeric_limits<double>::quiet_NaN();
        r.mass = r.l1_c = r.linf_n = r.lp_n = r.l2q_gradc = nan;
        r.entropy = r.energy_y = r.l2_gradc = r.du_l32 = r.linf_u = r.div_u_max = nan;
        r.blown_up = true;
        return r;
    }
    r.mass = integral(state.n);
    r.l1_c = integral(state.c);
    r.linf_n = lp_norm(state.n, kInfinity);
    r.lp_n = lp_norm(state.n, cfg.p);
    r.l2q_gradc = grad_lp_norm(state.c, 2.0 * cfg.q);

    // Round-off can leave cells at -1e-17; they carry no entropy.
    ScalarField clamped = state.n;
    for (double& v : clamped.values()) v = std::max(v, 0.0);
    r.entropy = entropy(clamped);

    const double g2 = grad_lp_norm(state.c, 2.0);
    r.l2_gradc = g2 * g2;
    r.energy_y = r.entropy + cfg.lambda * r.l2_gradc;
    r.du_l32 = lp_norm(velocity_gradient_norm(state.u), 1.5);
    r.linf_u = state.u.max_abs();
    r.div_u_max = lp_norm(divergence(state.u), kInfinity);

    const double all[] = {r.mass,     r.l1_c,     r.linf_n, r.lp_n,   r.l2q_gradc, r.entropy,
                          r.energy_y, r.l2_gradc, r.du_l32, r.linf_u, r.div_u_max};
    const bool finite = std::all_of(std::begin(all), std::end(all),
                                    [](double v) { return std::isfinite(v); });
    r.blown_up = !finite || r.linf_n > cfg.blow_up_threshold;
    return r;
}

double l1_envelope(double t, double y0, double k0, double alpha, double mass, double area) {
    if (!(t >= 0.0)) throw InvalidArgument("envelope time must be nonnegative");
    if (!(mass >= 0.0)) throw InvalidArgument("envelope mass must be nonnegative");
    if (!(area > 0.0)) throw InvalidArgument("envelope area must be positive");
    const double c2 = k0 * std::pow(mass, alpha) * std::pow(area, 1.0 - alpha);
    const double decay = std::exp(-t);
    return y0 * decay + c2 * (1.0 - decay);
}

double young_constant(double eps, double p, double q) {
    if (!(eps > 0.0)) throw InvalidArgument("Young epsilon must be positive");
    if (!(p > 1.0) || !(q > 1.0) || std::abs(1.0 / p + 1.0 / q - 1.0) > 1e-12)
        throw InvalidArgument("Young exponents must be conjugate and > 1");
    return std::pow(eps * p, -q / p) / q;
}

YoungReport check_young(std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ab(0.0, 1e3);
    std::uniform_real_distribution<double> log_eps(-3.0, 3.0);
    std::uniform_real_distribution<double> exponent(1.05, 6.0);

    YoungReport rep;
    rep.samples = samples;
    auto ratio_of = [](double a, double b, double eps, double p) {
        const double q = p / (p - 1.0);
        const double rhs = eps * std::pow(a, p) + young_constant(eps, p, q) * std::pow(b, q);
        return rhs > 0.0 ? a * b / rhs : 0.0;
    };
    for (std::size_t k = 0; k < samples; ++k) {
        const double a = ab(rng);
        const double b = ab(rng);
        const double eps = std::pow(10.0, log_eps(rng));
        const double p = exponent(rng);
        const double ratio = ratio_of(a, b, eps, p);
        if (ratio > 1.0 + 1e-12) ++rep.violations;
        rep.max_ratio = std::max(rep.max_ratio, ratio);
    }

    // Equality case: for fixed b the map a -> ab - eps a^p peaks at b = eps p a^{p-1}.
    const double b = 3.0, eps = 0.7, p = 2.5;
    const double a_star = std::pow(b / (eps * p), 1.0 / (p - 1.0));
    rep.equality_ratio = ratio_of(a_star, b, eps, p);
    rep.max_ratio = std::max(rep.max_ratio, rep.equality_ratio);
    return rep;
}

InequalityReport check_hessian_cs(const ScalarField& c) {
    const Grid& g = c.grid();
    const ScalarField lap = laplacian(c, BoundaryKind::Neumann);
    const ScalarField hess = hessian_frobenius(c);
    InequalityReport rep;
    rep.max_violation = -std::numeric_limits<double>::infinity();

    double scale = 0.0;
    for (int j = 1; j < g.ny - 1; ++j)
        for (int i = 1; i < g.nx - 1; ++i) scale = std::max(scale, std::abs(lap(i, j)));
    scale = std::max(scale, 1.0);

    for (int j = 1; j < g.ny - 1; ++j) {
        for (int i = 1; i < g.nx - 1; ++i) {
            const double lhs = std::abs(lap(i, j));
            const double rhs = std::sqrt(2.0) * hess(i, j);
            ++rep.cells_checked;
            rep.max_violation = std::max(rep.max_violation, lhs - rhs);
            if (lhs > rhs + 1e-10 * scale) ++rep.violations;
            if (rhs > 0.0) rep.max_ratio = std::max(rep.max_ratio, lhs / rhs);
        }
    }
    return rep;
}

InequalityReport check_boundary_sign(const ScalarField& c) {
    const Grid& g = c.grid();
    // Two mirrored ghost layers on each side.
    auto mirror = [](int k, int n) {
        if (k < 0) return -k - 1;
        if (k >= n) return 2 * n - k - 1;
        return k;
    };
    auto at = [&](int i, int j) { return c(mirror(i, g.nx), mirror(j, g.ny)); };
    auto grad_sq = [&](int i, int j) {
        const double cx = (at(i + 1, j) - at(i - 1, j)) / (2.0 * g.dx);
        const double cy = (at(i, j + 1) - at(i, j - 1)) / (2.0 * g.dy);
        return cx * cx + cy * cy;
    };

    double scale = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) scale = std::max(scale, grad_sq(i, j));
    scale = std::max(scale, 1.0);

    InequalityReport rep;
    rep.max_violation = -std::numeric_limits<double>::infinity();
    auto check = [&](double outward_derivative) {
        ++rep.cells_checked;
        rep.max_violation = std::max(rep.max_violation, outward_derivative);
        if (outward_derivative > 1e-10 * scale) ++rep.violations;
    };
    for (int j = 0; j < g.ny; ++j) {
        check((grad_sq(-1, j) - grad_sq(0, j)) / g.dx);
        check((grad_sq(g.nx, j) - grad_sq(g.nx - 1, j)) / g.dx);
    }
    for (int i = 0; i < g.nx; ++i) {
        check((grad_sq(i, -1) - grad_sq(i, 0)) / g.dy);
        check((grad_sq(i, g.ny) - grad_sq(i, g.ny - 1)) / g.dy);
    }
    return rep;
}

double check_gn_ratio(const ScalarField& n, double r, double s) {
    if (!(r >= 1.0) || !(s >= 1.0)) throw InvalidArgument("GN exponents must be >= 1");
    bool nonzero = false;
    for (double v : n.values()) {
        if (v < 0.0) throw InvalidArgument("GN ratio of a field with negative cells");
        nonzero = nonzero || v > 0.0;
    }
    if (!nonzero) throw InvalidArgument("GN ratio of the zero field");

    ScalarField power(n.grid());
    ScalarField half(n.grid());
    for (std::size_t k = 0; k < n.size(); ++k) {
        power[k] = std::pow(n[k], r * s);
        half[k] = std::pow(n[k], 0.5 * r);
    }
    const MacVectorField gh = gradient(half);
    double dirichlet = 0.0;
    for (double v : gh.xs()) dirichlet += v * v;
    for (double v : gh.ys()) dirichlet += v * v;
    dirichlet *= n.grid().cell_volume();
    return integral(power) / (std::pow(dirichlet, (r * s - 1.0) / r) + 1.0);
}

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Bounded: return "bounded";
    case Verdict::Growing: return "growing";
    case Verdict::BlownUp: return "blown_up";
    }
    return "unknown";
}

Verdict detect_blow_up(std::span<const DiagnosticsRecord> history) {
    if (history.empty()) throw InvalidArgument("blow-up detection needs a nonempty history");
    for (const auto& r : history)
        if (r.blown_up) return Verdict::BlownUp;

    const double t_mid = 0.5 * (history.front().t + history.back().t);
    const auto first_late = std::find_if(history.begin(), history.end(),
                                         [&](const DiagnosticsRecord& r) { return r.t >= t_mid; });
    const double start = first_late->linf_n;
    const double end = history.back().linf_n;
    if (end > 0.0 && end >= kGrowthFactor * start) return Verdict::Growing;
    return Verdict::Bounded;
}

} // namespace kss
