#include "kss/signal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kss/error.hpp"
#include "kss/linear_solver.hpp"
#include "kss/operators.hpp"

namespace kss {

void SignalProduction::validate() const {
    if (!(k0 > 0.0) || !std::isfinite(k0)) throw InvalidArgument("k0 must be positive");
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw InvalidArgument("alpha must lie in (0, 1], got " + std::to_string(alpha));
}

double SignalProduction::operator()(double s) const {
    if (s <= 0.0) return 0.0;
    return alpha == 1.0 ? k0 * s : k0 * std::pow(s, alpha);
}

ScalarField production(const ScalarField& n, const SignalProduction& law) {
    law.validate();
    ScalarField out(n.grid());
    for (std::size_t k = 0; k < n.size(); ++k) {
        if (n[k] < 0.0) throw InvalidArgument("production of a field with negative cells");
        out[k] = law(n[k]);
    }
    return out;
}

ScalarField signal_step(const ScalarField& c, const ScalarField& n, const MacVectorField& u,
                        const SignalProduction& law, const TransportConfig& cfg) {
    cfg.validate();
    require_same_grid(c.grid(), n.grid(), "signal_step");
    require_same_grid(c.grid(), u.grid(), "signal_step");
    const Grid& g = c.grid();

    const ScalarField flat(g);
    const double cfl = advective_cfl(flat, u, cfg.dt);
    const double outflow = outflow_fraction(flat, u, cfg.dt);
    if (cfl > 1.0 || outflow > 1.0)
        throw CflViolation("signal step refused: advective CFL " + std::to_string(cfl) +
                               ", outflow fraction " + std::to_string(outflow),
                           std::max(cfl, outflow));

    // Implicit solves leave round-off negatives of order 1e-17 in n; larger ones are real.
    const double tolerance = 1e-12 * std::max(n.max(), 0.0);
    ScalarField clamped = n;
    for (double& v : clamped.values()) {
        if (v < -tolerance) throw InvalidArgument("signal step: density has negative cells");
        v = std::max(v, 0.0);
    }
    const ScalarField source = production(clamped, law);
    const ScalarField transport = divergence(advective_flux(c, u));
    ScalarField rhs(g);
    for (std::size_t k = 0; k < g.cells(); ++k)
        rhs[k] = c[k] - cfg.dt * transport[k] + cfg.dt * source[k];

    ScalarField out(g);
    for (std::size_t k = 0; k < g.cells(); ++k) out[k] = rhs[k] / (1.0 + cfg.dt);
    solve_shifted_laplacian(g, Layout::CellNeumann, 1.0 + cfg.dt, cfg.dt, rhs.values(),
                            out.values(), cfg.diffusion_solver_tol, cfg.max_iter);
    return out;
}

} // namespace kss
