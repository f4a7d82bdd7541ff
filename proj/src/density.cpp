#include "kss/density.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kss/error.hpp"
#include "kss/linear_solver.hpp"
#include "kss/operators.hpp"

namespace kss {

namespace {

// Upwinded flux for face speeds `speed`; wall faces stay zero.
MacVectorField upwind_flux(const ScalarField& n, const MacVectorField& speed) {
    const Grid& g = n.grid();
    MacVectorField out(g);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 1; i < g.nx; ++i) {
            const double a = speed.x(i, j);
            out.x(i, j) = a * (a > 0.0 ? n(i - 1, j) : n(i, j));
        }
    }
    for (int j = 1; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double a = speed.y(i, j);
            out.y(i, j) = a * (a > 0.0 ? n(i, j - 1) : n(i, j));
        }
    }
    return out;
}

double outflow_rate(const MacVectorField& s, int i, int j) {
    const Grid& g = s.grid();
    return (std::max(s.x(i + 1, j), 0.0) + std::max(-s.x(i, j), 0.0)) / g.dx +
           (std::max(s.y(i, j + 1), 0.0) + std::max(-s.y(i, j), 0.0)) / g.dy;
}

} // namespace

void TransportConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("time step must be positive");
    if (!(diffusion_solver_tol > 0.0 && diffusion_solver_tol <= 1e-8))
        throw InvalidArgument("diffusion solver tolerance must lie in (0, 1e-8]");
    if (max_iter < 1) throw InvalidArgument("solver iteration cap must be >= 1");
}

MacVectorField chemotactic_flux(const ScalarField& n, const ScalarField& c) {
    require_same_grid(n.grid(), c.grid(), "chemotactic_flux");
    return upwind_flux(n, gradient(c));
}

MacVectorField advective_flux(const ScalarField& n, const MacVectorField& u) {
    require_same_grid(n.grid(), u.grid(), "advective_flux");
    return upwind_flux(n, u);
}

double advective_cfl(const ScalarField& c, const MacVectorField& u, double dt) {
    require_same_grid(c.grid(), u.grid(), "advective_cfl");
    const Grid& g = c.grid();
    return dt * (gradient(c).max_abs() + u.max_abs()) * std::max(1.0 / g.dx, 1.0 / g.dy);
}

double outflow_fraction(const ScalarField& c, const MacVectorField& u, double dt) {
    require_same_grid(c.grid(), u.grid(), "outflow_fraction");
    const Grid& g = c.grid();
    const MacVectorField gc = gradient(c);
    double worst = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            worst = std::max(worst, outflow_rate(gc, i, j) + outflow_rate(u, i, j));
    return dt * worst;
}

ScalarField density_step(const ScalarField& n, const ScalarField& c, const MacVectorField& u,
                         const TransportConfig& cfg) {
    cfg.validate();
    require_same_grid(n.grid(), c.grid(), "density_step");
    require_same_grid(n.grid(), u.grid(), "density_step");
    const Grid& g = n.grid();

    const double cfl = advective_cfl(c, u, cfg.dt);
    const double outflow = outflow_fraction(c, u, cfg.dt);
    if (cfl > 1.0 || outflow > 1.0)
        throw CflViolation("density step refused: advective CFL " + std::to_string(cfl) +
                               ", outflow fraction " + std::to_string(outflow),
                           std::max(cfl, outflow));

    const ScalarField transport = divergence(chemotactic_flux(n, c) + advective_flux(n, u));
    ScalarField explicit_part(g);
    for (std::size_t k = 0; k < g.cells(); ++k) explicit_part[k] = n[k] - cfg.dt * transport[k];

    ScalarField out = explicit_part;
    solve_shifted_laplacian(g, Layout::CellNeumann, 1.0, cfg.dt, explicit_part.values(),
                            out.values(), cfg.diffusion_solver_tol, cfg.max_iter);
    return out;
}

} // namespace kss
