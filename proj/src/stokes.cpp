#include "kss/stokes.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "kss/error.hpp"
#include "kss/linear_solver.hpp"
#include "kss/operators.hpp"

namespace kss {

namespace {

std::vector<double> pack_x(const MacVectorField& v) {
    const Grid& g = v.grid();
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(g.nx - 1) * g.ny);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i) out.push_back(v.x(i, j));
    return out;
}

std::vector<double> pack_y(const MacVectorField& v) {
    const Grid& g = v.grid();
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(g.nx) * (g.ny - 1));
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) out.push_back(v.y(i, j));
    return out;
}

void unpack(MacVectorField& v, const std::vector<double>& px, const std::vector<double>& py) {
    const Grid& g = v.grid();
    std::size_t k = 0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i) v.x(i, j) = px[k++];
    k = 0;
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) v.y(i, j) = py[k++];
    v.zero_boundary_normal();
}

} // namespace

Potential Potential::from(const ScalarField& phi) {
    if (!phi.all_finite()) throw InvalidArgument("potential has non-finite values");
    return {phi, gradient(phi)};
}

void ProjectionConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("time step must be positive");
    if (!(poisson_tol > 0.0 && poisson_tol <= 1e-8))
        throw InvalidArgument("Poisson tolerance must lie in (0, 1e-8]");
    if (max_iter < 1) throw InvalidArgument("solver iteration cap must be >= 1");
}

MacVectorField buoyancy(const ScalarField& n, const Potential& pot) {
    require_same_grid(n.grid(), pot.phi.grid(), "buoyancy");
    const Grid& g = n.grid();
    MacVectorField out(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i)
            out.x(i, j) = 0.5 * (n(i - 1, j) + n(i, j)) * pot.grad_phi.x(i, j);
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            out.y(i, j) = 0.5 * (n(i, j - 1) + n(i, j)) * pot.grad_phi.y(i, j);
    return out;
}

Projection helmholtz_project(const MacVectorField& v, const ProjectionConfig& cfg) {
    cfg.validate();
    const Grid& g = v.grid();
    MacVectorField w = v;
    w.zero_boundary_normal();

    // -Lap q = -div w, solved on mean-zero vectors.
    ScalarField rhs = divergence(w);
    for (double& x : rhs.values()) x = -x;
    ScalarField q(g);
    solve_shifted_laplacian(g, Layout::CellNeumann, 0.0, 1.0, rhs.values(), q.values(),
                            cfg.poisson_tol, cfg.max_iter);

    const MacVectorField gq = gradient(q);
    for (std::size_t k = 0; k < w.xs().size(); ++k) w.xs()[k] -= gq.xs()[k];
    for (std::size_t k = 0; k < w.ys().size(); ++k) w.ys()[k] -= gq.ys()[k];
    return {std::move(w), std::move(q)};
}

MacVectorField viscous_solve(const MacVectorField& v, double dt, double tol, int max_iter) {
    const Grid& g = v.grid();
    const std::vector<double> bx = pack_x(v);
    const std::vector<double> by = pack_y(v);
    std::vector<double> sx = bx;
    std::vector<double> sy = by;
    solve_shifted_laplacian(g, Layout::XFace, 1.0, dt, bx, sx, tol, max_iter);
    solve_shifted_laplacian(g, Layout::YFace, 1.0, dt, by, sy, tol, max_iter);
    MacVectorField out(g);
    unpack(out, sx, sy);
    return out;
}

StokesUpdate stokes_step(const MacVectorField& u, const ScalarField& n, const Potential& pot,
                         const ProjectionConfig& cfg) {
    cfg.validate();
    require_same_grid(u.grid(), n.grid(), "stokes_step");
    MacVectorField star = viscous_solve(u, cfg.dt, cfg.poisson_tol, cfg.max_iter);
    const MacVectorField force = buoyancy(n, pot);
    for (std::size_t k = 0; k < star.xs().size(); ++k) star.xs()[k] += cfg.dt * force.xs()[k];
    for (std::size_t k = 0; k < star.ys().size(); ++k) star.ys()[k] += cfg.dt * force.ys()[k];

    Projection proj = helmholtz_project(star, cfg);
    ScalarField p = std::move(proj.potential);
    for (double& x : p.values()) x /= cfg.dt;
    return {std::move(proj.velocity), std::move(p)};
}

} // namespace kss
