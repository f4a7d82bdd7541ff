#pragma once

#include "kss/field.hpp"

namespace kss {

/// Step size and implicit-solve controls shared by the density and signal steps.
struct TransportConfig {
    double dt = 1e-3;
    double diffusion_solver_tol = 1e-12; ///< relative residual, must lie in (0, 1e-8]
    int max_iter = 200;

    /// Throws InvalidArgument when dt <= 0, tol outside (0, 1e-8] or max_iter < 1.
    void validate() const;
};

/// Face flux n_up * (grad c)_face for the cross-diffusion term, upwinded on the sign of the face
/// gradient. Wall faces carry no flux.
MacVectorField chemotactic_flux(const ScalarField& n, const ScalarField& c);

/// Face flux n_up * u_face, upwinded on the sign of u. Wall faces carry no flux.
MacVectorField advective_flux(const ScalarField& n, const MacVectorField& u);

/// dt (max|grad c| + max|u|) max(1/dx, 1/dy), with the maxima over face components.
double advective_cfl(const ScalarField& c, const MacVectorField& u, double dt);

/// Largest fraction of a cell's content that the explicit upwind update removes in one step,
/// dt * sum over faces of the outward transport speed / h. The explicit part stays
/// nonnegative iff this is <= 1. Pass a zero `c` for pure advection.
double outflow_fraction(const ScalarField& c, const MacVectorField& u, double dt);

/// One IMEX step of n_t = Lap n - div(n grad c) - div(u n), no-flux walls.
/// Transport is explicit first-order upwind; diffusion is backward Euler solved by CG.
///
/// Throws CflViolation (step refused) when advective_cfl or outflow_fraction exceeds 1, and
/// SolverDivergence when the implicit solve fails.
ScalarField density_step(const ScalarField& n, const ScalarField& c, const MacVectorField& u,
                         const TransportConfig& cfg);

} // namespace kss
