#pragma once

#include "kss/field.hpp"

namespace kss {

/// Time-independent potential phi and its face gradient (wall faces zero).
struct Potential {
    ScalarField phi;
    MacVectorField grad_phi;

    /// Throws InvalidArgument when phi has non-finite values.
    static Potential from(const ScalarField& phi);
};

struct ProjectionConfig {
    double dt = 1e-3;
    double poisson_tol = 1e-12; ///< relative residual, must lie in (0, 1e-8]
    int max_iter = 200;

    void validate() const;
};

/// Face force n_face * (grad phi)_face with n_face the mean of the two adjacent cells.
MacVectorField buoyancy(const ScalarField& n, const Potential& pot);

struct Projection {
    MacVectorField velocity; ///< v - grad q, discretely divergence-free, zero wall-normal faces
    ScalarField potential;   ///< q with Lap q = div v (Neumann), mean zero
};

/// Discrete Helmholtz/Leray projection onto divergence-free no-slip-normal fields.
/// Wall-normal components of `v` are discarded before projecting.
Projection helmholtz_project(const MacVectorField& v, const ProjectionConfig& cfg);

struct StokesUpdate {
    MacVectorField u;
    ScalarField p; ///< q / dt, mean zero; the P of u_t = Lap u + grad P + ... is -p
};

/// One split step of u_t = Lap u + grad P + n grad phi, div u = 0, u = 0 on the walls:
///   u* = (I - dt Lap)^{-1} u + dt buoyancy(n),   (u_new, q) = helmholtz_project(u*).
StokesUpdate stokes_step(const MacVectorField& u, const ScalarField& n, const Potential& pot,
                         const ProjectionConfig& cfg);

/// Solves (I - dt Lap) w = v for a no-slip field (componentwise, wall-normal faces zero).
MacVectorField viscous_solve(const MacVectorField& v, double dt, double tol, int max_iter);

} // namespace kss
