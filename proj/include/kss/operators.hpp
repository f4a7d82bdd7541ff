#pragma once

#include "kss/field.hpp"

namespace kss {

/// 5-point Laplacian with ghost cells: mirror for Neumann, antisymmetric for Dirichlet.
ScalarField laplacian(const ScalarField& f, BoundaryKind bc);

/// Face differences (f[right] - f[left]) / h. Wall faces are zero (Neumann-zero).
MacVectorField gradient(const ScalarField& f);

/// Net outflux per cell volume. With zero wall-normal faces this is minus the adjoint of
/// gradient, and divergence(gradient(f)) == laplacian(f, Neumann) exactly.
ScalarField divergence(const MacVectorField& v);

/// Componentwise Laplacian of a no-slip velocity: wall-normal faces are held at zero and the
/// tangential component uses antisymmetric ghosts across the walls. Wall-normal entries of
/// the result are zero.
MacVectorField vector_laplacian(const MacVectorField& v);

/// Cell-centered Frobenius norm of the discrete Hessian. Interior cells use centered second
/// differences; wall cells fall back to one-sided differences (first order there).
ScalarField hessian_frobenius(const ScalarField& f);

/// Second differences per cell: centered in the interior, one-sided at wall cells.
/// The centered dxx + dyy on interior cells is exactly the 5-point Laplacian.
struct HessianParts {
    ScalarField dxx;
    ScalarField dyy;
    ScalarField dxy;
};
HessianParts hessian_parts(const ScalarField& f);

/// Face gradient averaged to cell centers: (gx, gy) per cell.
struct CellVector {
    ScalarField x;
    ScalarField y;
};
CellVector gradient_at_centers(const ScalarField& f);

} // namespace kss
