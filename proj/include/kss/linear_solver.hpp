#pragma once

#include <span>
#include <vector>

#include "kss/grid.hpp"

namespace kss {

/// Which unknowns a shifted Laplacian acts on.
///   CellNeumann    nx x ny cells, mirror ghosts (n, c, pressure)
///   CellDirichlet  nx x ny cells, antisymmetric ghosts
///   XFace          interior x-faces (nx-1) x ny: zero on x-walls, antisymmetric across y-walls
///   YFace          interior y-faces nx x (ny-1): antisymmetric across x-walls, zero on y-walls
enum class Layout { CellNeumann, CellDirichlet, XFace, YFace };

enum class Preconditioner { Spectral, Jacobi };

struct SolveStats {
    int iterations = 0;
    double relative_residual = 0.0;
};

/// Packed shape of the unknowns for a layout.
struct PackedShape {
    int mx = 0;
    int my = 0;
    std::size_t size() const { return static_cast<std::size_t>(mx) * my; }
};
PackedShape packed_shape(const Grid& grid, Layout layout);

/// y = (shift I - scale Lap_h) x on the packed unknowns.
void apply_shifted_laplacian(const Grid& grid, Layout layout, double shift, double scale,
                             std::span<const double> x, std::span<double> y);

/// Preconditioned conjugate gradients for (shift I - scale Lap_h) x = rhs, with shift >= 0 and
/// scale > 0. Stops when ||r||_2 <= tol ||rhs||_2. With shift == 0 on CellNeumann the operator
/// is singular: the rhs is projected onto mean-zero vectors and the mean-zero solution returned.
///
/// The spectral preconditioner is the exact inverse of the operator, applied through fast
/// cosine/sine transforms, so CG usually stops after one or two iterations. `x` is used as the
/// initial guess.
///
/// Throws SolverDivergence if the tolerance is not met within max_iter iterations.
SolveStats solve_shifted_laplacian(const Grid& grid, Layout layout, double shift, double scale,
                                   std::span<const double> rhs, std::span<double> x, double tol,
                                   int max_iter,
                                   Preconditioner precond = Preconditioner::Spectral);

/// Applies the exact spectral inverse once (no iteration). Exposed for tests.
void spectral_inverse(const Grid& grid, Layout layout, double shift, double scale,
                      std::span<const double> rhs, std::span<double> x);

} // namespace kss
