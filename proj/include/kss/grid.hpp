#pragma once

#include <cstddef>

namespace kss {

/// Rectangle [0, lx] x [0, ly].
struct Domain {
    double lx = 1.0;
    double ly = 1.0;

    double area() const { return lx * ly; }
};

/// Boundary treatment for the ghost layer.
///  - Neumann:   zero normal derivative (mirror ghosts); used for n, c, pressure.
///  - Dirichlet: zero value at the wall (antisymmetric ghosts); used for u.
enum class BoundaryKind { Neumann, Dirichlet };

/// Uniform cell-centered grid on a Domain with MAC staggering for vectors.
///
///   cell (i, j)    center ((i + 1/2) dx, (j + 1/2) dy),  0 <= i < nx, 0 <= j < ny
///   x-face (i, j)  at (i dx, (j + 1/2) dy),             0 <= i <= nx
///   y-face (i, j)  at ((i + 1/2) dx, j dy),             0 <= j <= ny
///
/// All arrays are row-major with x fastest.
struct Grid {
    Domain domain;
    int nx = 0;
    int ny = 0;
    double dx = 0.0;
    double dy = 0.0;

    std::size_t cells() const { return static_cast<std::size_t>(nx) * ny; }
    std::size_t x_faces() const { return static_cast<std::size_t>(nx + 1) * ny; }
    std::size_t y_faces() const { return static_cast<std::size_t>(nx) * (ny + 1); }
    double cell_volume() const { return dx * dy; }

    double xc(int i) const { return (i + 0.5) * dx; }
    double yc(int j) const { return (j + 0.5) * dy; }
    double xf(int i) const { return i * dx; }
    double yf(int j) const { return j * dy; }

    std::size_t cell(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
    std::size_t xface(int i, int j) const { return static_cast<std::size_t>(j) * (nx + 1) + i; }
    std::size_t yface(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }

    friend bool operator==(const Grid& a, const Grid& b) {
        return a.nx == b.nx && a.ny == b.ny && a.dx == b.dx && a.dy == b.dy;
    }
};

/// Throws InvalidArgument for non-positive extents or fewer than 4 cells per direction.
Grid build_grid(const Domain& domain, int nx, int ny);

} // namespace kss
