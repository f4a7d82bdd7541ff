#include "kss/operators.hpp"

#include <cmath>

namespace kss {

namespace {

// Value across a wall for cell (i, j) when the neighbor index leaves the grid.
inline double ghost(double inside, BoundaryKind bc) {
    return bc == BoundaryKind::Neumann ? inside : -inside;
}

} // namespace

ScalarField laplacian(const ScalarField& f, BoundaryKind bc) {
    const Grid& g = f.grid();
    const double ix2 = 1.0 / (g.dx * g.dx);
    const double iy2 = 1.0 / (g.dy * g.dy);
    ScalarField out(g);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double c = f(i, j);
            const double w = i > 0 ? f(i - 1, j) : ghost(c, bc);
            const double e = i < g.nx - 1 ? f(i + 1, j) : ghost(c, bc);
            const double s = j > 0 ? f(i, j - 1) : ghost(c, bc);
            const double n = j < g.ny - 1 ? f(i, j + 1) : ghost(c, bc);
            out(i, j) = (e - 2.0 * c + w) * ix2 + (n - 2.0 * c + s) * iy2;
        }
    }
    return out;
}

MacVectorField gradient(const ScalarField& f) {
    const Grid& g = f.grid();
    MacVectorField out(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i) out.x(i, j) = (f(i, j) - f(i - 1, j)) / g.dx;
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) out.y(i, j) = (f(i, j) - f(i, j - 1)) / g.dy;
    return out;
}

ScalarField divergence(const MacVectorField& v) {
    const Grid& g = v.grid();
    ScalarField out(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            out(i, j) = (v.x(i + 1, j) - v.x(i, j)) / g.dx + (v.y(i, j + 1) - v.y(i, j)) / g.dy;
    return out;
}

MacVectorField vector_laplacian(const MacVectorField& v) {
    const Grid& g = v.grid();
    const double ix2 = 1.0 / (g.dx * g.dx);
    const double iy2 = 1.0 / (g.dy * g.dy);
    MacVectorField out(g);
    // x-component: Dirichlet exactly on the x-walls, antisymmetric ghosts across the y-walls.
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 1; i < g.nx; ++i) {
            const double c = v.x(i, j);
            const double s = j > 0 ? v.x(i, j - 1) : -c;
            const double n = j < g.ny - 1 ? v.x(i, j + 1) : -c;
            out.x(i, j) = (v.x(i + 1, j) - 2.0 * c + v.x(i - 1, j)) * ix2 + (n - 2.0 * c + s) * iy2;
        }
    }
    for (int j = 1; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double c = v.y(i, j);
            const double w = i > 0 ? v.y(i - 1, j) : -c;
            const double e = i < g.nx - 1 ? v.y(i + 1, j) : -c;
            out.y(i, j) = (e - 2.0 * c + w) * ix2 + (v.y(i, j + 1) - 2.0 * c + v.y(i, j - 1)) * iy2;
        }
    }
    return out;
}

HessianParts hessian_parts(const ScalarField& f) {
    const Grid& g = f.grid();
    HessianParts h{ScalarField(g), ScalarField(g), ScalarField(g)};

    // Second difference along one direction, shifted inward at the ends.
    auto second = [](auto&& at, int k, int n, double step) {
        const int m = k == 0 ? 1 : (k == n - 1 ? n - 2 : k);
        return (at(m + 1) - 2.0 * at(m) + at(m - 1)) / (step * step);
    };
    // First derivative: centered inside, one-sided at the ends.
    ScalarField fx(g);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            if (i == 0)
                fx(i, j) = (f(1, j) - f(0, j)) / g.dx;
            else if (i == g.nx - 1)
                fx(i, j) = (f(i, j) - f(i - 1, j)) / g.dx;
            else
                fx(i, j) = (f(i + 1, j) - f(i - 1, j)) / (2.0 * g.dx);
        }
    }
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            h.dxx(i, j) = second([&](int k) { return f(k, j); }, i, g.nx, g.dx);
            h.dyy(i, j) = second([&](int k) { return f(i, k); }, j, g.ny, g.dy);
            if (j == 0)
                h.dxy(i, j) = (fx(i, 1) - fx(i, 0)) / g.dy;
            else if (j == g.ny - 1)
                h.dxy(i, j) = (fx(i, j) - fx(i, j - 1)) / g.dy;
            else
                h.dxy(i, j) = (fx(i, j + 1) - fx(i, j - 1)) / (2.0 * g.dy);
        }
    }
    return h;
}

ScalarField hessian_frobenius(const ScalarField& f) {
    const HessianParts h = hessian_parts(f);
    ScalarField out(f.grid());
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = std::sqrt(h.dxx[k] * h.dxx[k] + h.dyy[k] * h.dyy[k] + 2.0 * h.dxy[k] * h.dxy[k]);
    return out;
}

CellVector gradient_at_centers(const ScalarField& f) {
    const Grid& g = f.grid();
    const MacVectorField face = gradient(f);
    CellVector out{ScalarField(g), ScalarField(g)};
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            out.x(i, j) = 0.5 * (face.x(i, j) + face.x(i + 1, j));
            out.y(i, j) = 0.5 * (face.y(i, j) + face.y(i, j + 1));
        }
    }
    return out;
}

} // namespace kss
