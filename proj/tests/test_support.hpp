#pragma once

// Small helpers shared by the unit tests.

#include <algorithm>
#include <cmath>
#include <random>
#include <span>

#include "kss/field.hpp"
#include "kss/grid.hpp"

namespace kss::test {

inline double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}
inline double max_abs(const ScalarField& f) { return max_abs(f.values()); }

inline double l2(const ScalarField& f) {
    double s = 0.0;
    for (double x : f.values()) s += x * x;
    return std::sqrt(s * f.grid().cell_volume());
}
inline double l2_distance(const ScalarField& a, const ScalarField& b) { return l2(a - b); }

inline double inner(const ScalarField& a, const ScalarField& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s * a.grid().cell_volume();
}
inline double inner(const MacVectorField& a, const MacVectorField& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.xs().size(); ++k) s += a.xs()[k] * b.xs()[k];
    for (std::size_t k = 0; k < a.ys().size(); ++k) s += a.ys()[k] * b.ys()[k];
    return s * a.grid().cell_volume();
}
inline double kinetic(const MacVectorField& u) { return inner(u, u); }

inline ScalarField random_field(const Grid& g, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> d(lo, hi);
    ScalarField f(g);
    for (double& v : f.values()) v = d(rng);
    return f;
}

/// Random face values with the wall-normal faces zeroed.
inline MacVectorField random_velocity(const Grid& g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    MacVectorField v(g);
    for (double& x : v.xs()) x = d(rng);
    for (double& x : v.ys()) x = d(rng);
    v.zero_boundary_normal();
    return v;
}

inline ScalarField gaussian(const Grid& g, double cx, double cy, double w, double peak) {
    return ScalarField::sample(g, [&](double x, double y) {
        return peak * std::exp(-((x - cx) * (x - cx) + (y - cy) * (y - cy)) / (2 * w * w));
    });
}

/// Dense Gaussian elimination with partial pivoting; test-only oracle for small systems.
inline std::vector<double> dense_solve(std::vector<double> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[piv * n + c]);
            std::swap(b[col], b[piv]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r * n + col] / a[col * n + col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t r = n; r-- > 0;) {
        double s = b[r];
        for (std::size_t c = r + 1; c < n; ++c) s -= a[r * n + c] * x[c];
        x[r] = s / a[r * n + r];
    }
    return x;
}

/// Dense matrix of (shift I - scale Lap) on cells with mirror ghosts, assembled stencil by stencil.
inline std::vector<double> dense_neumann_operator(const Grid& g, double shift, double scale) {
    const std::size_t n = g.cells();
    std::vector<double> a(n * n, 0.0);
    const double ix2 = 1.0 / (g.dx * g.dx), iy2 = 1.0 / (g.dy * g.dy);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t r = g.cell(i, j);
            a[r * n + r] += shift;
            auto couple = [&](int ii, int jj, double w) {
                if (ii < 0 || ii >= g.nx || jj < 0 || jj >= g.ny) return; // mirror: no flux
                a[r * n + r] += scale * w;
                a[r * n + g.cell(ii, jj)] -= scale * w;
            };
            couple(i - 1, j, ix2);
            couple(i + 1, j, ix2);
            couple(i, j - 1, iy2);
            couple(i, j + 1, iy2);
        }
    }
    return a;
}

} // namespace kss::test
