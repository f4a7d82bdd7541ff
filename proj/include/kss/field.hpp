#pragma once

#include <span>
#include <vector>

#include "kss/grid.hpp"

namespace kss {

/// Cell-centered scalar (n, c, P, phi).
class ScalarField {
public:
    ScalarField() = default;
    explicit ScalarField(const Grid& grid, double value = 0.0)
        : grid_(grid), values_(grid.cells(), value) {}

    template <class F>
    static ScalarField sample(const Grid& grid, F&& f) {
        ScalarField out(grid);
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i) out(i, j) = f(grid.xc(i), grid.yc(j));
        return out;
    }

    const Grid& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }

    double& operator()(int i, int j) { return values_[grid_.cell(i, j)]; }
    double operator()(int i, int j) const { return values_[grid_.cell(i, j)]; }
    double& operator[](std::size_t k) { return values_[k]; }
    double operator[](std::size_t k) const { return values_[k]; }

    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }

    double min() const;
    double max() const;
    bool all_finite() const;

private:
    Grid grid_;
    std::vector<double> values_;
};

/// Face-normal components on the MAC grid: x-component on x-faces, y-component on y-faces.
/// For velocities the wall faces (i = 0, nx for x; j = 0, ny for y) carry the no-slip zero.
class MacVectorField {
public:
    MacVectorField() = default;
    explicit MacVectorField(const Grid& grid)
        : grid_(grid), x_(grid.x_faces(), 0.0), y_(grid.y_faces(), 0.0) {}

    /// Samples (fx, fy) at face centers; wall-normal faces are left at zero.
    template <class FX, class FY>
    static MacVectorField sample(const Grid& grid, FX&& fx, FY&& fy) {
        MacVectorField out(grid);
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 1; i < grid.nx; ++i) out.x(i, j) = fx(grid.xf(i), grid.yc(j));
        for (int j = 1; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i) out.y(i, j) = fy(grid.xc(i), grid.yf(j));
        return out;
    }

    const Grid& grid() const { return grid_; }

    double& x(int i, int j) { return x_[grid_.xface(i, j)]; }
    double x(int i, int j) const { return x_[grid_.xface(i, j)]; }
    double& y(int i, int j) { return y_[grid_.yface(i, j)]; }
    double y(int i, int j) const { return y_[grid_.yface(i, j)]; }

    std::span<double> xs() { return x_; }
    std::span<const double> xs() const { return x_; }
    std::span<double> ys() { return y_; }
    std::span<const double> ys() const { return y_; }

    /// Largest absolute face component.
    double max_abs() const;
    /// Largest absolute value on wall-normal faces; zero for an admissible velocity.
    double max_abs_boundary_normal() const;
    void zero_boundary_normal();
    bool all_finite() const;

private:
    Grid grid_;
    std::vector<double> x_;
    std::vector<double> y_;
};

/// Unknowns (n, c, u, P) at time t on one grid.
struct State {
    ScalarField n;
    ScalarField c;
    MacVectorField u;
    ScalarField p;
    double t = 0.0;

    explicit State(const Grid& grid) : n(grid), c(grid), u(grid), p(grid) {}
    const Grid& grid() const { return n.grid(); }
};

void require_same_grid(const Grid& a, const Grid& b, const char* what);

// Pointwise helpers used throughout the steppers.
ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double s, const ScalarField& a);
MacVectorField operator+(const MacVectorField& a, const MacVectorField& b);
MacVectorField operator-(const MacVectorField& a, const MacVectorField& b);
MacVectorField operator*(double s, const MacVectorField& a);

} // namespace kss
