#include "kss/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kss/error.hpp"

namespace kss {

namespace {

bool finite_all(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

double max_abs_of(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

template <class Op>
std::vector<double> zip(std::span<const double> a, std::span<const double> b, Op op) {
    std::vector<double> out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = op(a[k], b[k]);
    return out;
}

} // namespace

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
    if (!(a == b))
        throw DimensionMismatch(std::string(what) + ": fields live on different grids (" +
                                std::to_string(a.nx) + "x" + std::to_string(a.ny) + " vs " +
                                std::to_string(b.nx) + "x" + std::to_string(b.ny) + ")");
}

double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }
bool ScalarField::all_finite() const { return finite_all(values_); }

double MacVectorField::max_abs() const { return std::max(max_abs_of(x_), max_abs_of(y_)); }

double MacVectorField::max_abs_boundary_normal() const {
    double m = 0.0;
    for (int j = 0; j < grid_.ny; ++j)
        m = std::max({m, std::abs(x(0, j)), std::abs(x(grid_.nx, j))});
    for (int i = 0; i < grid_.nx; ++i)
        m = std::max({m, std::abs(y(i, 0)), std::abs(y(i, grid_.ny))});
    return m;
}

void MacVectorField::zero_boundary_normal() {
    for (int j = 0; j < grid_.ny; ++j) x(0, j) = x(grid_.nx, j) = 0.0;
    for (int i = 0; i < grid_.nx; ++i) y(i, 0) = y(i, grid_.ny) = 0.0;
}

bool MacVectorField::all_finite() const { return finite_all(x_) && finite_all(y_); }

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a.grid(), b.grid(), "operator+");
    ScalarField out(a.grid());
    auto v = zip(a.values(), b.values(), std::plus<>{});
    std::copy(v.begin(), v.end(), out.values().begin());
    return out;
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a.grid(), b.grid(), "operator-");
    ScalarField out(a.grid());
    auto v = zip(a.values(), b.values(), std::minus<>{});
    std::copy(v.begin(), v.end(), out.values().begin());
    return out;
}

ScalarField operator*(double s, const ScalarField& a) {
    ScalarField out = a;
    for (double& x : out.values()) x *= s;
    return out;
}

MacVectorField operator+(const MacVectorField& a, const MacVectorField& b) {
    require_same_grid(a.grid(), b.grid(), "operator+");
    MacVectorField out = a;
    for (std::size_t k = 0; k < out.xs().size(); ++k) out.xs()[k] += b.xs()[k];
    for (std::size_t k = 0; k < out.ys().size(); ++k) out.ys()[k] += b.ys()[k];
    return out;
}

MacVectorField operator-(const MacVectorField& a, const MacVectorField& b) {
    require_same_grid(a.grid(), b.grid(), "operator-");
    MacVectorField out = a;
    for (std::size_t k = 0; k < out.xs().size(); ++k) out.xs()[k] -= b.xs()[k];
    for (std::size_t k = 0; k < out.ys().size(); ++k) out.ys()[k] -= b.ys()[k];
    return out;
}

MacVectorField operator*(double s, const MacVectorField& a) {
    MacVectorField out = a;
    for (double& x : out.xs()) x *= s;
    for (double& x : out.ys()) x *= s;
    return out;
}

} // namespace kss
