#include "kss/linear_solver.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <string>
#include <tuple>

#include "kss/error.hpp"

namespace kss {

namespace {

// Treatment of one end pair of a packed direction.
enum class End { Mirror, Anti, Wall };

struct Ends {
    End x;
    End y;
};

Ends ends_of(Layout layout) {
    switch (layout) {
    case Layout::CellNeumann: return {End::Mirror, End::Mirror};
    case Layout::CellDirichlet: return {End::Anti, End::Anti};
    case Layout::XFace: return {End::Wall, End::Anti};
    case Layout::YFace: return {End::Anti, End::Wall};
    }
    return {End::Mirror, End::Mirror};
}

// Contribution of the out-of-range neighbor, expressed as a multiple of the center value.
inline double ghost_factor(End e) {
    switch (e) {
    case End::Mirror: return 1.0;
    case End::Anti: return -1.0;
    case End::Wall: return 0.0;
    }
    return 0.0;
}

fftw_r2r_kind forward_kind(End e) {
    switch (e) {
    case End::Mirror: return FFTW_REDFT10;
    case End::Anti: return FFTW_RODFT10;
    case End::Wall: return FFTW_RODFT00;
    }
    return FFTW_REDFT10;
}

fftw_r2r_kind inverse_kind(End e) {
    switch (e) {
    case End::Mirror: return FFTW_REDFT01;
    case End::Anti: return FFTW_RODFT01;
    case End::Wall: return FFTW_RODFT00;
    }
    return FFTW_REDFT01;
}

// Logical transform length N (the unnormalized round trip scales by N).
int logical_length(End e, int m) { return e == End::Wall ? 2 * (m + 1) : 2 * m; }

// Eigenvalues of the 1D operator -(u[k+1] - 2u[k] + u[k-1]) times h^2.
std::vector<double> symbol_1d(End e, int m) {
    std::vector<double> out(m);
    for (int k = 0; k < m; ++k) {
        double theta = 0.0;
        switch (e) {
        case End::Mirror: theta = std::numbers::pi * k / (2.0 * m); break;
        case End::Anti: theta = std::numbers::pi * (k + 1) / (2.0 * m); break;
        case End::Wall: theta = std::numbers::pi * (k + 1) / (2.0 * (m + 1)); break;
        }
        const double s = std::sin(theta);
        out[k] = 4.0 * s * s;
    }
    return out;
}

// FFTW plans for one packed shape and end combination. The buffer is shared, so execution
// is serialized through `mutex`.
class TransformPlan {
public:
    TransformPlan(int mx, int my, Ends ends)
        : mx_(mx), my_(my), sx_(symbol_1d(ends.x, mx)), sy_(symbol_1d(ends.y, my)) {
        const std::size_t n = static_cast<std::size_t>(mx) * my;
        buffer_ = static_cast<double*>(fftw_malloc(sizeof(double) * n));
        forward_ = fftw_plan_r2r_2d(my, mx, buffer_, buffer_, forward_kind(ends.y),
                                    forward_kind(ends.x), FFTW_ESTIMATE);
        inverse_ = fftw_plan_r2r_2d(my, mx, buffer_, buffer_, inverse_kind(ends.y),
                                    inverse_kind(ends.x), FFTW_ESTIMATE);
        norm_ = 1.0 / (static_cast<double>(logical_length(ends.x, mx)) *
                       logical_length(ends.y, my));
    }
    ~TransformPlan() {
        fftw_destroy_plan(forward_);
        fftw_destroy_plan(inverse_);
        fftw_free(buffer_);
    }
    TransformPlan(const TransformPlan&) = delete;
    TransformPlan& operator=(const TransformPlan&) = delete;

    void invert(double shift, double scale, double dx, double dy, std::span<const double> rhs,
                std::span<double> x) {
        std::lock_guard lock(mutex_);
        std::copy(rhs.begin(), rhs.end(), buffer_);
        fftw_execute(forward_);
        const double ax = scale / (dx * dx);
        const double ay = scale / (dy * dy);
        for (int j = 0; j < my_; ++j) {
            for (int i = 0; i < mx_; ++i) {
                const double lambda = shift + ax * sx_[i] + ay * sy_[j];
                double& v = buffer_[static_cast<std::size_t>(j) * mx_ + i];
                // Only the constant mode of the pure Neumann Laplacian can vanish.
                v = lambda > 0.0 ? v * norm_ / lambda : 0.0;
            }
        }
        fftw_execute(inverse_);
        std::copy(buffer_, buffer_ + x.size(), x.begin());
    }

private:
    int mx_;
    int my_;
    std::vector<double> sx_;
    std::vector<double> sy_;
    double* buffer_ = nullptr;
    fftw_plan forward_ = nullptr;
    fftw_plan inverse_ = nullptr;
    double norm_ = 1.0;
    std::mutex mutex_;
};

TransformPlan& plan_for(int mx, int my, Layout layout) {
    static std::mutex registry_mutex;
    static std::map<std::tuple<int, int, Layout>, std::unique_ptr<TransformPlan>> registry;
    std::lock_guard lock(registry_mutex);
    auto& slot = registry[{mx, my, layout}];
    if (!slot) slot = std::make_unique<TransformPlan>(mx, my, ends_of(layout));
    return *slot;
}

double dot(std::span<const double> a, std::span<const double> b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

void remove_mean(std::span<double> v) {
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    for (double& x : v) x -= mean;
}

void require_size(const Grid& grid, Layout layout, std::size_t got, const char* what) {
    if (got != packed_shape(grid, layout).size())
        throw DimensionMismatch(std::string(what) + ": vector length " + std::to_string(got) +
                                " does not match the packed layout");
}

} // namespace

PackedShape packed_shape(const Grid& grid, Layout layout) {
    switch (layout) {
    case Layout::CellNeumann:
    case Layout::CellDirichlet: return {grid.nx, grid.ny};
    case Layout::XFace: return {grid.nx - 1, grid.ny};
    case Layout::YFace: return {grid.nx, grid.ny - 1};
    }
    return {};
}

void apply_shifted_laplacian(const Grid& grid, Layout layout, double shift, double scale,
                             std::span<const double> x, std::span<double> y) {
    require_size(grid, layout, x.size(), "apply_shifted_laplacian");
    require_size(grid, layout, y.size(), "apply_shifted_laplacian");
    const auto [mx, my] = packed_shape(grid, layout);
    const Ends ends = ends_of(layout);
    const double gx = ghost_factor(ends.x);
    const double gy = ghost_factor(ends.y);
    const double ix2 = 1.0 / (grid.dx * grid.dx);
    const double iy2 = 1.0 / (grid.dy * grid.dy);
    auto at = [&](int i, int j) { return x[static_cast<std::size_t>(j) * mx + i]; };
    for (int j = 0; j < my; ++j) {
        for (int i = 0; i < mx; ++i) {
            const double c = at(i, j);
            const double w = i > 0 ? at(i - 1, j) : gx * c;
            const double e = i < mx - 1 ? at(i + 1, j) : gx * c;
            const double s = j > 0 ? at(i, j - 1) : gy * c;
            const double n = j < my - 1 ? at(i, j + 1) : gy * c;
            const double lap = (e - 2.0 * c + w) * ix2 + (n - 2.0 * c + s) * iy2;
            y[static_cast<std::size_t>(j) * mx + i] = shift * c - scale * lap;
        }
    }
}

void spectral_inverse(const Grid& grid, Layout layout, double shift, double scale,
                      std::span<const double> rhs, std::span<double> x) {
    require_size(grid, layout, rhs.size(), "spectral_inverse");
    require_size(grid, layout, x.size(), "spectral_inverse");
    const auto [mx, my] = packed_shape(grid, layout);
    plan_for(mx, my, layout).invert(shift, scale, grid.dx, grid.dy, rhs, x);
}

SolveStats solve_shifted_laplacian(const Grid& grid, Layout layout, double shift, double scale,
                                   std::span<const double> rhs, std::span<double> x, double tol,
                                   int max_iter, Preconditioner precond) {
    require_size(grid, layout, rhs.size(), "solve_shifted_laplacian");
    require_size(grid, layout, x.size(), "solve_shifted_laplacian");
    if (!(shift >= 0.0) || !(scale > 0.0))
        throw InvalidArgument("shifted Laplacian needs shift >= 0 and scale > 0");

    const std::size_t n = rhs.size();
    const bool singular = shift == 0.0 && layout == Layout::CellNeumann;

    std::vector<double> b(rhs.begin(), rhs.end());
    if (singular) {
        remove_mean(b);
        remove_mean(x);
    }
    const double bnorm = std::sqrt(dot(b, b));
    if (bnorm == 0.0) {
        std::fill(x.begin(), x.end(), 0.0);
        return {0, 0.0};
    }

    const Ends ends = ends_of(layout);
    const double ix2 = 1.0 / (grid.dx * grid.dx);
    const double iy2 = 1.0 / (grid.dy * grid.dy);
    auto apply_precond = [&](std::span<const double> r, std::span<double> z) {
        if (precond == Preconditioner::Spectral) {
            spectral_inverse(grid, layout, shift, scale, r, z);
            return;
        }
        // Jacobi: the diagonal is constant except next to ends with a ghost.
        const auto [mx, my] = packed_shape(grid, layout);
        for (int j = 0; j < my; ++j) {
            for (int i = 0; i < mx; ++i) {
                double d = shift + scale * (2.0 * ix2 + 2.0 * iy2);
                if (i == 0 || i == mx - 1) d -= scale * ghost_factor(ends.x) * ix2;
                if (j == 0 || j == my - 1) d -= scale * ghost_factor(ends.y) * iy2;
                const std::size_t k = static_cast<std::size_t>(j) * mx + i;
                z[k] = r[k] / d;
            }
        }
    };

    std::vector<double> r(n), z(n), p(n), ap(n);
    apply_shifted_laplacian(grid, layout, shift, scale, x, ap);
    for (std::size_t k = 0; k < n; ++k) r[k] = b[k] - ap[k];
    if (singular) remove_mean(r);

    double rnorm = std::sqrt(dot(r, r));
    if (rnorm <= tol * bnorm) return {0, rnorm / bnorm};

    apply_precond(r, z);
    if (singular) remove_mean(z);
    p = z;
    double rz = dot(r, z);
    for (int it = 1; it <= max_iter; ++it) {
        apply_shifted_laplacian(grid, layout, shift, scale, p, ap);
        const double pap = dot(p, ap);
        if (!(pap > 0.0)) break;
        const double alpha = rz / pap;
        for (std::size_t k = 0; k < n; ++k) {
            x[k] += alpha * p[k];
            r[k] -= alpha * ap[k];
        }
        if (singular) remove_mean(r);
        rnorm = std::sqrt(dot(r, r));
        if (rnorm <= tol * bnorm) {
            if (singular) remove_mean(x);
            return {it, rnorm / bnorm};
        }
        apply_precond(r, z);
        if (singular) remove_mean(z);
        const double rz_new = dot(r, z);
        const double beta = rz_new / rz;
        rz = rz_new;
        for (std::size_t k = 0; k < n; ++k) p[k] = z[k] + beta * p[k];
    }
    throw SolverDivergence("conjugate gradients did not reach relative residual " +
                               std::to_string(tol) + " (got " + std::to_string(rnorm / bnorm) +
                               ")",
                           max_iter, rnorm / bnorm);
}

} // namespace kss
