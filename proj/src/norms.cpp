#include "kss/norms.hpp"

#include <cmath>
#include <string>

#include "kss/error.hpp"
#include "kss/operators.hpp"

namespace kss {

namespace {

void require_exponent(double p) {
    if (!(p >= 1.0)) throw InvalidArgument("norm exponent must be >= 1, got " + std::to_string(p));
}

double lp_of_magnitude(const ScalarField& mag, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : mag.values()) m = std::max(m, std::abs(v));
        return m;
    }
    double sum = 0.0;
    if (p == 1.0) {
        for (double v : mag.values()) sum += std::abs(v);
    } else if (p == 2.0) {
        for (double v : mag.values()) sum += v * v;
    } else {
        for (double v : mag.values()) sum += std::pow(std::abs(v), p);
    }
    return std::pow(sum * mag.grid().cell_volume(), 1.0 / p);
}

} // namespace

double integral(const ScalarField& f) {
    double sum = 0.0;
    for (double v : f.values()) {
        if (!std::isfinite(v)) throw InvalidArgument("integral of a non-finite field");
        sum += v;
    }
    return sum * f.grid().cell_volume();
}

double lp_norm(const ScalarField& f, double p) {
    require_exponent(p);
    return lp_of_magnitude(f, p);
}

double grad_lp_norm(const ScalarField& f, double p) {
    require_exponent(p);
    const CellVector g = gradient_at_centers(f);
    ScalarField mag(f.grid());
    for (std::size_t k = 0; k < mag.size(); ++k) mag[k] = std::hypot(g.x[k], g.y[k]);
    return lp_of_magnitude(mag, p);
}

double entropy(const ScalarField& n) {
    double sum = 0.0;
    for (double v : n.values()) {
        if (v < 0.0) throw InvalidArgument("entropy of a field with negative cells");
        if (v >= 1e-300) sum += v * std::log(v);
    }
    return sum * n.grid().cell_volume();
}

} // namespace kss
