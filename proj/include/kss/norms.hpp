#pragma once

#include <limits>

#include "kss/field.hpp"

namespace kss {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Midpoint quadrature sum f_ij dx dy. Throws InvalidArgument on non-finite input.
double integral(const ScalarField& f);

/// (sum |f|^p dx dy)^(1/p); max |f| for p = infinity. Requires p >= 1.
double lp_norm(const ScalarField& f, double p);

/// L^p norm of |grad f| with face gradients averaged to cell centers.
double grad_lp_norm(const ScalarField& f, double p);

/// sum n ln n dx dy with 0 ln 0 = 0. Cells below 1e-300 count as zero.
/// Throws InvalidArgument if any cell is negative.
double entropy(const ScalarField& n);

} // namespace kss
