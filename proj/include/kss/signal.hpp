#pragma once

#include "kss/density.hpp"
#include "kss/field.hpp"

namespace kss {

/// Signal production f(s) = k0 s^alpha, the extremal law admitted by 0 <= f(s) <= k0 s^alpha.
struct SignalProduction {
    double k0 = 1.0;
    double alpha = 0.5;

    /// Throws InvalidArgument unless k0 > 0 and 0 < alpha <= 1.
    void validate() const;
    double operator()(double s) const;
};

/// Cellwise k0 n^alpha (zero where n == 0). Throws InvalidArgument on negative cells.
ScalarField production(const ScalarField& n, const SignalProduction& law);

/// One IMEX step of c_t = Lap c - c + f(n) - div(u c), zero-flux walls.
/// (1 + dt) c_new - dt Lap c_new = c - dt div(upwind u c) + dt f(n).
///
/// Throws CflViolation when the advective CFL or the outflow fraction of u exceeds 1.
ScalarField signal_step(const ScalarField& c, const ScalarField& n, const MacVectorField& u,
                        const SignalProduction& law, const TransportConfig& cfg);

} // namespace kss
