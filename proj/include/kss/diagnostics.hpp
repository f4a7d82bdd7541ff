#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kss/field.hpp"

namespace kss {

/// One sampled row of monitored norms and functionals.
struct DiagnosticsRecord {
    double t = 0.0;
    double mass = 0.0;      ///< integral of n
    double l1_c = 0.0;      ///< integral of c
    double linf_n = 0.0;
    double lp_n = 0.0;      ///< ||n||_{L^p}, p from MonitorConfig
    double l2q_gradc = 0.0; ///< ||grad c||_{L^{2q}}, q from MonitorConfig
    double entropy = 0.0;   ///< integral of n ln n
    double energy_y = 0.0;  ///< entropy + lambda * l2_gradc
    double l2_gradc = 0.0;  ///< integral of |grad c|^2
    double du_l32 = 0.0;    ///< ||Du||_{L^{3/2}}
    double linf_u = 0.0;
    double div_u_max = 0.0;
    bool blown_up = false;
};

struct MonitorConfig {
    double p = 2.0;
    double q = 2.0;
    double lambda = 1.0;
    double blow_up_threshold = 1e8;
    int sample_every = 10;

    /// Throws InvalidArgument for p < 1, q < 1, lambda <= 0, threshold <= 0, sample_every < 1.
    void validate() const;
};

/// Cell-centered Frobenius norm of the velocity gradient. Tangential derivatives at the walls
/// use the no-slip ghost (antisymmetric) values.
ScalarField velocity_gradient_norm(const MacVectorField& u);

/// Samples every monitored quantity. Never throws on bad data: non-finite values or
/// ||n||_inf above the threshold set blown_up.
DiagnosticsRecord record(const State& state, const MonitorConfig& cfg);

/// y0 e^{-t} + C2 (1 - e^{-t}) with C2 = k0 mass^alpha area^(1 - alpha).
double l1_envelope(double t, double y0, double k0, double alpha, double mass, double area);

/// Constant of ab <= eps a^p + C b^q: C = (eps p)^{-q/p} / q. Requires 1/p + 1/q = 1.
double young_constant(double eps, double p, double q);

struct YoungReport {
    std::size_t samples = 0;
    std::size_t violations = 0;
    double max_ratio = 0.0;      ///< max ab / (eps a^p + C b^q) over the random draws
    double equality_ratio = 0.0; ///< ratio at the maximizing a for a fixed (b, eps, p)
};

/// Draws (a, b, eps, p) with a, b in [0, 1e3] and checks the weighted Young inequality.
YoungReport check_young(std::size_t samples, std::uint64_t seed);

struct InequalityReport {
    std::size_t cells_checked = 0;
    std::size_t violations = 0;
    double max_violation = 0.0; ///< largest lhs - rhs (<= 0 when none)
    double max_ratio = 0.0;     ///< largest lhs / rhs over cells with rhs > 0
};

/// Interior cells: |Lap c| <= sqrt(2) |D^2 c| + 1e-10 scale.
InequalityReport check_hessian_cs(const ScalarField& c);

/// Outward normal derivative of |grad c|^2 across each wall, using mirror ghosts beyond the
/// walls and centered differences. For a field obeying the discrete Neumann condition this is
/// <= 0; a violation is a value above 1e-10 scale.
InequalityReport check_boundary_sign(const ScalarField& c);

/// Empirical Gagliardo-Nirenberg ratio
///   int n^{rs} / ((int |grad n^{r/2}|^2)^{(rs-1)/r} + 1).
/// Requires n >= 0, not identically zero, r >= 1, s >= 1.
double check_gn_ratio(const ScalarField& n, double r, double s);

enum class Verdict { Bounded, Growing, BlownUp };
std::string to_string(Verdict v);

/// Growth factor over the second half of a run at which the verdict becomes Growing.
inline constexpr double kGrowthFactor = 10.0;

/// BlownUp if any record is flagged; Growing if ||n||_inf at the end is >= 10x its value at
/// the start of the second half (records with t >= (t_first + t_last) / 2); Bounded otherwise.
/// Throws InvalidArgument on an empty history.
Verdict detect_blow_up(std::span<const DiagnosticsRecord> history);

} // namespace kss
