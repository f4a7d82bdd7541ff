#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "kss/config.hpp"
#include "kss/diagnostics.hpp"
#include "kss/error.hpp"
#include "kss/field.hpp"
#include "kss/stokes.hpp"

namespace kss {

/// A step failed; `step` is the 1-based index of the step that could not be taken.
class StepFailure : public Error {
public:
    StepFailure(const std::string& what, std::size_t step, double t)
        : Error(what), step_(step), t_(t) {}
    std::size_t step() const { return step_; }
    double time() const { return t_; }

private:
    std::size_t step_;
    double t_;
};

/// CSV header of diagnostics.csv.
inline constexpr const char* kDiagnosticsHeader =
    "t,mass,l1_c,linf_n,lp_n,l2q_gradc,entropy,energy_y,l2_gradc,du_l32,linf_u,div_u_max,blown_up";

/// One CSV row (no trailing newline), 17 significant digits.
std::string format_record(const DiagnosticsRecord& r);

/// Initial (n, c, u) at t = 0 with P = 0.
State initial_state(const SimulationConfig& cfg);
Potential make_potential(const SimulationConfig& cfg, const Grid& grid);

/// dt = 0.2 min(dx, dy) / (1 + max|grad c0| + max|u0|).
double default_time_step(const State& s0);

/// Raw little-endian doubles, in the stored order of the span.
void write_f64(const std::string& path, std::span<const double> values);
std::vector<double> read_f64(const std::string& path, std::size_t expected);

struct RunResult {
    State final_state;
    std::vector<DiagnosticsRecord> history;
    Verdict verdict = Verdict::Bounded;
    std::size_t steps = 0;
    double dt = 0.0;
};

using RecordCallback = std::function<void(std::size_t step, const DiagnosticsRecord&)>;
/// Sees the state after every accepted step (and the initial state as step 0).
using StepObserver = std::function<void(std::size_t step, const State&)>;

/// Steps density, signal and Stokes in that order from t = 0 to t_end with a fixed dt (the last
/// step is shortened to land on t_end). Records at step 0, every sample_every steps, and at the
/// final step; stops after a record flagged blown_up. When output_dir is set, writes
/// diagnostics.csv, meta.json and (if enabled) per-sample snapshots.
///
/// Throws StepFailure after flushing the partial CSV if a step is refused or a solve fails.
RunResult run(const SimulationConfig& cfg, const RecordCallback& on_record = {},
              const StepObserver& on_step = {});

/// Process exit code for a verdict: 0 bounded, 2 growing, 3 blown_up.
int exit_code(Verdict v);

} // namespace kss
