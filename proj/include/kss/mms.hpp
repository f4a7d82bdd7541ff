#pragma once

#include <string>
#include <vector>

namespace kss {

struct MmsLevel {
    int n = 0;            ///< cells per direction
    double error = 0.0;   ///< discrete L2 error
    double order = 0.0;   ///< log2(previous error / error); NaN on the coarsest level
};

struct MmsCase {
    std::string name;
    std::vector<MmsLevel> levels;
    double required_order = 0.0;
    double min_order = 0.0; ///< smallest observed order across refinements
    bool pass = false;
};

/// Manufactured-solution refinement study on grids 32^2, 64^2, ... (levels of them):
///   heat              density step with c = const, u = 0 against the exact time-discrete
///                     decay of a Neumann cosine mode (required order 1.8)
///   signal            signal step driven to its steady state c - Lap c = f(n) (1.8)
///   upwind_transport  explicit upwind advection by a rotating no-slip field with a source (0.8)
///   stokes_viscous    (I - dt Lap) w = rhs for both velocity components (1.8)
///   stokes_projection Leray projection of (div-free w) + grad g recovers w (1.8)
/// Throws InvalidArgument when levels < 3.
std::vector<MmsCase> mms_convergence(int levels);

} // namespace kss
