#include "kss/grid.hpp"

#include <cmath>
#include <string>

#include "kss/error.hpp"

namespace kss {

Grid build_grid(const Domain& domain, int nx, int ny) {
    if (!(domain.lx > 0.0) || !(domain.ly > 0.0) || !std::isfinite(domain.lx) ||
        !std::isfinite(domain.ly))
        throw InvalidArgument("domain extents must be positive and finite");
    if (nx < 4 || ny < 4)
        throw InvalidArgument("grid needs at least 4 cells per direction, got " +
                              std::to_string(nx) + "x" + std::to_string(ny));
    Grid g;
    g.domain = domain;
    g.nx = nx;
    g.ny = ny;
    g.dx = domain.lx / nx;
    g.dy = domain.ly / ny;
    return g;
}

} // namespace kss
