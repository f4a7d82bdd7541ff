#include <doctest.h>

#include "kss/error.hpp"
#include "kss/grid.hpp"

using namespace kss;

TEST_CASE("build_grid spacings") {
    const Grid a = build_grid({1.0, 1.0}, 4, 4);
    CHECK(a.dx == 0.25);
    CHECK(a.dy == 0.25);
    CHECK(a.cells() == 16);
    CHECK(a.x_faces() == 20);
    CHECK(a.y_faces() == 20);

    const Grid b = build_grid({2.0, 1.0}, 8, 4);
    CHECK(b.dx == 0.25);
    CHECK(b.dy == 0.25);
    CHECK(b.cell_volume() == 0.0625);
}

TEST_CASE("cell centers sit at half-integer offsets") {
    const Grid g = build_grid({2.0, 1.0}, 8, 4);
    CHECK(g.xc(0) == doctest::Approx(0.125));
    CHECK(g.yc(3) == doctest::Approx(0.875));
    CHECK(g.xf(8) == doctest::Approx(2.0));
}

TEST_CASE("build_grid rejects bad input") {
    CHECK_THROWS_AS(build_grid({1.0, 1.0}, 3, 4), InvalidArgument);
    CHECK_THROWS_AS(build_grid({1.0, 1.0}, 4, 2), InvalidArgument);
    CHECK_THROWS_AS(build_grid({0.0, 1.0}, 4, 4), InvalidArgument);
    CHECK_THROWS_AS(build_grid({1.0, -1.0}, 4, 4), InvalidArgument);
}
