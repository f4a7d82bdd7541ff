#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "kss/error.hpp"
#include "kss/norms.hpp"
#include "kss/operators.hpp"
#include "kss/stokes.hpp"
#include "test_support.hpp"

using namespace kss;
using std::numbers::pi;

namespace {

ProjectionConfig step_of(double dt) {
    ProjectionConfig pc;
    pc.dt = dt;
    return pc;
}

Potential linear_y(const Grid& g, double gravity = 1.0) {
    return Potential::from(ScalarField::sample(g, [&](double, double y) { return gravity * y; }));
}

} // namespace

TEST_CASE("potential construction") {
    const Grid g = build_grid({1.0, 2.0}, 8, 8);
    const Potential pot = linear_y(g, 3.0);
    for (int j = 1; j < g.ny; ++j) CHECK(pot.grad_phi.y(2, j) == doctest::Approx(3.0));
    CHECK(pot.grad_phi.max_abs_boundary_normal() == 0.0);
    ScalarField bad(g, 0.0);
    bad(1, 1) = INFINITY;
    CHECK_THROWS_AS(Potential::from(bad), InvalidArgument);
}

TEST_CASE("buoyancy uses the face mean of n") {
    const Grid g = build_grid({1.0, 1.0}, 4, 4);
    ScalarField n(g, 1.0);
    n(1, 1) = 3.0;
    const MacVectorField f = buoyancy(n, linear_y(g));
    CHECK(f.y(1, 1) == doctest::Approx(2.0));
    CHECK(f.y(1, 2) == doctest::Approx(2.0));
    CHECK(f.y(0, 1) == doctest::Approx(1.0));
    CHECK(test::max_abs(f.xs()) == 0.0);
}

TEST_CASE("projection of a gradient matches the dense Poisson oracle") {
    const Grid g = build_grid({1.0, 1.0}, 32, 32);
    const ScalarField pot = ScalarField::sample(
        g, [](double x, double y) { return std::exp(x) * std::cos(pi * y) + x * x * y; });
    const MacVectorField v = gradient(pot);
    const Projection proj = helmholtz_project(v, step_of(1e-3));

    // Oracle: -Lap q = -div v with the null space removed by adding the all-ones matrix.
    auto a = test::dense_neumann_operator(g, 0.0, 1.0);
    const std::size_t n = g.cells();
    for (double& x : a) x += 1.0;
    const ScalarField div = divergence(v);
    std::vector<double> rhs(n);
    for (std::size_t k = 0; k < n; ++k) rhs[k] = -div[k];
    const auto q = test::dense_solve(a, rhs);

    double diff = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        diff = std::max(diff, std::abs(proj.potential[k] - q[k]));
        scale = std::max(scale, std::abs(q[k]));
    }
    CHECK(diff <= 1e-9 * scale);
    CHECK(proj.velocity.max_abs() <= 1e-9 * v.max_abs());
}

TEST_CASE("projection is idempotent and yields admissible fields") {
    const Grid g = build_grid({1.5, 1.0}, 24, 16);
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 5; ++trial) {
        const MacVectorField v = test::random_velocity(g, rng);
        const Projection once = helmholtz_project(v, step_of(1e-3));
        const Projection twice = helmholtz_project(once.velocity, step_of(1e-3));
        CHECK(once.velocity.max_abs_boundary_normal() == 0.0);
        CHECK(test::max_abs(divergence(once.velocity)) <= 1e-9 * v.max_abs() / g.dx);
        CHECK((twice.velocity - once.velocity).max_abs() <= 1e-10 * once.velocity.max_abs());
        // Orthogonality: the removed part is a gradient.
        const double cross = test::inner(once.velocity, v - once.velocity);
        CHECK(std::abs(cross) <= 1e-9 * test::kinetic(v));
        CHECK(std::abs(integral(once.potential)) <= 1e-10 * lp_norm(once.potential, 1.0) + 1e-14);
    }
}

TEST_CASE("stokes step with zero data stays at zero") {
    const Grid g = build_grid({1.0, 1.0}, 16, 16);
    const StokesUpdate up = stokes_step(MacVectorField(g), ScalarField(g, 0.0), linear_y(g), step_of(0.01));
    CHECK(up.u.max_abs() == 0.0);
    CHECK(test::max_abs(up.p) == 0.0);
}

TEST_CASE("hydrostatic balance: uniform density under a linear potential") {
    const Grid g = build_grid({1.0, 1.0}, 32, 32);
    const StokesUpdate up = stokes_step(MacVectorField(g), ScalarField(g, 1.0), linear_y(g), step_of(0.01));
    CHECK(up.u.max_abs() <= 1e-10);
    // The projection potential absorbs the force: q / dt = phi minus its mean.
    const ScalarField phi = ScalarField::sample(g, [](double, double y) { return y; });
    const ScalarField expected = phi - ScalarField(g, 0.5);
    CHECK(test::max_abs(up.p - expected) <= 1e-8);
}

TEST_CASE("kinetic energy decays without forcing") {
    const Grid g = build_grid({1.0, 1.0}, 24, 24);
    std::mt19937_64 rng(21);
    MacVectorField u = helmholtz_project(test::random_velocity(g, rng), step_of(1e-3)).velocity;
    const Potential pot = linear_y(g);
    double prev = test::kinetic(u);
    for (int k = 0; k < 10; ++k) {
        u = stokes_step(u, ScalarField(g, 0.0), pot, step_of(0.01)).u;
        const double e = test::kinetic(u);
        CHECK(e < prev);
        prev = e;
        CHECK(u.max_abs_boundary_normal() == 0.0);
        CHECK(test::max_abs(divergence(u)) <= 1e-7 * (1 + u.max_abs()));
    }
}

TEST_CASE("a plume drives flow that stays admissible") {
    const Grid g = build_grid({1.0, 1.0}, 32, 32);
    const ScalarField n = test::gaussian(g, 0.3, 0.5, 0.1, 10.0);
    const StokesUpdate up = stokes_step(MacVectorField(g), n, linear_y(g), step_of(0.01));
    CHECK(up.u.max_abs() > 1e-4);
    CHECK(up.u.max_abs_boundary_normal() == 0.0);
    CHECK(test::max_abs(divergence(up.u)) <= 1e-7 * (1 + up.u.max_abs()));
}

TEST_CASE("viscous solve inverts I - dt Lap") {
    const Grid g = build_grid({1.0, 1.0}, 16, 20);
    std::mt19937_64 rng(3);
    const MacVectorField v = test::random_velocity(g, rng);
    const double dt = 0.05;
    const MacVectorField w = viscous_solve(v, dt, 1e-13, 200);
    const MacVectorField back = w - dt * vector_laplacian(w);
    CHECK((back - v).max_abs() <= 1e-10);
}

TEST_CASE("stokes argument checks") {
    const Grid g = build_grid({1.0, 1.0}, 8, 8);
    const Grid h = build_grid({1.0, 1.0}, 8, 10);
    CHECK_THROWS_AS(stokes_step(MacVectorField(g), ScalarField(h, 1.0), linear_y(g), step_of(0.01)),
                    DimensionMismatch);
    CHECK_THROWS_AS(stokes_step(MacVectorField(g), ScalarField(g, 1.0), linear_y(g), step_of(-1.0)),
                    InvalidArgument);
}
