#include <doctest.h>

#include <cmath>
#include <random>

#include "kss/error.hpp"
#include "kss/norms.hpp"
#include "kss/signal.hpp"
#include "test_support.hpp"

using namespace kss;

namespace {

TransportConfig step_of(double dt) {
    TransportConfig tc;
    tc.dt = dt;
    return tc;
}

} // namespace

TEST_CASE("production law") {
    const SignalProduction law{2.0, 0.5};
    CHECK(law(0.0) == 0.0);
    CHECK(law(4.0) == doctest::Approx(4.0));
    CHECK(law(-1.0) == 0.0);
    CHECK_NOTHROW(law.validate());
    CHECK_THROWS_AS((SignalProduction{1.0, 1.5}.validate()), InvalidArgument);
    CHECK_THROWS_AS((SignalProduction{1.0, 0.0}.validate()), InvalidArgument);
    CHECK_THROWS_AS((SignalProduction{0.0, 0.5}.validate()), InvalidArgument);
    CHECK_NOTHROW((SignalProduction{1.0, 1.0}.validate()));

    const Grid g = build_grid({1.0, 1.0}, 4, 4);
    ScalarField n(g, 9.0);
    CHECK(production(n, law).max() == doctest::Approx(6.0));
    n(1, 1) = -0.5;
    CHECK_THROWS_AS(production(n, law), InvalidArgument);
}

TEST_CASE("uniform signal decays by 1/(1+dt) without production") {
    const Grid g = build_grid({1.0, 1.0}, 16, 16);
    const double dt = 0.1, c0 = 2.0;
    const ScalarField out =
        signal_step(ScalarField(g, c0), ScalarField(g, 0.0), MacVectorField(g), {1.0, 0.5}, step_of(dt));
    for (double v : out.values()) CHECK(v == doctest::Approx(c0 / (1 + dt)).epsilon(1e-12));
}

TEST_CASE("uniform equilibrium c = k0 n^alpha is a fixed point") {
    const Grid g = build_grid({1.0, 1.0}, 16, 16);
    const SignalProduction law{1.5, 0.5};
    const ScalarField n(g, 4.0);
    const ScalarField c(g, law(4.0));
    const ScalarField out = signal_step(c, n, MacVectorField(g), law, step_of(0.05));
    CHECK(test::max_abs(out - c) <= 1e-12);
}

TEST_CASE("zero signal with unit density gains dt/(1+dt)") {
    const Grid g = build_grid({1.0, 1.0}, 16, 16);
    const double dt = 0.2;
    const ScalarField out =
        signal_step(ScalarField(g, 0.0), ScalarField(g, 1.0), MacVectorField(g), {1.0, 0.7}, step_of(dt));
    for (double v : out.values()) CHECK(v == doctest::Approx(dt / (1 + dt)).epsilon(1e-12));
}

TEST_CASE("nonnegative data stays nonnegative and the maximum decays without production") {
    const Grid g = build_grid({1.0, 1.0}, 24, 24);
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        ScalarField c = test::random_field(g, rng, 0.0, 3.0);
        const ScalarField n = test::random_field(g, rng, 0.0, 2.0);
        const MacVectorField u = 0.3 * test::random_velocity(g, rng);
        CHECK(signal_step(c, n, u, {1.0, 0.5}, step_of(0.01)).min() >= -1e-12);

        double prev = c.max();
        for (int k = 0; k < 5; ++k) {
            c = signal_step(c, ScalarField(g, 0.0), MacVectorField(g), {1.0, 0.5}, step_of(0.02));
            CHECK(c.max() <= prev + 1e-12);
            prev = c.max();
        }
    }
}

TEST_CASE("integral of c follows the discrete ODE for u = 0") {
    // Summing the update over cells: (1 + dt) L1_new = L1_old + dt int f(n).
    const Grid g = build_grid({1.0, 1.0}, 20, 20);
    std::mt19937_64 rng(5);
    const ScalarField n = test::random_field(g, rng, 0.0, 4.0);
    const ScalarField c = test::random_field(g, rng, 0.0, 1.0);
    const SignalProduction law{1.0, 0.5};
    const double dt = 0.03;
    const ScalarField out = signal_step(c, n, MacVectorField(g), law, step_of(dt));
    const double expected = (integral(c) + dt * integral(production(n, law))) / (1 + dt);
    CHECK(integral(out) == doctest::Approx(expected).epsilon(1e-11));
}

TEST_CASE("signal step refuses a large velocity") {
    const Grid g = build_grid({1.0, 1.0}, 16, 16);
    MacVectorField u(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i) u.x(i, j) = 100.0;
    CHECK_THROWS_AS(signal_step(ScalarField(g, 1.0), ScalarField(g, 1.0), u, {1.0, 0.5}, step_of(0.01)),
                    CflViolation);
}

TEST_CASE("signal step rejects clearly negative density") {
    const Grid g = build_grid({1.0, 1.0}, 8, 8);
    ScalarField n(g, 1.0);
    n(3, 3) = -0.1;
    CHECK_THROWS_AS(signal_step(ScalarField(g, 1.0), n, MacVectorField(g), {1.0, 0.5}, step_of(0.01)),
                    InvalidArgument);
}
