#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "kss/config.hpp"
#include "kss/error.hpp"
#include "kss/expression.hpp"

using namespace kss;

namespace {

const char* kMinimal = "[time]\ndt = 0.001\nt_end = 0.5\n";

std::string error_of(const std::string& text) {
    try {
        parse_config(text, "test.ini");
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("minimal file takes the documented defaults") {
    const SimulationConfig cfg = parse_config(kMinimal);
    CHECK(cfg.domain.lx == 1.0);
    CHECK(cfg.domain.ly == 1.0);
    CHECK(cfg.nx == 64);
    CHECK(cfg.ny == 64);
    CHECK(cfg.law.k0 == 1.0);
    CHECK(cfg.law.alpha == 0.5);
    CHECK(cfg.potential.kind == PotentialSpec::Kind::LinearY);
    CHECK(cfg.potential.gravity == 1.0);
    CHECK(cfg.monitor.lambda == 1.0);
    CHECK(cfg.monitor.p == 2.0);
    CHECK(cfg.monitor.q == 2.0);
    CHECK(cfg.monitor.sample_every == 10);
    CHECK(cfg.monitor.blow_up_threshold == 1e8);
    CHECK(cfg.dt.value() == 0.001);
    CHECK(cfg.t_end == 0.5);
    CHECK(cfg.diffusion_tol == 1e-12);
    CHECK(cfg.poisson_tol == 1e-12);
    CHECK(cfg.max_iter == 200);
    CHECK(cfg.output_dir.empty());
    CHECK(cfg.snapshots);
    CHECK(cfg.seed == 0);
    CHECK(cfg.u0.kind == VelocityInit::Kind::Zero);
}

TEST_CASE("full file is read") {
    const SimulationConfig cfg = parse_config(R"(
; comment
[domain]
lx = 2
ly = 1
[grid]
nx = 32
ny = 16
[physics]
k0 = 1.5
alpha = 1
potential = expression
potential_expression = sin(pi * x) + y^2
lambda = 2
[initial]
n0 = gaussian
n0_center_x = 0.3
n0_mass = 12.5
n0_noise = 0.1
c0 = constant
c0_value = 0.25
[time]
dt = auto
t_end = 3
sample_every = 5
[solver]
diffusion_tol = 1e-10
max_iter = 50
[monitor]
p = 3
blow_up_threshold = 1e6
[output]
dir = out/run one
snapshots = false
[run]
seed = 42
)");
    CHECK(cfg.domain.lx == 2.0);
    CHECK(cfg.nx == 32);
    CHECK(cfg.law.alpha == 1.0);
    CHECK(cfg.potential.kind == PotentialSpec::Kind::Expression);
    CHECK(cfg.potential.expression == "sin(pi * x) + y^2");
    CHECK(cfg.monitor.lambda == 2.0);
    CHECK(cfg.n0.kind == ScalarInit::Kind::Gaussian);
    CHECK(cfg.n0.center_x == 0.3);
    CHECK(cfg.n0.mass == 12.5);
    CHECK(cfg.c0.kind == ScalarInit::Kind::Constant);
    CHECK(cfg.c0.value == 0.25);
    CHECK_FALSE(cfg.dt.has_value());
    CHECK(cfg.monitor.sample_every == 5);
    CHECK(cfg.diffusion_tol == 1e-10);
    CHECK(cfg.max_iter == 50);
    CHECK(cfg.monitor.p == 3.0);
    CHECK(cfg.output_dir == "out/run one");
    CHECK_FALSE(cfg.snapshots);
    CHECK(cfg.seed == 42);
}

TEST_CASE("rejections") {
    CHECK(error_of(std::string(kMinimal) + "[physics]\nalpha = 1.5\n").find("0 < alpha <= 1") !=
          std::string::npos);
    CHECK(error_of("[time]\nt_end = 1\n").find("time.dt is required") != std::string::npos);
    CHECK(error_of("[time]\ndt = 0.1\n").find("time.t_end is required") != std::string::npos);
    CHECK(error_of(std::string(kMinimal) + "[grid]\nnx = 3\n").find("grid.nx") != std::string::npos);
    CHECK(error_of(std::string(kMinimal) + "[grid]\nnx = many\n").find("grid.nx") != std::string::npos);
    CHECK(error_of(std::string(kMinimal) + "[grid]\nnz = 8\n").find("unknown key grid.nz") !=
          std::string::npos);
    CHECK(error_of(std::string(kMinimal) + "[extra]\na = 1\n").find("unknown section") != std::string::npos);
    CHECK(error_of(std::string(kMinimal) + "[solver]\ndiffusion_tol = 1e-6\n").find("diffusion_tol") !=
          std::string::npos);
    CHECK(error_of("[time]\ndt = -1\nt_end = 1\n").find("time.dt") != std::string::npos);
    CHECK(error_of(std::string(kMinimal) + "[initial]\nn0 = file\n").find("n0_file") != std::string::npos);
    CHECK(error_of(std::string(kMinimal) + "[physics]\npotential = expression\n").find("potential_expression") !=
          std::string::npos);
    // Malformed line: the parser reports the line number.
    CHECK(error_of("[time]\ndt = 1\n[grid\n").find("test.ini:3") != std::string::npos);
}

TEST_CASE("load_config reads from disk and resolves relative data paths") {
    const auto dir = std::filesystem::temp_directory_path() / "kss_test_config";
    std::filesystem::create_directories(dir);
    {
        std::ofstream(dir / "a.ini") << kMinimal << "[initial]\nn0 = file\nn0_file = n0.f64\n";
    }
    const SimulationConfig cfg = load_config((dir / "a.ini").string());
    CHECK(std::filesystem::path(cfg.n0.path) == dir / "n0.f64");
    CHECK_THROWS_AS(load_config((dir / "missing.ini").string()), ConfigError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("overrides re-validate") {
    SimulationConfig cfg = parse_config(kMinimal);
    ConfigOverrides ov;
    ov.nx = 16;
    ov.t_end = 2.0;
    ov.seed = 9;
    apply_overrides(cfg, ov);
    CHECK(cfg.nx == 16);
    CHECK(cfg.t_end == 2.0);
    CHECK(cfg.seed == 9);
    ConfigOverrides bad;
    bad.alpha = 1.5;
    CHECK_THROWS_AS(apply_overrides(cfg, bad), ConfigError);
}

TEST_CASE("expressions") {
    CHECK(Expression::parse("1 + 2 * 3")(0, 0) == 7.0);
    CHECK(Expression::parse("2^3^2")(0, 0) == 512.0);
    CHECK(Expression::parse("-x^2")(3, 0) == -9.0);
    CHECK(Expression::parse("(x + y) / 2")(1, 2) == 1.5);
    CHECK(Expression::parse("sin(pi * x) * exp(y)")(0.5, 0.0) == doctest::Approx(1.0));
    CHECK(Expression::parse("sqrt(abs(x)) + tanh(0) + log(1)")(-4, 0) == 2.0);
    CHECK(Expression::parse("cos(pi)")(0, 0) == doctest::Approx(-1.0));
    CHECK_THROWS_AS(Expression::parse("1 +"), ConfigError);
    CHECK_THROWS_AS(Expression::parse("foo(x)"), ConfigError);
    CHECK_THROWS_AS(Expression::parse("(x"), ConfigError);
    CHECK_THROWS_AS(Expression::parse("x y"), ConfigError);
}
