#include "kss/runner.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>

#include <json.hpp>

#include "kss/density.hpp"
#include "kss/error.hpp"
#include "kss/expression.hpp"
#include "kss/operators.hpp"
#include "kss/norms.hpp"
#include "kss/signal.hpp"

namespace kss {

namespace {

namespace fs = std::filesystem;

ScalarField scalar_from(const ScalarInit& init, const Grid& g, std::mt19937_64& rng) {
    switch (init.kind) {
    case ScalarInit::Kind::Constant: return ScalarField(g, init.value);
    case ScalarInit::Kind::File: {
        ScalarField f(g);
        const auto v = read_f64(init.path, g.cells());
        std::copy(v.begin(), v.end(), f.values().begin());
        for (double x : f.values())
            if (!std::isfinite(x) || x < 0.0)
                throw ConfigError(init.path + ": initial data must be finite and nonnegative");
        return f;
    }
    case ScalarInit::Kind::Gaussian: {
        const double two_w2 = 2.0 * init.width * init.width;
        ScalarField f = ScalarField::sample(g, [&](double x, double y) {
            const double dx = x - init.center_x, dy = y - init.center_y;
            return std::exp(-(dx * dx + dy * dy) / two_w2) + 1e-6;
        });
        if (init.noise > 0.0) {
            std::uniform_real_distribution<double> u(-1.0, 1.0);
            for (double& v : f.values()) v *= 1.0 + init.noise * u(rng);
        }
        const double scale = init.mass / integral(f);
        for (double& v : f.values()) v *= scale;
        return f;
    }
    }
    return ScalarField(g);
}

void write_meta(const fs::path& dir, const SimulationConfig& cfg, const Grid& g, double dt) {
    nlohmann::json meta = {
        {"nx", g.nx},
        {"ny", g.ny},
        {"dx", g.dx},
        {"dy", g.dy},
        {"lx", g.domain.lx},
        {"ly", g.domain.ly},
        {"dt", dt},
        {"byte_order", "little"},
        {"dtype", "float64"},
        {"layout", "row-major, x fastest"},
        {"fields",
         {{{"name", "n"}, {"shape", {g.ny, g.nx}}, {"location", "cell"}},
          {{"name", "c"}, {"shape", {g.ny, g.nx}}, {"location", "cell"}},
          {{"name", "ux"}, {"shape", {g.ny, g.nx + 1}}, {"location", "x-face"}},
          {{"name", "uy"}, {"shape", {g.ny + 1, g.nx}}, {"location", "y-face"}}}},
        {"k0", cfg.law.k0},
        {"alpha", cfg.law.alpha},
        {"seed", cfg.seed},
    };
    std::ofstream out(dir / "meta.json");
    out << meta.dump(2) << '\n';
}

void write_snapshot(const fs::path& dir, std::size_t step, const State& s) {
    const std::string tag = std::to_string(step) + ".f64";
    write_f64((dir / ("n_" + tag)).string(), s.n.values());
    write_f64((dir / ("c_" + tag)).string(), s.c.values());
    write_f64((dir / ("ux_" + tag)).string(), s.u.xs());
    write_f64((dir / ("uy_" + tag)).string(), s.u.ys());
}

} // namespace

std::string format_record(const DiagnosticsRecord& r) {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d",
                  r.t, r.mass, r.l1_c, r.linf_n, r.lp_n, r.l2q_gradc, r.entropy, r.energy_y,
                  r.l2_gradc, r.du_l32, r.linf_u, r.div_u_max, r.blown_up ? 1 : 0);
    return buf;
}

void write_f64(const std::string& path, std::span<const double> values) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    for (double v : values) {
        auto bits = std::bit_cast<std::uint64_t>(v);
        if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
        out.write(reinterpret_cast<const char*>(&bits), sizeof bits);
    }
}

std::vector<double> read_f64(const std::string& path, std::size_t expected) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open data file " + path);
    std::vector<double> out;
    out.reserve(expected);
    std::uint64_t bits = 0;
    while (in.read(reinterpret_cast<char*>(&bits), sizeof bits)) {
        if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
        out.push_back(std::bit_cast<double>(bits));
    }
    if (out.size() != expected)
        throw ConfigError(path + ": expected " + std::to_string(expected) + " doubles, found " +
                          std::to_string(out.size()));
    return out;
}

Potential make_potential(const SimulationConfig& cfg, const Grid& g) {
    if (cfg.potential.kind == PotentialSpec::Kind::Expression) {
        const Expression e = Expression::parse(cfg.potential.expression);
        return Potential::from(ScalarField::sample(g, [&](double x, double y) { return e(x, y); }));
    }
    const double gravity = cfg.potential.gravity;
    return Potential::from(ScalarField::sample(g, [&](double, double y) { return gravity * y; }));
}

State initial_state(const SimulationConfig& cfg) {
    const Grid g = build_grid(cfg.domain, cfg.nx, cfg.ny);
    std::mt19937_64 rng(cfg.seed);
    State s(g);
    s.n = scalar_from(cfg.n0, g, rng);
    s.c = scalar_from(cfg.c0, g, rng);
    if (cfg.u0.kind == VelocityInit::Kind::File) {
        MacVectorField u(g);
        const auto vx = read_f64(cfg.u0.path_x, g.x_faces());
        const auto vy = read_f64(cfg.u0.path_y, g.y_faces());
        std::copy(vx.begin(), vx.end(), u.xs().begin());
        std::copy(vy.begin(), vy.end(), u.ys().begin());
        if (!u.all_finite()) throw ConfigError("initial velocity has non-finite values");
        ProjectionConfig pc;
        pc.poisson_tol = cfg.poisson_tol;
        pc.max_iter = cfg.max_iter;
        s.u = helmholtz_project(u, pc).velocity;
    }
    return s;
}

double default_time_step(const State& s0) {
    const Grid& g = s0.grid();
    return 0.2 * std::min(g.dx, g.dy) / (1.0 + gradient(s0.c).max_abs() + s0.u.max_abs());
}

int exit_code(Verdict v) {
    switch (v) {
    case Verdict::Bounded: return 0;
    case Verdict::Growing: return 2;
    case Verdict::BlownUp: return 3;
    }
    return 1;
}

RunResult run(const SimulationConfig& cfg, const RecordCallback& on_record,
              const StepObserver& on_step) {
    cfg.validate();
    State state = initial_state(cfg);
    const Grid& g = state.grid();
    const Potential pot = make_potential(cfg, g);
    const double dt = cfg.dt ? *cfg.dt : default_time_step(state);

    const std::size_t total = static_cast<std::size_t>(std::ceil(cfg.t_end / dt - 1e-9));

    std::ofstream csv;
    fs::path dir;
    if (!cfg.output_dir.empty()) {
        dir = cfg.output_dir;
        fs::create_directories(dir);
        write_meta(dir, cfg, g, dt);
        csv.open(dir / "diagnostics.csv");
        if (!csv) throw Error("cannot write " + (dir / "diagnostics.csv").string());
        csv << kDiagnosticsHeader << '\n';
    }

    RunResult result{state, {}, Verdict::Bounded, 0, dt};
    auto sample = [&](std::size_t step) {
        const DiagnosticsRecord r = record(state, cfg.monitor);
        result.history.push_back(r);
        if (csv.is_open()) {
            csv << format_record(r) << '\n';
            if (cfg.snapshots) write_snapshot(dir, step, state);
        }
        if (on_record) on_record(step, r);
        return r.blown_up;
    };

    TransportConfig tc;
    tc.dt = dt;
    tc.diffusion_solver_tol = cfg.diffusion_tol;
    tc.max_iter = cfg.max_iter;
    ProjectionConfig pc;
    pc.dt = dt;
    pc.poisson_tol = cfg.poisson_tol;
    pc.max_iter = cfg.max_iter;

    if (on_step) on_step(0, state);
    bool stop = sample(0);
    for (std::size_t step = 1; step <= total && !stop; ++step) {
        const double t_next = step == total ? cfg.t_end : static_cast<double>(step) * dt;
        const double h = t_next - state.t;
        tc.dt = pc.dt = h;
        try {
            state.n = density_step(state.n, state.c, state.u, tc);
            state.c = signal_step(state.c, state.n, state.u, cfg.law, tc);
            StokesUpdate flow = stokes_step(state.u, state.n, pot, pc);
            state.u = std::move(flow.u);
            state.p = std::move(flow.p);
        } catch (const Error& e) {
            csv.flush();
            throw StepFailure("step " + std::to_string(step) + " (t = " + std::to_string(state.t) +
                                  "): " + e.what(),
                              step, state.t);
        }
        state.t = t_next;
        result.steps = step;
        if (on_step) on_step(step, state);
        if (step % static_cast<std::size_t>(cfg.monitor.sample_every) == 0 || step == total)
            stop = sample(step);
    }

    result.final_state = std::move(state);
    result.verdict = detect_blow_up(result.history);
    return result;
}

} // namespace kss
