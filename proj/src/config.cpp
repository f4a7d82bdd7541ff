#include "kss/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "kss/error.hpp"
#include "kss/expression.hpp"

namespace kss {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& known_keys() {
    static const std::map<std::string, std::set<std::string>> keys = {
        {"domain", {"lx", "ly"}},
        {"grid", {"nx", "ny"}},
        {"physics", {"k0", "alpha", "potential", "gravity", "potential_expression", "lambda"}},
        {"initial",
         {"n0", "n0_center_x", "n0_center_y", "n0_width", "n0_mass", "n0_value", "n0_noise",
          "n0_file", "c0", "c0_center_x", "c0_center_y", "c0_width", "c0_mass", "c0_value",
          "c0_noise", "c0_file", "u0", "u0_file_x", "u0_file_y"}},
        {"time", {"dt", "t_end", "sample_every"}},
        {"solver", {"diffusion_tol", "poisson_tol", "max_iter"}},
        {"monitor", {"p", "q", "blow_up_threshold"}},
        {"output", {"dir", "snapshots"}},
        {"run", {"seed"}},
    };
    return keys;
}

class Reader {
public:
    Reader(const pt::ptree& tree, std::string source) : tree_(tree), source_(std::move(source)) {}

    std::optional<std::string> text(const std::string& key) const {
        if (auto v = tree_.get_optional<std::string>(key)) return *v;
        return std::nullopt;
    }

    template <class T>
    T get(const std::string& key, T fallback) const {
        auto raw = text(key);
        if (!raw) return fallback;
        return convert<T>(key, *raw);
    }

    template <class T>
    T convert(const std::string& key, const std::string& raw) const {
        if constexpr (std::is_same_v<T, std::string>) {
            return raw;
        }
        std::istringstream in(raw);
        T value{};
        in >> value;
        if (in.fail() || !(in >> std::ws).eof())
            throw ConfigError(source_ + ": " + key + " = '" + raw + "' is not a valid " +
                              (std::is_integral_v<T> ? "integer" : "number"));
        return value;
    }

    bool flag(const std::string& key, bool fallback) const {
        auto raw = text(key);
        if (!raw) return fallback;
        if (*raw == "true" || *raw == "1" || *raw == "yes") return true;
        if (*raw == "false" || *raw == "0" || *raw == "no") return false;
        throw ConfigError(source_ + ": " + key + " = '" + *raw + "' is not a boolean");
    }

    const std::string& source() const { return source_; }

private:
    const pt::ptree& tree_;
    std::string source_;
};

std::string resolve(const std::string& path, const std::filesystem::path& base) {
    if (path.empty()) return path;
    const std::filesystem::path p(path);
    return p.is_absolute() ? path : (base / p).string();
}

ScalarInit read_scalar_init(const Reader& r, const std::string& name,
                            const std::filesystem::path& base) {
    ScalarInit s;
    const std::string prefix = "initial." + name;
    const std::string kind = r.get<std::string>(prefix, "constant");
    if (kind == "gaussian") s.kind = ScalarInit::Kind::Gaussian;
    else if (kind == "constant") s.kind = ScalarInit::Kind::Constant;
    else if (kind == "file") s.kind = ScalarInit::Kind::File;
    else
        throw ConfigError(r.source() + ": " + prefix + " = '" + kind +
                          "' must be gaussian, constant or file");
    s.center_x = r.get(prefix + "_center_x", s.center_x);
    s.center_y = r.get(prefix + "_center_y", s.center_y);
    s.width = r.get(prefix + "_width", s.width);
    s.mass = r.get(prefix + "_mass", s.mass);
    s.value = r.get(prefix + "_value", s.value);
    s.noise = r.get(prefix + "_noise", s.noise);
    s.path = resolve(r.get<std::string>(prefix + "_file", ""), base);
    return s;
}

void check_scalar_init(const ScalarInit& s, const std::string& name) {
    const std::string key = "initial." + name;
    switch (s.kind) {
    case ScalarInit::Kind::Gaussian:
        if (!(s.mass > 0.0)) throw ConfigError(key + "_mass must be positive for a gaussian");
        if (!(s.width > 0.0)) throw ConfigError(key + "_width must be positive");
        if (!(s.noise >= 0.0 && s.noise < 1.0)) throw ConfigError(key + "_noise must lie in [0, 1)");
        break;
    case ScalarInit::Kind::Constant:
        if (!(s.value >= 0.0) || !std::isfinite(s.value))
            throw ConfigError(key + "_value must be finite and nonnegative");
        break;
    case ScalarInit::Kind::File:
        if (s.path.empty()) throw ConfigError(key + "_file is required when " + key + " = file");
        break;
    }
}

} // namespace

void SimulationConfig::validate() const {
    if (!(domain.lx > 0.0) || !(domain.ly > 0.0))
        throw ConfigError("domain.lx and domain.ly must be positive");
    if (nx < 4 || ny < 4) throw ConfigError("grid.nx and grid.ny must be >= 4");
    if (!(law.k0 > 0.0)) throw ConfigError("physics.k0 must be positive");
    if (!(law.alpha > 0.0 && law.alpha <= 1.0))
        throw ConfigError("physics.alpha = " + std::to_string(law.alpha) +
                          " outside the admissible production range 0 < alpha <= 1");
    if (potential.kind == PotentialSpec::Kind::Expression) {
        if (potential.expression.empty())
            throw ConfigError("physics.potential_expression is required for potential = expression");
        Expression::parse(potential.expression);
    } else if (!std::isfinite(potential.gravity)) {
        throw ConfigError("physics.gravity must be finite");
    }
    if (!(monitor.lambda > 0.0)) throw ConfigError("physics.lambda must be positive");
    if (!(monitor.p >= 1.0)) throw ConfigError("monitor.p must be >= 1");
    if (!(monitor.q >= 1.0)) throw ConfigError("monitor.q must be >= 1");
    if (!(monitor.blow_up_threshold > 0.0))
        throw ConfigError("monitor.blow_up_threshold must be positive");
    if (monitor.sample_every < 1) throw ConfigError("time.sample_every must be >= 1");
    check_scalar_init(n0, "n0");
    check_scalar_init(c0, "c0");
    if (u0.kind == VelocityInit::Kind::File && (u0.path_x.empty() || u0.path_y.empty()))
        throw ConfigError("initial.u0_file_x and initial.u0_file_y are required for u0 = file");
    if (dt && !(*dt > 0.0)) throw ConfigError("time.dt must be positive or auto");
    if (!(t_end > 0.0)) throw ConfigError("time.t_end must be positive");
    if (!(diffusion_tol > 0.0 && diffusion_tol <= 1e-8))
        throw ConfigError("solver.diffusion_tol must lie in (0, 1e-8]");
    if (!(poisson_tol > 0.0 && poisson_tol <= 1e-8))
        throw ConfigError("solver.poisson_tol must lie in (0, 1e-8]");
    if (max_iter < 1) throw ConfigError("solver.max_iter must be >= 1");
}

SimulationConfig parse_config(const std::string& text, const std::string& source) {
    pt::ptree tree;
    std::istringstream in(text);
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(source + ":" + std::to_string(e.line()) + ": " + e.message());
    }

    for (const auto& [section, body] : tree) {
        auto known = known_keys().find(section);
        if (known == known_keys().end()) {
            if (body.empty())
                throw ConfigError(source + ": key '" + section + "' outside any section");
            throw ConfigError(source + ": unknown section [" + section + "]");
        }
        for (const auto& entry : body)
            if (!known->second.count(entry.first))
                throw ConfigError(source + ": unknown key " + section + "." + entry.first);
    }

    const Reader r(tree, source);
    const std::filesystem::path base =
        source.front() == '<' ? std::filesystem::path{} : std::filesystem::path(source).parent_path();

    SimulationConfig cfg;
    cfg.domain.lx = r.get("domain.lx", cfg.domain.lx);
    cfg.domain.ly = r.get("domain.ly", cfg.domain.ly);
    cfg.nx = r.get("grid.nx", cfg.nx);
    cfg.ny = r.get("grid.ny", cfg.ny);

    cfg.law.k0 = r.get("physics.k0", cfg.law.k0);
    cfg.law.alpha = r.get("physics.alpha", cfg.law.alpha);
    const std::string pot = r.get<std::string>("physics.potential", "linear-y");
    if (pot == "linear-y") cfg.potential.kind = PotentialSpec::Kind::LinearY;
    else if (pot == "expression") cfg.potential.kind = PotentialSpec::Kind::Expression;
    else throw ConfigError(source + ": physics.potential must be linear-y or expression");
    cfg.potential.gravity = r.get("physics.gravity", cfg.potential.gravity);
    cfg.potential.expression = r.get<std::string>("physics.potential_expression", "");
    cfg.monitor.lambda = r.get("physics.lambda", cfg.monitor.lambda);

    cfg.n0 = read_scalar_init(r, "n0", base);
    cfg.c0 = read_scalar_init(r, "c0", base);
    const std::string u0 = r.get<std::string>("initial.u0", "zero");
    if (u0 == "zero") cfg.u0.kind = VelocityInit::Kind::Zero;
    else if (u0 == "file") cfg.u0.kind = VelocityInit::Kind::File;
    else throw ConfigError(source + ": initial.u0 must be zero or file");
    cfg.u0.path_x = resolve(r.get<std::string>("initial.u0_file_x", ""), base);
    cfg.u0.path_y = resolve(r.get<std::string>("initial.u0_file_y", ""), base);

    const auto dt = r.text("time.dt");
    if (!dt) throw ConfigError(source + ": time.dt is required (a number or auto)");
    if (*dt != "auto") cfg.dt = r.convert<double>("time.dt", *dt);
    if (!r.text("time.t_end")) throw ConfigError(source + ": time.t_end is required");
    cfg.t_end = r.get("time.t_end", cfg.t_end);
    cfg.monitor.sample_every = r.get("time.sample_every", cfg.monitor.sample_every);

    cfg.diffusion_tol = r.get("solver.diffusion_tol", cfg.diffusion_tol);
    cfg.poisson_tol = r.get("solver.poisson_tol", cfg.poisson_tol);
    cfg.max_iter = r.get("solver.max_iter", cfg.max_iter);

    cfg.monitor.p = r.get("monitor.p", cfg.monitor.p);
    cfg.monitor.q = r.get("monitor.q", cfg.monitor.q);
    cfg.monitor.blow_up_threshold = r.get("monitor.blow_up_threshold", cfg.monitor.blow_up_threshold);

    cfg.output_dir = r.get<std::string>("output.dir", "");
    cfg.snapshots = r.flag("output.snapshots", cfg.snapshots);
    cfg.seed = r.get<std::uint64_t>("run.seed", cfg.seed);

    cfg.validate();
    return cfg;
}

SimulationConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

void apply_overrides(SimulationConfig& cfg, const ConfigOverrides& o) {
    if (o.alpha) cfg.law.alpha = *o.alpha;
    if (o.nx) cfg.nx = *o.nx;
    if (o.ny) cfg.ny = *o.ny;
    if (o.dt) cfg.dt = *o.dt;
    if (o.t_end) cfg.t_end = *o.t_end;
    if (o.output_dir) cfg.output_dir = *o.output_dir;
    if (o.seed) cfg.seed = *o.seed;
    cfg.validate();
}

} // namespace kss
