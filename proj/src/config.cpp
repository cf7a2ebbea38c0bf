#include "flockhydro/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace flockhydro {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

constexpr double two_pi = 6.2831853071795864769;

} // namespace

IniFile IniFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("IniFile: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

IniFile IniFile::parse(const std::string& text) {
    IniFile ini;
    std::stringstream ss(text);
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::runtime_error("IniFile: malformed section at line " +
                                         std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("IniFile: expected key = value at line " +
                                     std::to_string(lineno));
        ini.data_[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return ini;
}

bool IniFile::has(const std::string& section, const std::string& key) const {
    const auto s = data_.find(section);
    return s != data_.end() && s->second.count(key) > 0;
}

std::string IniFile::get(const std::string& section, const std::string& key,
                         const std::string& fallback) const {
    const auto s = data_.find(section);
    if (s == data_.end()) return fallback;
    const auto k = s->second.find(key);
    return k == s->second.end() ? fallback : k->second;
}

double IniFile::get_double(const std::string& section, const std::string& key,
                           double fallback) const {
    const std::string v = get(section, key, "");
    if (v.empty()) return fallback;
    if (v == "auto") return -1.0;
    return std::stod(v);
}

std::size_t IniFile::get_size(const std::string& section, const std::string& key,
                              std::size_t fallback) const {
    const std::string v = get(section, key, "");
    return v.empty() ? fallback : static_cast<std::size_t>(std::stoull(v));
}

bool IniFile::get_bool(const std::string& section, const std::string& key, bool fallback) const {
    const std::string v = get(section, key, "");
    if (v.empty()) return fallback;
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw std::runtime_error("IniFile: bad boolean '" + v + "' for " + section + "." + key);
}

std::vector<double> IniFile::get_list(const std::string& section, const std::string& key,
                                      const std::vector<double>& fallback) const {
    const std::string v = get(section, key, "");
    return v.empty() ? fallback : parse_list(v);
}

ProfileSpec ProfileSpec::parse(const std::string& text) {
    ProfileSpec p;
    const auto colon = text.find(':');
    const std::string name = trim(colon == std::string::npos ? text : text.substr(0, colon));
    if (colon != std::string::npos) p.params = parse_list(text.substr(colon + 1));

    const auto need = [&](std::size_t n) {
        if (p.params.size() != n)
            throw std::runtime_error("ProfileSpec: '" + name + "' needs " + std::to_string(n) +
                                     " parameters, got " + std::to_string(p.params.size()));
    };
    if (name == "zero") {
        need(0);
        p.kind = Kind::Zero;
    } else if (name == "uniform" || name == "constant") {
        need(1);
        p.kind = Kind::Uniform;
    } else if (name == "sine") {
        need(3);
        p.kind = Kind::Sine;
    } else if (name == "cosine") {
        need(3);
        p.kind = Kind::Cosine;
    } else if (name == "gaussian") {
        need(3);
        p.kind = Kind::Gaussian;
    } else if (name == "gaussian2") {
        need(6);
        p.kind = Kind::Gaussian2;
    } else if (name == "bump") {
        need(3);
        p.kind = Kind::Bump;
    } else {
        throw std::runtime_error("ProfileSpec: unknown profile '" + name + "'");
    }
    return p;
}

double ProfileSpec::operator()(double x, double x_min, double length) const {
    const auto gauss_mass = [](double mass, double center, double width, double x_) {
        const double z = (x_ - center) / width;
        return mass / (width * std::sqrt(two_pi)) * std::exp(-0.5 * z * z);
    };
    switch (kind) {
        case Kind::Zero: return 0.0;
        case Kind::Uniform: return params[0];
        case Kind::Sine:
            return params[0] + params[1] * std::sin(two_pi * params[2] * (x - x_min) / length);
        case Kind::Cosine:
            return params[0] + params[1] * std::cos(two_pi * params[2] * (x - x_min) / length);
        case Kind::Gaussian: return gauss_mass(params[0], params[1], params[2], x);
        case Kind::Gaussian2:
            return gauss_mass(params[0], params[1], params[2], x) +
                   gauss_mass(params[3], params[4], params[5], x);
        case Kind::Bump: {
            const double z = (x - params[0]) / params[2];
            return params[1] * std::exp(-0.5 * z * z);
        }
    }
    return 0.0;
}

std::vector<double> cell_averages_fn(const std::function<double(double)>& fn,
                                     const SpaceGrid& grid) {
    // 4-point Gauss-Legendre nodes/weights on [-1/2, 1/2]
    static const double nodes[4] = {-0.43056815579702629, -0.16999052179242813,
                                    0.16999052179242813, 0.43056815579702629};
    static const double weights[4] = {0.17392742256872693, 0.32607257743127307,
                                      0.32607257743127307, 0.17392742256872693};
    std::vector<double> out(grid.nx());
    for (std::size_t i = 0; i < grid.nx(); ++i) {
        const double xc = grid.center(i);
        double s = 0.0;
        for (int q = 0; q < 4; ++q) s += weights[q] * fn(xc + nodes[q] * grid.dx());
        out[i] = s;
    }
    return out;
}

std::vector<double> cell_averages(const ProfileSpec& profile, const SpaceGrid& grid) {
    return cell_averages_fn(
        [&](double x) { return profile(x, grid.x_min(), grid.length()); }, grid);
}

ExperimentConfig ExperimentConfig::from_ini(const IniFile& ini) {
    ExperimentConfig cfg;
    ModelConfig& m = cfg.model;

    m.epsilon = ini.get_double("model", "epsilon", m.epsilon);
    m.t_final = ini.get_double("model", "t_final", m.t_final);
    m.snapshot_dt = ini.get_double("model", "snapshot_dt", m.snapshot_dt);
    m.cfl_hyp = ini.get_double("model", "cfl_hyp", m.cfl_hyp);
    m.cfl_force = ini.get_double("model", "cfl_force", m.cfl_force);
    m.rho_floor = ini.get_double("model", "rho_floor", m.rho_floor);
    m.tail_tol = ini.get_double("model", "tail_tol", m.tail_tol);
    m.admissibility_ceiling =
        ini.get_double("model", "admissibility_ceiling", m.admissibility_ceiling);

    m.x_min = ini.get_double("space", "x_min", m.x_min);
    m.x_max = ini.get_double("space", "x_max", m.x_max);
    m.nx = ini.get_size("space", "nx", m.nx);
    const std::string bc = ini.get("space", "boundary", "periodic");
    if (bc == "periodic")
        m.boundary = Boundary::Periodic;
    else if (bc == "copy-out")
        m.boundary = Boundary::CopyOut;
    else
        throw std::runtime_error("config: unknown boundary '" + bc + "'");

    m.v_max = ini.get_double("velocity", "v_max", m.v_max);
    m.nv = ini.get_size("velocity", "nv", m.nv);

    const std::string kk = ini.get("kernel", "kind", "gaussian");
    if (kk == "constant")
        m.kernel.kind = KernelConfig::Kind::Constant;
    else if (kk == "gaussian")
        m.kernel.kind = KernelConfig::Kind::Gaussian;
    else if (kk == "table")
        m.kernel.kind = KernelConfig::Kind::Table;
    else
        throw std::runtime_error("config: unknown kernel kind '" + kk + "'");
    m.kernel.k0 = ini.get_double("kernel", "k0", m.kernel.k0);
    m.kernel.amplitude = ini.get_double("kernel", "amplitude", m.kernel.amplitude);
    m.kernel.width = ini.get_double("kernel", "width", m.kernel.width);
    m.kernel.file = ini.get("kernel", "file", "");

    const std::string pk = ini.get("potential", "kind", "none");
    if (pk == "none")
        m.potential.kind = PotentialConfig::Kind::None;
    else if (pk == "quadratic")
        m.potential.kind = PotentialConfig::Kind::Quadratic;
    else if (pk == "table")
        m.potential.kind = PotentialConfig::Kind::Table;
    else
        throw std::runtime_error("config: unknown potential kind '" + pk + "'");
    m.potential.a = ini.get_double("potential", "a", m.potential.a);
    m.potential.file = ini.get("potential", "file", "");

    cfg.rho0 = ProfileSpec::parse(ini.get("initial", "rho0", "uniform:1"));
    cfg.u0 = ProfileSpec::parse(ini.get("initial", "u0", "zero"));

    const std::string sp = ini.get("scheme", "splitting", "strang");
    if (sp == "strang")
        m.splitting = Splitting::Strang;
    else if (sp == "lie")
        m.splitting = Splitting::Lie;
    else
        throw std::runtime_error("config: unknown splitting '" + sp + "'");
    m.transport_order = static_cast<int>(ini.get_size("scheme", "transport_order", 2));
    const std::string ls = ini.get("scheme", "local_step", "chang-cooper");
    if (ls == "chang-cooper")
        m.local_step = LocalStepMode::ChangCooper;
    else if (ls == "exact-projection")
        m.local_step = LocalStepMode::ExactProjection;
    else
        throw std::runtime_error("config: unknown local_step '" + ls + "'");
    const std::string ef = ini.get("scheme", "euler_flux", "rusanov");
    if (ef == "rusanov")
        m.euler_flux = EulerFlux::Rusanov;
    else if (ef == "hll")
        m.euler_flux = EulerFlux::Hll;
    else
        throw std::runtime_error("config: unknown euler_flux '" + ef + "'");
    m.euler_order = static_cast<int>(ini.get_size("scheme", "euler_order", 2));

    cfg.epsilon_list = ini.get_list("sweep", "epsilon_list", {});
    cfg.euler_refine = ini.get_size("sweep", "euler_refine", cfg.euler_refine);
    cfg.blowup_threshold = ini.get_double("sweep", "blowup_threshold", cfg.blowup_threshold);

    cfg.out_dir = ini.get("output", "dir", "");
    cfg.dump_fields = ini.get_bool("output", "dump_fields", false);
    cfg.seed = static_cast<std::uint64_t>(ini.get_size("output", "seed", 0));

    if (!(m.epsilon > 0.0)) throw std::runtime_error("config: epsilon must be positive");
    if (!(m.cfl_hyp > 0.0 && m.cfl_hyp <= 1.0) || !(m.cfl_force > 0.0 && m.cfl_force <= 1.0))
        throw std::runtime_error("config: CFL numbers must lie in (0, 1]");
    for (std::size_t k = 1; k < cfg.epsilon_list.size(); ++k)
        if (!(cfg.epsilon_list[k] < cfg.epsilon_list[k - 1]) || !(cfg.epsilon_list[k] > 0.0))
            throw std::runtime_error("config: epsilon_list must be strictly decreasing and positive");
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    return from_ini(IniFile::load(path));
}

} // namespace flockhydro
