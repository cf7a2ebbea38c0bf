#ifndef FLOCKHYDRO_CONFIG_HPP
#define FLOCKHYDRO_CONFIG_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "flockhydro/euler_solver.hpp"
#include "flockhydro/grid.hpp"
#include "flockhydro/kinetic_solver.hpp"

namespace flockhydro {

/// Minimal INI-style reader: [section] headers, key = value lines,
/// # comments. Values keep their raw text; typed access below.
class IniFile {
  public:
    static IniFile load(const std::string& path);
    static IniFile parse(const std::string& text);

    bool has(const std::string& section, const std::string& key) const;
    std::string get(const std::string& section, const std::string& key,
                    const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    std::size_t get_size(const std::string& section, const std::string& key,
                         std::size_t fallback) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
    std::vector<double> get_list(const std::string& section, const std::string& key,
                                 const std::vector<double>& fallback) const;

  private:
    std::map<std::string, std::map<std::string, std::string>> data_;
};

/// One-dimensional analytic profile used for initial data, written in config
/// files as "name:p1,p2,...". Supported names:
///   zero | uniform:c | sine:base,amp,k | cosine:base,amp,k |
///   gaussian:mass,center,width | gaussian2:m1,c1,w1,m2,c2,w2 |
///   bump:center,amp,width
struct ProfileSpec {
    enum class Kind { Zero, Uniform, Sine, Cosine, Gaussian, Gaussian2, Bump };
    Kind kind = Kind::Zero;
    std::vector<double> params;

    static ProfileSpec parse(const std::string& text);
    double operator()(double x, double x_min, double length) const;
};

/// Exact-as-practical cell averages of a profile (4-point Gauss per cell),
/// so that restricting fine-grid initial data onto a coarser grid reproduces
/// the coarse initial data to quadrature accuracy.
std::vector<double> cell_averages(const ProfileSpec& profile, const SpaceGrid& grid);

/// Same quadrature for an arbitrary integrand (used for products like rho*u).
std::vector<double> cell_averages_fn(const std::function<double(double)>& fn,
                                     const SpaceGrid& grid);

struct KernelConfig {
    enum class Kind { Constant, Gaussian, Table };
    Kind kind = Kind::Gaussian;
    double k0 = 1.0;
    double amplitude = 1.0;
    double width = 1.0;
    std::string file;
};

struct PotentialConfig {
    enum class Kind { None, Quadratic, Table };
    Kind kind = Kind::None;
    double a = 1.0;
    std::string file;
};

struct ModelConfig {
    double epsilon = 0.05;
    double t_final = 0.5;
    double snapshot_dt = 0.05;
    double cfl_hyp = 0.5;
    double cfl_force = 0.5;
    double rho_floor = -1.0; ///< negative means auto: 1e-12 * (mass / length)
    double tail_tol = 1e-10;
    /// ceiling on the discrete admissibility sum of exp(-Phi); always finite
    /// on a truncated grid, this guards against unconfined potentials
    double admissibility_ceiling = 1e12;

    double x_min = 0.0, x_max = 1.0;
    std::size_t nx = 64;
    Boundary boundary = Boundary::Periodic;
    double v_max = 6.0;
    std::size_t nv = 64;

    KernelConfig kernel;
    PotentialConfig potential;

    Splitting splitting = Splitting::Strang;
    int transport_order = 2;
    LocalStepMode local_step = LocalStepMode::ChangCooper;
    EulerFlux euler_flux = EulerFlux::Rusanov;
    int euler_order = 2;
};

struct ExperimentConfig {
    ModelConfig model;
    ProfileSpec rho0;
    ProfileSpec u0;
    std::vector<double> epsilon_list;
    std::size_t euler_refine = 2; ///< Euler reference resolution factor
    double blowup_threshold = 10.0;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool dump_fields = false;

    static ExperimentConfig from_ini(const IniFile& ini);
    static ExperimentConfig from_file(const std::string& path);
};

} // namespace flockhydro

#endif
