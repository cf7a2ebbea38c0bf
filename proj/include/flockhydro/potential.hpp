#ifndef FLOCKHYDRO_POTENTIAL_HPP
#define FLOCKHYDRO_POTENTIAL_HPP

#include <vector>

#include "flockhydro/grid.hpp"

namespace flockhydro {

/// Confinement potential collocated at cell centers, with its gradient.
///
/// The quadratic potential a*x^2/2 carries an analytic gradient; tabulated
/// potentials get central differences (one-sided at copy-out ends). The
/// discrete admissibility sum  sum_i exp(-Phi_i) dx  must stay below a
/// configurable ceiling; on a truncated grid it is always finite, the check
/// mirrors the integrability requirement on the confinement.
class PotentialSpec {
  public:
    enum class Kind { None, Quadratic, Table };

    static PotentialSpec none(const SpaceGrid& grid);
    static PotentialSpec quadratic(const SpaceGrid& grid, double a);
    static PotentialSpec table(const SpaceGrid& grid, std::vector<double> values);

    Kind kind() const { return kind_; }
    double value(std::size_t i) const { return values_[i]; }
    double gradient(std::size_t i) const { return gradient_[i]; }
    const std::vector<double>& values() const { return values_; }
    const std::vector<double>& gradients() const { return gradient_; }
    bool is_zero() const { return kind_ == Kind::None; }

    /// Discrete version of the admissibility integral of exp(-Phi).
    double admissibility_sum(const SpaceGrid& grid) const;

  private:
    PotentialSpec(Kind kind, std::vector<double> values, std::vector<double> gradient);

    Kind kind_;
    std::vector<double> values_;
    std::vector<double> gradient_;
};

} // namespace flockhydro

#endif
