#ifndef FLOCKHYDRO_KERNEL_HPP
#define FLOCKHYDRO_KERNEL_HPP

#include <string>
#include <vector>

#include "flockhydro/grid.hpp"

namespace flockhydro {

/// Symmetric bounded communication kernel tabulated on cell-center pairs.
///
/// K(i,l) is built symmetric by construction; on periodic grids distances
/// wrap around. Table kernels are loaded from a CSV matrix and rejected if
/// the asymmetry exceeds 1e-12.
class KernelSpec {
  public:
    static KernelSpec constant(const SpaceGrid& grid, double k0);
    static KernelSpec gaussian(const SpaceGrid& grid, double amplitude, double width);
    static KernelSpec table(const SpaceGrid& grid, std::vector<double> matrix);
    static KernelSpec from_csv(const SpaceGrid& grid, const std::string& path);

    double operator()(std::size_t i, std::size_t l) const { return values_[i * nx_ + l]; }
    std::size_t nx() const { return nx_; }
    double max_value() const { return max_value_; }
    bool is_zero() const { return max_value_ == 0.0; }

  private:
    KernelSpec(std::size_t nx, std::vector<double> values);

    std::size_t nx_;
    std::vector<double> values_;
    double max_value_;
};

/// Nonnegative mollifier row-normalized on the grid so that each row sums to
/// one against the cell measure.
class MollifierSpec {
  public:
    enum class Shape { Gaussian, Bump };

    MollifierSpec(const SpaceGrid& grid, double radius, Shape shape);

    double operator()(std::size_t i, std::size_t l) const { return values_[i * nx_ + l]; }
    double radius() const { return radius_; }
    std::size_t nx() const { return nx_; }

  private:
    std::size_t nx_;
    double radius_;
    std::vector<double> values_;
};

} // namespace flockhydro

#endif
