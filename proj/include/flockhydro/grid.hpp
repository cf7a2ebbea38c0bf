#ifndef FLOCKHYDRO_GRID_HPP
#define FLOCKHYDRO_GRID_HPP

#include <cstddef>
#include <vector>

namespace flockhydro {

enum class Boundary {
    Periodic,
    CopyOut, ///< zero-gradient ghost cells; outflow leaves the domain
};

/// Uniform cell-centered grid in position space.
///
/// Cell i covers [x_min + i*dx, x_min + (i+1)*dx] with center
/// x_i = x_min + (i + 1/2)*dx.
class SpaceGrid {
  public:
    SpaceGrid(double x_min, double x_max, std::size_t nx, Boundary boundary);

    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    double dx() const { return dx_; }
    double length() const { return x_max_ - x_min_; }
    std::size_t nx() const { return nx_; }
    Boundary boundary() const { return boundary_; }

    double center(std::size_t i) const { return x_min_ + (static_cast<double>(i) + 0.5) * dx_; }

    /// Distance between two cell centers; wraps around on periodic grids.
    double distance(std::size_t i, std::size_t l) const;

    bool same_layout(const SpaceGrid& other) const;

  private:
    double x_min_, x_max_, dx_;
    std::size_t nx_;
    Boundary boundary_;
};

/// Tensor-product phase-space grid: SpaceGrid x symmetric velocity interval.
///
/// Velocity cells cover [-v_max, v_max] with nv even so that v = 0 is a cell
/// face. Cell j has center v_j = -v_max + (j + 1/2)*dv and faces at
/// v = -v_max + k*dv, k = 0..nv.
class PhaseGrid {
  public:
    PhaseGrid(SpaceGrid space, double v_max, std::size_t nv);

    const SpaceGrid& space() const { return space_; }
    double v_max() const { return v_max_; }
    double dv() const { return dv_; }
    std::size_t nv() const { return nv_; }
    std::size_t size() const { return space_.nx() * nv_; }
    double cell_volume() const { return space_.dx() * dv_; }

    double v_center(std::size_t j) const { return -v_max_ + (static_cast<double>(j) + 0.5) * dv_; }
    double v_face(std::size_t k) const { return -v_max_ + static_cast<double>(k) * dv_; }

    bool same_layout(const PhaseGrid& other) const;

  private:
    SpaceGrid space_;
    double v_max_, dv_;
    std::size_t nv_;
};

} // namespace flockhydro

#endif
