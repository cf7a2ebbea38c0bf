#include "flockhydro/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace flockhydro {

SpaceGrid::SpaceGrid(double x_min, double x_max, std::size_t nx, Boundary boundary)
    : x_min_(x_min), x_max_(x_max), nx_(nx), boundary_(boundary) {
    if (!(x_max > x_min))
        throw std::invalid_argument("SpaceGrid: x_max must exceed x_min");
    if (nx < 4)
        throw std::invalid_argument("SpaceGrid: nx must be at least 4");
    dx_ = (x_max - x_min) / static_cast<double>(nx);
}

double SpaceGrid::distance(std::size_t i, std::size_t l) const {
    double d = std::abs(center(i) - center(l));
    if (boundary_ == Boundary::Periodic) {
        const double L = length();
        if (d > 0.5 * L) d = L - d;
    }
    return d;
}

bool SpaceGrid::same_layout(const SpaceGrid& other) const {
    return nx_ == other.nx_ && x_min_ == other.x_min_ && x_max_ == other.x_max_ &&
           boundary_ == other.boundary_;
}

PhaseGrid::PhaseGrid(SpaceGrid space, double v_max, std::size_t nv)
    : space_(space), v_max_(v_max), nv_(nv) {
    if (!(v_max > 0.0))
        throw std::invalid_argument("PhaseGrid: v_max must be positive");
    if (nv < 4 || nv % 2 != 0)
        throw std::invalid_argument("PhaseGrid: nv must be even and at least 4");
    dv_ = 2.0 * v_max / static_cast<double>(nv);
}

bool PhaseGrid::same_layout(const PhaseGrid& other) const {
    return nv_ == other.nv_ && v_max_ == other.v_max_ && space_.same_layout(other.space_);
}

} // namespace flockhydro
