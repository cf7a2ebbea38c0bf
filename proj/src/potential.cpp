#include "flockhydro/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace flockhydro {

PotentialSpec::PotentialSpec(Kind kind, std::vector<double> values, std::vector<double> gradient)
    : kind_(kind), values_(std::move(values)), gradient_(std::move(gradient)) {
    for (double p : values_) {
        if (!(p >= 0.0))
            throw std::invalid_argument("PotentialSpec: potential must be nonnegative");
    }
}

PotentialSpec PotentialSpec::none(const SpaceGrid& grid) {
    return PotentialSpec(Kind::None, std::vector<double>(grid.nx(), 0.0),
                         std::vector<double>(grid.nx(), 0.0));
}

PotentialSpec PotentialSpec::quadratic(const SpaceGrid& grid, double a) {
    if (!(a >= 0.0))
        throw std::invalid_argument("PotentialSpec: quadratic coefficient must be nonnegative");
    const std::size_t n = grid.nx();
    std::vector<double> vals(n), grads(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = grid.center(i);
        vals[i] = 0.5 * a * x * x;
        grads[i] = a * x;
    }
    return PotentialSpec(Kind::Quadratic, std::move(vals), std::move(grads));
}

PotentialSpec PotentialSpec::table(const SpaceGrid& grid, std::vector<double> values) {
    const std::size_t n = grid.nx();
    if (values.size() != n)
        throw std::invalid_argument("PotentialSpec: table size does not match grid");
    std::vector<double> grads(n, 0.0);
    const double dx = grid.dx();
    auto at = [&](std::ptrdiff_t i) -> double {
        if (grid.boundary() == Boundary::Periodic) {
            const std::ptrdiff_t nn = static_cast<std::ptrdiff_t>(n);
            return values[static_cast<std::size_t>(((i % nn) + nn) % nn)];
        }
        if (i < 0) i = 0;
        if (i >= static_cast<std::ptrdiff_t>(n)) i = static_cast<std::ptrdiff_t>(n) - 1;
        return values[static_cast<std::size_t>(i)];
    };
    for (std::size_t i = 0; i < n; ++i) {
        const auto si = static_cast<std::ptrdiff_t>(i);
        if (grid.boundary() == Boundary::CopyOut && i == 0) {
            grads[i] = (at(1) - at(0)) / dx;
        } else if (grid.boundary() == Boundary::CopyOut && i == n - 1) {
            grads[i] = (at(si) - at(si - 1)) / dx;
        } else {
            grads[i] = (at(si + 1) - at(si - 1)) / (2.0 * dx);
        }
    }
    return PotentialSpec(Kind::Table, std::move(values), std::move(grads));
}

double PotentialSpec::admissibility_sum(const SpaceGrid& grid) const {
    double s = 0.0;
    for (std::size_t i = 0; i < grid.nx(); ++i) s += std::exp(-values_[i]);
    return s * grid.dx();
}

} // namespace flockhydro
