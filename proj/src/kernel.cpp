#include "flockhydro/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace flockhydro {

KernelSpec::KernelSpec(std::size_t nx, std::vector<double> values)
    : nx_(nx), values_(std::move(values)) {
    max_value_ = 0.0;
    for (double v : values_) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument("KernelSpec: kernel must be nonnegative and bounded");
        max_value_ = std::max(max_value_, v);
    }
}

KernelSpec KernelSpec::constant(const SpaceGrid& grid, double k0) {
    if (!(k0 >= 0.0))
        throw std::invalid_argument("KernelSpec: constant kernel must be nonnegative");
    return KernelSpec(grid.nx(), std::vector<double>(grid.nx() * grid.nx(), k0));
}

KernelSpec KernelSpec::gaussian(const SpaceGrid& grid, double amplitude, double width) {
    if (!(amplitude >= 0.0) || !(width > 0.0))
        throw std::invalid_argument("KernelSpec: gaussian kernel needs amplitude >= 0, width > 0");
    const std::size_t n = grid.nx();
    std::vector<double> k(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        k[i * n + i] = amplitude;
        for (std::size_t l = i + 1; l < n; ++l) {
            const double d = grid.distance(i, l);
            const double v = amplitude * std::exp(-0.5 * d * d / (width * width));
            k[i * n + l] = v;
            k[l * n + i] = v; // symmetric by construction
        }
    }
    return KernelSpec(n, std::move(k));
}

KernelSpec KernelSpec::table(const SpaceGrid& grid, std::vector<double> matrix) {
    const std::size_t n = grid.nx();
    if (matrix.size() != n * n)
        throw std::invalid_argument("KernelSpec: table size does not match grid");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = i + 1; l < n; ++l) {
            if (std::abs(matrix[i * n + l] - matrix[l * n + i]) > 1e-12)
                throw std::invalid_argument("KernelSpec: table kernel is not symmetric");
            // store the exactly symmetrized value
            const double v = 0.5 * (matrix[i * n + l] + matrix[l * n + i]);
            matrix[i * n + l] = v;
            matrix[l * n + i] = v;
        }
    return KernelSpec(n, std::move(matrix));
}

KernelSpec KernelSpec::from_csv(const SpaceGrid& grid, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("KernelSpec: cannot open " + path);
    std::vector<double> matrix;
    std::string line;
    std::size_t rows = 0, file_n = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string cell;
        std::size_t cols = 0;
        while (std::getline(ss, cell, ',')) {
            matrix.push_back(std::stod(cell));
            ++cols;
        }
        if (rows == 0) file_n = cols;
        if (cols != file_n)
            throw std::runtime_error("KernelSpec: ragged row " + std::to_string(rows) + " in " +
                                     path);
        ++rows;
    }
    if (rows != file_n || file_n < 2)
        throw std::runtime_error("KernelSpec: " + path + " is not a square matrix");

    for (std::size_t i = 0; i < file_n; ++i)
        for (std::size_t l = i + 1; l < file_n; ++l)
            if (std::abs(matrix[i * file_n + l] - matrix[l * file_n + i]) > 1e-12)
                throw std::runtime_error("KernelSpec: table kernel in " + path +
                                         " is not symmetric");

    if (file_n == grid.nx()) return table(grid, std::move(matrix));

    // the file samples K at the cell centers of its own uniform grid over the
    // same domain; other resolutions (e.g. the refined reference grid) get
    // bilinear interpolation, which keeps the symmetry
    const double dxf = grid.length() / static_cast<double>(file_n);
    const auto frac_index = [&](std::size_t i, std::size_t& lo, std::size_t& hi, double& w) {
        const double s = (grid.center(i) - grid.x_min()) / dxf - 0.5;
        const double c = std::min(std::max(s, 0.0), static_cast<double>(file_n - 1));
        lo = static_cast<std::size_t>(c);
        hi = std::min(lo + 1, file_n - 1);
        w = c - static_cast<double>(lo);
    };
    std::vector<double> out(grid.nx() * grid.nx());
    for (std::size_t i = 0; i < grid.nx(); ++i) {
        std::size_t ilo, ihi;
        double wi;
        frac_index(i, ilo, ihi, wi);
        for (std::size_t l = 0; l < grid.nx(); ++l) {
            std::size_t llo, lhi;
            double wl;
            frac_index(l, llo, lhi, wl);
            const double k00 = matrix[ilo * file_n + llo], k01 = matrix[ilo * file_n + lhi];
            const double k10 = matrix[ihi * file_n + llo], k11 = matrix[ihi * file_n + lhi];
            out[i * grid.nx() + l] = (1.0 - wi) * ((1.0 - wl) * k00 + wl * k01) +
                                     wi * ((1.0 - wl) * k10 + wl * k11);
        }
    }
    return table(grid, std::move(out));
}

MollifierSpec::MollifierSpec(const SpaceGrid& grid, double radius, Shape shape)
    : nx_(grid.nx()), radius_(radius) {
    if (!(radius > 0.0))
        throw std::invalid_argument("MollifierSpec: radius must be positive");
    values_.assign(nx_ * nx_, 0.0);
    for (std::size_t i = 0; i < nx_; ++i) {
        double row_sum = 0.0;
        for (std::size_t l = 0; l < nx_; ++l) {
            const double d = grid.distance(i, l);
            double v = 0.0;
            if (shape == Shape::Gaussian) {
                v = std::exp(-0.5 * d * d / (radius * radius));
            } else {
                const double s = d / radius;
                v = (s < 1.0) ? std::exp(-1.0 / (1.0 - s * s)) : 0.0;
            }
            values_[i * nx_ + l] = v;
            row_sum += v;
        }
        if (row_sum <= 0.0)
            throw std::invalid_argument("MollifierSpec: radius too small for the grid");
        // renormalize so that sum_l phi(i,l) dx = 1 exactly
        const double scale = 1.0 / (row_sum * grid.dx());
        for (std::size_t l = 0; l < nx_; ++l) values_[i * nx_ + l] *= scale;
    }
}

} // namespace flockhydro
