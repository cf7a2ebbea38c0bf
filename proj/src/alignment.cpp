#include "flockhydro/alignment.hpp"

#include <string>

#include "flockhydro/errors.hpp"
#include "flockhydro/model.hpp"

namespace flockhydro {

AffineVelocityField cs_operator_moments(const SpaceGrid& grid, const std::vector<double>& rho,
                                        const std::vector<double>& mom, const KernelSpec& kernel) {
    const std::size_t n = grid.nx();
    if (kernel.nx() != n)
        throw GridMismatchError("cs_operator: kernel grid does not match state grid");
    AffineVelocityField field;
    field.a.assign(n, 0.0);
    field.b.assign(n, 0.0);
    const double dx = grid.dx();
    for (std::size_t i = 0; i < n; ++i) {
        double a = 0.0, b = 0.0;
        for (std::size_t l = 0; l < n; ++l) {
            a += kernel(i, l) * mom[l];
            b += kernel(i, l) * rho[l];
        }
        field.a[i] = a * dx;
        field.b[i] = b * dx;
    }
    return field;
}

AffineVelocityField cs_operator(const KineticState& f, const KernelSpec& kernel,
                                double rho_floor) {
    const MomentFields m = moments(f, rho_floor);
    return cs_operator_moments(f.grid.space(), m.rho, m.mom, kernel);
}

AffineVelocityField mt_operator(const KineticState& f, const MollifierSpec& phi,
                                double rho_floor) {
    const std::size_t n = f.grid.space().nx();
    if (phi.nx() != n)
        throw GridMismatchError("mt_operator: mollifier grid does not match state grid");
    const MomentFields m = moments(f, rho_floor);
    const double dx = f.grid.space().dx();
    AffineVelocityField field;
    field.a.assign(n, 0.0);
    field.b.assign(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        double num = 0.0, den = 0.0;
        for (std::size_t l = 0; l < n; ++l) {
            num += phi(i, l) * m.mom[l];
            den += phi(i, l) * m.rho[l];
        }
        num *= dx;
        den *= dx;
        if (den <= rho_floor)
            throw VacuumError("mt_operator: mollified density underflows the vacuum floor at cell " +
                              std::to_string(i));
        field.a[i] = num / den;
    }
    return field;
}

std::vector<double> alignment_source(const MacroState& U, const std::vector<double>& u,
                                     const KernelSpec& kernel) {
    const std::size_t n = U.grid.nx();
    if (kernel.nx() != n)
        throw GridMismatchError("alignment_source: kernel grid does not match state grid");
    std::vector<double> s(n, 0.0);
    const double dx = U.grid.dx();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t l = i + 1; l < n; ++l) {
            const double w = kernel(i, l) * U.rho[i] * U.rho[l] * (u[l] - u[i]) * dx;
            s[i] += w;
            s[l] -= w; // pairwise antisymmetric: the total source sums to zero exactly
        }
    }
    return s;
}

double alignment_dissipation_rate(const MacroState& U, const std::vector<double>& u,
                                  const KernelSpec& kernel) {
    const std::size_t n = U.grid.nx();
    if (kernel.nx() != n)
        throw GridMismatchError("alignment_dissipation_rate: kernel grid mismatch");
    const double dx = U.grid.dx();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = i + 1; l < n; ++l) {
            const double du = u[i] - u[l];
            s += kernel(i, l) * U.rho[i] * U.rho[l] * du * du;
        }
    // pairs counted once, so the 1/2 in front of the double integral cancels
    return s * dx * dx;
}

double shifted_alignment_dissipation(const std::vector<double>& rho, const std::vector<double>& u,
                                     const std::vector<double>& u_ref, const KernelSpec& kernel,
                                     double dx) {
    const std::size_t n = rho.size();
    if (kernel.nx() != n)
        throw GridMismatchError("shifted_alignment_dissipation: kernel grid mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double wi = u[i] - u_ref[i];
        for (std::size_t l = i + 1; l < n; ++l) {
            const double d = wi - (u[l] - u_ref[l]);
            s += kernel(i, l) * rho[i] * rho[l] * d * d;
        }
    }
    return s * dx * dx;
}

} // namespace flockhydro
