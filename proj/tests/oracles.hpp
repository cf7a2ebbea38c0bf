// Test-side reference computations. Everything here is independent of the
// implementation paths it checks: plain quadrature, finite differences, and
// direct double sums.

#ifndef FLOCKHYDRO_TESTS_ORACLES_HPP
#define FLOCKHYDRO_TESTS_ORACLES_HPP

#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace oracles {

/// Adaptive Simpson quadrature.
inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                           double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, b, fa, fm, fb, whole, tol, 40);
}

/// Observed convergence order between consecutive errors under refinement by
/// `factor` (default: halving the resolution parameter).
inline std::vector<double> observed_orders(const std::vector<double>& errors,
                                           double factor = 2.0) {
    std::vector<double> orders;
    for (std::size_t k = 1; k < errors.size(); ++k)
        orders.push_back(std::log(errors[k - 1] / errors[k]) / std::log(factor));
    return orders;
}

/// Deterministic uniform sampler for property sweeps.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(gen_);
    }

  private:
    std::mt19937_64 gen_;
};

/// Central finite-difference derivative.
inline double central_diff(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

} // namespace oracles

#endif
