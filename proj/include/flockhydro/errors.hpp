#ifndef FLOCKHYDRO_ERRORS_HPP
#define FLOCKHYDRO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace flockhydro {

/// Velocity domain too small for the requested Maxwellian (tail mass above tolerance).
struct TailError : std::runtime_error {
    explicit TailError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Time step violates a CFL restriction.
struct CflError : std::runtime_error {
    explicit CflError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Density fell to (or below) the vacuum floor where strict positivity is required.
struct VacuumError : std::runtime_error {
    explicit VacuumError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Two fields that must live on compatible grids do not.
struct GridMismatchError : std::runtime_error {
    explicit GridMismatchError(const std::string& msg) : std::runtime_error(msg) {}
};

/// NaN or Inf appeared during time integration.
struct NumericsError : std::runtime_error {
    explicit NumericsError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace flockhydro

#endif
