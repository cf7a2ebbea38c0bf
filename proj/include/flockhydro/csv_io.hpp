#ifndef FLOCKHYDRO_CSV_IO_HPP
#define FLOCKHYDRO_CSV_IO_HPP

#include <string>
#include <vector>

#include "flockhydro/entropy.hpp"
#include "flockhydro/state.hpp"

namespace flockhydro {

/// Shortest round-trippable decimal form of a double (%.17g); the same bits
/// always print the same bytes, which is what the determinism contract needs.
std::string format_double(double x);

extern const char* const kReportHeader;

std::string reports_to_csv(const std::vector<EntropyReport>& reports);
void write_reports_csv(const std::string& path, const std::vector<EntropyReport>& reports);

void write_kinetic_snapshot_csv(const std::string& path, const KineticState& state);
void write_euler_snapshot_csv(const std::string& path, const MacroState& state,
                              double rho_floor);

void write_text_file(const std::string& path, const std::string& content);

} // namespace flockhydro

#endif
