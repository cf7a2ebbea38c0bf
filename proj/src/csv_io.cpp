#include "flockhydro/csv_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace flockhydro {

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

const char* const kReportHeader =
    "t,F,D1,D2,E,rel_entropy,rel_dissipation,jensen_gap,maxwellian_gap,budget_a,budget_b,budget_c";

std::string reports_to_csv(const std::vector<EntropyReport>& reports) {
    std::ostringstream out;
    out << kReportHeader << "\n";
    for (const EntropyReport& r : reports) {
        out << format_double(r.t) << ',' << format_double(r.F) << ',' << format_double(r.D1)
            << ',' << format_double(r.D2) << ',' << format_double(r.E) << ','
            << format_double(r.rel_entropy) << ',' << format_double(r.rel_dissipation) << ','
            << format_double(r.jensen_gap) << ',' << format_double(r.maxwellian_gap) << ','
            << format_double(r.budget_a) << ',' << format_double(r.budget_b) << ','
            << format_double(r.budget_c) << "\n";
    }
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

void write_reports_csv(const std::string& path, const std::vector<EntropyReport>& reports) {
    write_text_file(path, reports_to_csv(reports));
}

void write_kinetic_snapshot_csv(const std::string& path, const KineticState& state) {
    std::ostringstream out;
    const PhaseGrid& g = state.grid;
    out << "t,nx,nv,x_min,x_max,v_max\n"
        << format_double(state.t) << ',' << g.space().nx() << ',' << g.nv() << ','
        << format_double(g.space().x_min()) << ',' << format_double(g.space().x_max()) << ','
        << format_double(g.v_max()) << "\n";
    out << "i,j,x,v,f\n";
    for (std::size_t i = 0; i < g.space().nx(); ++i)
        for (std::size_t j = 0; j < g.nv(); ++j)
            out << i << ',' << j << ',' << format_double(g.space().center(i)) << ','
                << format_double(g.v_center(j)) << ',' << format_double(state(i, j)) << "\n";
    write_text_file(path, out.str());
}

void write_euler_snapshot_csv(const std::string& path, const MacroState& state,
                              double rho_floor) {
    std::ostringstream out;
    const SpaceGrid& g = state.grid;
    out << "t,nx,x_min,x_max\n"
        << format_double(state.t) << ',' << g.nx() << ',' << format_double(g.x_min()) << ','
        << format_double(g.x_max()) << "\n";
    out << "i,x,rho,u,P\n";
    for (std::size_t i = 0; i < g.nx(); ++i) {
        const double u = state.rho[i] > rho_floor ? state.p_mom[i] / state.rho[i] : 0.0;
        out << i << ',' << format_double(g.center(i)) << ',' << format_double(state.rho[i])
            << ',' << format_double(u) << ',' << format_double(state.p_mom[i]) << "\n";
    }
    write_text_file(path, out.str());
}

} // namespace flockhydro
