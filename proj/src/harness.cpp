#include "flockhydro/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "flockhydro/alignment.hpp"
#include "flockhydro/csv_io.hpp"
#include "flockhydro/errors.hpp"
#include "flockhydro/model.hpp"

namespace flockhydro {

namespace fs = std::filesystem;

namespace {

struct Setup {
    SpaceGrid space;
    PhaseGrid phase;
    KernelSpec kernel;
    PotentialSpec potential;
    std::vector<double> rho0, mom0, u0;
    double rho_floor;
    double mass0;
};

KernelSpec make_kernel(const KernelConfig& kc, const SpaceGrid& grid) {
    switch (kc.kind) {
        case KernelConfig::Kind::Constant: return KernelSpec::constant(grid, kc.k0);
        case KernelConfig::Kind::Gaussian:
            return KernelSpec::gaussian(grid, kc.amplitude, kc.width);
        case KernelConfig::Kind::Table: return KernelSpec::from_csv(grid, kc.file);
    }
    throw std::logic_error("make_kernel: unreachable");
}

PotentialSpec make_potential(const PotentialConfig& pc, const SpaceGrid& grid) {
    switch (pc.kind) {
        case PotentialConfig::Kind::None: return PotentialSpec::none(grid);
        case PotentialConfig::Kind::Quadratic: return PotentialSpec::quadratic(grid, pc.a);
        case PotentialConfig::Kind::Table: {
            std::ifstream in(pc.file);
            if (!in) throw std::runtime_error("potential table: cannot open " + pc.file);
            std::vector<double> vals;
            double v;
            while (in >> v) vals.push_back(v);
            if (vals.size() == grid.nx()) return PotentialSpec::table(grid, std::move(vals));
            // resample onto other resolutions (e.g. the refined reference
            // grid): the file lives on its own uniform cell centers
            if (vals.size() < 2)
                throw std::runtime_error("potential table: too few values in " + pc.file);
            const auto n_file = vals.size();
            const double dxf = grid.length() / static_cast<double>(n_file);
            std::vector<double> out(grid.nx());
            for (std::size_t i = 0; i < grid.nx(); ++i) {
                const double s = (grid.center(i) - grid.x_min()) / dxf - 0.5;
                const double c = std::min(std::max(s, 0.0), static_cast<double>(n_file - 1));
                const auto lo = static_cast<std::size_t>(c);
                const auto hi = std::min(lo + 1, n_file - 1);
                const double w = c - static_cast<double>(lo);
                out[i] = (1.0 - w) * vals[lo] + w * vals[hi];
            }
            return PotentialSpec::table(grid, std::move(out));
        }
    }
    throw std::logic_error("make_potential: unreachable");
}

Setup build_setup(const ExperimentConfig& cfg, std::size_t nx) {
    const ModelConfig& m = cfg.model;
    SpaceGrid space(m.x_min, m.x_max, nx, m.boundary);
    PhaseGrid phase(space, m.v_max, m.nv);
    KernelSpec kernel = make_kernel(m.kernel, space);
    PotentialSpec potential = make_potential(m.potential, space);
    if (potential.admissibility_sum(space) >= m.admissibility_ceiling)
        throw std::runtime_error(
            "build_setup: potential admissibility sum exceeds the configured ceiling");

    std::vector<double> rho0 = cell_averages(cfg.rho0, space);
    std::vector<double> mom0 = cell_averages_fn(
        [&](double x) {
            return cfg.rho0(x, space.x_min(), space.length()) *
                   cfg.u0(x, space.x_min(), space.length());
        },
        space);

    double mass = 0.0;
    for (double r : rho0) mass += r;
    mass *= space.dx();

    double floor = m.rho_floor;
    if (!(floor > 0.0)) floor = 1e-12 * mass / space.length();

    std::vector<double> u0(nx, 0.0);
    for (std::size_t i = 0; i < nx; ++i) u0[i] = rho0[i] > floor ? mom0[i] / rho0[i] : 0.0;

    return Setup{std::move(space), std::move(phase),    std::move(kernel), std::move(potential),
                 std::move(rho0),  std::move(mom0),     std::move(u0),     floor,
                 mass};
}

MacroState restrict_state(const MacroState& fine, const SpaceGrid& coarse) {
    if (fine.grid.nx() % coarse.nx() != 0 || fine.grid.x_min() != coarse.x_min() ||
        fine.grid.x_max() != coarse.x_max() || fine.grid.boundary() != coarse.boundary())
        throw GridMismatchError("restrict_state: fine grid is not a refinement of the coarse one");
    const std::size_t factor = fine.grid.nx() / coarse.nx();
    std::vector<double> rho(coarse.nx(), 0.0), mom(coarse.nx(), 0.0);
    for (std::size_t i = 0; i < coarse.nx(); ++i) {
        double r = 0.0, p = 0.0;
        for (std::size_t k = 0; k < factor; ++k) {
            r += fine.rho[i * factor + k];
            p += fine.p_mom[i * factor + k];
        }
        rho[i] = r / static_cast<double>(factor);
        mom[i] = p / static_cast<double>(factor);
    }
    return MacroState(coarse, std::move(rho), std::move(mom), fine.t);
}

std::vector<double> velocity_of(const MacroState& U, double floor) {
    std::vector<double> u(U.grid.nx(), 0.0);
    for (std::size_t i = 0; i < U.grid.nx(); ++i)
        u[i] = U.rho[i] > floor ? U.p_mom[i] / U.rho[i] : 0.0;
    return u;
}

KineticScheme kinetic_scheme_of(const ModelConfig& m, double floor) {
    KineticScheme s;
    s.splitting = m.splitting;
    s.transport_order = m.transport_order;
    s.local_step = m.local_step;
    s.cfl_hyp = m.cfl_hyp;
    s.cfl_force = m.cfl_force;
    s.rho_floor = floor;
    return s;
}

EulerScheme euler_scheme_of(const ModelConfig& m, double floor) {
    EulerScheme s;
    s.flux = m.euler_flux;
    s.order = m.euler_order;
    s.cfl = std::min(m.cfl_hyp, 0.45);
    s.rho_floor = floor;
    return s;
}

std::string eps_tag(double eps) {
    std::ostringstream ss;
    ss << "eps_" << eps;
    return ss.str();
}

void write_failure_manifest(const std::string& out_dir, const std::string& what) {
    if (out_dir.empty()) return;
    fs::create_directories(out_dir);
    write_text_file(out_dir + "/failure.txt", "aborted: " + what + "\n");
}

RunProducts run_single_against(const ExperimentConfig& cfg, double epsilon,
                               const Setup& setup, const Setup& fine,
                               const EulerTrajectory& euler_ref, const std::string& out_dir) {
    RunProducts out;
    out.epsilon = epsilon;
    out.rho_floor = setup.rho_floor;

    const ModelConfig& m = cfg.model;
    KineticState f0 = maxwellian(setup.phase, setup.rho0, setup.u0, m.tail_tol);
    const KineticScheme ksch = kinetic_scheme_of(m, setup.rho_floor);
    out.kinetic = advance(f0, m.t_final, m.snapshot_dt, epsilon, setup.kernel, setup.potential,
                          ksch);
    out.euler_ref = euler_ref;

    const std::size_t n = out.kinetic.snapshots.size();
    if (euler_ref.snapshots.size() != n)
        throw std::runtime_error("run_single: kinetic and Euler snapshot counts differ");

    out.reports.reserve(n);
    double mom0 = 0.0, mass0 = 0.0;
    out.min_f = 0.0;
    out.min_rho_euler = euler_ref.snapshots.front().min_density();
    for (std::size_t k = 0; k < n; ++k) {
        const KineticState& f = out.kinetic.snapshots[k];
        const MacroState& fine_state = euler_ref.snapshots[k];
        if (std::abs(fine_state.t - f.t) > 1e-9 * std::max(1.0, m.t_final))
            throw std::runtime_error("run_single: snapshot times diverged");
        MacroState Uref = restrict_state(fine_state, setup.space);

        const MomentFields mom = moments(f, setup.rho_floor);
        MacroState Uk(setup.space, mom.rho, mom.mom, f.t);

        EntropyReport rep;
        rep.t = f.t;
        rep.F = kinetic_entropy(f, setup.potential);
        rep.D1 = dissipation_d1(f, setup.rho_floor);
        rep.D2 = dissipation_d2(f, setup.kernel);
        rep.E = macro_entropy(Uk, setup.potential, setup.rho_floor);
        rep.rel_entropy = relative_entropy(Uk, Uref, setup.potential, setup.rho_floor);
        const BudgetTerms budget =
            budget_terms(f, Uref, setup.kernel, setup.potential, setup.rho_floor);
        rep.budget_a = budget.kinetic_approx_term;
        rep.budget_b = budget.coupling_term;
        rep.budget_c = budget.shifted_dissipation;
        rep.rel_dissipation = budget.shifted_dissipation;
        rep.jensen_gap = jensen_gap(f, setup.potential, setup.rho_floor);
        rep.maxwellian_gap = maxwellian_gap(f, setup.rho_floor);
        out.reports.push_back(rep);

        out.kinetic_align_diss.push_back(alignment_dissipation_rate(Uk, mom.u, setup.kernel));
        out.rel_flux_total.push_back(relative_flux_total(Uk, Uref, setup.rho_floor));
        out.euler_entropy.push_back(macro_entropy(fine_state, fine.potential, setup.rho_floor));
        out.euler_align_diss.push_back(alignment_dissipation_rate(
            fine_state, velocity_of(fine_state, setup.rho_floor), fine.kernel));
        out.euler_restricted.push_back(std::move(Uref));

        out.min_f = std::min(out.min_f, f.min_value());
        out.min_rho_euler = std::min(out.min_rho_euler, fine_state.min_density());
        if (k == 0) {
            mom0 = f.momentum();
            mass0 = f.mass();
        } else {
            out.momentum_drift = std::max(out.momentum_drift, std::abs(f.momentum() - mom0));
            out.mass_drift = std::max(
                out.mass_drift, std::abs(f.mass() - mass0) / std::max(mass0, 1e-300));
        }
    }

    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        write_reports_csv(out_dir + "/reports.csv", out.reports);
        if (cfg.dump_fields) {
            fs::create_directories(out_dir + "/fields");
            char name[64];
            for (std::size_t k = 0; k < n; ++k) {
                std::snprintf(name, sizeof(name), "/fields/kinetic_%04zu.csv", k);
                write_kinetic_snapshot_csv(out_dir + name, out.kinetic.snapshots[k]);
                std::snprintf(name, sizeof(name), "/fields/euler_%04zu.csv", k);
                write_euler_snapshot_csv(out_dir + name, out.euler_ref.snapshots[k],
                                         setup.rho_floor);
            }
        }
    }
    return out;
}

} // namespace

double trapezoid(const std::vector<double>& t, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < t.size(); ++k)
        s += 0.5 * (y[k] + y[k + 1]) * (t[k + 1] - t[k]);
    return s;
}

RateFit fit_rate(const std::vector<double>& epsilons, const std::vector<double>& errors) {
    if (epsilons.size() != errors.size())
        throw std::invalid_argument("fit_rate: size mismatch");
    if (epsilons.size() < 3)
        throw std::invalid_argument("fit_rate: need at least 3 points");
    const std::size_t n = epsilons.size();
    std::vector<double> x(n), y(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (!(epsilons[k] > 0.0) || !(errors[k] > 0.0))
            throw std::invalid_argument("fit_rate: degenerate data (nonpositive point)");
        x[k] = std::log(epsilons[k]);
        y[k] = std::log(errors[k]);
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        sx += x[k];
        sy += y[k];
        sxx += x[k] * x[k];
        sxy += x[k] * y[k];
    }
    const double dn = static_cast<double>(n);
    const double det = dn * sxx - sx * sx;
    RateFit fit;
    fit.slope = (dn * sxy - sx * sy) / det;
    fit.intercept = (sy * sxx - sx * sxy) / det;
    fit.residuals.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        fit.residuals[k] = y[k] - (fit.intercept + fit.slope * x[k]);
        fit.max_residual = std::max(fit.max_residual, std::abs(fit.residuals[k]));
    }
    return fit;
}

bool Ledger::all_hard_pass() const {
    for (const LedgerEntry& e : entries)
        if (e.hard && !e.pass) return false;
    return true;
}

std::string Ledger::to_text() const {
    std::ostringstream out;
    for (const LedgerEntry& e : entries) {
        out << (e.pass ? "PASS" : "FAIL") << ' ' << e.name
            << " margin=" << format_double(e.margin) << " tol=" << format_double(e.tol);
        if (!e.hard) out << " (soft)";
        if (!e.note.empty()) out << ' ' << e.note;
        out << "\n";
    }
    return out.str();
}

Ledger verify_inequalities(const RunProducts& run, const TolerancePolicy& policy) {
    Ledger ledger;
    const std::size_t n = run.reports.size();
    std::vector<double> t(n), F(n), D1(n), rel_ent(n), rel_diss(n);
    for (std::size_t k = 0; k < n; ++k) {
        t[k] = run.reports[k].t;
        F[k] = run.reports[k].F;
        D1[k] = run.reports[k].D1;
        rel_ent[k] = run.reports[k].rel_entropy;
        rel_diss[k] = run.reports[k].rel_dissipation;
    }

    { // Jensen minimization: the (shifted) gap is nonnegative on every snapshot
        double margin = std::numeric_limits<double>::infinity();
        for (const EntropyReport& r : run.reports) margin = std::min(margin, r.jensen_gap);
        ledger.entries.push_back(
            {"jensen_minimization", margin >= -policy.jensen_tol, true, margin, policy.jensen_tol, ""});
    }

    { // kinetic entropy budget with the fitted minimal constant
        const double F0 = F.empty() ? 0.0 : F.front();
        std::vector<double> int_d1(n, 0.0), int_adr(n, 0.0), int_absF(n, 0.0);
        for (std::size_t k = 1; k < n; ++k) {
            const double dt = t[k] - t[k - 1];
            int_d1[k] = int_d1[k - 1] + 0.5 * (D1[k] + D1[k - 1]) * dt;
            int_adr[k] = int_adr[k - 1] +
                         0.5 * (run.kinetic_align_diss[k] + run.kinetic_align_diss[k - 1]) * dt;
            int_absF[k] = int_absF[k - 1] + 0.5 * (std::abs(F[k]) + std::abs(F[k - 1])) * dt;
        }
        const auto lhs = [&](std::size_t k) {
            return F[k] + 0.5 / run.epsilon * int_d1[k] + 0.5 * int_adr[k];
        };
        double C = 0.0;
        if (n > 1 && int_absF.back() > 0.0)
            C = std::max(0.0, (lhs(n - 1) - F0) / (run.epsilon * int_absF.back()));
        double margin = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < n; ++k)
            margin = std::min(margin, F0 + C * run.epsilon * int_absF[k] - lhs(k));
        const double tol = policy.entropy_budget_rel * std::abs(F0);
        ledger.entries.push_back({"kinetic_entropy_budget", margin >= -tol, true, margin, tol,
                                  "fitted_C=" + format_double(C)});
    }

    { // Euler entropy balance of the reference run (dissipative direction)
        const double E0 = run.euler_entropy.empty() ? 0.0 : run.euler_entropy.front();
        std::vector<double> int_adr(n, 0.0);
        for (std::size_t k = 1; k < n; ++k)
            int_adr[k] = int_adr[k - 1] +
                         0.5 * (run.euler_align_diss[k] + run.euler_align_diss[k - 1]) *
                             (t[k] - t[k - 1]);
        double margin = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < n; ++k)
            margin = std::min(margin, E0 - run.euler_entropy[k] - int_adr[k]);
        const double dx_ref = run.euler_ref.snapshots.empty()
                                  ? 0.0
                                  : run.euler_ref.snapshots.front().grid.dx();
        const double tol =
            policy.euler_balance_coeff * dx_ref * dx_ref * std::max(1.0, std::abs(E0));
        ledger.entries.push_back({"euler_entropy_balance", margin >= -tol, true, margin, tol,
                                  "rule=coeff*dx_ref^2*scale"});
    }

    { // pointwise relative-pressure lower bound along the trajectory
        double margin = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < n; ++k) {
            const MacroState& Uref = run.euler_restricted[k];
            const MomentFields mom = moments(run.kinetic.snapshots[k], run.rho_floor);
            for (std::size_t i = 0; i < Uref.grid.nx(); ++i) {
                const double q = std::max(mom.rho[i], run.rho_floor);
                const double r = std::max(Uref.rho[i], run.rho_floor);
                const double p = relative_pressure(q, r, run.rho_floor);
                const double bound = 0.5 * std::min(1.0 / q, 1.0 / r) * (q - r) * (q - r);
                margin = std::min(margin, p - bound);
            }
        }
        ledger.entries.push_back({"relative_pressure_bound", margin >= -policy.pressure_bound_tol,
                                  true, margin, policy.pressure_bound_tol, ""});
    }

    { // relative flux controlled by twice the relative entropy
        double margin = std::numeric_limits<double>::infinity();
        double sharp = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < n; ++k) {
            margin = std::min(margin, 2.0 * rel_ent[k] - run.rel_flux_total[k]);
            sharp = std::min(sharp, rel_ent[k] - run.rel_flux_total[k]);
        }
        ledger.entries.push_back({"relative_flux_bound", margin >= -policy.relative_flux_tol, true,
                                  margin, policy.relative_flux_tol,
                                  sharp >= -policy.relative_flux_tol ? "sharp_factor1=yes"
                                                                     : "sharp_factor1=no"});
    }

    { // Gronwall envelope: fitted constant, reported, never gating
        double C = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            std::vector<double> tk(t.begin(), t.begin() + k + 1);
            std::vector<double> ek(rel_ent.begin(), rel_ent.begin() + k + 1);
            std::vector<double> dk(rel_diss.begin(), rel_diss.begin() + k + 1);
            const double lhs = rel_ent[k] + trapezoid(tk, dk);
            const double den = trapezoid(tk, ek) + std::sqrt(run.epsilon);
            C = std::max(C, lhs / den);
        }
        ledger.entries.push_back({"gronwall_envelope", std::isfinite(C), false, C, 0.0,
                                  "fitted_C=" + format_double(C)});
    }

    return ledger;
}

RunProducts run_single(const ExperimentConfig& cfg) {
    try {
        const Setup setup = build_setup(cfg, cfg.model.nx);
        const std::size_t factor = std::max<std::size_t>(2, cfg.euler_refine);
        ExperimentConfig fine_cfg = cfg;
        fine_cfg.model.rho_floor = setup.rho_floor;
        const Setup fine = build_setup(fine_cfg, cfg.model.nx * factor);

        MacroState U0(fine.space, fine.rho0, fine.mom0, 0.0);
        const EulerTrajectory euler_ref =
            advance_euler(U0, cfg.model.t_final, cfg.model.snapshot_dt,
                          euler_scheme_of(cfg.model, setup.rho_floor), fine.kernel,
                          fine.potential);
        return run_single_against(cfg, cfg.model.epsilon, setup, fine, euler_ref, cfg.out_dir);
    } catch (const std::exception& e) {
        write_failure_manifest(cfg.out_dir, e.what());
        throw;
    }
}

EulerRunProducts run_euler_single(const ExperimentConfig& cfg) {
    try {
        const Setup setup = build_setup(cfg, cfg.model.nx);
        EulerRunProducts out;
        out.rho_floor = setup.rho_floor;
        MacroState U0(setup.space, setup.rho0, setup.mom0, 0.0);
        out.trajectory =
            advance_euler(U0, cfg.model.t_final, cfg.model.snapshot_dt,
                          euler_scheme_of(cfg.model, setup.rho_floor), setup.kernel,
                          setup.potential);
        for (const MacroState& U : out.trajectory.snapshots) {
            EntropyReport rep;
            rep.t = U.t;
            rep.E = macro_entropy(U, setup.potential, setup.rho_floor);
            rep.rel_dissipation =
                alignment_dissipation_rate(U, velocity_of(U, setup.rho_floor), setup.kernel);
            out.reports.push_back(rep);
            out.align_diss.push_back(rep.rel_dissipation);
        }
        if (!cfg.out_dir.empty()) {
            fs::create_directories(cfg.out_dir);
            write_reports_csv(cfg.out_dir + "/reports.csv", out.reports);
            if (cfg.dump_fields) {
                fs::create_directories(cfg.out_dir + "/fields");
                char name[64];
                for (std::size_t k = 0; k < out.trajectory.snapshots.size(); ++k) {
                    std::snprintf(name, sizeof(name), "/fields/euler_%04zu.csv", k);
                    write_euler_snapshot_csv(cfg.out_dir + name, out.trajectory.snapshots[k],
                                             setup.rho_floor);
                }
            }
        }
        return out;
    } catch (const std::exception& e) {
        write_failure_manifest(cfg.out_dir, e.what());
        throw;
    }
}

SweepResult run_sweep(const ExperimentConfig& cfg) {
    if (cfg.epsilon_list.size() < 3)
        throw std::invalid_argument("run_sweep: epsilon_list needs at least 3 entries");

    SweepResult result;
    try {
        const Setup setup = build_setup(cfg, cfg.model.nx);
        const std::size_t factor = std::max<std::size_t>(2, cfg.euler_refine);
        ExperimentConfig fine_cfg = cfg;
        fine_cfg.model.rho_floor = setup.rho_floor;
        const Setup fine = build_setup(fine_cfg, cfg.model.nx * factor);

        // one shared strong reference for the whole sweep
        MacroState U0(fine.space, fine.rho0, fine.mom0, 0.0);
        const EulerTrajectory euler_ref =
            advance_euler(U0, cfg.model.t_final, cfg.model.snapshot_dt,
                          euler_scheme_of(cfg.model, setup.rho_floor), fine.kernel,
                          fine.potential);
        if (euler_ref.max_grad_u > cfg.blowup_threshold)
            throw std::runtime_error(
                "run_sweep: reference velocity gradient " +
                std::to_string(euler_ref.max_grad_u) +
                " exceeds the blow-up threshold; not inside the smooth window");

        const TolerancePolicy policy;
        for (double eps : cfg.epsilon_list) {
            const std::string sub_dir =
                cfg.out_dir.empty() ? std::string() : cfg.out_dir + "/" + eps_tag(eps);
            RunProducts run = run_single_against(cfg, eps, setup, fine, euler_ref, sub_dir);

            SweepEntry entry;
            entry.epsilon = eps;
            std::vector<double> t, rd;
            for (const EntropyReport& r : run.reports) {
                entry.sup_rel_entropy = std::max(entry.sup_rel_entropy, r.rel_entropy);
                t.push_back(r.t);
                rd.push_back(r.rel_dissipation);
            }
            entry.int_rel_dissipation = trapezoid(t, rd);
            entry.error = entry.sup_rel_entropy + entry.int_rel_dissipation;
            entry.maxwellian_gap_final = run.reports.back().maxwellian_gap;
            result.entries.push_back(entry);

            Ledger run_ledger = verify_inequalities(run, policy);
            for (LedgerEntry e : run_ledger.entries) {
                e.name += " [" + eps_tag(eps) + "]";
                result.ledger.entries.push_back(std::move(e));
            }
        }

        for (std::size_t k = 1; k < result.entries.size(); ++k)
            if (result.entries[k].error > result.entries[k - 1].error)
                result.warnings.push_back(
                    "error is not monotone between eps=" +
                    format_double(result.entries[k - 1].epsilon) + " and eps=" +
                    format_double(result.entries[k].epsilon) + " (scheme-error floor?)");

        std::vector<double> eps, err;
        for (const SweepEntry& e : result.entries) {
            eps.push_back(e.epsilon);
            err.push_back(e.error);
        }
        result.fit = fit_rate(eps, err);

        if (!cfg.out_dir.empty()) {
            fs::create_directories(cfg.out_dir);
            std::ostringstream out;
            out << "epsilon,sup_rel_entropy,int_rel_dissipation,error\n";
            for (const SweepEntry& e : result.entries)
                out << format_double(e.epsilon) << ',' << format_double(e.sup_rel_entropy) << ','
                    << format_double(e.int_rel_dissipation) << ',' << format_double(e.error)
                    << "\n";
            out << "# slope = " << format_double(result.fit.slope) << "\n";
            out << "# intercept = " << format_double(result.fit.intercept) << "\n";
            out << "# max_residual = " << format_double(result.fit.max_residual) << "\n";
            for (const std::string& w : result.warnings) out << "# warning: " << w << "\n";
            write_text_file(cfg.out_dir + "/sweep.csv", out.str());
            write_text_file(cfg.out_dir + "/ledger.txt", result.ledger.to_text());
        }
    } catch (const std::exception& e) {
        write_failure_manifest(cfg.out_dir, e.what());
        throw;
    }
    return result;
}

} // namespace flockhydro
