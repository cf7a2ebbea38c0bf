// Command line front end: single runs, epsilon sweeps, inequality
// verification, and log-log rate fits over the CSV outputs.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "flockhydro/csv_io.hpp"
#include "flockhydro/harness.hpp"

namespace {

using namespace flockhydro;

struct CommonOptions {
    std::string config_path;
    std::string out_dir;
    std::string epsilon_list;
    std::string scheme;
    long nx = -1, nv = -1, snapshots = -1;
    double vmax = -1.0, tfinal = -1.0;
    long long seed = -1;
    bool dump_fields = false;
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool need_config) {
    auto* c = cmd->add_option("--config", opt.config_path, "configuration file (INI sections)");
    if (need_config) c->required();
    cmd->add_option("--out", opt.out_dir, "output directory");
    cmd->add_option("--epsilon-list", opt.epsilon_list, "comma separated sweep epsilons");
    cmd->add_option("--nx", opt.nx, "spatial cells");
    cmd->add_option("--nv", opt.nv, "velocity cells");
    cmd->add_option("--vmax", opt.vmax, "velocity truncation");
    cmd->add_option("--tfinal", opt.tfinal, "final time");
    cmd->add_option("--snapshots", opt.snapshots, "number of snapshot intervals");
    cmd->add_option("--scheme", opt.scheme,
                    "comma separated scheme choices: strang|lie, order1|order2, "
                    "chang-cooper|exact-projection, rusanov|hll");
    cmd->add_option("--seed", opt.seed, "seed recorded with the outputs");
    cmd->add_flag("--dump-fields", opt.dump_fields, "write per-snapshot field CSVs");
}

ExperimentConfig build_config(const CommonOptions& opt) {
    ExperimentConfig cfg = ExperimentConfig::from_file(opt.config_path);
    if (!opt.out_dir.empty()) cfg.out_dir = opt.out_dir;
    if (opt.nx > 0) cfg.model.nx = static_cast<std::size_t>(opt.nx);
    if (opt.nv > 0) cfg.model.nv = static_cast<std::size_t>(opt.nv);
    if (opt.vmax > 0.0) cfg.model.v_max = opt.vmax;
    if (opt.tfinal >= 0.0) cfg.model.t_final = opt.tfinal;
    if (opt.snapshots > 0)
        cfg.model.snapshot_dt = cfg.model.t_final / static_cast<double>(opt.snapshots);
    if (opt.seed >= 0) cfg.seed = static_cast<std::uint64_t>(opt.seed);
    if (opt.dump_fields) cfg.dump_fields = true;
    if (!opt.epsilon_list.empty()) {
        cfg.epsilon_list.clear();
        std::stringstream ss(opt.epsilon_list);
        std::string item;
        while (std::getline(ss, item, ',')) cfg.epsilon_list.push_back(std::stod(item));
    }
    if (!opt.scheme.empty()) {
        std::stringstream ss(opt.scheme);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item == "strang")
                cfg.model.splitting = Splitting::Strang;
            else if (item == "lie")
                cfg.model.splitting = Splitting::Lie;
            else if (item == "order1")
                cfg.model.transport_order = cfg.model.euler_order = 1;
            else if (item == "order2")
                cfg.model.transport_order = cfg.model.euler_order = 2;
            else if (item == "chang-cooper")
                cfg.model.local_step = LocalStepMode::ChangCooper;
            else if (item == "exact-projection")
                cfg.model.local_step = LocalStepMode::ExactProjection;
            else if (item == "rusanov")
                cfg.model.euler_flux = EulerFlux::Rusanov;
            else if (item == "hll")
                cfg.model.euler_flux = EulerFlux::Hll;
            else
                throw std::runtime_error("unknown --scheme token '" + item + "'");
        }
    }
    return cfg;
}

int cmd_simulate_kinetic(const CommonOptions& opt) {
    ExperimentConfig cfg = build_config(opt);
    RunProducts run = run_single(cfg);
    std::cout << "kinetic run complete: " << run.reports.size() << " snapshots, mass drift "
              << format_double(run.mass_drift) << "\n";
    return 0;
}

int cmd_simulate_euler(const CommonOptions& opt) {
    ExperimentConfig cfg = build_config(opt);
    EulerRunProducts run = run_euler_single(cfg);
    std::cout << "euler run complete: " << run.reports.size() << " snapshots, max |du/dx| "
              << format_double(run.trajectory.max_grad_u) << "\n";
    return 0;
}

int cmd_sweep(const CommonOptions& opt) {
    ExperimentConfig cfg = build_config(opt);
    SweepResult sweep = run_sweep(cfg);
    for (const SweepEntry& e : sweep.entries)
        std::cout << "eps=" << format_double(e.epsilon) << " error=" << format_double(e.error)
                  << "\n";
    std::cout << "slope=" << format_double(sweep.fit.slope)
              << " max_residual=" << format_double(sweep.fit.max_residual) << "\n";
    for (const std::string& w : sweep.warnings) std::cout << "warning: " << w << "\n";
    return sweep.ledger.all_hard_pass() ? 0 : 1;
}

int cmd_verify(const CommonOptions& opt) {
    ExperimentConfig cfg = build_config(opt);
    RunProducts run = run_single(cfg);
    const Ledger ledger = verify_inequalities(run, TolerancePolicy{});
    const std::string text = ledger.to_text();
    std::cout << text;
    if (!cfg.out_dir.empty()) {
        std::filesystem::create_directories(cfg.out_dir);
        write_text_file(cfg.out_dir + "/ledger.txt", text);
    }
    return ledger.all_hard_pass() ? 0 : 1;
}

int cmd_fit(const std::string& input) {
    std::ifstream in(input);
    if (!in) {
        std::cerr << "cannot open " << input << "\n";
        return 2;
    }
    std::vector<double> eps, err;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string first, rest;
        if (!std::getline(ss, first, ',')) continue;
        std::vector<std::string> cells{first};
        while (std::getline(ss, rest, ',')) cells.push_back(rest);
        if (cells.size() < 2) continue;
        try {
            const double e = std::stod(cells.front());
            const double v = std::stod(cells.back());
            eps.push_back(e);
            err.push_back(v);
        } catch (...) {
            continue; // header or footer line
        }
    }
    const RateFit fit = fit_rate(eps, err);
    std::cout << "slope = " << format_double(fit.slope) << "\n"
              << "intercept = " << format_double(fit.intercept) << "\n"
              << "max_residual = " << format_double(fit.max_residual) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"flockhydro: kinetic flocking equation laboratory"};
    app.require_subcommand(1);

    CommonOptions kin_opt, eul_opt, sweep_opt, verify_opt;
    std::string fit_input;

    add_common(app.add_subcommand("simulate-kinetic", "run the kinetic solver"), kin_opt, true);
    add_common(app.add_subcommand("simulate-euler", "run the Euler-flocking solver"), eul_opt,
               true);
    add_common(app.add_subcommand("sweep", "epsilon sweep with rate fit"), sweep_opt, true);
    add_common(app.add_subcommand("verify", "run and evaluate the inequality ledger"), verify_opt,
               true);
    auto* fit_cmd = app.add_subcommand("fit", "log-log least squares over (epsilon, error) CSV");
    fit_cmd->add_option("--input", fit_input, "CSV file; first column epsilon, last column error")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("simulate-kinetic")) return cmd_simulate_kinetic(kin_opt);
        if (app.got_subcommand("simulate-euler")) return cmd_simulate_euler(eul_opt);
        if (app.got_subcommand("sweep")) return cmd_sweep(sweep_opt);
        if (app.got_subcommand("verify")) return cmd_verify(verify_opt);
        if (app.got_subcommand("fit")) return cmd_fit(fit_input);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
