// Python bindings for the main operations: grids, Maxwellians and moments,
// alignment operators, both solvers, the entropy functionals, and the
// experiment harness.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "flockhydro/alignment.hpp"
#include "flockhydro/entropy.hpp"
#include "flockhydro/euler_solver.hpp"
#include "flockhydro/harness.hpp"
#include "flockhydro/kinetic_solver.hpp"
#include "flockhydro/model.hpp"

namespace py = pybind11;
using namespace flockhydro;

namespace {

std::vector<double> to_vector(const py::array_t<double, py::array::c_style>& a) {
    return std::vector<double>(a.data(), a.data() + a.size());
}

py::array_t<double> to_array(const std::vector<double>& v) {
    py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

py::array_t<double> to_array_2d(const std::vector<double>& v, std::size_t rows,
                                std::size_t cols) {
    py::array_t<double> out({static_cast<py::ssize_t>(rows), static_cast<py::ssize_t>(cols)});
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Kinetic Cucker-Smale flocking laboratory: solvers and entropy diagnostics";

    py::enum_<Boundary>(m, "Boundary")
        .value("periodic", Boundary::Periodic)
        .value("copy_out", Boundary::CopyOut);

    py::class_<SpaceGrid>(m, "SpaceGrid")
        .def(py::init<double, double, std::size_t, Boundary>(), py::arg("x_min"),
             py::arg("x_max"), py::arg("nx"), py::arg("boundary") = Boundary::Periodic)
        .def_property_readonly("nx", &SpaceGrid::nx)
        .def_property_readonly("dx", &SpaceGrid::dx)
        .def_property_readonly("x_min", &SpaceGrid::x_min)
        .def_property_readonly("x_max", &SpaceGrid::x_max)
        .def("centers", [](const SpaceGrid& g) {
            std::vector<double> x(g.nx());
            for (std::size_t i = 0; i < g.nx(); ++i) x[i] = g.center(i);
            return to_array(x);
        });

    py::class_<PhaseGrid>(m, "PhaseGrid")
        .def(py::init<SpaceGrid, double, std::size_t>(), py::arg("space"), py::arg("v_max"),
             py::arg("nv"))
        .def_property_readonly("nv", &PhaseGrid::nv)
        .def_property_readonly("dv", &PhaseGrid::dv)
        .def_property_readonly("v_max", &PhaseGrid::v_max)
        .def_property_readonly("space", &PhaseGrid::space)
        .def("v_centers", [](const PhaseGrid& g) {
            std::vector<double> v(g.nv());
            for (std::size_t j = 0; j < g.nv(); ++j) v[j] = g.v_center(j);
            return to_array(v);
        });

    py::class_<PotentialSpec>(m, "PotentialSpec")
        .def_static("none", &PotentialSpec::none)
        .def_static("quadratic", &PotentialSpec::quadratic)
        .def("values", [](const PotentialSpec& p) { return to_array(p.values()); })
        .def("gradients", [](const PotentialSpec& p) { return to_array(p.gradients()); });

    py::class_<KernelSpec>(m, "KernelSpec")
        .def_static("constant", &KernelSpec::constant)
        .def_static("gaussian", &KernelSpec::gaussian)
        .def_static("from_csv", &KernelSpec::from_csv)
        .def_property_readonly("max_value", &KernelSpec::max_value);

    py::class_<KineticState>(m, "KineticState")
        .def_property_readonly("t", [](const KineticState& s) { return s.t; })
        .def_property_readonly("grid", [](const KineticState& s) { return s.grid; })
        .def_property_readonly(
            "f", [](const KineticState& s) {
                return to_array_2d(s.f, s.grid.space().nx(), s.grid.nv());
            })
        .def("mass", &KineticState::mass)
        .def("momentum", &KineticState::momentum);

    py::class_<MacroState>(m, "MacroState")
        .def(py::init([](const SpaceGrid& g, py::array_t<double, py::array::c_style> rho,
                         py::array_t<double, py::array::c_style> mom, double t) {
                 return MacroState(g, to_vector(rho), to_vector(mom), t);
             }),
             py::arg("grid"), py::arg("rho"), py::arg("p_mom"), py::arg("t") = 0.0)
        .def_property_readonly("t", [](const MacroState& s) { return s.t; })
        .def_property_readonly("rho", [](const MacroState& s) { return to_array(s.rho); })
        .def_property_readonly("p_mom", [](const MacroState& s) { return to_array(s.p_mom); })
        .def("mass", &MacroState::mass);

    m.def(
        "maxwellian",
        [](const PhaseGrid& grid, py::array_t<double, py::array::c_style> rho,
           py::array_t<double, py::array::c_style> u, double tail_tol) {
            return maxwellian(grid, to_vector(rho), to_vector(u), tail_tol);
        },
        py::arg("grid"), py::arg("rho"), py::arg("u"), py::arg("tail_tol") = 1e-6);

    m.def(
        "moments",
        [](const KineticState& f, double rho_floor) {
            const MomentFields mf = moments(f, rho_floor);
            return py::make_tuple(to_array(mf.rho), to_array(mf.mom), to_array(mf.u));
        },
        py::arg("f"), py::arg("rho_floor") = 1e-14);

    m.def("second_moment_flux",
          [](const KineticState& f) { return to_array(second_moment_flux(f)); });

    m.def("stationary_profile", &stationary_profile, py::arg("grid"), py::arg("potential"),
          py::arg("mass"));

    m.def(
        "cs_operator",
        [](const KineticState& f, const KernelSpec& kernel, double rho_floor) {
            const AffineVelocityField field = cs_operator(f, kernel, rho_floor);
            return py::make_tuple(to_array(field.a), to_array(field.b));
        },
        py::arg("f"), py::arg("kernel"), py::arg("rho_floor") = 1e-14);

    py::class_<MollifierSpec> mollifier(m, "MollifierSpec");
    py::enum_<MollifierSpec::Shape>(mollifier, "Shape")
        .value("gaussian", MollifierSpec::Shape::Gaussian)
        .value("bump", MollifierSpec::Shape::Bump);
    mollifier.def(py::init<const SpaceGrid&, double, MollifierSpec::Shape>(), py::arg("grid"),
                  py::arg("radius"), py::arg("shape") = MollifierSpec::Shape::Gaussian);

    m.def(
        "mt_operator",
        [](const KineticState& f, const MollifierSpec& phi, double rho_floor) {
            const AffineVelocityField field = mt_operator(f, phi, rho_floor);
            return py::make_tuple(to_array(field.a), to_array(field.b));
        },
        py::arg("f"), py::arg("mollifier"), py::arg("rho_floor") = 1e-14);

    m.def(
        "alignment_source",
        [](const MacroState& U, const KernelSpec& kernel, double rho_floor) {
            std::vector<double> u(U.grid.nx(), 0.0);
            for (std::size_t i = 0; i < U.grid.nx(); ++i)
                u[i] = U.rho[i] > rho_floor ? U.p_mom[i] / U.rho[i] : 0.0;
            return to_array(alignment_source(U, u, kernel));
        },
        py::arg("U"), py::arg("kernel"), py::arg("rho_floor") = 1e-14);

    m.def(
        "alignment_dissipation_rate",
        [](const MacroState& U, const KernelSpec& kernel, double rho_floor) {
            std::vector<double> u(U.grid.nx(), 0.0);
            for (std::size_t i = 0; i < U.grid.nx(); ++i)
                u[i] = U.rho[i] > rho_floor ? U.p_mom[i] / U.rho[i] : 0.0;
            return alignment_dissipation_rate(U, u, kernel);
        },
        py::arg("U"), py::arg("kernel"), py::arg("rho_floor") = 1e-14);

    py::class_<KineticScheme>(m, "KineticScheme")
        .def(py::init<>())
        .def_readwrite("transport_order", &KineticScheme::transport_order)
        .def_readwrite("cfl_hyp", &KineticScheme::cfl_hyp)
        .def_readwrite("cfl_force", &KineticScheme::cfl_force)
        .def_readwrite("rho_floor", &KineticScheme::rho_floor);

    m.def(
        "advance_kinetic",
        [](const KineticState& f0, double t_target, double snapshot_dt, double epsilon,
           const KernelSpec& kernel, const PotentialSpec& potential,
           const KineticScheme& scheme) {
            return advance(f0, t_target, snapshot_dt, epsilon, kernel, potential, scheme)
                .snapshots;
        },
        py::arg("f0"), py::arg("t_target"), py::arg("snapshot_dt"), py::arg("epsilon"),
        py::arg("kernel"), py::arg("potential"), py::arg("scheme") = KineticScheme{});

    py::class_<EulerScheme>(m, "EulerScheme")
        .def(py::init<>())
        .def_readwrite("order", &EulerScheme::order)
        .def_readwrite("cfl", &EulerScheme::cfl)
        .def_readwrite("rho_floor", &EulerScheme::rho_floor);

    m.def(
        "advance_euler",
        [](const MacroState& U0, double t_target, double snapshot_dt, const EulerScheme& scheme,
           const KernelSpec& kernel, const PotentialSpec& potential) {
            return advance_euler(U0, t_target, snapshot_dt, scheme, kernel, potential).snapshots;
        },
        py::arg("U0"), py::arg("t_target"), py::arg("snapshot_dt"), py::arg("scheme"),
        py::arg("kernel"), py::arg("potential"));

    m.def("kinetic_entropy", &kinetic_entropy);
    m.def("dissipation_d1", &dissipation_d1, py::arg("f"), py::arg("rho_floor") = 1e-14);
    m.def("dissipation_d2", &dissipation_d2);
    m.def("macro_entropy", &macro_entropy, py::arg("U"), py::arg("potential"),
          py::arg("rho_floor") = 1e-14);
    m.def("relative_pressure", &relative_pressure, py::arg("q"), py::arg("rho"),
          py::arg("floor") = 1e-14);
    m.def("relative_entropy", &relative_entropy, py::arg("V"), py::arg("U"), py::arg("potential"),
          py::arg("rho_floor") = 1e-14);
    m.def("jensen_gap", &jensen_gap, py::arg("f"), py::arg("potential"),
          py::arg("rho_floor") = 1e-14);
    m.def("maxwellian_gap", &maxwellian_gap, py::arg("f"), py::arg("rho_floor") = 1e-14);
    m.def("relative_flux_total", &relative_flux_total, py::arg("V"), py::arg("U"),
          py::arg("rho_floor") = 1e-14);
    m.def(
        "budget_terms",
        [](const KineticState& f, const MacroState& U_ref, const KernelSpec& kernel,
           const PotentialSpec& potential, double rho_floor) {
            const BudgetTerms b = budget_terms(f, U_ref, kernel, potential, rho_floor);
            return py::make_tuple(b.kinetic_approx_term, b.coupling_term,
                                  b.shifted_dissipation);
        },
        py::arg("f"), py::arg("U_ref"), py::arg("kernel"), py::arg("potential"),
        py::arg("rho_floor") = 1e-14);
    m.def("symmetrizer_asymmetry", [](double rho, double u) {
        return symmetrizer_check(rho, u, 1e-14).asymmetry;
    });
    m.def("entropy_flux_residual", [](double rho, double mom, double phi) {
        return entropy_flux_check(rho, mom, phi, 1e-14);
    });

    m.def(
        "fit_rate",
        [](const std::vector<double>& eps, const std::vector<double>& err) {
            const RateFit fit = fit_rate(eps, err);
            return py::make_tuple(fit.slope, fit.intercept, fit.max_residual);
        },
        py::arg("epsilons"), py::arg("errors"));

    m.def(
        "run_single",
        [](const std::string& config_path, const std::string& out_dir) {
            ExperimentConfig cfg = ExperimentConfig::from_file(config_path);
            if (!out_dir.empty()) cfg.out_dir = out_dir;
            RunProducts run = run_single(cfg);
            py::dict out;
            out["epsilon"] = run.epsilon;
            out["snapshots"] = run.reports.size();
            out["mass_drift"] = run.mass_drift;
            std::vector<double> t, rel;
            for (const EntropyReport& r : run.reports) {
                t.push_back(r.t);
                rel.push_back(r.rel_entropy);
            }
            out["t"] = to_array(t);
            out["rel_entropy"] = to_array(rel);
            return out;
        },
        py::arg("config_path"), py::arg("out_dir") = "");

    m.def(
        "verify_single",
        [](const std::string& config_path, const std::string& out_dir) {
            ExperimentConfig cfg = ExperimentConfig::from_file(config_path);
            if (!out_dir.empty()) cfg.out_dir = out_dir;
            const RunProducts run = run_single(cfg);
            const Ledger ledger = verify_inequalities(run, TolerancePolicy{});
            return py::make_tuple(ledger.all_hard_pass(), ledger.to_text());
        },
        py::arg("config_path"), py::arg("out_dir") = "");

    m.def(
        "run_sweep",
        [](const std::string& config_path, const std::string& out_dir) {
            ExperimentConfig cfg = ExperimentConfig::from_file(config_path);
            if (!out_dir.empty()) cfg.out_dir = out_dir;
            SweepResult sweep = run_sweep(cfg);
            py::dict out;
            std::vector<double> eps, err;
            for (const SweepEntry& e : sweep.entries) {
                eps.push_back(e.epsilon);
                err.push_back(e.error);
            }
            out["epsilon"] = to_array(eps);
            out["error"] = to_array(err);
            out["slope"] = sweep.fit.slope;
            out["max_residual"] = sweep.fit.max_residual;
            out["all_pass"] = sweep.ledger.all_hard_pass();
            return out;
        },
        py::arg("config_path"), py::arg("out_dir") = "");
}
