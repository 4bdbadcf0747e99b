// Copyright 2026 The excitonfb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "excitonfb/config.hpp"
#include "excitonfb/dynamics.hpp"
#include "excitonfb/errors.hpp"
#include "excitonfb/experiments.hpp"
#include "excitonfb/hilbert.hpp"
#include "excitonfb/model.hpp"
#include "excitonfb/observables.hpp"
#include "excitonfb/output.hpp"
#include "excitonfb/verify.hpp"

namespace py = pybind11;
using namespace excitonfb;

namespace {

using release = py::call_guard<py::gil_scoped_release>;

struct SteadyStateView {
    Eigen::MatrixXcd rho;
    double residual_norm;
    double min_eigenvalue;
    double rcond;
};

SteadyStateView solve(const ChainModel& model) {
    const SteadyState ss = steady_state(build_model_liouvillian(model));
    return {ss.rho.entries(), ss.residual_norm, ss.min_eigenvalue, ss.rcond};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exciton conductance of molecular chains in a lossy cavity, with quantum-jump feedback";
    m.attr("__version__") = EXCITONFB_VERSION;

    py::register_exception<DegenerateSteadyState>(m, "DegenerateSteadyState", PyExc_RuntimeError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
    py::register_exception<NumericalInconsistency>(m, "NumericalInconsistency", PyExc_RuntimeError);
    py::register_exception<NoCrossover>(m, "NoCrossover", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::enum_<Channel>(m, "Channel")
        .value("FULL", Channel::Full)
        .value("WC", Channel::WeakCoupling)
        .value("NH", Channel::NoHopping);

    py::enum_<SweepParameter>(m, "SweepParameter")
        .value("OMEGA_RABI", SweepParameter::OmegaRabi)
        .value("N_MOLECULES", SweepParameter::NMolecules)
        .value("LAMBDA", SweepParameter::Lambda)
        .value("ETA", SweepParameter::Eta)
        .value("FEEDBACK_TARGET", SweepParameter::FeedbackTarget)
        .value("DISORDER_Q", SweepParameter::DisorderQ);

    py::class_<ExcitationBasis>(m, "ExcitationBasis")
        .def(py::init<std::size_t>(), py::arg("n_molecules"))
        .def_property_readonly("n_molecules", &ExcitationBasis::n_molecules)
        .def_property_readonly("dim", &ExcitationBasis::dim)
        .def_property_readonly("photon", &ExcitationBasis::photon)
        .def("molecule", &ExcitationBasis::molecule, py::arg("m"));

    py::class_<FeedbackSettings>(m, "FeedbackSettings")
        .def(py::init<>())
        .def_readwrite("enabled", &FeedbackSettings::enabled)
        .def_readwrite("target", &FeedbackSettings::target)
        .def_readwrite("lambda_", &FeedbackSettings::lambda)
        .def_readwrite("eta", &FeedbackSettings::eta);

    py::class_<ChainModel>(m, "ChainModel")
        .def(py::init([](std::size_t n, double omega_rabi) { return make_chain_model(n, omega_rabi); }),
             py::arg("n_molecules"), py::arg("omega_rabi") = 1.0)
        .def_readonly("n_molecules", &ChainModel::n_molecules)
        .def_readwrite("omega_cavity", &ChainModel::omega_cavity)
        .def_readwrite("zero_detuning", &ChainModel::zero_detuning)
        .def_readwrite("omega_reference", &ChainModel::omega_reference)
        .def_readwrite("omega_molecule", &ChainModel::omega_molecule)
        .def_readwrite("g", &ChainModel::g)
        .def_readwrite("spacing_nm", &ChainModel::spacing_nm)
        .def_readwrite("dipole_debye", &ChainModel::dipole_debye)
        .def_readwrite("dipole_orientation", &ChainModel::dipole_orientation)
        .def_readwrite("gamma_r", &ChainModel::gamma_r)
        .def_readwrite("gamma_nr", &ChainModel::gamma_nr)
        .def_readwrite("gamma_phi", &ChainModel::gamma_phi)
        .def_readwrite("kappa", &ChainModel::kappa)
        .def_readwrite("gamma_p", &ChainModel::gamma_p)
        .def_readwrite("hopping_enabled", &ChainModel::hopping_enabled)
        .def_readwrite("cavity_coupling_enabled", &ChainModel::cavity_coupling_enabled)
        .def_readwrite("nearest_neighbor_only", &ChainModel::nearest_neighbor_only)
        .def_readwrite("delta_override", &ChainModel::delta_override)
        .def_readwrite("feedback", &ChainModel::feedback)
        .def_property_readonly("gamma_d", &ChainModel::gamma_d)
        .def_property_readonly("omega_rabi", [](const ChainModel& c) { return collective_rabi(c.g); })
        .def("validate", &ChainModel::validate)
        .def("resized", &resized, py::arg("n_molecules"), py::arg("omega_rabi"))
        .def("with_rabi", &with_rabi, py::arg("omega_rabi"))
        .def("__copy__", [](const ChainModel& c) { return c; });

    m.def("dipole_coupling", &dipole_coupling, py::arg("model"), py::arg("m"), py::arg("n"));
    m.def("hopping_matrix", &hopping_matrix, py::arg("model"));
    m.def("collective_rabi", [](const std::vector<cplx>& g) { return collective_rabi(g); }, py::arg("g"));
    m.def("uniform_g_for_rabi", &uniform_g_for_rabi, py::arg("omega_rabi"), py::arg("n_molecules"));
    m.def("detuning_shift", &detuning_shift, py::arg("model"));
    m.def("cavity_energy", &cavity_energy, py::arg("model"));
    m.def("sample_disorder", &sample_disorder, py::arg("p"), py::arg("q"), py::arg("n_molecules"),
          py::arg("fix_ends"), py::arg("seed"));

    m.def("hamiltonian", [](const ChainModel& c) { return build_hamiltonian(c).entries(); }, py::arg("model"));
    m.def("liouvillian", [](const ChainModel& c) { return build_model_liouvillian(c).entries(); }, py::arg("model"),
          release());
    m.def("feedback_unitary",
          [](std::size_t n, std::size_t target, double lambda) {
              return feedback_unitary(ExcitationBasis(n), target, lambda).entries();
          },
          py::arg("n_molecules"), py::arg("target"), py::arg("lambda_"));

    py::class_<SteadyStateView>(m, "SteadyState")
        .def_readonly("rho", &SteadyStateView::rho)
        .def_readonly("residual_norm", &SteadyStateView::residual_norm)
        .def_readonly("min_eigenvalue", &SteadyStateView::min_eigenvalue)
        .def_readonly("rcond", &SteadyStateView::rcond);
    m.def("steady_state", &solve, py::arg("model"), release());

    py::class_<ConductanceResult>(m, "ConductanceResult")
        .def_readonly("sigma_e", &ConductanceResult::sigma_e)
        .def_readonly("raw_value", &ConductanceResult::raw_value)
        .def_readonly("channel", &ConductanceResult::channel)
        .def("__repr__", [](const ConductanceResult& r) {
            return "ConductanceResult(channel=" + std::string(channel_name(r.channel)) +
                   ", sigma_e=" + std::to_string(r.sigma_e) + ")";
        });
    m.def("conductance", [](const ChainModel& c, Channel ch) { return conductance(c, ch); }, py::arg("model"),
          py::arg("channel") = Channel::Full, release());
    m.def("channel_conductances",
          [](const ChainModel& c, const std::vector<Channel>& chs) { return channel_conductances(c, chs); },
          py::arg("model"), py::arg("channels") = std::vector{Channel::Full, Channel::WeakCoupling, Channel::NoHopping},
          release());

    py::class_<EnsembleStat>(m, "EnsembleStat")
        .def_readonly("mean", &EnsembleStat::mean)
        .def_readonly("std_error", &EnsembleStat::std_error)
        .def_readonly("count", &EnsembleStat::count);
    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("series", &SweepRow::series)
        .def_readonly("x", &SweepRow::x)
        .def_readonly("channel", &SweepRow::channel)
        .def_readonly("stat", &SweepRow::stat)
        .def_readonly("status", &SweepRow::status)
        .def_property_readonly("ok", &SweepRow::ok);
    py::class_<SweepTable>(m, "SweepTable")
        .def_readonly("parameter", &SweepTable::parameter)
        .def_readonly("ensemble", &SweepTable::ensemble)
        .def_readonly("rows", &SweepTable::rows)
        .def("select", &SweepTable::select, py::arg("channel"), py::arg("series") = "")
        .def("to_csv", [](const SweepTable& t) { return format_csv(t); })
        .def_static("from_csv", &parse_csv, py::arg("text"))
        .def("to_svg",
             [](const SweepTable& t, const std::string& title, bool log_y) {
                 PlotSpec spec;
                 spec.title = title;
                 spec.log_y = log_y;
                 return render_svg(t, spec);
             },
             py::arg("title") = "", py::arg("log_y") = false);

    m.def("run_sweep",
          [](const ChainModel& base, SweepParameter parameter, std::vector<double> grid, std::vector<Channel> channels,
             std::size_t ensemble, std::uint64_t seed, std::optional<double> disorder_q, bool fix_ends,
             std::size_t workers) {
              SweepSpec spec;
              spec.base = base;
              spec.parameter = parameter;
              spec.grid = std::move(grid);
              spec.channels = std::move(channels);
              spec.ensemble = ensemble;
              spec.seed = seed;
              if (disorder_q) spec.disorder = {.enabled = true, .q = *disorder_q, .fix_ends = fix_ends};
              spec.workers = workers;
              return run_sweep(spec);
          },
          py::arg("model"), py::arg("parameter"), py::arg("grid"), py::arg("channels") = std::vector{Channel::Full},
          py::arg("ensemble") = 1, py::arg("seed") = 0, py::arg("disorder_q") = py::none(),
          py::arg("fix_ends") = true, py::arg("workers") = 0, release());

    py::class_<CrossoverResult>(m, "CrossoverResult")
        .def_readonly("n_star", &CrossoverResult::n_star)
        .def_readonly("omega_rabi", &CrossoverResult::omega_rabi)
        .def_readonly("n", &CrossoverResult::n)
        .def_readonly("sigma_nh", &CrossoverResult::sigma_nh)
        .def_readonly("sigma_wc", &CrossoverResult::sigma_wc)
        .def_readonly("sign_changes", &CrossoverResult::sign_changes);
    m.def("find_crossover", &find_crossover, py::arg("model"), py::arg("n_min") = 5, py::arg("n_max") = 40,
          py::arg("omega_rabi") = 1.0, py::arg("workers") = 0, release());

    m.def("disorder_study",
          [](const ChainModel& c, double q, std::size_t ensemble, std::uint64_t seed, const std::vector<double>& grid,
             std::size_t workers) { return disorder_study(c, q, ensemble, seed, grid, workers); },
          py::arg("model"), py::arg("q") = defaults::disorder_q, py::arg("ensemble") = 100, py::arg("seed") = 0,
          py::arg("omega_grid") = std::vector<double>{1.0}, py::arg("workers") = 0, release());

    py::class_<FeedbackStudy>(m, "FeedbackStudy")
        .def_readonly("by_target", &FeedbackStudy::by_target)
        .def_readonly("by_lambda", &FeedbackStudy::by_lambda)
        .def_readonly("by_eta", &FeedbackStudy::by_eta);
    m.def("feedback_study",
          [](const ChainModel& c, const std::vector<double>& targets, const std::vector<double>& lambdas,
             const std::vector<double>& etas, std::size_t workers) {
              return feedback_study(c, targets, lambdas, etas, workers);
          },
          py::arg("model"), py::arg("targets"), py::arg("lambda_grid"), py::arg("eta_grid"), py::arg("workers") = 0,
          release());

    m.def("linspace", &linspace, py::arg("first"), py::arg("last"), py::arg("count"));

    py::class_<RunConfig>(m, "RunConfig")
        .def_property_readonly("experiment", [](const RunConfig& c) { return std::string(experiment_name(c.experiment)); })
        .def_readonly("model", &RunConfig::model)
        .def_readonly("seed", &RunConfig::seed)
        .def_readonly("output_dir", &RunConfig::output_dir)
        .def_readonly("omega_grid", &RunConfig::omega_grid)
        .def("describe", &describe);
    m.def("parse_config", [](const std::string& text) { return parse_config(text); }, py::arg("text"));

    py::class_<CheckResult>(m, "CheckResult")
        .def_readonly("name", &CheckResult::name)
        .def_readonly("passed", &CheckResult::passed)
        .def_readonly("detail", &CheckResult::detail)
        .def_readonly("seconds", &CheckResult::seconds);
    m.def("verify", []() { return run_verification(); }, release());
}
