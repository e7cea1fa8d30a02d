// Python bindings for the coverage engines: scenario parameters, the
// distance laws, Monte Carlo estimation, and the analytic evaluator.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "riscov/analytic_cov.hpp"
#include "riscov/analytic_dist.hpp"
#include "riscov/config.hpp"
#include "riscov/sinr_mc.hpp"
#include "riscov/units.hpp"

namespace py = pybind11;
using namespace riscov;

PYBIND11_MODULE(riscov, m) {
    m.doc() = "RIS-assisted mmWave ISAC joint coverage: Monte Carlo and analytic engines";
    m.attr("__version__") = "0.1.0";

    py::enum_<BlockageMode>(m, "BlockageMode")
        .value("Thinning", BlockageMode::Thinning)
        .value("Explicit", BlockageMode::Explicit);
    py::enum_<BlockageLenMode>(m, "BlockageLenMode")
        .value("Deterministic", BlockageLenMode::Deterministic)
        .value("Uniform", BlockageLenMode::Uniform);
    py::enum_<GreedyTarget>(m, "GreedyTarget")
        .value("User", GreedyTarget::User)
        .value("Ris", GreedyTarget::Ris);

    py::class_<ScenarioParams>(m, "ScenarioParams")
        .def(py::init<>())
        .def_readwrite("lambda_b", &ScenarioParams::lambda_b)
        .def_readwrite("lambda_r", &ScenarioParams::lambda_r)
        .def_readwrite("lambda_l", &ScenarioParams::lambda_l)
        .def_readwrite("lambda_u", &ScenarioParams::lambda_u)
        .def_readwrite("mean_blockage_len", &ScenarioParams::mean_blockage_len)
        .def_readwrite("m_t", &ScenarioParams::m_t)
        .def_readwrite("m_r", &ScenarioParams::m_r)
        .def_readwrite("n_r", &ScenarioParams::n_r)
        .def_readwrite("m_t_side", &ScenarioParams::m_t_side)
        .def_readwrite("n_r_side", &ScenarioParams::n_r_side)
        .def_readwrite("c0", &ScenarioParams::c0)
        .def_readwrite("alpha", &ScenarioParams::alpha)
        .def_readwrite("rho_d", &ScenarioParams::rho_d)
        .def_readwrite("rho_v", &ScenarioParams::rho_v)
        .def_readwrite("rho_ds", &ScenarioParams::rho_ds)
        .def_readwrite("p_s", &ScenarioParams::p_s)
        .def_readwrite("sigma_c2", &ScenarioParams::sigma_c2)
        .def_readwrite("sigma_s2", &ScenarioParams::sigma_s2)
        .def_readwrite("bandwidth", &ScenarioParams::bandwidth)
        .def_readwrite("window_radius", &ScenarioParams::window_radius)
        .def_readwrite("blockage_mode", &ScenarioParams::blockage_mode)
        .def_readwrite("blockage_len_mode", &ScenarioParams::blockage_len_mode)
        .def_readwrite("greedy_target", &ScenarioParams::greedy_target)
        .def_readwrite("vlos_sensing_cascaded", &ScenarioParams::vlos_sensing_cascaded)
        .def_readwrite("xi1_intensity_at_bb", &ScenarioParams::xi1_intensity_at_bb)
        .def("beta", &ScenarioParams::beta)
        .def("n_r_pow_2_over_alpha", &ScenarioParams::n_r_pow_2_over_alpha)
        .def("validate", &ScenarioParams::validate)
        .def_static("defaults", &ScenarioParams::defaults);

    py::class_<DistanceDistribution>(m, "DistanceDistribution")
        .def("pdf", [](const DistanceDistribution& d, double x) { return d.pdf(x); })
        .def("cdf", [](const DistanceDistribution& d, double x) { return d.cdf(x); })
        .def_readonly("support_lo", &DistanceDistribution::support_lo)
        .def_readonly("support_hi", &DistanceDistribution::support_hi)
        .def_readonly("total_mass", &DistanceDistribution::total_mass);

    m.def("nearest_los_bs_dist", &nearest_los_bs_dist);
    m.def("nearest_vlos_bs_dist", &nearest_vlos_bs_dist);
    m.def("nearest_los_ris_dist", &nearest_los_ris_dist);
    m.def("cascaded_length_dist",
          [](const ScenarioParams& p) { return CascadedLengthDist(p).as_distribution(); },
          "Distribution of the shortest cascade product through the nearest LoS RIS");

    py::class_<AssociationProbabilities>(m, "AssociationProbabilities")
        .def_readonly("zeta_d", &AssociationProbabilities::zeta_d)
        .def_readonly("zeta_v", &AssociationProbabilities::zeta_v)
        .def_readonly("zbar_d", &AssociationProbabilities::zbar_d)
        .def_readonly("zbar_v", &AssociationProbabilities::zbar_v);
    m.def("association_probabilities",
          [](const ScenarioParams& p) { return analytic_association_split(p); });

    py::class_<CoverageResult>(m, "CoverageResult")
        .def_readonly("p_cs", &CoverageResult::p_cs)
        .def_readonly("ci_halfwidth", &CoverageResult::ci_halfwidth)
        .def_readonly("n_trials", &CoverageResult::n_trials)
        .def_readonly("n_direct", &CoverageResult::n_direct)
        .def_readonly("n_cascaded", &CoverageResult::n_cascaded)
        .def_readonly("n_none", &CoverageResult::n_none)
        .def_readonly("zeta_d_hat", &CoverageResult::zeta_d_hat)
        .def_readonly("zeta_v_hat", &CoverageResult::zeta_v_hat)
        .def_readonly("p_d_hat", &CoverageResult::p_d_hat)
        .def_readonly("p_v_hat", &CoverageResult::p_v_hat);
    m.def("estimate_coverage", &estimate_coverage, py::arg("params"), py::arg("eps1"),
          py::arg("eps2"), py::arg("n_trials"), py::arg("master_seed"),
          py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>());

    py::class_<RatePair>(m, "RatePair")
        .def_readonly("comm_rate", &RatePair::comm_rate)
        .def_readonly("comm_se", &RatePair::comm_se)
        .def_readonly("sens_rate", &RatePair::sens_rate)
        .def_readonly("sens_se", &RatePair::sens_se)
        .def_readonly("n_trials", &RatePair::n_trials);
    m.def("estimate_rate_pair", &estimate_rate_pair, py::arg("params"),
          py::arg("n_trials"), py::arg("master_seed"), py::arg("threads") = 1,
          py::call_guard<py::gil_scoped_release>());

    py::class_<DistanceSamples>(m, "DistanceSamples")
        .def_readonly("d0l", &DistanceSamples::d0l)
        .def_readonly("d0v", &DistanceSamples::d0v)
        .def_readonly("ris", &DistanceSamples::ris)
        .def_readonly("eta", &DistanceSamples::eta)
        .def_readonly("n_direct", &DistanceSamples::n_direct)
        .def_readonly("n_cascaded", &DistanceSamples::n_cascaded)
        .def_readonly("n_none", &DistanceSamples::n_none);
    m.def("sample_distances", &sample_distances, py::arg("params"), py::arg("n_trials"),
          py::arg("master_seed"), py::call_guard<py::gil_scoped_release>());

    py::class_<MarginalCoverage>(m, "MarginalCoverage")
        .def_readonly("p_cs", &MarginalCoverage::p_cs)
        .def_readonly("error_budget", &MarginalCoverage::error_budget)
        .def_readonly("direct_term", &MarginalCoverage::direct_term)
        .def_readonly("cascaded_term", &MarginalCoverage::cascaded_term)
        .def_readonly("zeta_d", &MarginalCoverage::zeta_d)
        .def_readonly("zeta_v", &MarginalCoverage::zeta_v)
        .def_readonly("cov_given_direct", &MarginalCoverage::cov_given_direct)
        .def_readonly("cov_given_cascaded", &MarginalCoverage::cov_given_cascaded)
        .def_readonly("evaluations", &MarginalCoverage::evaluations)
        .def_readonly("converged", &MarginalCoverage::converged);

    py::class_<CoverageEvaluator>(m, "CoverageEvaluator")
        .def(py::init([](const ScenarioParams& p, bool fast) {
                 return new CoverageEvaluator(p, fast ? CovTuning::fast() : CovTuning{});
             }),
             py::arg("params"), py::arg("fast") = false)
        .def("marginal_coverage", &CoverageEvaluator::marginal_coverage, py::arg("eps1"),
             py::arg("eps2"), py::call_guard<py::gil_scoped_release>())
        .def("coverage_given_los", &CoverageEvaluator::coverage_given_los,
             py::call_guard<py::gil_scoped_release>())
        .def("coverage_given_vlos", &CoverageEvaluator::coverage_given_vlos,
             py::call_guard<py::gil_scoped_release>())
        .def("xi1_los", &CoverageEvaluator::xi1_los)
        .def("gamma1_vlos", &CoverageEvaluator::gamma1_vlos)
        .def("xi2_los", &CoverageEvaluator::xi2_los)
        .def("gamma2_vlos", &CoverageEvaluator::gamma2_vlos)
        .def("association", &CoverageEvaluator::association,
             py::return_value_policy::reference_internal);

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("mode", &ExperimentConfig::mode)
        .def_readwrite("trials", &ExperimentConfig::trials)
        .def_readwrite("master_seed", &ExperimentConfig::master_seed)
        .def_readwrite("threads", &ExperimentConfig::threads)
        .def_readwrite("out_dir", &ExperimentConfig::out_dir)
        .def("scenario", &ExperimentConfig::scenario)
        .def("validate", &ExperimentConfig::validate)
        .def("__eq__", [](const ExperimentConfig& a, const ExperimentConfig& b) {
            return a == b;
        });
    m.def("parse_config", &parse_config);
    m.def("serialize_config", &serialize_config);

    m.def("db_to_linear", &db_to_linear);
    m.def("linear_to_db", &linear_to_db);
    m.def("dbm_to_watts", &dbm_to_watts);
}
