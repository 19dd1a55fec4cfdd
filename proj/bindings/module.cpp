#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spdeht/decision.hpp"
#include "spdeht/montecarlo.hpp"
#include "spdeht/normal.hpp"
#include "spdeht/ou_sim.hpp"
#include "spdeht/rng.hpp"
#include "spdeht/sld.hpp"
#include "spdeht/spectral.hpp"
#include "spdeht/stats.hpp"

namespace py = pybind11;
using namespace spdeht;

PYBIND11_MODULE(_core, m) {
  m.doc() = "hypothesis tests for the drift of a stochastic fractional heat equation";

  py::class_<SpectralBasis>(m, "SpectralBasis")
      .def_readonly("lambdas", &SpectralBasis::lambdas)
      .def_readonly("beta", &SpectralBasis::beta)
      .def_readonly("gamma", &SpectralBasis::gamma)
      .def_readonly("dim", &SpectralBasis::dim)
      .def_readonly("varpi", &SpectralBasis::varpi)
      .def_property_readonly("n_modes", &SpectralBasis::n_modes);

  m.def(
      "make_interval_basis",
      [](double length, std::size_t n_modes, double beta, double gamma) {
        return make_basis(ExactInterval1D{length}, n_modes, beta, gamma);
      },
      py::arg("length"), py::arg("n_modes"), py::arg("beta"), py::arg("gamma"));
  m.def(
      "make_powerlaw_basis",
      [](double varpi, int dim, std::size_t n_modes, double beta, double gamma) {
        return make_basis(PowerLaw{varpi, dim}, n_modes, beta, gamma);
      },
      py::arg("varpi"), py::arg("dim"), py::arg("n_modes"), py::arg("beta"),
      py::arg("gamma"));
  m.def("spectral_sum_M", &spectral_sum_M, py::arg("basis"));

  m.def("normal_cdf", &normal_cdf, py::arg("x"));
  m.def("normal_pdf", &normal_pdf, py::arg("x"));
  m.def("normal_quantile", &normal_quantile, py::arg("p"));
  m.def("normal_draw", &normal_draw, py::arg("seed"), py::arg("mode"), py::arg("step"));

  py::class_<ModelSpec>(m, "ModelSpec")
      .def(py::init<double, double, SpectralBasis, double, int>(), py::arg("theta"),
           py::arg("sigma"), py::arg("basis"), py::arg("horizon"),
           py::arg("steps_per_unit") = 100)
      .def_readonly("theta", &ModelSpec::theta)
      .def_readonly("sigma", &ModelSpec::sigma)
      .def_readonly("basis", &ModelSpec::basis)
      .def_readonly("horizon", &ModelSpec::horizon)
      .def_readonly("steps_per_unit", &ModelSpec::steps_per_unit)
      .def_property_readonly("n_steps", &ModelSpec::n_steps);

  py::class_<ModeTrajectories>(m, "ModeTrajectories")
      .def_readonly("grid", &ModeTrajectories::grid)
      .def_readonly("values", &ModeTrajectories::values)
      .def_readonly("seed", &ModeTrajectories::seed);

  m.def("simulate", &simulate, py::arg("spec"), py::arg("seed"));

  py::class_<SufficientStats>(m, "SufficientStats")
      .def_readonly("terminal_sq", &SufficientStats::terminal_sq)
      .def_readonly("int_u_sq", &SufficientStats::int_u_sq)
      .def_readonly("basis", &SufficientStats::basis)
      .def_readonly("sigma", &SufficientStats::sigma)
      .def_readonly("horizon", &SufficientStats::horizon);

  m.def("sufficient_stats", &sufficient_stats, py::arg("trajectories"));
  m.def("simulate_stats", &simulate_stats, py::arg("spec"), py::arg("seed"));
  m.def("mle", &mle, py::arg("stats"));

  py::class_<HypothesisPair>(m, "HypothesisPair")
      .def(py::init<double, double>(), py::arg("theta0"), py::arg("theta1"))
      .def_readonly("theta0", &HypothesisPair::theta0)
      .def_readonly("theta1", &HypothesisPair::theta1);

  py::enum_<Regime>(m, "Regime")
      .value("LARGE_T", Regime::LargeT)
      .value("LARGE_N", Regime::LargeN);

  m.def("log_likelihood_ratio", &log_likelihood_ratio, py::arg("stats"), py::arg("hyp"));
  m.def("estimator_error_standardized", &estimator_error_standardized, py::arg("stats"),
        py::arg("true_theta"), py::arg("regime"));

  py::class_<SldContext>(m, "SldContext")
      .def_readonly("sigma", &SldContext::sigma)
      .def_readonly("horizon", &SldContext::horizon)
      .def_readonly("M", &SldContext::M);
  m.def("make_sld_context", &make_sld_context, py::arg("hyp"), py::arg("basis"),
        py::arg("sigma"), py::arg("horizon"));

  py::class_<SaddlePoint>(m, "SaddlePoint")
      .def_readonly("eta", &SaddlePoint::eta)
      .def_readonly("epsilon", &SaddlePoint::epsilon)
      .def_readonly("variance", &SaddlePoint::variance);

  py::class_<OuDecomposition>(m, "OuDecomposition")
      .def_readonly("L", &OuDecomposition::L)
      .def_readonly("H", &OuDecomposition::H)
      .def_readonly("R", &OuDecomposition::R);

  py::class_<NtildeDecomposition>(m, "NtildeDecomposition")
      .def_readonly("Ltilde", &NtildeDecomposition::Ltilde)
      .def_readonly("Htilde", &NtildeDecomposition::Htilde)
      .def_readonly("Rtilde", &NtildeDecomposition::Rtilde);

  m.def("eps_lower", &eps_lower, py::arg("hyp"));
  m.def("cgf_logL", &cgf_logL, py::arg("ctx"), py::arg("eps"));
  m.def("c_limit", &c_limit, py::arg("hyp"), py::arg("M"), py::arg("eps"));
  m.def("rate_I", &rate_I, py::arg("hyp"), py::arg("M"), py::arg("eta"));
  m.def("ou_decomposition", &ou_decomposition, py::arg("a"), py::arg("b"),
        py::arg("theta"), py::arg("sigma"), py::arg("T"));
  m.def("saddle_T", &saddle_T, py::arg("ctx"), py::arg("eta"));
  m.def("saddle_N", &saddle_N, py::arg("hyp"), py::arg("T"), py::arg("eta"));
  m.def("log_a_T", &log_a_T, py::arg("ctx"), py::arg("eta"));
  m.def("alpha1_T", &alpha1_T, py::arg("hyp"), py::arg("n_modes"), py::arg("M"),
        py::arg("alpha"), py::arg("delta"));
  m.def("phi1_phi2", &phi1_phi2, py::arg("hyp"), py::arg("basis"), py::arg("T"),
        py::arg("delta"), py::arg("x"));
  m.def("alpha1_N", &alpha1_N, py::arg("hyp"), py::arg("basis"), py::arg("T"),
        py::arg("alpha"), py::arg("delta"), py::arg("varpi"), py::arg("beta"),
        py::arg("dim"));
  m.def("ntilde_decomposition", &ntilde_decomposition, py::arg("hyp"), py::arg("basis"),
        py::arg("T"), py::arg("eps"));
  m.def("log_a_N", &log_a_N, py::arg("hyp"), py::arg("basis"), py::arg("T"),
        py::arg("eta"));

  py::class_<TestSpec>(m, "TestSpec")
      .def(py::init<Regime, double, double, HypothesisPair, double>(), py::arg("regime"),
           py::arg("alpha"), py::arg("delta"), py::arg("hyp"),
           py::arg("log_threshold_offset") = 0.0)
      .def_readonly("regime", &TestSpec::regime)
      .def_readonly("alpha", &TestSpec::alpha)
      .def_readonly("delta", &TestSpec::delta)
      .def_readonly("hyp", &TestSpec::hyp)
      .def_readonly("log_threshold_offset", &TestSpec::log_threshold_offset);

  py::class_<TestOutcome>(m, "TestOutcome")
      .def_readonly("statistic", &TestOutcome::statistic)
      .def_readonly("threshold", &TestOutcome::threshold)
      .def_readonly("reject", &TestOutcome::reject)
      .def_readonly("log_lr", &TestOutcome::log_lr)
      .def_readonly("log_threshold_lr", &TestOutcome::log_threshold_lr);

  m.def("log_threshold_T", &log_threshold_T, py::arg("test"), py::arg("M"), py::arg("T"));
  m.def("statistic_I_T", &statistic_I_T, py::arg("log_lr"), py::arg("hyp"), py::arg("M"),
        py::arg("T"));
  m.def("log_threshold_N", &log_threshold_N, py::arg("test"), py::arg("basis"),
        py::arg("T"));
  m.def("statistic_S_N", &statistic_S_N, py::arg("log_lr"), py::arg("hyp"), py::arg("M"),
        py::arg("n_modes"), py::arg("T"));
  m.def("decide", &decide, py::arg("test"), py::arg("stats"));

  py::class_<McPlan>(m, "McPlan")
      .def(py::init([](ModelSpec spec, TestSpec test, std::size_t replicates,
                       std::uint64_t base_seed, std::vector<double> sweep) {
             return McPlan{std::move(spec), std::move(test), replicates, base_seed,
                           std::move(sweep)};
           }),
           py::arg("spec"), py::arg("test"), py::arg("replicates"), py::arg("base_seed"),
           py::arg("sweep") = std::vector<double>{})
      .def_readonly("replicates", &McPlan::replicates)
      .def_readonly("base_seed", &McPlan::base_seed)
      .def_readonly("sweep", &McPlan::sweep);

  py::class_<McPoint>(m, "McPoint")
      .def_readonly("param", &McPoint::param)
      .def_readonly("estimate", &McPoint::estimate)
      .def_readonly("standard_error", &McPoint::standard_error)
      .def_readonly("extra", &McPoint::extra);

  py::class_<McReport>(m, "McReport").def_readonly("points", &McReport::points);

  py::enum_<Under>(m, "Under")
      .value("NULL_HYPOTHESIS", Under::Null)
      .value("ALTERNATIVE", Under::Alternative);

  m.def("estimate_error_rate", &estimate_error_rate, py::arg("plan"), py::arg("under"));
  m.def("normality_check", &normality_check, py::arg("plan"), py::arg("regime"));
  m.def("cgf_check", &cgf_check, py::arg("ctx"), py::arg("eps_list"),
        py::arg("replicates"), py::arg("seed"));
  m.def("typeII_slope_check", &typeII_slope_check, py::arg("plan"));
  m.def(
      "sld_typeII_check",
      [](const McPlan& plan) { return sld_typeII_check(plan); }, py::arg("plan"));
  m.def("compare_tests", &compare_tests, py::arg("plan_a"), py::arg("plan_b"));
}
