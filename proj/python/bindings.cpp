#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cfcnopa/entanglement_criteria.hpp"
#include "cfcnopa/errors.hpp"
#include "cfcnopa/feedback_network.hpp"
#include "cfcnopa/nopa_transfer.hpp"
#include "cfcnopa/params.hpp"
#include "cfcnopa/sweep_optimize.hpp"

namespace py = pybind11;
using namespace cfcnopa;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Coherent-feedback NOPA multipartite entanglement simulator";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidParameter>(m, "InvalidParameter", base.ptr());
  py::register_exception<ThresholdReached>(m, "ThresholdReached", base.ptr());
  py::register_exception<LoopUnstable>(m, "LoopUnstable", base.ptr());
  py::register_exception<SingularSystem>(m, "SingularSystem", base.ptr());
  py::register_exception<MismatchedContext>(m, "MismatchedContext", base.ptr());
  py::register_exception<EmptyResult>(m, "EmptyResult", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());

  py::enum_<PumpNormalization>(m, "PumpNormalization")
      .value("PAIR_THRESHOLD", PumpNormalization::kPairThreshold)
      .value("COLLECTIVE_THRESHOLD", PumpNormalization::kCollectiveThreshold);

  py::enum_<Combination>(m, "Combination")
      .value("AMPLITUDE_DIFFERENCE", Combination::kAmplitudeDifference)
      .value("PHASE_SUM", Combination::kPhaseSum)
      .value("AMPLITUDE_SUM", Combination::kAmplitudeSum)
      .value("PHASE_DIFFERENCE", Combination::kPhaseDifference);

  py::enum_<SweepAxis>(m, "SweepAxis")
      .value("T", SweepAxis::kTransmissivity)
      .value("FREQ_HZ", SweepAxis::kFrequencyHz)
      .value("BETA", SweepAxis::kBeta);

  py::class_<NopaParams>(m, "NopaParams")
      .def(py::init([](double gamma1, double gamma2, double tau, int n_modes, double beta,
                       PumpNormalization normalization) {
             NopaParams p{gamma1, gamma2, tau, n_modes, beta, normalization};
             p.validate();
             return p;
           }),
           py::arg("gamma1") = 0.1, py::arg("gamma2") = 0.003, py::arg("tau") = 6.7e-10, py::arg("n_modes") = 4,
           py::arg("beta") = 0.15, py::arg("normalization") = PumpNormalization::kPairThreshold)
      .def_readwrite("gamma1", &NopaParams::gamma1)
      .def_readwrite("gamma2", &NopaParams::gamma2)
      .def_readwrite("tau", &NopaParams::tau)
      .def_readwrite("n_modes", &NopaParams::n_modes)
      .def_readwrite("beta", &NopaParams::beta)
      .def_readwrite("normalization", &NopaParams::normalization)
      .def("validate", &NopaParams::validate);

  py::class_<LoopParams>(m, "LoopParams")
      .def(py::init([](double t, double l) {
             LoopParams p{t, l};
             p.validate();
             return p;
           }),
           py::arg("t") = 0.0, py::arg("l") = 0.01)
      .def_readwrite("t", &LoopParams::t)
      .def_readwrite("l", &LoopParams::l)
      .def_property_readonly("r", &LoopParams::r)
      .def_property_readonly("s", &LoopParams::s);

  py::class_<AnalysisPoint>(m, "AnalysisPoint")
      .def_static("from_hz", &AnalysisPoint::from_hz, py::arg("freq_hz"))
      .def_property_readonly("freq_hz", &AnalysisPoint::freq_hz)
      .def_property_readonly("omega", &AnalysisPoint::omega);

  py::class_<OperatingPoint>(m, "OperatingPoint")
      .def(py::init([](NopaParams nopa, LoopParams loop, AnalysisPoint at) { return OperatingPoint{nopa, loop, at}; }),
           py::arg("nopa") = NopaParams{}, py::arg("loop") = LoopParams{},
           py::arg("at") = AnalysisPoint::from_hz(1.0e6))
      .def_readwrite("nopa", &OperatingPoint::nopa)
      .def_readwrite("loop", &OperatingPoint::loop)
      .def_readwrite("at", &OperatingPoint::at);

  py::class_<Transfer>(m, "Transfer")
      .def_readonly("m", &Transfer::m)
      .def_readonly("n", &Transfer::n)
      .def("noise_gain", &Transfer::noise_gain);

  py::class_<TransferSet>(m, "TransferSet")
      .def_readonly("x_diff", &TransferSet::x_diff)
      .def_readonly("y_sum", &TransferSet::y_sum)
      .def_readonly("x_sum", &TransferSet::x_sum)
      .def_readonly("y_diff", &TransferSet::y_diff)
      .def("__getitem__", [](const TransferSet& ts, Combination c) { return ts[c]; });

  py::class_<VarianceReport>(m, "VarianceReport")
      .def_readonly("n_modes", &VarianceReport::n_modes)
      .def_readonly("v_xdiff", &VarianceReport::v_xdiff)
      .def_readonly("v_ysum", &VarianceReport::v_ysum)
      .def_readonly("v_xsum", &VarianceReport::v_xsum)
      .def_readonly("v_ydiff", &VarianceReport::v_ydiff)
      .def_readonly("combined_squeezed", &VarianceReport::combined_squeezed)
      .def_readonly("combined_antisqueezed", &VarianceReport::combined_antisqueezed)
      .def_readonly("vacuum_reference", &VarianceReport::vacuum_reference)
      .def_readonly("criterion_bound", &VarianceReport::criterion_bound)
      .def_property_readonly("stable", &VarianceReport::stable);

  py::class_<LoopAmplitudes>(m, "LoopAmplitudes")
      .def_readonly("coeff_c", &LoopAmplitudes::coeff_c)
      .def_readonly("coeff_b", &LoopAmplitudes::coeff_b)
      .def_readonly("coeff_e", &LoopAmplitudes::coeff_e)
      .def_readonly("combination", &LoopAmplitudes::combination);

  py::class_<CriterionVerdict>(m, "CriterionVerdict")
      .def_readonly("value", &CriterionVerdict::value)
      .def_readonly("bound", &CriterionVerdict::bound)
      .def_property_readonly("form", [](const CriterionVerdict& v) { return std::string(to_string(v.form)); })
      .def_readonly("entangled", &CriterionVerdict::entangled)
      .def_readonly("enhanced_vs_bare", &CriterionVerdict::enhanced_vs_bare);

  py::class_<CriterionVerdicts>(m, "CriterionVerdicts")
      .def_readonly("squeezed", &CriterionVerdicts::squeezed)
      .def_readonly("antisqueezed", &CriterionVerdicts::antisqueezed);

  py::class_<Optimum>(m, "Optimum")
      .def_readonly("axis_value", &Optimum::axis_value)
      .def_readonly("value", &Optimum::value);

  py::class_<SweepSpec>(m, "SweepSpec")
      .def(py::init([](SweepAxis axis, double from_value, double to_value, int points, OperatingPoint fixed,
                       unsigned threads) { return SweepSpec{axis, from_value, to_value, points, fixed, threads}; }),
           py::arg("axis"), py::arg("from_value"), py::arg("to_value"), py::arg("points") = 501,
           py::arg("fixed") = OperatingPoint{}, py::arg("threads") = 0u)
      .def_readwrite("axis", &SweepSpec::axis)
      .def_readwrite("from_value", &SweepSpec::from_value)
      .def_readwrite("to_value", &SweepSpec::to_value)
      .def_readwrite("points", &SweepSpec::points)
      .def_readwrite("fixed", &SweepSpec::fixed)
      .def_readwrite("threads", &SweepSpec::threads);

  py::class_<SweepResult>(m, "SweepResult")
      .def_readonly("axis_values", &SweepResult::axis_values)
      .def_readonly("cfc_values", &SweepResult::cfc_values)
      .def_readonly("bare_values", &SweepResult::bare_values)
      .def_readonly("stable", &SweepResult::stable)
      .def_readonly("crossovers", &SweepResult::crossovers)
      .def_readonly("optimum", &SweepResult::optimum);

  py::class_<OptimizeResult>(m, "OptimizeResult")
      .def_readonly("best", &OptimizeResult::best)
      .def_readonly("value", &OptimizeResult::value)
      .def_readonly("stable", &OptimizeResult::stable);

  m.def("coupling_from_beta", &coupling_from_beta, py::arg("params"));
  m.def("bare_threshold_beta", &bare_threshold_beta, py::arg("params"));
  m.def("transfer_coefficients", &transfer_coefficients, py::arg("params"), py::arg("at"));
  m.def("langevin_oracle", &langevin_oracle, py::arg("params"), py::arg("at"));
  m.def("nopa_only_variances", &nopa_only_variances, py::arg("params"), py::arg("at"));
  m.def("closed_loop_amplitudes", &closed_loop_amplitudes, py::arg("m"), py::arg("n"), py::arg("loop"),
        py::arg("combination") = Combination::kAmplitudeDifference);
  m.def("cfc_variance", &cfc_variance, py::arg("params"), py::arg("loop"), py::arg("at"));
  m.def(
      "network_oracle",
      [](const NopaParams& p, const LoopParams& l, AnalysisPoint at) { return network_oracle(p, l, at); },
      py::arg("params"), py::arg("loop"), py::arg("at"));
  m.def("modified_threshold", &modified_threshold, py::arg("params"), py::arg("loop"));
  m.def("vlf_check", &vlf_check, py::arg("report"), py::arg("bare"));
  m.def("run_sweep", &run_sweep, py::arg("spec"), py::call_guard<py::gil_scoped_release>());
  m.def(
      "optimize_joint",
      [](const OperatingPoint& fixed, bool free_t, bool free_beta, bool require_stable) {
        OptimizeSpec spec;
        spec.fixed = fixed;
        spec.free_t = free_t;
        spec.free_beta = free_beta;
        spec.require_stable = require_stable;
        return optimize_joint(spec);
      },
      py::arg("fixed"), py::arg("free_t") = true, py::arg("free_beta") = false, py::arg("require_stable") = false,
      py::call_guard<py::gil_scoped_release>());
}
