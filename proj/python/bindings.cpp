// python surface over the runner: config parsing, sweeps, single evaluations

#include "mqc/runner.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace mqc;

PYBIND11_MODULE(pymqc, m) {
  m.doc() = "Magnus-expansion leakage-correction toolkit";
  m.attr("__version__") = kToolVersion;

  py::class_<SweepRecord>(m, "SweepRecord")
      .def_readonly("param", &SweepRecord::param)
      .def_readonly("infidelity", &SweepRecord::infidelity)
      .def_readonly("max_amp", &SweepRecord::max_amp)
      .def_readonly("certificate", &SweepRecord::certificate)
      .def_readonly("ok", &SweepRecord::ok)
      .def_readonly("error", &SweepRecord::error);

  py::class_<RunConfig>(m, "RunConfig")
      .def_property_readonly("model", [](const RunConfig& c) { return to_string(c.model); })
      .def_property_readonly("strategies",
                             [](const RunConfig& c) {
                               std::vector<std::string> out;
                               for (auto s : c.strategies) out.push_back(to_string(s));
                               return out;
                             })
      .def_readonly("sweep_param", &RunConfig::sweep_param)
      .def_readonly("grid", &RunConfig::grid)
      .def_readonly("tol", &RunConfig::tol);

  m.def("parse_config", &parse_config_text, py::arg("text"),
        "parse a flat key/value config with [run] / [model] sections");
  m.def(
      "evaluate_infidelity",
      [](const RunConfig& cfg, const std::string& strategy, double value) {
        return evaluate_infidelity(cfg, strategy_from_string(strategy), value);
      },
      py::arg("config"), py::arg("strategy"), py::arg("value"));
  m.def("run_sweep", &run_sweep, py::arg("config"), py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def("sweep_csv", &sweep_csv, py::arg("config"), py::arg("records"));
  m.def(
      "pulses_csv",
      [](const RunConfig& cfg, const std::string& strategy, double value, int n) {
        return pulses_csv(cfg, strategy_from_string(strategy), value, n);
      },
      py::arg("config"), py::arg("strategy"), py::arg("value"), py::arg("n_samples") = 401);
}
