// Copyright 2026 The tamco Authors.
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


// Python bindings: tamco._core.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "tamco/core_model.h"
#include "tamco/oracle.h"
#include "tamco/report.h"
#include "tamco/scheduler.h"
#include "tamco/soc_format.h"
#include "tamco/wrapper_design.h"

namespace py = pybind11;
using namespace tamco;

namespace {

SocSpec parse_or_raise(const std::string& text) {
  ParseResult r = parse_soc_auto(text);
  if (!r.ok()) {
    std::string msg;
    for (const ParseDiagnostic& d : r.diagnostics) {
      if (d.severity == Severity::kError) msg += format_diagnostic(d) + "\n";
    }
    throw py::value_error(msg);
  }
  return *r.soc;
}

SchedulerOptions scheduler_options(const std::string& fit, double epsilon) {
  SchedulerOptions o;
  if (fit == "first-fit") {
    o.wrapper.fit = FitRule::kFirstFit;
  } else if (fit != "best-fit") {
    throw py::value_error("fit must be 'best-fit' or 'first-fit'");
  }
  o.epsilon = epsilon;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "SOC test wrapper design and TAM scheduling";
  m.attr("__version__") = kToolVersion;

  py::class_<CoreSpec>(m, "CoreSpec")
      .def(py::init<>())
      .def(py::init([](int id, std::string name, int inputs, int outputs,
                       int bidirs, std::int64_t patterns,
                       std::vector<std::int64_t> scan) {
             CoreSpec c{id, std::move(name), inputs, outputs, bidirs, patterns,
                        std::move(scan)};
             check_core(c);
             return c;
           }),
           py::arg("id"), py::arg("name"), py::arg("inputs"),
           py::arg("outputs"), py::arg("bidirs") = 0, py::arg("patterns") = 1,
           py::arg("scan") = std::vector<std::int64_t>{})
      .def_readwrite("id", &CoreSpec::id)
      .def_readwrite("name", &CoreSpec::name)
      .def_readwrite("inputs", &CoreSpec::num_inputs)
      .def_readwrite("outputs", &CoreSpec::num_outputs)
      .def_readwrite("bidirs", &CoreSpec::num_bidirs)
      .def_readwrite("patterns", &CoreSpec::num_patterns)
      .def_readwrite("scan", &CoreSpec::scan_chain_lengths)
      .def("total_scan_elements",
           [](const CoreSpec& c) { return c.total_scan_elements(); })
      .def("__eq__", [](const CoreSpec& a, const CoreSpec& b) { return a == b; })
      .def("__repr__", [](const CoreSpec& c) {
        return "<CoreSpec " + std::to_string(c.id) + " " + c.name + ">";
      });

  py::class_<SocSpec>(m, "SocSpec")
      .def(py::init<>())
      .def(py::init([](std::string name, std::vector<CoreSpec> cores) {
             SocSpec s{std::move(name), std::move(cores)};
             check_soc(s);
             return s;
           }),
           py::arg("name"), py::arg("cores"))
      .def_readwrite("name", &SocSpec::name)
      .def_readwrite("cores", &SocSpec::cores)
      .def("__eq__", [](const SocSpec& a, const SocSpec& b) { return a == b; });

  m.def("parse_soc", &parse_or_raise, py::arg("text"),
        "Parse canonical or ITC'02 text; raises ValueError on errors.");
  m.def("emit_canonical", &emit_canonical, py::arg("soc"));
  m.def("compute_test_time",
        [](std::int64_t p, std::int64_t si, std::int64_t so) {
          return compute_test_time(p, si, so).cycles;
        },
        py::arg("patterns"), py::arg("scan_in"), py::arg("scan_out"));

  py::class_<WrapperPlan>(m, "WrapperPlan")
      .def_readonly("core_id", &WrapperPlan::core_id)
      .def_readonly("w_max", &WrapperPlan::w_max)
      .def_readonly("direct_connect", &WrapperPlan::direct_connect)
      .def_readonly("tam_utilized", &WrapperPlan::tam_utilized)
      .def_readonly("scan_in", &WrapperPlan::scan_in)
      .def_readonly("scan_out", &WrapperPlan::scan_out)
      .def_property_readonly("longest_chain", &WrapperPlan::longest_chain)
      .def_property_readonly("test_time",
                             [](const WrapperPlan& p) { return p.test_time.cycles; })
      .def_property_readonly("chains", [](const WrapperPlan& p) {
        py::list out;
        for (const WrapperChain& c : p.chains) {
          out.append(py::make_tuple(c.internal_lengths, c.input_cells,
                                    c.output_cells));
        }
        return out;
      });

  m.def("design_wrapper",
        [](const CoreSpec& core, Width w, const std::string& fit) {
          return design_wrapper(core, w, scheduler_options(fit, 1e-9).wrapper);
        },
        py::arg("core"), py::arg("w_max"), py::arg("fit") = "best-fit");

  m.def("wrapper_table",
        [](const CoreSpec& core, Width w_max) {
          py::list rows;
          for (const WrapperBand& b : wrapper_table(core, w_max).rows) {
            py::dict row;
            row["width_lo"] = b.width_lo;
            row["width_hi"] = b.width_hi;
            row["tam_utilized"] = b.tam_utilized;
            row["longest_chain"] = b.longest_chain;
            row["test_time"] = b.test_time.cycles;
            rows.append(row);
          }
          return rows;
        },
        py::arg("core"), py::arg("w_max"));

  m.def("rectangle_heights",
        [](const CoreSpec& core, Width w_max) {
          std::vector<std::pair<Width, Cycles>> out;
          for (const TestRectangle& r : build_rectangle_set(core, w_max).rects) {
            out.emplace_back(r.height, r.width);
          }
          return out;
        },
        py::arg("core"), py::arg("w_max"),
        "(height, test time) pairs, tallest first.");

  py::class_<CoreSlot>(m, "CoreSlot")
      .def_readonly("core_id", &CoreSlot::core_id)
      .def_readonly("name", &CoreSlot::name)
      .def_readonly("width", &CoreSlot::width)
      .def_readonly("start", &CoreSlot::start)
      .def_readonly("finish", &CoreSlot::finish);

  py::class_<TestSchedule>(m, "TestSchedule")
      .def_readonly("soc", &TestSchedule::soc_name)
      .def_readonly("w_max", &TestSchedule::w_max)
      .def_readonly("t_min", &TestSchedule::t_min)
      .def_readonly("makespan", &TestSchedule::makespan)
      .def_readonly("cores", &TestSchedule::cores)
      .def("utilization", &TestSchedule::utilization)
      .def("to_json",
           [](const TestSchedule& s) {
             return schedule_to_json(s, make_manifest("", SchedulerOptions{}, false));
           })
      .def("to_svg", [](const TestSchedule& s) {
        return schedule_to_svg(s, make_manifest("", SchedulerOptions{}, false));
      });

  m.def("schedule_tests",
        [](const SocSpec& soc, Width w, const std::string& fit, double eps) {
          return schedule_tests(soc, w, scheduler_options(fit, eps));
        },
        py::arg("soc"), py::arg("w_max"), py::arg("fit") = "best-fit",
        py::arg("epsilon") = 1e-9);

  m.def("exact_schedule",
        [](const SocSpec& soc, Width w) { return exact_schedule(soc, w); },
        py::arg("soc"), py::arg("w_max"));

  m.def("validate",
        [](const TestSchedule& s, const SocSpec& soc, Width w) {
          const auto sets = build_rectangle_sets(soc, w);
          const ValidationReport r = validate(s, sets, w);
          std::vector<std::string> problems;
          for (const Violation& v : r.violations) {
            problems.push_back(std::string(to_string(v.kind)) + ": " + v.detail);
          }
          return py::make_tuple(r.ok, problems);
        },
        py::arg("schedule"), py::arg("soc"), py::arg("w_max"),
        "Returns (ok, list of violation strings).");

  m.def("gap_report",
        [](const SocSpec& soc, Width w) {
          const GapResult g = gap_report(soc, w);
          return py::make_tuple(g.heuristic, g.oracle, g.ratio);
        },
        py::arg("soc"), py::arg("w_max"),
        "(heuristic makespan, optimal makespan, ratio).");

  m.def("random_soc", [](std::uint64_t seed) { return random_soc(seed); },
        py::arg("seed"));

  py::register_exception<InstanceTooLarge>(m, "InstanceTooLarge");
}
