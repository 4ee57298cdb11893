// Copyright 2026 The semiflat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "semiflat/error.hpp"
#include "semiflat/flatness.hpp"
#include "semiflat/regularity.hpp"
#include "semiflat/reproduce.hpp"
#include "semiflat/semiring.hpp"
#include "semiflat/tensor.hpp"
#include "semiflat/workspace.hpp"

namespace py = pybind11;
using namespace semiflat;

namespace {

  // Structured results cross the boundary as JSON text; the Python side
  // decodes them.
  std::string run_request(WorkspaceConfig& config, nlohmann::json const& request) {
    config.analyses.clear();
    add_analysis(config, request);
    auto const entry = run_one(config, config.analyses.front());
    nlohmann::json out = {{"status", to_string(entry.status)},
                          {"method", entry.method},
                          {"caps", entry.caps},
                          {"data", entry.data},
                          {"text", entry.lines}};
    return out.dump();
  }

  Caps caps_from(std::size_t tensor_cap, std::size_t slack, std::size_t bound) {
    Caps c;
    c.tensor_cap        = tensor_cap;
    c.slack             = slack;
    c.module_size_bound = bound;
    validate_caps(c);
    return c;
  }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "finite semirings, semimodules, tensor products and flatness";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<AxiomViolation>(m, "AxiomViolation", base.ptr());
  py::register_exception<SizeCapExceeded>(m, "SizeCapExceeded", base.ptr());
  py::register_exception<UnknownReference>(m, "UnknownReference", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<BadCaps>(m, "BadCaps", base.ptr());
  py::register_exception<IllDefined>(m, "IllDefined", base.ptr());

  py::class_<Semiring, std::shared_ptr<Semiring>>(m, "Semiring")
      .def_property_readonly("name", &Semiring::name)
      .def_property_readonly("size", &Semiring::size)
      .def_property_readonly("labels", &Semiring::labels)
      .def("plus", &Semiring::plus)
      .def("times", &Semiring::times)
      .def("element", &Semiring::element)
      .def("is_commutative", &Semiring::is_commutative)
      .def("__len__", &Semiring::size)
      .def("__repr__", [](Semiring const& s) {
        return "<Semiring " + s.name() + " with " + std::to_string(s.size()) + " elements>";
      });

  m.def("catalog", [](std::string const& id) {
    return std::const_pointer_cast<Semiring>(catalog_semiring(id));
  }, py::arg("id"));
  m.def("catalog_examples", &catalog_examples);
  m.def("from_tables",
        [](std::string name, Semiring::Rows const& add, Semiring::Rows const& mul, Elem zero, Elem one) {
          return std::make_shared<Semiring>(Semiring::from_tables(std::move(name), add, mul, zero, one));
        },
        py::arg("name"), py::arg("add"), py::arg("mul"), py::arg("zero") = 0, py::arg("one") = 1);

  m.def("is_vn_regular", [](std::string const& id) {
    return regularity_profile(catalog_semiring(id)).vn_regular;
  });

  m.def("analyze",
        [](std::string const& request_json, std::size_t tensor_cap, std::size_t slack, std::size_t bound) {
          WorkspaceConfig config;
          config.caps = caps_from(tensor_cap, slack, bound);
          nlohmann::json request;
          try {
            request = nlohmann::json::parse(request_json);
          } catch (nlohmann::json::parse_error const& e) {
            throw ParseError(e.what(), 0);
          }
          return run_request(config, request);
        },
        py::arg("request"), py::arg("tensor_cap") = kDefaultTensorCap,
        py::arg("slack") = kDefaultSlack, py::arg("bound") = 4,
        "Runs one analysis request (a JSON object as in workspace files).");

  m.def("run_workspace",
        [](std::string const& text, std::size_t jobs) {
          py::gil_scoped_release nogil;
          return render_structured(run(parse_workspace_text(text), {false, jobs}));
        },
        py::arg("text"), py::arg("jobs") = 1);

  m.def("reproduce",
        [](std::vector<std::string> const& only) {
          ReproOptions o;
          o.only = only;
          std::vector<ReproRow> rows;
          {
            py::gil_scoped_release nogil;
            rows = reproduce(o);
          }
          py::list out;
          for (auto const& r : rows) {
            py::dict d;
            d["key"]       = r.key;
            d["criterion"] = r.criterion;
            d["claim"]     = r.claim;
            d["passed"]    = r.passed;
            d["details"]   = r.details;
            d["failures"]  = r.failures;
            out.append(d);
          }
          return out;
        },
        py::arg("only") = std::vector<std::string>{});

  m.def("row_keys", &reproduce_row_keys);
  m.attr("SCHEMA_VERSION") = kSchemaVersion;
}
