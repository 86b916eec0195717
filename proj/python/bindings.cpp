//  Copyright 2026 The rescript-ifc Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

// Structured results cross the boundary as JSON text; the Python package
// decodes them.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ifc/harness.hpp"
#include "ifc/lattice.hpp"
#include "ifc/parser.hpp"
#include "ifc/report.hpp"

namespace py = pybind11;

namespace {

ifc::TEnv to_tenv(const std::map<std::string, std::string>& context) {
  ifc::TEnv env;
  for (const auto& [name, type] : context) {
    ifc::SecType t = ifc::parse_type(type);
    if (!ifc::well_formed(t)) throw py::value_error("ill-formed type for " + name + ": " + type);
    env.emplace(name, std::move(t));
  }
  return env;
}

ifc::SecType to_level(const std::string& pc) {
  ifc::SecType t = ifc::parse_type(pc);
  if (!t.is_low() && !t.is_high()) throw py::value_error("pc must be low or high");
  return t;
}

std::string check(const std::string& src, const std::map<std::string, std::string>& context, const std::string& pc,
                  bool trace) {
  const ifc::ExprPtr e = ifc::parse(src);
  return ifc::check_json(ifc::check(to_tenv(context), to_level(pc), *e, {trace})).dump();
}

std::string run(const std::string& src, std::int64_t fuel, bool unchecked) {
  const ifc::ExprPtr e = ifc::parse(src);
  if (!unchecked) {
    ifc::CheckResult r = ifc::check_program(*e, {false});
    if (!r.ok()) return ifc::check_json(r).dump();
  }
  return ifc::outcome_json(ifc::eval(*e, {}, {}, fuel)).dump();
}

std::string nitest(const std::string& suite, int trials, std::uint64_t seed, std::int64_t fuel) {
  auto s = ifc::suite_from_name(suite);
  if (!s) throw py::value_error("unknown suite: " + suite);
  ifc::GenConfig cfg;
  cfg.trials = trials;
  cfg.rng_seed = seed;
  cfg.fuel = fuel;
  py::gil_scoped_release release;
  return ifc::suite_json(ifc::run_suite(*s, cfg)).dump();
}

std::string lattice_op(const std::string& a, const std::string& b, bool upper) {
  auto r = upper ? ifc::try_join(ifc::parse_type(a), ifc::parse_type(b))
                 : ifc::try_meet(ifc::parse_type(a), ifc::parse_type(b));
  if (!r) throw py::value_error("incomparable: " + a + ", " + b);
  return ifc::type_source(*r);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Security type checker and interpreter core";

  static py::exception<ifc::ParseError> parse_error(m, "ParseError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ifc::ParseError& e) {
      py::object err = py::handle(parse_error.ptr())(e.what());
      err.attr("line") = e.line();
      err.attr("col") = e.col();
      PyErr_SetObject(parse_error.ptr(), err.ptr());
    }
  });

  m.def("parse", [](const std::string& src) { return ifc::ast_json(*ifc::parse(src)).dump(); }, py::arg("source"));
  m.def("pretty", [](const std::string& src) { return ifc::pretty(*ifc::parse(src)); }, py::arg("source"));
  m.def("check", &check, py::arg("source"), py::arg("context") = std::map<std::string, std::string>{},
        py::arg("pc") = "low", py::arg("trace") = false);
  m.def("run", &run, py::arg("source"), py::arg("fuel") = 10000, py::arg("unchecked") = false);
  m.def("nitest", &nitest, py::arg("suite"), py::arg("trials"), py::arg("seed") = 42, py::arg("fuel") = 10000);
  m.def("run_corpus", [](const std::string& dir) { return ifc::corpus_json(ifc::run_corpus(dir)).dump(); },
        py::arg("directory"));
  m.def("leq", [](const std::string& a, const std::string& b) { return ifc::leq(ifc::parse_type(a), ifc::parse_type(b)); },
        py::arg("a"), py::arg("b"));
  m.def("join", [](const std::string& a, const std::string& b) { return lattice_op(a, b, true); }, py::arg("a"),
        py::arg("b"));
  m.def("meet", [](const std::string& a, const std::string& b) { return lattice_op(a, b, false); }, py::arg("a"),
        py::arg("b"));
}
