#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bsat/dimacs.hpp"
#include "bsat/error.hpp"
#include "bsat/oracle.hpp"
#include "bsat/padding.hpp"
#include "bsat/pipeline.hpp"
#include "bsat/text.hpp"

namespace py = pybind11;
using namespace bsat;

namespace {

py::object to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

WitnessPolicy policy_arg(const std::string& name) {
  auto p = parse_policy(name);
  if (!p) throw py::value_error("policy must be 'skolem' or 'paper-literal'");
  return *p;
}

PipelineOptions options(const std::string& policy, bool oracle_check, bool padded, unsigned k,
                        std::uint64_t max_bytes, std::uint64_t cap, std::uint64_t guard) {
  PipelineOptions o;
  o.policy = policy_arg(policy);
  o.oracle_check = oracle_check;
  o.padded = padded;
  o.k = k;
  o.max_bytes = max_bytes;
  o.instance_cap = cap;
  o.guard = guard;
  o.keep_artifacts = true;
  return o;
}

const LoadedFormula loaded_in_fragment(const std::string& text) {
  auto loaded = load_formula(text);
  if (!loaded.classification.bs) throw Error(ErrorKind::NotInFragment, "formula is neither BS nor SBS");
  return loaded;
}

}  // namespace

PYBIND11_MODULE(_bsat, m) {
  m.doc() = "Grounding-based satisfiability for the Bernays-Schoenfinkel class";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      auto cls = py::module_::import("bsat._errors").attr("BsatError");
      auto exc = cls(std::string(to_string(e.kind())), e.stage(), e.what());
      PyErr_SetObject(cls.ptr(), exc.ptr());
    }
  });

  m.def("pretty", [](const std::string& text) { return pretty_print(load_formula(text).parsed.formula); },
        py::arg("text"), "Parse and print back in canonical form.");

  m.def("classify", [](const std::string& text) { return to_py(classification_json(load_formula(text).classification)); },
        py::arg("text"));

  m.def(
      "solve",
      [](const std::string& text, const std::string& policy, bool oracle_check, bool padded, unsigned k,
         std::uint64_t max_bytes, std::uint64_t cap, std::uint64_t guard) {
        const auto r = run_pipeline(text, options(policy, oracle_check, padded, k, max_bytes, cap, guard));
        py::dict out = to_py(to_json(r));
        out["ground_set"] = r.ground_set;
        out["dimacs"] = r.dimacs;
        return out;
      },
      py::arg("text"), py::arg("policy") = "skolem", py::arg("oracle_check") = false, py::arg("padded") = false,
      py::arg("k") = 1, py::arg("max_bytes") = kDefaultMaxPaddedBytes, py::arg("cap") = kDefaultInstanceCap,
      py::arg("guard") = oracle::kDefaultEnumerationGuard,
      "Run the grounding pipeline; returns the JSON report as a dict plus ground_set and dimacs.");

  m.def(
      "find_model",
      [](const std::string& text, std::optional<std::size_t> max_size, std::uint64_t guard) -> py::object {
        const auto loaded = loaded_in_fragment(text);
        const auto& bs = *loaded.classification.bs;
        const auto bound = max_size ? *max_size : oracle::model_bound(bs);
        const auto r = oracle::find_model(to_formula(bs), bound, guard);
        if (!r.sat()) return py::none();
        return to_py(to_json(*r.model));
      },
      py::arg("text"), py::arg("max_size") = py::none(), py::arg("guard") = oracle::kDefaultEnumerationGuard,
      "First finite model in canonical order, or None up to the bound.");

  m.def(
      "pad",
      [](const std::string& payload, unsigned k, std::uint64_t max_bytes) {
        return py::bytes(pad(payload, k, max_bytes).serialize());
      },
      py::arg("payload"), py::arg("k") = 1, py::arg("max_bytes") = kDefaultMaxPaddedBytes);

  m.def(
      "unpad", [](const std::string& blob, unsigned k) { return unpad(blob, k); }, py::arg("blob"),
      py::arg("k") = 1);

  m.def(
      "dpll",
      [](const std::vector<std::vector<prop::Literal>>& clauses, std::optional<prop::Var> num_vars) -> py::object {
        prop::Cnf cnf;
        cnf.clauses = clauses;
        for (const auto& c : clauses) {
          for (auto l : c) {
            if (l == 0) throw py::value_error("literal 0 is not allowed");
            cnf.num_vars = std::max(cnf.num_vars, static_cast<prop::Var>(std::abs(l)));
          }
        }
        if (num_vars) cnf.num_vars = std::max(cnf.num_vars, *num_vars);
        const auto r = prop::dpll_solve(cnf);
        if (!r.sat) return py::none();
        py::dict model;
        for (prop::Var v = 1; v <= cnf.num_vars; ++v) model[py::int_(v)] = r.assignment.get(v).value_or(false);
        return model;
      },
      py::arg("clauses"), py::arg("num_vars") = py::none(),
      "DPLL on a clause list; returns {var: bool} or None when unsatisfiable.");

  m.def(
      "read_dimacs",
      [](const std::string& text) {
        const auto cnf = read_dimacs(text);
        return py::make_tuple(cnf.num_vars, cnf.clauses);
      },
      py::arg("text"));

  m.def(
      "emit_dimacs",
      [](const std::vector<std::vector<prop::Literal>>& clauses, prop::Var num_vars) {
        return emit_dimacs(prop::Cnf{num_vars, clauses});
      },
      py::arg("clauses"), py::arg("num_vars"));
}
