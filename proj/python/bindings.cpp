#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lambdamu/harness.hpp"
#include "lambdamu/parse.hpp"
#include "lambdamu/reduction.hpp"
#include "lambdamu/substitution.hpp"
#include "lambdamu/typing.hpp"

namespace py = pybind11;
using namespace lambdamu;

namespace {

// JSON strings cross the boundary; the Python side decodes them.
py::object principalOrNone(const Term& m) {
  auto r = inferPrincipal(m);
  auto* p = std::get_if<Principal>(&r);
  if (!p) return py::none();
  py::dict gamma, theta;
  for (const auto& [x, t] : p->ctx.gamma) gamma[py::str(x.name)] = print(t);
  for (const auto& [a, t] : p->ctx.theta) theta[py::str(a.name)] = print(t);
  py::dict d;
  d["type"] = print(p->type);
  d["gamma"] = gamma;
  d["theta"] = theta;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "lambda-mu calculus core";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<NotARedex>(m, "NotARedex", PyExc_ValueError);
  py::register_exception<UnknownSuite>(m, "UnknownSuite", PyExc_KeyError);

  py::class_<Term>(m, "Term")
      .def("__str__", [](const Term& t) { return print(t); })
      .def("__repr__", [](const Term& t) { return "Term(" + print(t) + ")"; })
      .def("__eq__", [](const Term& a, const Term& b) { return alphaEq(a, b); })
      .def("__hash__", [](const Term& t) { return std::hash<std::string>{}(canonicalKey(t)); })
      .def_property_readonly("cxty", [](const Term& t) { return t.cxty(); })
      .def_property_readonly("canonical", [](const Term& t) { return canonicalKey(t); });

  m.def("parse", &parseTerm, py::arg("text"));
  m.def("cycle_term", &cycleTerm);
  m.def("alpha_translate", [](const Term& t, const std::string& a) { return alphaTranslate(t, MuVar{a}); });
  m.def("is_typable", &isTypable);
  m.def("infer", &principalOrNone);
  m.def("check", [](const std::string& judgment) {
    ParsedJudgment pj = parseJudgment(judgment);
    if (!pj.type) throw py::value_error("judgment needs a type");
    Context ctx;
    for (auto& [x, t] : pj.gamma) ctx.gamma.insert_or_assign(x, t);
    for (auto& [a, t] : pj.theta) ctx.theta.insert_or_assign(a, t);
    return std::holds_alternative<Derivation>(checkJudgment(ctx, pj.term, *pj.type));
  });
  m.def(
      "redexes",
      [](const Term& t, const std::string& rules) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& r : findRedexes(t, RuleSet::parse(rules))) out.emplace_back(pathString(r.path), ruleName(r.rule));
        return out;
      },
      py::arg("term"), py::arg("rules") = "bmMrte");
  m.def(
      "is_normal",
      [](const Term& t, const std::string& rules) { return isNormalForm(t, RuleSet::parse(rules)); },
      py::arg("term"), py::arg("rules") = "bmMrte");
  m.def(
      "reduce_json",
      [](const Term& t, const std::string& rules, const std::string& strategy, std::size_t fuel) {
        auto st = strategyFromName(strategy);
        if (!st) throw py::value_error("unknown strategy " + strategy);
        ReduceOptions opt;
        opt.strategy = *st;
        opt.fuel = fuel;
        return traceToJson(reduce(t, RuleSet::parse(rules), opt));
      },
      py::arg("term"), py::arg("rules") = "bmMrte", py::arg("strategy") = "lo", py::arg("fuel") = kDefaultStepFuel);
  m.def(
      "normalize_json", [](const Term& t, std::size_t fuel) { return traceToJson(normalizeWN(t, fuel)); },
      py::arg("term"), py::arg("fuel") = kDefaultStepFuel);
  m.def(
      "eta",
      [](const Term& t, const std::string& rules, std::size_t fuel) -> py::object {
        EtaResult e = eta(t, RuleSet::parse(rules), fuel);
        if (e.verdict == SNVerdict::SN) return py::int_(e.value);
        return py::str(e.verdict == SNVerdict::NotSN ? "not-sn" : "fuel-exceeded");
      },
      py::arg("term"), py::arg("rules") = "bmrte", py::arg("fuel") = kDefaultNodeFuel);
  m.def(
      "enumerate_terms",
      [](std::size_t maxCxty, std::size_t lamPool, std::size_t muPool, bool typable) {
        EnumBounds b;
        b.maxCxty = maxCxty;
        b.lamVarPool = lamPool;
        b.muVarPool = muPool;
        b.typableOnly = typable;
        return enumerateTerms(b);
      },
      py::arg("max_cxty"), py::arg("lam_pool") = 1, py::arg("mu_pool") = 1, py::arg("typable") = false);
  m.def("suite_names", &suiteNames);
  m.def(
      "run_suite_json",
      [](const std::string& name, std::size_t maxCxty, std::size_t lamPool, std::size_t muPool) {
        EnumBounds b;
        b.maxCxty = maxCxty;
        b.lamVarPool = lamPool;
        b.muVarPool = muPool;
        py::gil_scoped_release unlock;
        return runLemmaSuite(name, b).toJson();
      },
      py::arg("name"), py::arg("max_cxty") = 5, py::arg("lam_pool") = 1, py::arg("mu_pool") = 1);
}
