#include <boolpres/invariants.hpp>
#include <boolpres/text_io.hpp>

#include "../tools/cli.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace boolpres;

namespace {

using PyRelation = std::tuple<std::string, Index, Index>;

RelationSet to_relations(const std::vector<PyRelation>& rs) {
  RelationSet out;
  for (const auto& [kind, i, j] : rs) {
    if (kind == "geq") out.insert(Relation::geq(i, j));
    else if (kind == "perp") out.insert(Relation::perp(i, j));
    else throw PreconditionError("relation kind must be 'geq' or 'perp'");
  }
  return out;
}

std::vector<PyRelation> from_relations(const RelationSet& r) {
  std::vector<PyRelation> out;
  for (const auto& rho : r) out.emplace_back(rho.kind == RelKind::geq ? "geq" : "perp", rho.left, rho.right);
  return out;
}

std::vector<std::string> atom_strings(const Presentation& p) {
  std::vector<std::string> out;
  for (auto a : p.atoms()) out.push_back(p.assignment_string(a));
  return out;
}

py::dict invariants(const Presentation& p) {
  const auto alg = Algebra::make(p);
  py::dict d;
  d["atoms"] = alg->atom_count();
  d["d"] = d_topological(*alg);
  d["pi"] = pi_weight(*alg);
  if (alg->atom_count() <= kMaxCountedAtoms) d["end"] = count_endomorphisms(*alg);
  d["ideals"] = count_ideals(*alg);
  return d;
}

py::dict report_dict(const TheoryReport& r) {
  py::dict d;
  for (const auto& c : r.checks) d[py::str(std::string(1, c.axiom))] = py::make_tuple(c.pass, c.witness);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite presented Boolean algebras and valuation functions";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<InconsistentError>(m, "InconsistentError", PyExc_ValueError);

  py::class_<Presentation>(m, "Presentation")
      .def(py::init([](std::vector<Index> gens, const std::vector<std::map<Index, bool>>& forbidden) {
             std::vector<ElementaryConstraint> f;
             for (const auto& bits : forbidden) f.push_back({bits});
             return Presentation(std::move(gens), std::move(f));
           }),
           py::arg("generators"), py::arg("forbidden") = std::vector<std::map<Index, bool>>{})
      .def_static("from_text", &parse_presentation)
      .def("to_text", &format_presentation)
      .def_property_readonly("generators",
                             [](const Presentation& p) { return std::vector<Index>(p.generators().begin(), p.generators().end()); })
      .def_property_readonly("forbidden",
                             [](const Presentation& p) {
                               std::vector<std::map<Index, bool>> out;
                               for (const auto& e : p.forbidden()) out.push_back(e.bits);
                               return out;
                             })
      .def("atoms", &atom_strings)
      .def("__eq__", [](const Presentation& a, const Presentation& b) { return a == b; });

  py::class_<ValuationFunction>(m, "ValuationFunction")
      .def(py::init<std::vector<Index>>(), py::arg("domain"))
      .def_static("from_text", &parse_valuation)
      .def("to_text", &format_valuation)
      .def_property_readonly("domain",
                             [](const ValuationFunction& p) { return std::vector<Index>(p.domain().begin(), p.domain().end()); })
      .def("get", [](const ValuationFunction& p, Index i, Index j) { return std::string(to_string(p.at(i, j))); })
      .def("set",
           [](ValuationFunction& p, Index i, Index j, const std::string& t) {
             if (t == "GEQ") p.set(i, j, Trit::geq);
             else if (t == "PERP") p.set(i, j, Trit::perp);
             else if (t == "UNDEF") p.set(i, j, Trit::undef);
             else throw PreconditionError("entry must be GEQ, PERP or UNDEF");
           })
      .def("is_valid", &ValuationFunction::is_valid)
      .def("violation",
           [](const ValuationFunction& p) -> std::optional<std::string> {
             if (auto v = p.violation()) return v->describe();
             return std::nullopt;
           })
      .def("restrict_to",
           [](const ValuationFunction& p, const std::vector<Index>& sub) { return p.restrict_to(sub); })
      .def("__eq__", [](const ValuationFunction& a, const ValuationFunction& b) { return a == b; });

  m.def("rel", [](const ValuationFunction& p) { return from_relations(rel(p)); });
  m.def("derive_closure", [](const std::vector<PyRelation>& r) { return from_relations(derive_closure(to_relations(r))); });
  m.def("is_consistent", [](const std::vector<PyRelation>& r) { return is_consistent(to_relations(r)); });
  m.def("canonical_extension",
        [](const std::vector<PyRelation>& r, std::vector<Index> domain) {
          return canonical_extension(to_relations(r), std::move(domain));
        });
  m.def("merge", &merge);
  m.def("algebra_of", &algebra_of);
  m.def("induced_valuation", [](const ValuationFunction& p) {
    const auto alg = Algebra::make(algebra_of(p));
    return induced_valuation(p.domain(), alg->generator_family());
  }, "The valuation read off the generators of A(p)");
  m.def("invariants", &invariants);

  m.def("standard_model_check",
        [](const ValuationFunction& p, std::size_t block) { return report_dict(check_axioms(standard_model(p, block))); });
  m.def("check_model", [](const std::string& text) { return report_dict(check_axioms(parse_model(text))); });

  m.def("sample_generic",
        [](std::size_t lambda, std::size_t mu, std::uint64_t seed, const std::string& schedule) {
          GenericSession session(lambda, mu, seed);
          const auto report = run_schedule(session, parse_schedule(schedule));
          std::vector<std::tuple<std::string, std::string, std::optional<Index>>> records;
          for (const auto& r : report.records)
            records.emplace_back(describe(r.request), std::string(to_string(r.outcome)), r.witness);
          return py::make_tuple(report.final, records);
        },
        py::arg("lambda_"), py::arg("mu"), py::arg("seed"), py::arg("schedule"));

  m.def("theorem_b_independence",
        [](std::size_t depth, const std::vector<std::size_t>& widths, const std::vector<Branch>& branches,
           std::uint64_t seed, std::size_t i, const std::vector<std::size_t>& J) {
          const auto c = build_construction({depth, widths, branches}, seed);
          const auto r = check_ideal_independence(c, i, J);
          py::dict d;
          d["independent"] = r.independent;
          d["verified"] = r.witness_verified;
          d["predicted"] = r.predicted;
          d["variables"] = c.names.size();
          return d;
        });
  m.def("theorem_b_partition",
        [](std::size_t depth, const std::vector<std::size_t>& widths, const std::vector<Branch>& branches,
           std::uint64_t seed, std::size_t i) {
          const auto r = check_partition(build_construction({depth, widths, branches}, seed), i);
          return py::make_tuple(r.pairwise_disjoint, r.all_nonzero, r.sum_is_complement_of_remainder,
                                r.remainder_nonzero);
        });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
