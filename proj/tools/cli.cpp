#include "cli.hpp"

#include <boolpres/invariants.hpp>
#include <boolpres/text_io.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace boolpres::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Parse errors carry the file name.
template <typename F>
auto parse_file(const std::string& path, F&& parse) {
  const auto text = read_file(path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

struct Options {
  std::string file, file2;
  std::vector<std::string> files;
  std::string dom;
  std::string mode;
  std::size_t block = 0;
  std::size_t lambda = 0, mu = 0, depth = 0;
  std::uint64_t seed = 0;
  std::string schedule, filter, widths, branches, check;
  bool emit_model = false;
};

int cmd_check(const Options& o, std::ostream& out) {
  const auto p = parse_file(o.file, parse_valuation);
  if (auto v = p.violation()) {
    out << "invalid: " << v->describe() << '\n';
    return 1;
  }
  out << "valid\n";
  return 0;
}

int cmd_close(const Options& o, std::ostream& out, std::ostream& err) {
  const auto r = parse_file(o.file, parse_relations);
  out << format_relations(derive_closure(r));
  if (!is_consistent(r)) {
    err << "inconsistent relation set\n";
    return 1;
  }
  return 0;
}

int cmd_extend(const Options& o, std::ostream& out) {
  const auto r = parse_file(o.file, parse_relations);
  std::vector<Index> dom;
  if (o.dom.empty()) {
    dom = mentioned_indices(r);
  } else {
    for (auto i : parse_list(o.dom)) dom.push_back(static_cast<Index>(i));
    std::sort(dom.begin(), dom.end());
    dom.erase(std::unique(dom.begin(), dom.end()), dom.end());
  }
  out << format_valuation(canonical_extension(r, std::move(dom)));
  return 0;
}

int cmd_merge(const Options& o, std::ostream& out) {
  const auto p = parse_file(o.file, parse_valuation);
  const auto q = parse_file(o.file2, parse_valuation);
  for (const auto* v : {&p, &q})
    if (auto bad = v->violation()) throw PreconditionError("input is not a valuation function: " + bad->describe());
  out << format_valuation(merge(p, q));
  return 0;
}

int cmd_algebra(const Options& o, std::ostream& out) {
  const auto p = parse_file(o.file, parse_valuation);
  if (auto bad = p.violation()) throw PreconditionError("input is not a valuation function: " + bad->describe());
  auto pres = algebra_of(p);
  out << format_presentation(pres);
  const auto alg = Algebra::make(std::move(pres));
  out << "# atoms: " << alg->atom_count() << '\n';
  for (auto a : alg->atoms()) out << "# " << alg->presentation().assignment_string(a) << '\n';
  return 0;
}

int cmd_invariants(const Options& o, std::ostream& out) {
  const auto alg = Algebra::make(parse_file(o.file, parse_presentation));
  const auto n = alg->atom_count();
  if (n == 0) throw PreconditionError("the algebra is degenerate (0 = 1)");
  out << "atoms=" << n << " d=" << d_topological(*alg) << " pi=" << pi_weight(*alg);
  if (n <= kMaxCountedAtoms) out << " end=" << count_endomorphisms(*alg);
  if (n < 64) out << " ideals=" << count_ideals(*alg);
  out << '\n';
  return 0;
}

int print_report(const TheoryReport& r, std::ostream& out) {
  for (const auto& c : r.checks) {
    out << '(' << c.axiom << ") " << (c.pass ? "pass" : "FAIL");
    if (!c.pass) out << ": " << c.witness;
    out << '\n';
  }
  out << "# no greatest element in L: not checked on finite L\n";
  for (const auto& n : r.notes) out << "# note: " << n << '\n';
  return r.all_pass() ? 0 : 1;
}

int cmd_theory_t(const Options& o, std::ostream& out) {
  if (o.mode == "check") return print_report(check_axioms(parse_file(o.file, parse_model)), out);
  const auto p = parse_file(o.file, parse_valuation);
  if (auto bad = p.violation()) throw PreconditionError("input is not a valuation function: " + bad->describe());
  const auto m = standard_model(p, o.block);
  if (o.emit_model) out << format_model(m);
  return print_report(check_axioms(m), out);
}

int cmd_sample(const Options& o, std::ostream& out) {
  const auto requests = parse_file(o.schedule, parse_schedule);
  GenericSession session(o.lambda, o.mu, o.seed);
  const auto report = run_schedule(session, requests);
  out << format_valuation(report.final);
  for (const auto& rec : report.records) {
    out << "# " << describe(rec.request) << " -> " << to_string(rec.outcome);
    if (rec.witness) out << " witness=" << *rec.witness;
    if (!rec.message.empty()) out << " (" << rec.message << ')';
    out << '\n';
  }
  out << "# met=" << report.met << " trivial=" << report.trivial << " capacity=" << report.capacity
      << " malformed=" << report.malformed << '\n';
  return report.malformed ? 1 : 0;
}

int cmd_product(const Options& o, std::ostream& out) {
  if (o.files.size() > kMaxFactors)
    throw PreconditionError("at most " + std::to_string(kMaxFactors) + " factors");
  std::vector<std::shared_ptr<const Algebra>> factors;
  for (const auto& f : o.files) factors.push_back(Algebra::make(parse_file(f, parse_presentation)));
  const auto filter = parse_file(o.filter, [&](const std::string& t) { return parse_filter(t, factors.size()); });
  ReducedProduct product(factors, filter);

  out << format_presentation(product.algebra()->presentation());
  out << "# filter: " << format_filter(filter);
  out << "# ultrafilter=" << yes_no(filter.is_ultrafilter()) << " atoms=" << product.atom_count() << '\n';
  const auto cmp = compare_densities(factors, filter);
  out << "# pi(product)=" << cmp.lhs << " |prod pi/F|=" << cmp.rhs << " leq=" << yes_no(cmp.holds)
      << " equal=" << yes_no(cmp.equal) << '\n';
  if (auto i0 = filter.principal_point(); i0 && product.atom_count() <= 20) {
    const auto iso = check_principal_isomorphism(product);
    out << "# isomorphic to factor " << *i0 << ": " << yes_no(iso.ok()) << " (" << iso.classes << " classes)\n";
  }
  return 0;
}

std::string witness_string(const BConstruction& c, const VarAssignment& a) {
  std::string out;
  for (const auto& [v, b] : a) {
    if (!out.empty()) out += ' ';
    out += c.names.at(v) + "=" + (b ? "1" : "0");
  }
  return out;
}

int cmd_theorem_b(const Options& o, std::ostream& out) {
  TreeParams params;
  params.depth = o.depth;
  params.widths = parse_list(o.widths);
  params.branches = parse_file(o.branches, parse_branches);
  const auto c = build_construction(params, o.seed);

  out << "variables=" << c.names.size() << " branches=" << c.branches() << '\n';
  for (std::size_t i = 0; i < c.branches(); ++i) {
    out << "branch " << i << ": " << format_branches({params.branches[i]});
    for (std::size_t n = 0; n < params.depth; ++n) {
      const auto& l = c.levels[i][n];
      out << "  n=" << n << " x=" << c.names[l.x] << " y=" << c.names[l.y] << " z=" << c.names[l.z] << '\n';
    }
  }

  int status = 0;
  if (o.check == "partition") {
    for (std::size_t i = 0; i < c.branches(); ++i) {
      const auto r = check_partition(c, i);
      out << "partition " << i << ": disjoint=" << yes_no(r.pairwise_disjoint)
          << " nonzero=" << yes_no(r.all_nonzero) << " sum=1-remainder=" << yes_no(r.sum_is_complement_of_remainder)
          << " remainder_nonzero=" << yes_no(r.remainder_nonzero) << '\n';
      if (!r.ok()) status = 1;
    }
  } else if (o.check == "independence") {
    for (std::size_t i = 0; i < c.branches(); ++i) {
      std::vector<std::size_t> J;
      for (std::size_t j = 0; j < c.branches(); ++j)
        if (j != i) J.push_back(j);
      const auto r = check_ideal_independence(c, i, J);
      out << "independence " << i << ": " << yes_no(r.independent) << " predicted=" << yes_no(r.predicted);
      if (r.witness) out << " verified=" << yes_no(r.witness_verified) << " witness: " << witness_string(c, *r.witness);
      out << '\n';
      if (!r.independent || !r.witness_verified) status = 1;
    }
  }
  return status;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite presented Boolean algebras, valuation functions and related constructions", "boolpres"};
  app.set_version_flag("--version", std::string("boolpres ") + kVersion);
  app.require_subcommand(1);
  Options o;

  auto* check = app.add_subcommand("check", "Check conditions (1) and (2) of a valuation file");
  check->add_option("valuation", o.file)->required()->check(CLI::ExistingFile);

  auto* close = app.add_subcommand("close", "Print the derivation closure of a relation file");
  close->add_option("relations", o.file)->required()->check(CLI::ExistingFile);

  auto* extend = app.add_subcommand("extend", "Canonical extension of a relation file");
  extend->add_option("relations", o.file)->required()->check(CLI::ExistingFile);
  extend->add_option("--dom", o.dom, "Comma separated domain (default: indices mentioned)");

  auto* merge_cmd = app.add_subcommand("merge", "Merge two compatible valuation files");
  merge_cmd->add_option("p", o.file)->required()->check(CLI::ExistingFile);
  merge_cmd->add_option("q", o.file2)->required()->check(CLI::ExistingFile);

  auto* algebra = app.add_subcommand("algebra", "Presentation and atoms of A(p)");
  algebra->add_option("valuation", o.file)->required()->check(CLI::ExistingFile);

  auto* invariants = app.add_subcommand("invariants", "Density, pi-weight and counts of a presentation");
  invariants->add_option("presentation", o.file)->required()->check(CLI::ExistingFile);

  auto* theory = app.add_subcommand("theory-t", "Check the axioms of T");
  theory->add_option("mode", o.mode)->required()->check(CLI::IsMember({"check", "standard"}));
  theory->add_option("file", o.file, "Model file (check) or valuation file (standard)")
      ->required()
      ->check(CLI::ExistingFile);
  theory->add_option("--block", o.block, "Block size for the standard model");
  theory->add_flag("--emit-model", o.emit_model, "Print the standard model before the report");

  auto* sample = app.add_subcommand("sample-generic", "Meet a schedule of dense sets");
  sample->add_option("--lambda", o.lambda)->required();
  sample->add_option("--mu", o.mu)->required();
  sample->add_option("--seed", o.seed)->required();
  sample->add_option("--schedule", o.schedule)->required()->check(CLI::ExistingFile);

  auto* product = app.add_subcommand("product", "Reduced product of presentations over a filter");
  product->add_option("--filter", o.filter)->required()->check(CLI::ExistingFile);
  product->add_option("algebras", o.files)->required()->check(CLI::ExistingFile);

  auto* theorem_b = app.add_subcommand("theorem-b", "Truncated tree construction over a free algebra");
  theorem_b->add_option("--depth", o.depth)->required();
  theorem_b->add_option("--widths", o.widths)->required();
  theorem_b->add_option("--branches", o.branches)->required()->check(CLI::ExistingFile);
  theorem_b->add_option("--seed", o.seed)->required();
  theorem_b->add_option("--check", o.check)->check(CLI::IsMember({"independence", "partition"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*check) return cmd_check(o, out);
    if (*close) return cmd_close(o, out, err);
    if (*extend) return cmd_extend(o, out);
    if (*merge_cmd) return cmd_merge(o, out);
    if (*algebra) return cmd_algebra(o, out);
    if (*invariants) return cmd_invariants(o, out);
    if (*theory) {
      if (o.mode == "standard" && o.block == 0) throw PreconditionError("standard needs --block");
      return cmd_theory_t(o, out);
    }
    if (*sample) return cmd_sample(o, out);
    if (*product) return cmd_product(o, out);
    if (*theorem_b) return cmd_theorem_b(o, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const InconsistentError& e) {
    err << "inconsistent: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace boolpres::cli
