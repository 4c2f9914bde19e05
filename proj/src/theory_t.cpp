#include <boolpres/theory_t.hpp>

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

namespace boolpres {

namespace {

constexpr std::size_t kMaxGapsPerLevel = 64;

std::string code_string(const Algebra& alg, ElementCode c) {
  std::string out;
  for (std::size_t k = 0; k < alg.atom_count(); ++k)
    if ((c >> k) & 1U) {
      if (!out.empty()) out += ',';
      out += alg.presentation().assignment_string(alg.atoms()[k]);
    }
  return out.empty() ? "-" : out;
}

// Atoms of the subalgebra generated by a set of element codes: atoms grouped
// by membership signature.
std::vector<ElementCode> generated_blocks(std::size_t atoms, const std::vector<ElementCode>& set) {
  std::map<boost::dynamic_bitset<>, ElementCode> blocks;
  boost::dynamic_bitset<> sig(set.size());
  for (std::size_t k = 0; k < atoms; ++k) {
    for (std::size_t s = 0; s < set.size(); ++s) sig[s] = (set[s] >> k) & 1U;
    blocks[sig] |= ElementCode{1} << k;
  }
  std::vector<ElementCode> out;
  for (const auto& [sig_, b] : blocks) out.push_back(b);
  std::sort(out.begin(), out.end(), [](ElementCode a, ElementCode b) {
    return (a & -a) < (b & -b);  // by least atom
  });
  return out;
}

}  // namespace

ElementCode element_code(const Element& a) {
  if (a.algebra().atom_count() > 32) throw PreconditionError("too many atoms for an element code");
  ElementCode c = 0;
  for (auto k = a.atoms().find_first(); k != AtomSet::npos; k = a.atoms().find_next(k))
    c |= ElementCode{1} << k;
  return c;
}

Element element_from_code(const Algebra& algebra, ElementCode code) {
  AtomSet s(algebra.atom_count());
  for (std::size_t k = 0; k < s.size(); ++k)
    if ((code >> k) & 1U) s.set(k);
  return algebra.from_atoms(std::move(s));
}

std::size_t TModelFragment::position(Index l) const {
  auto it = std::find(L.begin(), L.end(), l);
  if (it == L.end()) throw PreconditionError("index " + std::to_string(l) + " is not in L");
  return static_cast<std::size_t>(it - L.begin());
}

std::vector<ElementCode> TModelFragment::below_level(std::size_t l_pos) const {
  std::vector<ElementCode> out;
  for (std::size_t c = 0; c < v.size(); ++c)
    if (v[c] < l_pos) out.push_back(static_cast<ElementCode>(c));
  return out;
}

bool TheoryReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.pass; });
}

const AxiomCheck& TheoryReport::operator[](char axiom) const {
  for (const auto& c : checks)
    if (c.axiom == axiom) return c;
  throw PreconditionError(std::string("no axiom ") + axiom);
}

TheoryReport check_axioms(const TModelFragment& m) {
  TheoryReport report;
  const auto& alg = *m.algebra;
  const auto atoms = alg.atom_count();
  const auto n = m.L.size();
  auto add = [&](char axiom, std::string witness) {
    report.checks.push_back({axiom, witness.empty(), std::move(witness)});
  };

  // (a)
  add('a', alg.degenerate() ? "0 = 1" : "");

  // (b): only the total order part
  {
    std::string w;
    for (std::size_t a = 0; a < n && w.empty(); ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (m.L[a] == m.L[b]) {
          w = "L repeats " + std::to_string(m.L[a]);
          break;
        }
    if (n == 0) w = "L is empty";
    add('b', w);
  }

  // (c)
  std::vector<bool> level_is_subalgebra(n, false);
  std::vector<std::vector<ElementCode>> levels(n);
  {
    std::string w;
    if (atoms > kMaxModelAtoms) w = "algebra too large";
    else if (m.v.size() != (std::size_t{1} << atoms)) w = "v is not total on A";
    else if (auto bad = std::find_if(m.v.begin(), m.v.end(), [&](std::size_t p) { return p >= n; });
             bad != m.v.end())
      w = "v(" + code_string(alg, static_cast<ElementCode>(bad - m.v.begin())) + ") is not in L";
    for (std::size_t l = 0; l < n && w.empty(); ++l) {
      auto& S = levels[l];
      S = m.below_level(l);
      if (S.empty()) {
        if (l == 0) {
          report.notes.push_back("A_" + std::to_string(m.L[0]) + " is empty at the least element of L");
          continue;
        }
        w = "A_" + std::to_string(m.L[l]) + " is empty";
        break;
      }
      const auto blocks = generated_blocks(atoms, S);
      if (blocks.size() < 32 && S.size() == (std::size_t{1} << blocks.size())) {
        level_is_subalgebra[l] = true;
        continue;
      }
      std::vector<bool> in(std::size_t{1} << atoms, false);
      for (auto c : S) in[c] = true;
      const ElementCode full = static_cast<ElementCode>((std::uint64_t{1} << atoms) - 1);
      std::ostringstream os;
      os << "A_" << m.L[l] << " is not a subalgebra: ";
      for (auto a : S)
        if (!in[~a & full]) {
          os << "-(" << code_string(alg, a) << ") missing";
          w = os.str();
          break;
        }
      for (std::size_t s = 0; s < S.size() && w.empty(); ++s)
        for (std::size_t t = s + 1; t < S.size(); ++t)
          if (!in[S[s] & S[t]]) {
            os << "(" << code_string(alg, S[s]) << ").(" << code_string(alg, S[t]) << ") missing";
            w = os.str();
            break;
          }
      if (w.empty()) w = os.str() + "not closed";
    }
    add('c', w);
  }

  // (d)
  {
    std::string w;
    if (m.class_of.size() != n) w = "~ is not defined on all of L";
    for (std::size_t a = 0; a < n && w.empty(); ++a)
      for (std::size_t c = a + 2; c < n && w.empty(); ++c)
        if (m.class_of[a] == m.class_of[c])
          for (std::size_t b = a + 1; b < c; ++b)
            if (m.class_of[b] != m.class_of[a]) {
              w = "class of " + std::to_string(m.L[a]) + " and " + std::to_string(m.L[c]) +
                  " skips " + std::to_string(m.L[b]);
              break;
            }
    add('d', w);
  }

  // (e)
  {
    std::string w;
    if (m.x.size() != n) w = "x is not defined on all of L";
    for (std::size_t i = 0; i < n && w.empty(); ++i)
      for (std::size_t l = i + 1; l < n; ++l)
        if (leq(m.x[i], m.x[l])) {
          w = "x_" + std::to_string(m.L[i]) + " <= x_" + std::to_string(m.L[l]);
          break;
        }
    if (w.empty() && m.class_of.size() == n && report['c'].pass) {
      for (std::size_t l = 0; l < n; ++l) {
        std::vector<ElementCode> candidates;
        for (std::size_t i = 0; i < n; ++i)
          if (m.class_of[i] == m.class_of[l]) candidates.push_back(element_code(m.x[i]));
        auto has_witness = [&](ElementCode a) {
          return std::any_of(candidates.begin(), candidates.end(),
                             [a](ElementCode c) { return c != 0 && (c & ~a) == 0; });
        };
        std::size_t gaps = 0;
        // On a subalgebra it suffices to look at its atoms.
        const auto to_test = level_is_subalgebra[l] ? generated_blocks(atoms, levels[l]) : levels[l];
        for (auto a : to_test) {
          if (a == 0 || has_witness(a)) continue;
          report.density_gaps.push_back({m.L[l], a});
          if (++gaps == kMaxGapsPerLevel) break;
        }
      }
      if (!report.density_gaps.empty()) {
        const auto& g = report.density_gaps.front();
        w = "no x_i with i ~ " + std::to_string(g.l) + " below " + code_string(alg, g.element) +
            " in A_" + std::to_string(g.l) + " (" + std::to_string(report.density_gaps.size()) +
            " gaps)";
      }
    }
    add('e', w);
  }
  return report;
}

TModelFragment standard_model(const ValuationFunction& p, std::size_t block_size) {
  const auto n = p.size();
  if (n == 0) throw PreconditionError("standard model needs a nonempty domain");
  for (std::size_t k = 0; k < n; ++k)
    if (p.domain()[k] != k) throw PreconditionError("standard model needs domain {0..n-1}");
  if (block_size == 0 || n % block_size != 0)
    throw PreconditionError("block size must divide the domain size");

  TModelFragment m;
  m.algebra = Algebra::make(algebra_of(p));
  const auto atoms = m.algebra->atom_count();
  if (atoms > kMaxModelAtoms)
    throw PreconditionError("A(p) has " + std::to_string(atoms) + " atoms; at most " +
                            std::to_string(kMaxModelAtoms) + " are supported");
  m.block_size = block_size;
  m.L.assign(p.domain().begin(), p.domain().end());
  for (std::size_t i = 0; i < n; ++i) m.class_of.push_back(i / block_size);
  m.x = m.algebra->generator_family();

  m.v.assign(std::size_t{1} << atoms, kUndefinedLevel);
  std::vector<ElementCode> gens;
  for (std::size_t l = 1; l <= n; ++l) {
    gens.push_back(element_code(m.x[l - 1]));
    const auto blocks = generated_blocks(atoms, gens);
    for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << blocks.size()); ++pick) {
      ElementCode c = 0;
      for (std::size_t b = 0; b < blocks.size(); ++b)
        if ((pick >> b) & 1U) c |= blocks[b];
      if (m.v[c] == kUndefinedLevel) m.v[c] = l - 1;
    }
  }
  return m;
}

}  // namespace boolpres
