#include <boolpres/valuation.hpp>

#include <algorithm>
#include <stdexcept>

namespace boolpres {

std::string_view to_string(Trit t) {
  switch (t) {
    case Trit::geq: return "GEQ";
    case Trit::perp: return "PERP";
    case Trit::undef: break;
  }
  return "UNDEF";
}

std::vector<Index> mentioned_indices(const RelationSet& r) {
  std::vector<Index> out;
  for (const auto& rho : r) {
    out.push_back(rho.left);
    out.push_back(rho.right);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string Violation::describe() const {
  std::string c;
  switch (condition) {
    case Condition::transitivity: c = "(1)"; break;
    case Condition::perp_from_common_upper: c = "(2a)"; break;
    case Condition::perp_pushdown: c = "(2b)"; break;
  }
  return "condition " + c + " fails at " + std::to_string(i) + " " + std::to_string(j) + " " +
         std::to_string(k);
}

ValuationFunction::ValuationFunction(std::vector<Index> domain) : domain_(std::move(domain)) {
  for (std::size_t k = 1; k < domain_.size(); ++k)
    if (domain_[k - 1] >= domain_[k])
      throw PreconditionError("valuation domain must be strictly increasing");
  const auto n = domain_.size();
  table_.assign(n < 2 ? 0 : n * (n - 1) / 2, Trit::undef);
}

bool ValuationFunction::contains(Index i) const {
  return std::binary_search(domain_.begin(), domain_.end(), i);
}

std::size_t ValuationFunction::position(Index i) const {
  auto it = std::lower_bound(domain_.begin(), domain_.end(), i);
  if (it == domain_.end() || *it != i)
    throw PreconditionError("index " + std::to_string(i) + " is not in the domain");
  return static_cast<std::size_t>(it - domain_.begin());
}

Trit ValuationFunction::at(Index i, Index j) const {
  if (i >= j) throw PreconditionError("valuation entries are indexed by pairs i < j");
  return table_[slot(position(i), position(j))];
}

void ValuationFunction::set(Index i, Index j, Trit t) {
  if (i >= j) throw PreconditionError("valuation entries are indexed by pairs i < j");
  table_[slot(position(i), position(j))] = t;
}

std::optional<Violation> ValuationFunction::violation() const {
  const auto n = size();
  using C = Violation::Condition;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) {
        const Trit ab = at_position(a, b), ac = at_position(a, c), bc = at_position(b, c);
        auto fail = [&](C cond) { return Violation{cond, domain_[a], domain_[b], domain_[c]}; };
        if (ab == Trit::geq && bc == Trit::geq && ac != Trit::geq) return fail(C::transitivity);
        if (((ab == Trit::perp && ac == Trit::geq) || (ab == Trit::geq && ac == Trit::perp)) &&
            bc != Trit::perp)
          return fail(C::perp_from_common_upper);
        if (ab == Trit::perp && bc == Trit::geq && ac != Trit::perp) return fail(C::perp_pushdown);
      }
  return std::nullopt;
}

ValuationFunction ValuationFunction::restrict_to(std::span<const Index> subdomain) const {
  ValuationFunction out(std::vector<Index>(subdomain.begin(), subdomain.end()));
  for (std::size_t a = 0; a < out.size(); ++a)
    for (std::size_t b = a + 1; b < out.size(); ++b)
      out.set(out.domain_[a], out.domain_[b], at(out.domain_[a], out.domain_[b]));
  return out;
}

RelationSet rel(const ValuationFunction& p) {
  RelationSet out;
  const auto dom = p.domain();
  for (std::size_t a = 0; a < dom.size(); ++a)
    for (std::size_t b = a + 1; b < dom.size(); ++b) switch (p.at_position(a, b)) {
        case Trit::geq: out.insert(Relation::geq(dom[a], dom[b])); break;
        case Trit::perp: out.insert(Relation::perp(dom[a], dom[b])); break;
        case Trit::undef: break;
      }
  return out;
}

namespace {

// Downward >=-reachability over the mentioned indices. A derived _|_ never
// feeds a >= derivation, so the >= part is closed first and the _|_ rule is
// applied once to the relations of r.
struct Reach {
  std::vector<Index> ids;
  std::vector<boost::dynamic_bitset<>> below;  // below[a][b]: r |- x_a >= x_b

  explicit Reach(const RelationSet& r) : ids(mentioned_indices(r)) {
    const auto n = ids.size();
    below.assign(n, boost::dynamic_bitset<>(n));
    for (std::size_t a = 0; a < n; ++a) below[a].set(a);
    for (const auto& rho : r)
      if (rho.kind == RelKind::geq) below[id(rho.left)].set(id(rho.right));
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t a = 0; a < n; ++a)
        if (below[a][m]) below[a] |= below[m];
  }

  std::size_t id(Index i) const {
    return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), i) - ids.begin());
  }
};

}  // namespace

RelationSet derive_closure(const RelationSet& r) {
  const Reach reach(r);
  const auto& ids = reach.ids;
  RelationSet out;
  for (std::size_t a = 0; a < ids.size(); ++a)
    for (auto b = reach.below[a].find_first(); b != boost::dynamic_bitset<>::npos;
         b = reach.below[a].find_next(b))
      out.insert(Relation::geq(ids[a], ids[b]));
  for (const auto& rho : r) {
    if (rho.kind != RelKind::perp) continue;
    const auto& down_l = reach.below[reach.id(rho.left)];
    const auto& down_r = reach.below[reach.id(rho.right)];
    for (auto k = down_l.find_first(); k != boost::dynamic_bitset<>::npos; k = down_l.find_next(k))
      for (auto l = down_r.find_first(); l != boost::dynamic_bitset<>::npos; l = down_r.find_next(l))
        out.insert(Relation::perp(ids[k], ids[l]));
  }
  return out;
}

bool derives(const RelationSet& r, const Relation& rho) {
  if (rho.reflexive_geq()) return true;
  const auto closure = derive_closure(r);
  const Relation key = rho.kind == RelKind::perp ? Relation::perp(rho.left, rho.right) : rho;
  return closure.contains(key);
}

namespace {
std::optional<Relation> inconsistency_witness(const RelationSet& closure) {
  for (const auto& rho : closure) {
    if (rho.kind == RelKind::geq && rho.left > rho.right) return rho;
    if (rho.kind == RelKind::perp && rho.left == rho.right) return rho;
  }
  return std::nullopt;
}
}  // namespace

bool is_consistent(const RelationSet& r) {
  return !inconsistency_witness(derive_closure(r)).has_value();
}

ValuationFunction canonical_extension(const RelationSet& r, std::vector<Index> domain) {
  ValuationFunction p(std::move(domain));
  for (Index i : mentioned_indices(r))
    if (!p.contains(i))
      throw PreconditionError("relation index " + std::to_string(i) + " is outside the domain");
  const auto closure = derive_closure(r);
  if (auto bad = inconsistency_witness(closure)) {
    const char* what = bad->kind == RelKind::geq ? " >= x_" : " _|_ x_";
    throw InconsistentError("relation set derives x_" + std::to_string(bad->left) + what +
                            std::to_string(bad->right));
  }
  for (const auto& rho : closure) {
    if (rho.left == rho.right) continue;
    p.set(rho.left, rho.right, rho.kind == RelKind::geq ? Trit::geq : Trit::perp);
  }
  return p;
}

ValuationFunction merge(const ValuationFunction& p, const ValuationFunction& q) {
  std::vector<Index> common;
  std::set_intersection(p.domain().begin(), p.domain().end(), q.domain().begin(),
                        q.domain().end(), std::back_inserter(common));
  for (std::size_t a = 0; a < common.size(); ++a)
    for (std::size_t b = a + 1; b < common.size(); ++b)
      if (p.at(common[a], common[b]) != q.at(common[a], common[b]))
        throw PreconditionError("conditions disagree at " + std::to_string(common[a]) + " " +
                                std::to_string(common[b]));

  std::vector<Index> domain;
  std::set_union(p.domain().begin(), p.domain().end(), q.domain().begin(), q.domain().end(),
                 std::back_inserter(domain));
  auto r = rel(p);
  r.merge(rel(q));
  try {
    return canonical_extension(r, std::move(domain));
  } catch (const InconsistentError& e) {
    throw std::logic_error(std::string("merge of agreeing conditions is inconsistent: ") +
                           e.what());
  }
}

ValuationFunction induced_valuation(std::span<const Index> domain,
                                    std::span<const Element> family) {
  if (domain.size() != family.size())
    throw PreconditionError("family and domain have different lengths");
  ValuationFunction p(std::vector<Index>(domain.begin(), domain.end()));
  for (std::size_t a = 0; a < family.size(); ++a)
    if (family[a].is_zero())
      throw PreconditionError("family member " + std::to_string(domain[a]) + " is zero");
  for (std::size_t a = 0; a < family.size(); ++a)
    for (std::size_t b = a + 1; b < family.size(); ++b) {
      if (leq(family[b], family[a]))
        p.set(domain[a], domain[b], Trit::geq);
      else if (disjoint(family[a], family[b]))
        p.set(domain[a], domain[b], Trit::perp);
    }
  return p;
}

Presentation algebra_of(const ValuationFunction& p) {
  if (auto v = p.violation())
    throw PreconditionError("not a valuation function: " + v->describe());
  std::vector<ElementaryConstraint> forbidden;
  const auto dom = p.domain();
  for (std::size_t a = 0; a < dom.size(); ++a)
    for (std::size_t b = a + 1; b < dom.size(); ++b) {
      const Index i = dom[a], j = dom[b];
      switch (p.at_position(a, b)) {
        case Trit::perp: forbidden.push_back({{{i, true}, {j, true}}}); break;
        case Trit::geq: forbidden.push_back({{{i, false}, {j, true}}}); break;
        case Trit::undef: break;
      }
    }
  return Presentation(std::vector<Index>(dom.begin(), dom.end()), std::move(forbidden));
}

bool satisfied_by(const RelationSet& r, const Algebra& algebra) {
  return std::all_of(r.begin(), r.end(), [&](const Relation& rho) {
    const auto xi = algebra.generator(rho.left);
    const auto xj = algebra.generator(rho.right);
    return rho.kind == RelKind::geq ? leq(xj, xi) : disjoint(xi, xj);
  });
}

}  // namespace boolpres
