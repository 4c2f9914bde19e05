#include <boolpres/algebra.hpp>

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace boolpres {

Presentation::Presentation(std::vector<Index> generators,
                           std::vector<ElementaryConstraint> forbidden)
    : generators_(std::move(generators)), forbidden_(std::move(forbidden)) {
  if (generators_.size() > kMaxGenerators)
    throw PreconditionError("presentation has " + std::to_string(generators_.size()) +
                            " generators; at most " + std::to_string(kMaxGenerators) +
                            " are supported");
  for (std::size_t k = 1; k < generators_.size(); ++k)
    if (generators_[k - 1] >= generators_[k])
      throw PreconditionError("generators must be strictly increasing");
  patterns_.reserve(forbidden_.size());
  for (const auto& e : forbidden_) {
    if (e.empty()) throw PreconditionError("forbidden constraint with empty domain");
    patterns_.push_back(compile(e));
  }
}

std::optional<std::size_t> Presentation::find(Index i) const {
  auto it = std::lower_bound(generators_.begin(), generators_.end(), i);
  if (it == generators_.end() || *it != i) return std::nullopt;
  return static_cast<std::size_t>(it - generators_.begin());
}

std::size_t Presentation::position(Index i) const {
  if (auto pos = find(i)) return *pos;
  throw PreconditionError("index " + std::to_string(i) + " is not a generator");
}

Presentation::Pattern Presentation::compile(const ElementaryConstraint& e) const {
  Pattern p;
  const auto n = size();
  for (const auto& [i, b] : e.bits) {
    const auto pos = position(i);
    const AssignmentCode bit = AssignmentCode{1} << (n - 1 - pos);
    p.mask |= bit;
    if (b) p.value |= bit;
    p.last = std::max(p.last, pos);
  }
  return p;
}

bool Presentation::violates(AssignmentCode a) const {
  return std::any_of(patterns_.begin(), patterns_.end(),
                     [a](const Pattern& p) { return (a & p.mask) == p.value; });
}

// Depth-first over positions in generator order, 0 before 1, pruning as soon
// as a forbidden pattern is fully assigned. `visit` returns true to stop.
template <typename Visit>
bool Presentation::search(const Pattern* fixed, Visit&& visit) const {
  const auto n = size();
  std::vector<std::vector<const Pattern*>> closing(n);
  for (const auto& p : patterns_) closing[p.last].push_back(&p);

  AssignmentCode code = 0;
  auto rec = [&](auto&& self, std::size_t pos) -> bool {
    if (pos == n) return visit(code);
    const AssignmentCode bit = AssignmentCode{1} << (n - 1 - pos);
    for (int b = 0; b < 2; ++b) {
      if (fixed && (fixed->mask & bit) && (((fixed->value & bit) != 0) != (b == 1)))
        continue;
      if (b) code |= bit; else code &= ~bit;
      const bool bad = std::any_of(closing[pos].begin(), closing[pos].end(),
                                   [&](const Pattern* p) { return (code & p->mask) == p->value; });
      if (!bad && self(self, pos + 1)) return true;
    }
    code &= ~bit;
    return false;
  };
  return rec(rec, 0);
}

std::vector<AssignmentCode> Presentation::atoms() const {
  std::vector<AssignmentCode> out;
  search(nullptr, [&](AssignmentCode a) {
    out.push_back(a);
    return false;
  });
  return out;
}

bool Presentation::satisfiable(const ElementaryConstraint& partial) const {
  const Pattern fixed = compile(partial);
  return search(&fixed, [](AssignmentCode) { return true; });
}

std::string Presentation::assignment_string(AssignmentCode a) const {
  std::string s(size(), '0');
  for (std::size_t k = 0; k < size(); ++k)
    if (value(a, k)) s[k] = '1';
  return s;
}

// ---------------------------------------------------------------------------

Algebra::Algebra(Key, Presentation pres) : pres_(std::move(pres)), atoms_(pres_.atoms()) {}

std::shared_ptr<const Algebra> Algebra::make(Presentation pres) {
  return std::make_shared<const Algebra>(Key{}, std::move(pres));
}

Element Algebra::zero() const { return {shared_from_this(), AtomSet(atoms_.size())}; }

Element Algebra::one() const {
  AtomSet s(atoms_.size());
  s.set();
  return {shared_from_this(), std::move(s)};
}

Element Algebra::atom(std::size_t k) const {
  if (k >= atoms_.size()) throw PreconditionError("atom index out of range");
  AtomSet s(atoms_.size());
  s.set(k);
  return {shared_from_this(), std::move(s)};
}

Element Algebra::literal(Index i, bool value) const {
  const auto pos = pres_.position(i);
  AtomSet s(atoms_.size());
  for (std::size_t k = 0; k < atoms_.size(); ++k)
    if (pres_.value(atoms_[k], pos) == value) s.set(k);
  return {shared_from_this(), std::move(s)};
}

Element Algebra::generator(Index i) const { return literal(i, true); }

std::vector<Element> Algebra::generator_family() const {
  std::vector<Element> out;
  out.reserve(pres_.size());
  for (Index i : pres_.generators()) out.push_back(generator(i));
  return out;
}

Element Algebra::product(const ElementaryConstraint& e) const {
  auto out = one();
  for (const auto& [i, b] : e.bits) out = out & literal(i, b);
  return out;
}

Element Algebra::from_atoms(AtomSet atoms) const {
  if (atoms.size() != atoms_.size()) throw PreconditionError("atom set has the wrong size");
  return {shared_from_this(), std::move(atoms)};
}

std::optional<std::size_t> Algebra::atom_index(AssignmentCode a) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), a);
  if (it == atoms_.end() || *it != a) return std::nullopt;
  return static_cast<std::size_t>(it - atoms_.begin());
}

// ---------------------------------------------------------------------------

Element::Element(std::shared_ptr<const Algebra> algebra, AtomSet atoms)
    : algebra_(std::move(algebra)), atoms_(std::move(atoms)) {
  assert(algebra_ && atoms_.size() == algebra_->atom_count());
}

bool Element::same_algebra(const Element& other) const {
  return algebra_ == other.algebra_ || algebra_->presentation() == other.algebra_->presentation();
}

namespace {
void require_same(const Element& a, const Element& b) {
  if (!a.same_algebra(b)) throw PreconditionError("elements of different presentations");
}
}  // namespace

Element operator&(const Element& a, const Element& b) {
  require_same(a, b);
  return {a.algebra_, a.atoms_ & b.atoms_};
}

Element operator|(const Element& a, const Element& b) {
  require_same(a, b);
  return {a.algebra_, a.atoms_ | b.atoms_};
}

Element operator-(const Element& a, const Element& b) {
  require_same(a, b);
  return {a.algebra_, a.atoms_ - b.atoms_};
}

Element Element::operator~() const { return {algebra_, ~atoms_}; }

bool Element::operator==(const Element& other) const {
  return same_algebra(other) && atoms_ == other.atoms_;
}

bool leq(const Element& a, const Element& b) {
  require_same(a, b);
  return a.atoms().is_subset_of(b.atoms());
}

bool disjoint(const Element& a, const Element& b) {
  require_same(a, b);
  return !a.atoms().intersects(b.atoms());
}

Element sum(const Algebra& algebra, std::span<const Element> family) {
  auto out = algebra.zero();
  for (const auto& x : family) out = out | x;
  return out;
}

Element product(const Algebra& algebra, std::span<const Element> family) {
  auto out = algebra.one();
  for (const auto& x : family) out = out & x;
  return out;
}

bool in_ideal_generated_by(const Element& target, std::span<const Element> gens) {
  return leq(target, sum(target.algebra(), gens));
}

std::vector<Element> subalgebra_atoms(const Algebra& algebra, std::span<const Element> gens) {
  const auto n = algebra.atom_count();
  for (const auto& g : gens)
    if (!(g.algebra_ptr().get() == &algebra || g.algebra().presentation() == algebra.presentation()))
      throw PreconditionError("elements of different presentations");

  // signature of atom k = which generators contain it
  std::map<boost::dynamic_bitset<>, std::size_t> block_of;
  std::vector<AtomSet> blocks;
  boost::dynamic_bitset<> sig(gens.size());
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t g = 0; g < gens.size(); ++g) sig[g] = gens[g].atoms()[k];
    auto [it, fresh] = block_of.try_emplace(sig, blocks.size());
    if (fresh) blocks.emplace_back(n);
    blocks[it->second].set(k);
  }
  std::vector<Element> out;
  out.reserve(blocks.size());
  for (auto& b : blocks) out.push_back(algebra.from_atoms(std::move(b)));
  return out;
}

bool in_subalgebra_generated_by(const Element& target, std::span<const Element> gens) {
  for (const auto& g : gens) require_same(target, g);
  for (const auto& block : subalgebra_atoms(target.algebra(), gens)) {
    const auto inside = block.atoms() & target.atoms();
    if (inside.any() && inside != block.atoms()) return false;
  }
  return true;
}

}  // namespace boolpres
