#include <boolpres/theorem_b.hpp>

#include <algorithm>
#include <random>
#include <set>

namespace boolpres {

namespace {

void validate(const TreeParams& p) {
  if (p.depth < 1 || p.depth > kMaxTreeDepth)
    throw PreconditionError("depth must be between 1 and " + std::to_string(kMaxTreeDepth));
  if (p.widths.size() != p.depth) throw PreconditionError("need one width per level");
  for (auto w : p.widths)
    if (w < 1) throw PreconditionError("level widths must be at least 1");
  if (p.branches.empty()) throw PreconditionError("no branches");
  std::set<Branch> seen;
  for (const auto& f : p.branches) {
    if (f.size() != p.depth) throw PreconditionError("branch length differs from depth");
    for (std::size_t n = 0; n < p.depth; ++n)
      if (f[n] >= p.widths[n]) throw PreconditionError("branch value out of range");
    if (!seen.insert(f).second) throw PreconditionError("duplicate branch");
  }
}

std::string node_string(const TreeNode& t) {
  std::string out = "[";
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(t[k]);
  }
  return out + "]";
}

void check_branch(const BConstruction& c, std::size_t i) {
  if (i >= c.branches()) throw PreconditionError("branch index out of range");
}

bool prefix_equal(const Branch& a, const Branch& b, std::size_t n) {
  return std::equal(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(n), b.begin());
}

}  // namespace

FreeElement BConstruction::remainder(std::size_t i) const {
  auto r = FreeElement::constant(true);
  for (const auto& level : levels.at(i)) r = r & ~level.s;
  return r;
}

BConstruction build_construction(const TreeParams& params, std::uint64_t seed) {
  validate(params);
  BConstruction c;
  c.params = params;
  c.seed = seed;

  // Branches through each node, in branch order.
  std::map<TreeNode, std::vector<std::size_t>> through;
  for (std::size_t i = 0; i < params.branches.size(); ++i)
    for (std::size_t n = 0; n < params.depth; ++n)
      through[TreeNode(params.branches[i].begin(), params.branches[i].begin() + static_cast<std::ptrdiff_t>(n))]
          .push_back(i);

  std::size_t total = 0;
  for (const auto& [t, users] : through) total += 3 * users.size();
  if (total > kMaxFreeSupport)
    throw PreconditionError("construction needs " + std::to_string(total) + " generators, limit is " +
                            std::to_string(kMaxFreeSupport));

  std::mt19937_64 rng(seed);
  c.levels.assign(params.branches.size(), std::vector<BranchLevel>(params.depth));
  VarId next = 0;
  for (const auto& [t, users] : through) {
    auto& pool = c.pools[t];
    for (std::size_t k = 0; k < 2 * users.size(); ++k) {
      pool.x.push_back(next++);
      c.names.push_back("X" + node_string(t) + "." + std::to_string(k));
    }
    for (std::size_t k = 0; k < users.size(); ++k) {
      pool.z.push_back(next++);
      c.names.push_back("Z" + node_string(t) + "." + std::to_string(k));
    }
    auto xs = pool.x;
    auto zs = pool.z;
    std::shuffle(xs.begin(), xs.end(), rng);
    std::shuffle(zs.begin(), zs.end(), rng);
    for (std::size_t r = 0; r < users.size(); ++r) {
      auto& level = c.levels[users[r]][t.size()];
      level.x = xs[2 * r];
      level.y = xs[2 * r + 1];
      level.z = zs[r];
    }
  }

  for (auto& branch : c.levels) {
    auto below = FreeElement::constant(true);  // prod_{m<n} -s_m
    auto b = FreeElement::constant(false);
    for (auto& level : branch) {
      level.s = FreeElement::variable(level.x) | ~FreeElement::variable(level.y);
      level.d = level.s & below;
      below = below & ~level.s;
      b = b | (FreeElement::variable(level.z) & level.d);
    }
    c.b.push_back(std::move(b));
  }
  return c;
}

bool evaluate_b(const BConstruction& c, std::size_t i, const VarAssignment& a) {
  check_branch(c, i);
  auto value = [&](VarId v) {
    auto it = a.find(v);
    return it != a.end() && it->second;
  };
  bool earlier = false;  // some s_m with m < n holds
  for (const auto& level : c.levels[i]) {
    const bool s = value(level.x) || !value(level.y);
    if (s && !earlier && value(level.z)) return true;
    earlier = earlier || s;
  }
  return false;
}

PartitionReport check_partition(const BConstruction& c, std::size_t i) {
  check_branch(c, i);
  const auto& levels = c.levels[i];
  PartitionReport r;
  r.pairwise_disjoint = true;
  r.all_nonzero = true;
  auto total = FreeElement::constant(false);
  for (std::size_t n = 0; n < levels.size(); ++n) {
    if (levels[n].d.is_zero()) r.all_nonzero = false;
    for (std::size_t m = 0; m < n; ++m)
      if (!disjoint(levels[n].d, levels[m].d)) r.pairwise_disjoint = false;
    total = total | levels[n].d;
  }
  r.remainder = c.remainder(i);
  r.sum_is_complement_of_remainder = total == ~r.remainder;
  r.remainder_nonzero = !r.remainder.is_zero();
  return r;
}

bool diverges_at(const BConstruction& c, std::size_t i, std::span<const std::size_t> J, std::size_t n) {
  check_branch(c, i);
  if (n > c.params.depth) throw PreconditionError("level beyond depth");
  const auto& fi = c.params.branches[i];
  return std::none_of(J.begin(), J.end(), [&](std::size_t j) {
    check_branch(c, j);
    return prefix_equal(fi, c.params.branches[j], n);
  });
}

IndependenceResult check_ideal_independence(const BConstruction& c, std::size_t i,
                                            std::span<const std::size_t> J) {
  check_branch(c, i);
  for (auto j : J) {
    check_branch(c, j);
    if (j == i) throw PreconditionError("i belongs to J");
  }
  IndependenceResult r;
  for (std::size_t n = 0; n < c.params.depth && !r.predicted; ++n) r.predicted = diverges_at(c, i, J, n);

  std::vector<FreeElement> zeros;
  for (auto j : J) zeros.push_back(c.b[j]);
  const FreeElement ones[] = {c.b[i]};
  r.witness = find_assignment(ones, zeros);
  r.independent = r.witness.has_value();
  if (r.witness) {
    r.witness_verified = evaluate_b(c, i, *r.witness) &&
                         std::none_of(J.begin(), J.end(), [&](std::size_t j) { return evaluate_b(c, j, *r.witness); });
  }
  return r;
}

std::optional<SplitWitness> split_witness(const BConstruction& c, std::size_t i,
                                            std::span<const std::size_t> J, std::size_t n) {
  if (n >= c.params.depth) throw PreconditionError("level must be below depth");
  if (!diverges_at(c, i, J, n)) return std::nullopt;

  const auto depth = c.params.depth;
  const auto& li = c.levels[i][n];
  SplitWitness w;
  w.n = n;
  w.m.assign(J.size(), 0);
  // Lexicographic search over m in [0, depth)^|J|.
  for (;;) {
    auto p = li.d;
    for (std::size_t k = 0; k < J.size(); ++k) p = p & c.levels[J[k]][w.m[k]].d;
    if (!p.is_zero()) {
      w.p = std::move(p);
      w.nonzero = true;
      break;
    }
    std::size_t k = J.size();
    while (k > 0 && w.m[k - 1] + 1 == depth) w.m[--k] = 0;
    if (k == 0) break;
    ++w.m[k - 1];
  }
  if (!w.nonzero) return w;

  w.bi_below_z = leq(c.b[i] & w.p, FreeElement::variable(li.z));
  w.bj_below_z = true;
  w.z_distinct = true;
  for (std::size_t k = 0; k < J.size(); ++k) {
    const auto& lj = c.levels[J[k]][w.m[k]];
    if (!leq(c.b[J[k]] & w.p, FreeElement::variable(lj.z))) w.bj_below_z = false;
    if (lj.z == li.z) w.z_distinct = false;
  }
  return w;
}

// ---------------------------------------------------------------------------

Element FiniteHomomorphism::operator()(const Element& a) const {
  if (a.algebra_ptr() != from && !(a.algebra().presentation() == from->presentation()))
    throw PreconditionError("element outside the domain of h");
  auto out = to->zero();
  for (auto k = a.atoms().find_first(); k != AtomSet::npos; k = a.atoms().find_next(k)) out = out | atom_images[k];
  return out;
}

bool is_partition_of_unity(std::span<const Element> family) {
  if (family.empty()) return false;
  auto total = family.front().algebra().zero();
  for (const auto& c : family) {
    if (!disjoint(total, c)) return false;
    total = total | c;
  }
  return total.is_one();
}

bool is_homomorphism(const FiniteHomomorphism& h) {
  if (!h.from || !h.to || h.atom_images.size() != h.from->atom_count()) return false;
  for (const auto& e : h.atom_images)
    if (!(e.algebra_ptr() == h.to || e.algebra().presentation() == h.to->presentation())) return false;
  if (h.atom_images.empty()) return h.to->degenerate();
  return is_partition_of_unity(h.atom_images);
}

bool lemma81_check(const FiniteHomomorphism& h, std::span<const Element> partition,
                   std::span<const Element> xs) {
  if (!is_homomorphism(h)) throw PreconditionError("h is not a homomorphism");
  if (partition.size() != xs.size()) throw PreconditionError("need one x per partition member");
  if (!is_partition_of_unity(partition)) throw PreconditionError("{c_n} is not a partition of unity");
  std::vector<Element> images;
  for (const auto& c : partition) images.push_back(h(c));
  if (!is_partition_of_unity(images)) throw PreconditionError("{h(c_n)} is not a partition of unity");

  auto inner = h.from->zero();
  auto outer = h.to->zero();
  for (std::size_t n = 0; n < partition.size(); ++n) {
    const auto term = xs[n] & partition[n];
    inner = inner | term;
    outer = outer | h(term);
  }
  return h(inner) == outer;
}

namespace {

// Which atoms of C are disjoint from a.
std::vector<bool> annihilated_blocks(const std::vector<Element>& blocks, const Element& a) {
  std::vector<bool> out;
  out.reserve(blocks.size());
  for (const auto& b : blocks) out.push_back(disjoint(b, a));
  return out;
}

}  // namespace

bool equivalent_over(std::span<const Element> subalgebra_gens, const Element& x, const Element& y) {
  if (!x.same_algebra(y)) throw PreconditionError("x and y lie in different algebras");
  const auto blocks = subalgebra_atoms(x.algebra(), subalgebra_gens);
  return annihilated_blocks(blocks, x) == annihilated_blocks(blocks, y) &&
         annihilated_blocks(blocks, ~x) == annihilated_blocks(blocks, ~y);
}

Lemma82 lemma82_check(std::span<const Element> subalgebra_gens, const Element& x, const Element& y) {
  if (!equivalent_over(subalgebra_gens, x, y)) return Lemma82::not_applicable;
  const auto target = x | ~y;
  for (const auto& b : subalgebra_atoms(x.algebra(), subalgebra_gens))
    if (disjoint(b, target)) return Lemma82::fails;
  return Lemma82::holds;
}

}  // namespace boolpres
