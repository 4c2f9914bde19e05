#include <boolpres/invariants.hpp>

#include <algorithm>
#include <limits>

namespace boolpres {

namespace {

constexpr auto kNone = std::numeric_limits<std::size_t>::max();

// For each atom of the target subalgebra, the least candidate position lying
// (nonzero) below it, or kNone. A nonzero candidate lies below at most one
// such atom since they are pairwise disjoint, so the covering problem splits
// into independent per-block choices.
std::vector<std::size_t> least_cover(std::span<const Element> candidates, const Algebra& algebra,
                                     std::span<const Element> target_gens) {
  const auto blocks = subalgebra_atoms(algebra, target_gens);
  std::vector<std::size_t> best(blocks.size(), kNone);
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    if (candidates[c].is_zero()) continue;
    for (std::size_t b = 0; b < blocks.size(); ++b)
      if (best[b] == kNone && leq(candidates[c], blocks[b])) {
        best[b] = c;
        break;
      }
  }
  return best;
}

}  // namespace

bool is_dense_for(std::span<const Element> candidates, const Algebra& algebra,
                  std::span<const Element> target_gens) {
  const auto cover = least_cover(candidates, algebra, target_gens);
  return std::none_of(cover.begin(), cover.end(), [](std::size_t c) { return c == kNone; });
}

DenseSubfamily min_dense_subfamily(std::span<const Element> candidates, const Algebra& algebra,
                                   std::span<const Element> target_gens) {
  auto cover = least_cover(candidates, algebra, target_gens);
  if (std::any_of(cover.begin(), cover.end(), [](std::size_t c) { return c == kNone; }))
    throw PreconditionError("candidates are not dense for the target subalgebra");
  std::sort(cover.begin(), cover.end());
  return {cover.size(), std::move(cover)};
}

std::size_t d_topological(const Algebra& algebra) {
  if (algebra.degenerate()) throw PreconditionError("degenerate algebra has no ultrafilters");
  return algebra.atom_count();
}

std::size_t pi_weight(const Algebra& algebra) {
  if (algebra.degenerate()) throw PreconditionError("degenerate algebra");
  std::vector<Element> atoms;
  for (std::size_t k = 0; k < algebra.atom_count(); ++k) atoms.push_back(algebra.atom(k));
  // the atoms generate the whole algebra
  return min_dense_subfamily(atoms, algebra, atoms).size;
}

Element apply_atom_map(std::span<const std::size_t> atom_map, const Element& a) {
  const auto& alg = a.algebra();
  AtomSet out(alg.atom_count());
  for (std::size_t t = 0; t < atom_map.size(); ++t)
    if (a.atoms()[atom_map[t]]) out.set(t);
  return alg.from_atoms(std::move(out));
}

bool is_homomorphism_on(const Algebra& algebra, std::span<const std::size_t> atom_map) {
  const auto n = algebra.atom_count();
  if (atom_map.size() != n) return false;
  if (!apply_atom_map(atom_map, algebra.zero()).is_zero()) return false;
  if (!apply_atom_map(atom_map, algebra.one()).is_one()) return false;
  std::vector<Element> image;
  for (std::size_t k = 0; k < n; ++k) {
    const auto a = algebra.atom(k);
    image.push_back(apply_atom_map(atom_map, a));
    if (apply_atom_map(atom_map, ~a) != ~image.back()) return false;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = k + 1; l < n; ++l) {
      if (!disjoint(image[k], image[l])) return false;
      if (apply_atom_map(atom_map, algebra.atom(k) | algebra.atom(l)) != (image[k] | image[l]))
        return false;
    }
  return sum(algebra, image).is_one();
}

std::uint64_t count_endomorphisms(const Algebra& algebra) {
  const auto n = algebra.atom_count();
  if (n > kMaxCountedAtoms)
    throw PreconditionError("endomorphism counting is limited to " +
                            std::to_string(kMaxCountedAtoms) + " atoms");
  std::vector<std::size_t> f(n, 0);
  std::uint64_t count = 0;
  while (true) {
    if (is_homomorphism_on(algebra, f)) ++count;
    std::size_t k = 0;
    while (k < n && ++f[k] == n) f[k++] = 0;
    if (k == n) break;
  }
  return count;
}

std::uint64_t count_ideals(const Algebra& algebra) {
  const auto n = algebra.atom_count();
  if (n > kMaxCountedAtoms)
    throw PreconditionError("ideal counting is limited to " + std::to_string(kMaxCountedAtoms) +
                            " atoms");
  return std::uint64_t{1} << n;
}

}  // namespace boolpres
