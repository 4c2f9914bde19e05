#pragma once

// Density-type invariants of finite presented algebras.

#include <boolpres/algebra.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace boolpres {

// Every nonzero element of the subalgebra generated by `target_gens` has a
// nonzero candidate below it.
bool is_dense_for(std::span<const Element> candidates, const Algebra& algebra,
                  std::span<const Element> target_gens);

struct DenseSubfamily {
  std::size_t size = 0;
  std::vector<std::size_t> witness;  // ascending candidate positions
};

// A minimum-size dense subfamily, lexicographically least among those of
// that size. Throws PreconditionError if `candidates` is not dense.
DenseSubfamily min_dense_subfamily(std::span<const Element> candidates, const Algebra& algebra,
                                   std::span<const Element> target_gens);

// Least size of a dense subset of the Stone space; the atom count.
std::size_t d_topological(const Algebra& algebra);

// Least size of a dense subset of A \ {0}; also the atom count.
std::size_t pi_weight(const Algebra& algebra);

inline constexpr std::size_t kMaxCountedAtoms = 6;

// n^n, confirmed by checking that each of the n^n maps on atoms induces a
// homomorphism a |-> {t : f(t) in a}.
std::uint64_t count_endomorphisms(const Algebra& algebra);

// 2^n: every ideal of a finite algebra is principal.
std::uint64_t count_ideals(const Algebra& algebra);

// The homomorphism induced by a map on atoms, evaluated at `a`.
Element apply_atom_map(std::span<const std::size_t> atom_map, const Element& a);

bool is_homomorphism_on(const Algebra& algebra, std::span<const std::size_t> atom_map);

}  // namespace boolpres
