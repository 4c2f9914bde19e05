#pragma once

// Depth-N truncation of the tree construction of elements
//   s_in = x_in + -y_in,  d_in = s_in . prod_{m<n} -s_im,  b_i = sum_{n<N} z_in . d_in
// over a free algebra, with the partition and ideal-independence checks, and
// the two finite lemmas about homomorphisms and quantifier-free types.

#include <boolpres/algebra.hpp>
#include <boolpres/free_algebra.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace boolpres {

inline constexpr std::size_t kMaxTreeDepth = 4;

using Branch = std::vector<std::size_t>;  // f_i restricted to the depth
using TreeNode = std::vector<std::size_t>;

struct TreeParams {
  std::size_t depth = 0;
  std::vector<std::size_t> widths;
  std::vector<Branch> branches;
};

// Generators set aside for one tree node t: X_t and Z_t.
struct NodePools {
  std::vector<VarId> x;
  std::vector<VarId> z;
};

struct BranchLevel {
  VarId x, y, z;
  FreeElement s, d;
};

struct BConstruction {
  TreeParams params;
  std::uint64_t seed = 0;
  std::map<TreeNode, NodePools> pools;
  std::vector<std::vector<BranchLevel>> levels;  // [branch][n]
  std::vector<FreeElement> b;
  std::vector<std::string> names;  // by VarId

  std::size_t branches() const { return b.size(); }
  // prod_{n<N} -s_in, the part of unity the truncated d_in miss.
  FreeElement remainder(std::size_t i) const;
};

// Pools are allocated per node in prefix order. Each branch through t gets
// its own pair (x, y) from X_t and its own z from Z_t, shuffled by `seed`.
// Throws PreconditionError past kMaxFreeSupport variables.
BConstruction build_construction(const TreeParams& params, std::uint64_t seed);

// b_i at an assignment, evaluated from the variables through the defining
// formulas rather than the stored truth tables.
bool evaluate_b(const BConstruction& c, std::size_t i, const VarAssignment& a);

struct PartitionReport {
  bool pairwise_disjoint = false;
  bool all_nonzero = false;
  bool sum_is_complement_of_remainder = false;
  bool remainder_nonzero = false;
  FreeElement remainder;

  bool ok() const { return pairwise_disjoint && all_nonzero && sum_is_complement_of_remainder; }
};

PartitionReport check_partition(const BConstruction& c, std::size_t i);

// f_i|n differs from f_j|n for every j in J.
bool diverges_at(const BConstruction& c, std::size_t i, std::span<const std::size_t> J,
                 std::size_t n);

struct IndependenceResult {
  bool independent = false;           // b_i is not below sum_{j in J} b_j
  std::optional<VarAssignment> witness;  // b_i = 1, all b_j = 0
  bool witness_verified = false;      // checked by evaluate_b
  bool predicted = false;             // some n < N with diverges_at(n)
};

IndependenceResult check_ideal_independence(const BConstruction& c, std::size_t i,
                                            std::span<const std::size_t> J);

// The element p = d_in . prod_{j in J} d_{j m(j)} with the least m(j) making it
// nonzero, together with the bounds b_i.p <= z_in and b_j.p <= z_{j m(j)}.
struct SplitWitness {
  std::size_t n = 0;
  std::vector<std::size_t> m;
  FreeElement p;
  bool nonzero = false;
  bool bi_below_z = false;
  bool bj_below_z = false;
  bool z_distinct = false;

  bool ok() const { return nonzero && bi_below_z && bj_below_z && z_distinct; }
};

// nullopt unless diverges_at(c, i, J, n).
std::optional<SplitWitness> split_witness(const BConstruction& c, std::size_t i,
                                            std::span<const std::size_t> J, std::size_t n);

// ---------------------------------------------------------------------------

// A map between finite algebras given by the images of the atoms of `from`.
struct FiniteHomomorphism {
  std::shared_ptr<const Algebra> from;
  std::shared_ptr<const Algebra> to;
  std::vector<Element> atom_images;

  Element operator()(const Element& a) const;
};

// Atom images pairwise disjoint with join 1.
bool is_homomorphism(const FiniteHomomorphism& h);
bool is_partition_of_unity(std::span<const Element> family);

// h(sum x_n . c_n) = sum h(x_n . c_n). Throws PreconditionError unless h is
// a homomorphism and both {c_n} and {h(c_n)} are partitions of unity.
bool lemma81_check(const FiniteHomomorphism& h, std::span<const Element> partition,
                   std::span<const Element> xs);

// I_C(x) = I_C(y) and I_C(-x) = I_C(-y), C the subalgebra generated by
// `subalgebra_gens`.
bool equivalent_over(std::span<const Element> subalgebra_gens, const Element& x, const Element& y);

enum class Lemma82 { holds, fails, not_applicable };

// For x ~_C y: no nonzero c in C is disjoint from x + -y.
Lemma82 lemma82_check(std::span<const Element> subalgebra_gens, const Element& x, const Element& y);

}  // namespace boolpres
