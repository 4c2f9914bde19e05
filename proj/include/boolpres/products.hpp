#pragma once

// Reduced products and ultraproducts over filters on finite index sets.

#include <boolpres/algebra.hpp>
#include <boolpres/theory_t.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace boolpres {

inline constexpr std::size_t kMaxFactors = 16;

using IndexSubset = std::uint32_t;  // bit m set iff factor m belongs

// A proper filter on {0..size-1}. On a finite set every filter is principal,
// generated by the intersection of its members (its kernel).
class FilterOnFinite {
 public:
  static FilterOnFinite trivial(std::size_t size);
  static FilterOnFinite principal(std::size_t size, std::size_t point);
  // The filter generated by `generators`; throws if it contains the empty set.
  static FilterOnFinite generated_by(std::size_t size, std::span<const IndexSubset> generators);
  // Validates that `members` is exactly a filter.
  static FilterOnFinite from_members(std::size_t size, std::span<const IndexSubset> members);

  std::size_t size() const { return size_; }
  bool contains(IndexSubset s) const { return (s & kernel_) == kernel_; }
  IndexSubset kernel() const { return kernel_; }
  std::vector<IndexSubset> members() const;
  bool is_ultrafilter() const;
  std::optional<std::size_t> principal_point() const;

 private:
  FilterOnFinite(std::size_t size, IndexSubset kernel) : size_(size), kernel_(kernel) {}

  std::size_t size_;
  IndexSubset kernel_;
};

using Tuple = std::vector<Element>;

// prod A_m / F. Classes are represented by their least tuple: coordinates
// outside the kernel of F set to zero. The quotient is materialized as a
// presented algebra with one generator per (kernel factor, atom) pair,
// forbidden to overlap or to be jointly absent.
class ReducedProduct {
 public:
  ReducedProduct(std::vector<std::shared_ptr<const Algebra>> factors, FilterOnFinite filter);

  const std::vector<std::shared_ptr<const Algebra>>& factors() const { return factors_; }
  const FilterOnFinite& filter() const { return filter_; }

  // Atoms of the quotient, as (factor, atom index) pairs in factor order.
  const std::vector<std::pair<std::size_t, std::size_t>>& atom_labels() const { return labels_; }
  std::size_t atom_count() const { return labels_.size(); }

  // a =_F b iff {m : a_m = b_m} in F.
  bool equivalent(const Tuple& a, const Tuple& b) const;
  Tuple canonical(const Tuple& a) const;
  Tuple meet(const Tuple& a, const Tuple& b) const;
  Tuple join(const Tuple& a, const Tuple& b) const;
  Tuple complement(const Tuple& a) const;

  // Materialized quotient; throws PreconditionError above kMaxGenerators atoms.
  const std::shared_ptr<const Algebra>& algebra() const;
  Element quotient(const Tuple& a) const;

  // Every class, by canonical representative. Limited to 2^20 classes.
  std::vector<Tuple> classes() const;

 private:
  void check_tuple(const Tuple& a) const;

  std::vector<std::shared_ptr<const Algebra>> factors_;
  FilterOnFinite filter_;
  std::vector<std::pair<std::size_t, std::size_t>> labels_;
  mutable std::shared_ptr<const Algebra> algebra_;
};

// Verifies that [a] |-> a_{i0} is a bijection onto the factor at the
// principal point preserving meet, join and complement, by exhaustive tables.
struct IsomorphismCheck {
  bool bijective = false;
  bool preserves_operations = false;
  std::size_t classes = 0;
  bool ok() const { return bijective && preserves_operations; }
};

IsomorphismCheck check_principal_isomorphism(const ReducedProduct& product);

// Equation-level Los check for generators: x_i _|_ x_j (resp. x_i >= x_j)
// holds in the product iff the set of factors where it holds is in F.
bool holds_in_product(const ReducedProduct& product, const std::vector<Tuple>& generators,
                      std::size_t i, std::size_t j, bool perp);

struct DensityComparison {
  std::uint64_t lhs = 0;  // pi(prod A_m / F)
  std::uint64_t rhs = 0;  // |prod pi(A_m) / F|
  bool holds = false;     // lhs <= rhs
  bool equal = false;
};

DensityComparison compare_densities(std::span<const std::shared_ptr<const Algebra>> factors,
                                    const FilterOnFinite& filter);

// prod M_m / D for D principal. L, ~, v, x are computed on tuples and
// transported to the materialized quotient.
TModelFragment ultraproduct_model(const std::vector<TModelFragment>& models,
                                  const FilterOnFinite& ultrafilter);

}  // namespace boolpres
