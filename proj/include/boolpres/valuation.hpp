#pragma once

// Valuation functions [w]^2 -> {>=, _|_, u}, the derivation relation on sets
// of atomic relations, consistency, canonical extensions and merging.

#include <boolpres/algebra.hpp>

#include <compare>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace boolpres {

enum class Trit : std::uint8_t { undef, geq, perp };

std::string_view to_string(Trit t);

enum class RelKind : std::uint8_t { geq, perp };

// x_left >= x_right, or x_left _|_ x_right. Disjointness is symmetric, so a
// perp relation is always stored with left <= right.
struct Relation {
  RelKind kind = RelKind::geq;
  Index left = 0;
  Index right = 0;

  static Relation geq(Index i, Index j) { return {RelKind::geq, i, j}; }
  static Relation perp(Index i, Index j) {
    return i <= j ? Relation{RelKind::perp, i, j} : Relation{RelKind::perp, j, i};
  }

  bool reflexive_geq() const { return kind == RelKind::geq && left == right; }

  auto operator<=>(const Relation&) const = default;
  bool operator==(const Relation&) const = default;
};

using RelationSet = std::set<Relation>;

// Indices mentioned by any relation, ascending.
std::vector<Index> mentioned_indices(const RelationSet& r);

// A failed instance of the closure conditions, for i < j < k.
struct Violation {
  enum class Condition { transitivity, perp_from_common_upper, perp_pushdown };
  Condition condition;
  Index i, j, k;

  std::string describe() const;
};

class ValuationFunction {
 public:
  ValuationFunction() = default;
  // All-undefined on `domain`, which must be strictly increasing.
  explicit ValuationFunction(std::vector<Index> domain);

  std::span<const Index> domain() const { return domain_; }
  std::size_t size() const { return domain_.size(); }
  bool contains(Index i) const;

  // Entry for i < j, both in the domain.
  Trit at(Index i, Index j) const;
  void set(Index i, Index j, Trit t);

  // Entry by domain positions a < b.
  Trit at_position(std::size_t a, std::size_t b) const { return table_[slot(a, b)]; }

  std::optional<Violation> violation() const;
  bool is_valid() const { return !violation().has_value(); }

  ValuationFunction restrict_to(std::span<const Index> subdomain) const;

  bool operator==(const ValuationFunction&) const = default;

 private:
  std::size_t slot(std::size_t a, std::size_t b) const {
    // row-major upper triangle
    return a * size() - a * (a + 1) / 2 + (b - a - 1);
  }
  std::size_t position(Index i) const;

  std::vector<Index> domain_;
  std::vector<Trit> table_;
};

RelationSet rel(const ValuationFunction& p);

// Least set containing r, closed under reflexivity and chaining of >= and
// under x_k _|_ x_l whenever x_a _|_ x_b is in r with r |- x_a >= x_k and
// r |- x_b >= x_l. Reflexive facts are included for every mentioned index.
RelationSet derive_closure(const RelationSet& r);

bool derives(const RelationSet& r, const Relation& rho);

// No derived x_j >= x_i with i < j and no derived x_k _|_ x_k.
bool is_consistent(const RelationSet& r);

// p(i,j) = >= iff r |- x_i >= x_j, _|_ iff r |- x_i _|_ x_j, u otherwise.
ValuationFunction canonical_extension(const RelationSet& r, std::vector<Index> domain);

// Canonical extension of rel p u rel q over dom p u dom q. Throws
// PreconditionError if p and q disagree on their common domain.
ValuationFunction merge(const ValuationFunction& p, const ValuationFunction& q);

// The function [w]^2 -> 3 induced by a family of nonzero elements indexed by
// `domain` (same length).
ValuationFunction induced_valuation(std::span<const Index> domain,
                                    std::span<const Element> family);

// A(p) = Fr w / N(p): forbids u_j.u_i where p(i,j) = _|_ and u_j.-u_i where
// p(i,j) = >=.
Presentation algebra_of(const ValuationFunction& p);

// Relations of r holding between the canonical generators of `algebra`.
bool satisfied_by(const RelationSet& r, const Algebra& algebra);

}  // namespace boolpres
