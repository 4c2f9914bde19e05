#pragma once

// Finite fragments (A, L, <=_L, ~, v, x) of the theory T and the standard
// enrichment of A(p).

#include <boolpres/algebra.hpp>
#include <boolpres/valuation.hpp>

#include <memory>
#include <string>
#include <vector>

namespace boolpres {

// v is stored as a table over all elements, so the algebra must stay small.
inline constexpr std::size_t kMaxModelAtoms = 20;

// Entry of `v` for an element with no level.
inline constexpr std::size_t kUndefinedLevel = static_cast<std::size_t>(-1);

using ElementCode = std::uint32_t;  // bit k set iff atom k is below the element

ElementCode element_code(const Element& a);
Element element_from_code(const Algebra& algebra, ElementCode code);

// L is held in <=_L order; `class_of`, `x` are indexed by position in L and
// `v` maps an element code to a position in L.
struct TModelFragment {
  std::shared_ptr<const Algebra> algebra;
  std::vector<Index> L;
  std::vector<std::size_t> class_of;
  std::vector<std::size_t> v;
  std::vector<Element> x;
  std::size_t block_size = 0;

  std::size_t position(Index l) const;  // throws PreconditionError
  // A_l = {a : v(a) <_L l}, as element codes in ascending order.
  std::vector<ElementCode> below_level(std::size_t l_pos) const;
};

struct AxiomCheck {
  char axiom;
  bool pass;
  std::string witness;  // empty on pass
};

// A nonzero element of A_l with no x_i (i ~ l) satisfying 0 < x_i <= a.
struct DensityGap {
  Index l;
  ElementCode element;
};

struct TheoryReport {
  std::vector<AxiomCheck> checks;  // (a) through (e), in order
  // "L has no greatest element" cannot hold for finite L and is not checked.
  bool no_greatest_element_waived = true;
  std::vector<DensityGap> density_gaps;
  std::vector<std::string> notes;

  bool all_pass() const;
  const AxiomCheck& operator[](char axiom) const;
};

TheoryReport check_axioms(const TModelFragment& m);

// L = dom p = {0..n-1}, x_i the canonical generators of A(p),
// v(a) = least i with a in the subalgebra generated by {x_0..x_i}, and i ~ l
// iff they lie in the same block [k*mu, (k+1)*mu).
TModelFragment standard_model(const ValuationFunction& p, std::size_t block_size);

}  // namespace boolpres
