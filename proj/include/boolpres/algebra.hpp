#pragma once

// Finite Boolean algebras given by generators and forbidden elementary
// products, represented by their atoms (valid assignments).

#include <boolpres/errors.hpp>

#include <boost/dynamic_bitset.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace boolpres {

using Index = std::uint32_t;

// Atom enumeration is exponential in the number of generators.
inline constexpr std::size_t kMaxGenerators = 24;

// A finite partial map from generators to {0,1}. As a forbidden pattern it
// stands for the elementary product of the u_i with e(i)=1 and the -u_i with
// e(i)=0.
struct ElementaryConstraint {
  std::map<Index, bool> bits;

  bool empty() const { return bits.empty(); }
  auto operator<=>(const ElementaryConstraint&) const = default;
  bool operator==(const ElementaryConstraint&) const = default;
};

// A total assignment on the generators of a presentation, packed so that the
// first generator is the most significant of `size()` bits. Numeric order is
// then lexicographic order of the bitstrings in generator order.
using AssignmentCode = std::uint32_t;

class Presentation {
 public:
  Presentation() = default;
  Presentation(std::vector<Index> generators,
               std::vector<ElementaryConstraint> forbidden = {});

  static Presentation free(std::vector<Index> generators) {
    return Presentation(std::move(generators));
  }

  std::span<const Index> generators() const { return generators_; }
  const std::vector<ElementaryConstraint>& forbidden() const { return forbidden_; }
  std::size_t size() const { return generators_.size(); }

  std::optional<std::size_t> find(Index i) const;
  std::size_t position(Index i) const;  // throws PreconditionError

  bool value(AssignmentCode a, std::size_t pos) const {
    return (a >> (size() - 1 - pos)) & 1U;
  }

  // True if some forbidden constraint is extended by `a`.
  bool violates(AssignmentCode a) const;

  // All valid assignments, ascending.
  std::vector<AssignmentCode> atoms() const;

  // Whether some valid assignment extends `partial`, i.e. whether the
  // elementary product of `partial` is nonzero. Does not enumerate atoms.
  bool satisfiable(const ElementaryConstraint& partial) const;

  std::string assignment_string(AssignmentCode a) const;

  bool operator==(const Presentation&) const = default;

 private:
  struct Pattern {
    AssignmentCode mask = 0;
    AssignmentCode value = 0;
    std::size_t last = 0;  // highest position mentioned
    bool operator==(const Pattern&) const = default;
  };

  Pattern compile(const ElementaryConstraint& e) const;
  template <typename Visit>
  bool search(const Pattern* fixed, Visit&& visit) const;

  std::vector<Index> generators_;
  std::vector<ElementaryConstraint> forbidden_;
  std::vector<Pattern> patterns_;
};

using AtomSet = boost::dynamic_bitset<std::uint64_t>;

class Element;

// Fr w / N materialized as its atom list. Always held by shared_ptr so that
// elements can refer back to it.
class Algebra : public std::enable_shared_from_this<Algebra> {
  struct Key {};

 public:
  Algebra(Key, Presentation pres);

  static std::shared_ptr<const Algebra> make(Presentation pres);

  const Presentation& presentation() const { return pres_; }
  const std::vector<AssignmentCode>& atoms() const { return atoms_; }
  std::size_t atom_count() const { return atoms_.size(); }
  bool degenerate() const { return atoms_.empty(); }

  Element zero() const;
  Element one() const;
  Element atom(std::size_t k) const;
  // x_i = c(u_i)
  Element generator(Index i) const;
  // x_i for every generator, in generator order.
  std::vector<Element> generator_family() const;
  // The literal x_i (value = true) or -x_i.
  Element literal(Index i, bool value) const;
  // Elementary product of a partial assignment.
  Element product(const ElementaryConstraint& e) const;
  Element from_atoms(AtomSet atoms) const;

  // Position of an assignment in the atom list, if valid.
  std::optional<std::size_t> atom_index(AssignmentCode a) const;

 private:
  Presentation pres_;
  std::vector<AssignmentCode> atoms_;
};

class Element {
 public:
  Element(std::shared_ptr<const Algebra> algebra, AtomSet atoms);

  const Algebra& algebra() const { return *algebra_; }
  const std::shared_ptr<const Algebra>& algebra_ptr() const { return algebra_; }
  const AtomSet& atoms() const { return atoms_; }

  bool is_zero() const { return atoms_.none(); }
  bool is_one() const { return atoms_.all(); }
  std::size_t count() const { return atoms_.count(); }

  bool same_algebra(const Element& other) const;

  friend Element operator&(const Element& a, const Element& b);
  friend Element operator|(const Element& a, const Element& b);
  friend Element operator-(const Element& a, const Element& b);  // a and not b
  Element operator~() const;

  bool operator==(const Element& other) const;

 private:
  std::shared_ptr<const Algebra> algebra_;
  AtomSet atoms_;
};

bool leq(const Element& a, const Element& b);
bool disjoint(const Element& a, const Element& b);
Element sum(const Algebra& algebra, std::span<const Element> family);
Element product(const Algebra& algebra, std::span<const Element> family);

// target <= sum(gens); in a finite algebra the generated ideal is principal.
bool in_ideal_generated_by(const Element& target, std::span<const Element> gens);

// The atoms of the subalgebra generated by `gens`: atoms of the algebra are
// grouped by which generators contain them. Blocks are ordered by their
// first atom.
std::vector<Element> subalgebra_atoms(const Algebra& algebra,
                                      std::span<const Element> gens);

bool in_subalgebra_generated_by(const Element& target,
                                std::span<const Element> gens);

}  // namespace boolpres
