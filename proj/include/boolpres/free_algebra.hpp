#pragma once

// Elements of a free Boolean algebra with finite support, as truth tables.

#include <boolpres/errors.hpp>

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace boolpres {

using VarId = std::uint32_t;
using VarAssignment = std::map<VarId, bool>;

inline constexpr std::size_t kMaxFreeSupport = 24;

// A Boolean function over its support. Bit k of the table is the value under
// the assignment giving support()[s] the value of bit s of k. The support is
// kept minimal: every listed variable is essential.
class FreeElement {
 public:
  FreeElement() : table_(1) {}  // zero

  static FreeElement constant(bool value);
  static FreeElement variable(VarId v);

  std::span<const VarId> support() const { return support_; }
  const boost::dynamic_bitset<>& table() const { return table_; }

  bool is_zero() const { return table_.none(); }
  bool is_one() const { return table_.all(); }

  // Missing variables read as false.
  bool evaluate(const VarAssignment& a) const;

  friend FreeElement operator&(const FreeElement& a, const FreeElement& b);
  friend FreeElement operator|(const FreeElement& a, const FreeElement& b);
  FreeElement operator~() const;

  bool operator==(const FreeElement& other) const = default;

 private:
  FreeElement(std::vector<VarId> support, boost::dynamic_bitset<> table);
  void minimize();

  std::vector<VarId> support_;
  boost::dynamic_bitset<> table_;
};

bool leq(const FreeElement& a, const FreeElement& b);
bool disjoint(const FreeElement& a, const FreeElement& b);

// Sorted union of supports; throws PreconditionError beyond kMaxFreeSupport.
std::vector<VarId> union_support(std::span<const FreeElement> elements);

// First assignment (in counting order over the union support) making every
// element of `ones` true and every element of `zeros` false.
std::optional<VarAssignment> find_assignment(std::span<const FreeElement> ones,
                                             std::span<const FreeElement> zeros);

}  // namespace boolpres
