#include <boolpres/free_algebra.hpp>

#include <algorithm>

namespace boolpres {

namespace {

// Positions of `sub` inside `super` (both sorted, sub a subset).
std::vector<std::size_t> positions_in(std::span<const VarId> sub, std::span<const VarId> super) {
  std::vector<std::size_t> out;
  out.reserve(sub.size());
  for (VarId v : sub)
    out.push_back(static_cast<std::size_t>(std::lower_bound(super.begin(), super.end(), v) - super.begin()));
  return out;
}

std::size_t project(std::uint64_t index, const std::vector<std::size_t>& pos) {
  std::size_t out = 0;
  for (std::size_t s = 0; s < pos.size(); ++s) out |= ((index >> pos[s]) & 1U) << s;
  return out;
}

boost::dynamic_bitset<> lift(const FreeElement& f, std::span<const VarId> to) {
  const auto pos = positions_in(f.support(), to);
  boost::dynamic_bitset<> out(std::size_t{1} << to.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = f.table()[project(k, pos)];
  return out;
}

std::vector<VarId> merged_support(const FreeElement& a, const FreeElement& b) {
  std::vector<VarId> u;
  std::set_union(a.support().begin(), a.support().end(), b.support().begin(), b.support().end(),
                 std::back_inserter(u));
  if (u.size() > kMaxFreeSupport) throw PreconditionError("support too large");
  return u;
}

}  // namespace

FreeElement::FreeElement(std::vector<VarId> support, boost::dynamic_bitset<> table)
    : support_(std::move(support)), table_(std::move(table)) {
  minimize();
}

FreeElement FreeElement::constant(bool value) {
  FreeElement f;
  f.table_[0] = value;
  return f;
}

FreeElement FreeElement::variable(VarId v) {
  boost::dynamic_bitset<> t(2);
  t[1] = true;
  return FreeElement({v}, std::move(t));
}

void FreeElement::minimize() {
  for (std::size_t s = support_.size(); s-- > 0;) {
    const std::size_t bit = std::size_t{1} << s;
    bool essential = false;
    for (std::size_t k = 0; k < table_.size() && !essential; ++k)
      if (!(k & bit) && table_[k] != table_[k | bit]) essential = true;
    if (essential) continue;
    boost::dynamic_bitset<> smaller(table_.size() / 2);
    for (std::size_t k = 0; k < smaller.size(); ++k) {
      const std::size_t low = k & (bit - 1), high = (k & ~(bit - 1)) << 1;
      smaller[k] = table_[high | low];
    }
    table_ = std::move(smaller);
    support_.erase(support_.begin() + static_cast<std::ptrdiff_t>(s));
  }
}

bool FreeElement::evaluate(const VarAssignment& a) const {
  std::size_t k = 0;
  for (std::size_t s = 0; s < support_.size(); ++s) {
    auto it = a.find(support_[s]);
    if (it != a.end() && it->second) k |= std::size_t{1} << s;
  }
  return table_[k];
}

FreeElement operator&(const FreeElement& a, const FreeElement& b) {
  auto u = merged_support(a, b);
  auto t = lift(a, u) & lift(b, u);
  return FreeElement(std::move(u), std::move(t));
}

FreeElement operator|(const FreeElement& a, const FreeElement& b) {
  auto u = merged_support(a, b);
  auto t = lift(a, u) | lift(b, u);
  return FreeElement(std::move(u), std::move(t));
}

FreeElement FreeElement::operator~() const { return FreeElement(support_, ~table_); }

bool leq(const FreeElement& a, const FreeElement& b) { return (a & ~b).is_zero(); }

bool disjoint(const FreeElement& a, const FreeElement& b) { return (a & b).is_zero(); }

std::vector<VarId> union_support(std::span<const FreeElement> elements) {
  std::vector<VarId> u;
  for (const auto& e : elements) u.insert(u.end(), e.support().begin(), e.support().end());
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  if (u.size() > kMaxFreeSupport) throw PreconditionError("support too large");
  return u;
}

std::optional<VarAssignment> find_assignment(std::span<const FreeElement> ones,
                                             std::span<const FreeElement> zeros) {
  std::vector<FreeElement> all(ones.begin(), ones.end());
  all.insert(all.end(), zeros.begin(), zeros.end());
  const auto u = union_support(all);
  std::vector<std::vector<std::size_t>> pos;
  for (const auto& e : all) pos.push_back(positions_in(e.support(), u));

  const std::uint64_t total = std::uint64_t{1} << u.size();
  for (std::uint64_t k = 0; k < total; ++k) {
    bool ok = true;
    for (std::size_t e = 0; e < all.size() && ok; ++e)
      ok = all[e].table()[project(k, pos[e])] == (e < ones.size());
    if (!ok) continue;
    VarAssignment a;
    for (std::size_t s = 0; s < u.size(); ++s) a[u[s]] = (k >> s) & 1U;
    return a;
  }
  return std::nullopt;
}

}  // namespace boolpres
