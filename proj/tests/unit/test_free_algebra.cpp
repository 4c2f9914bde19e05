#include <boolpres/free_algebra.hpp>

#include "../support/generators.hpp"

#include <doctest.h>

using namespace boolpres;

namespace {

// Random formula over variables [0, vars) built from literals.
FreeElement random_formula(gen::Rng& rng, VarId vars, int depth) {
  if (depth == 0 || gen::coin(rng, 0.3)) {
    auto v = FreeElement::variable(static_cast<VarId>(gen::below(rng, vars)));
    return gen::coin(rng) ? v : ~v;
  }
  const auto a = random_formula(rng, vars, depth - 1), b = random_formula(rng, vars, depth - 1);
  return gen::coin(rng) ? (a & b) : (a | b);
}

VarAssignment assignment(std::uint32_t bits, VarId vars) {
  VarAssignment a;
  for (VarId v = 0; v < vars; ++v) a[v] = (bits >> v) & 1U;
  return a;
}

}  // namespace

TEST_CASE("constants and variables") {
  CHECK(FreeElement().is_zero());
  CHECK(FreeElement::constant(true).is_one());
  const auto x = FreeElement::variable(3);
  CHECK(x.support().size() == 1);
  CHECK(x.evaluate({{3, true}}));
  CHECK_FALSE(x.evaluate({}));
  CHECK((x | ~x).is_one());
  CHECK((x & ~x).is_zero());
  CHECK((x | ~x).support().empty());
}

TEST_CASE("support stays minimal") {
  const auto x = FreeElement::variable(0), y = FreeElement::variable(1);
  CHECK(((x & y) | (x & ~y)) == x);
  CHECK(((x & y) | (x & ~y)).support().size() == 1);
  const auto s = x | ~y;
  CHECK(std::vector<VarId>(s.support().begin(), s.support().end()) == std::vector<VarId>{0, 1});
  CHECK(leq(x & y, x));
  CHECK(disjoint(x & y, ~x));
  CHECK_FALSE(leq(x, y));
}

TEST_CASE("operations agree with pointwise evaluation") {
  gen::Rng rng(71);
  for (int trial = 0; trial < 300; ++trial) {
    const VarId vars = 1 + static_cast<VarId>(gen::below(rng, 6));
    const auto a = random_formula(rng, vars, 4), b = random_formula(rng, vars, 4);
    for (std::uint32_t bits = 0; bits < (1U << vars); ++bits) {
      const auto asg = assignment(bits, vars);
      CHECK((a & b).evaluate(asg) == (a.evaluate(asg) && b.evaluate(asg)));
      CHECK((a | b).evaluate(asg) == (a.evaluate(asg) || b.evaluate(asg)));
      CHECK((~a).evaluate(asg) == !a.evaluate(asg));
    }
    // every support variable is essential
    for (VarId v : a.support()) {
      bool essential = false;
      for (std::uint32_t bits = 0; bits < (1U << vars) && !essential; ++bits) {
        auto lo = assignment(bits, vars), hi = lo;
        lo[v] = false;
        hi[v] = true;
        essential = a.evaluate(lo) != a.evaluate(hi);
      }
      CHECK(essential);
    }
  }
}

TEST_CASE("find_assignment agrees with brute force") {
  gen::Rng rng(72);
  for (int trial = 0; trial < 300; ++trial) {
    const VarId vars = 1 + static_cast<VarId>(gen::below(rng, 6));
    std::vector<FreeElement> ones, zeros;
    for (auto k = gen::below(rng, 3); k > 0; --k) ones.push_back(random_formula(rng, vars, 3));
    for (auto k = gen::below(rng, 3); k > 0; --k) zeros.push_back(random_formula(rng, vars, 3));
    auto satisfied = [&](const VarAssignment& a) {
      return std::all_of(ones.begin(), ones.end(), [&](const FreeElement& f) { return f.evaluate(a); }) &&
             std::none_of(zeros.begin(), zeros.end(), [&](const FreeElement& f) { return f.evaluate(a); });
    };
    bool any = false;
    for (std::uint32_t bits = 0; bits < (1U << vars) && !any; ++bits) any = satisfied(assignment(bits, vars));
    const auto found = find_assignment(ones, zeros);
    CHECK(found.has_value() == any);
    if (found) CHECK(satisfied(*found));
  }
}

TEST_CASE("support limit") {
  auto big = FreeElement::constant(false);
  for (VarId v = 0; v < kMaxFreeSupport; ++v) big = big | FreeElement::variable(v);
  CHECK(big.support().size() == kMaxFreeSupport);
  CHECK_THROWS_AS(big | FreeElement::variable(static_cast<VarId>(kMaxFreeSupport)), PreconditionError);
}
