#include <boolpres/theorem_b.hpp>

#include "../support/generators.hpp"
#include "../support/oracles.hpp"

#include <doctest.h>

using namespace boolpres;

namespace {

std::vector<VarId> support_of(const FreeElement& f) { return {f.support().begin(), f.support().end()}; }

bool supports_disjoint(const FreeElement& a, const FreeElement& b) {
  const auto sa = support_of(a), sb = support_of(b);
  std::vector<VarId> common;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(common));
  return common.empty();
}

// Random homomorphism from an algebra with `from_atoms` atoms: each atom of
// the target goes to the image of one source atom.
FiniteHomomorphism random_hom(gen::Rng& rng, std::shared_ptr<const Algebra> from, std::shared_ptr<const Algebra> to) {
  std::vector<AtomSet> images(from->atom_count(), AtomSet(to->atom_count()));
  for (std::size_t k = 0; k < to->atom_count(); ++k) images[gen::below(rng, from->atom_count())].set(k);
  FiniteHomomorphism h{from, to, {}};
  for (auto& s : images) h.atom_images.push_back(to->from_atoms(std::move(s)));
  return h;
}

// Random partition of unity in `a` with at most `parts` members, all nonzero.
std::vector<Element> random_partition(gen::Rng& rng, const Algebra& a, std::size_t parts) {
  std::vector<AtomSet> cells(1 + gen::below(rng, std::min(parts, a.atom_count())), AtomSet(a.atom_count()));
  for (std::size_t k = 0; k < a.atom_count(); ++k) cells[k < cells.size() ? k : gen::below(rng, cells.size())].set(k);
  std::vector<Element> out;
  for (auto& s : cells) out.push_back(a.from_atoms(std::move(s)));
  return out;
}

// I_C(a) as the set of C-element masks disjoint from a.
std::set<oracle::Mask> annihilator(const std::set<oracle::Mask>& c, oracle::Mask a) {
  std::set<oracle::Mask> out;
  for (auto m : c)
    if ((m & a) == 0) out.insert(m);
  return out;
}

}  // namespace

TEST_CASE("depth one construction") {
  const auto c = build_construction({1, {1}, {{0}}}, 3);
  REQUIRE(c.branches() == 1);
  const auto& l = c.levels[0][0];
  const auto x = FreeElement::variable(l.x), y = FreeElement::variable(l.y), z = FreeElement::variable(l.z);
  CHECK(c.b[0] == (z & (x | ~y)));
  CHECK(l.d == l.s);
  CHECK(c.remainder(0) == ~l.s);
  CHECK(l.x != l.y);
  const auto r = check_partition(c, 0);
  CHECK(r.ok());
  CHECK(r.remainder_nonzero);
}

TEST_CASE("construction preconditions") {
  CHECK_THROWS_AS(build_construction({2, {2, 2}, {{0, 1}, {0, 1}}}, 1), PreconditionError);
  CHECK_THROWS_AS(build_construction({0, {}, {{}}}, 1), PreconditionError);
  CHECK_THROWS_AS(build_construction({5, {1, 1, 1, 1, 1}, {{0, 0, 0, 0, 0}}}, 1), PreconditionError);
  CHECK_THROWS_AS(build_construction({2, {2, 2}, {{0, 2}}}, 1), PreconditionError);
  CHECK_THROWS_AS(build_construction({2, {2, 0}, {{0, 0}}}, 1), PreconditionError);
  CHECK_THROWS_AS(build_construction({2, {2}, {{0, 0}}}, 1), PreconditionError);
  // 4 branches of depth 3 need 3 * (4 + 4 + 4) generators at least
  CHECK_THROWS_AS(build_construction({3, {2, 2, 2}, {{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {1, 1, 0}}}, 1),
                  PreconditionError);
  CHECK_NOTHROW(build_construction({2, {2, 2}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}}, 1));
}

TEST_CASE("construction is deterministic in the seed") {
  const TreeParams params{2, {2, 2}, {{0, 0}, {0, 1}, {1, 0}}};
  const auto a = build_construction(params, 9), b = build_construction(params, 9);
  CHECK(a.b == b.b);
  CHECK(a.names == b.names);
  bool differs = false;
  for (std::uint64_t s = 0; s < 20 && !differs; ++s) differs = build_construction(params, s).b != a.b;
  CHECK(differs);
}

TEST_CASE("branches diverging at the root have disjoint supports") {
  const auto c = build_construction({2, {2, 2}, {{0, 0}, {1, 0}, {1, 1}}}, 4);
  CHECK(supports_disjoint(c.b[0], c.b[1]));
  CHECK(supports_disjoint(c.b[0], c.b[2]));
  CHECK(supports_disjoint(c.b[1], c.b[2]));
}

TEST_CASE("construction invariants on random trees") {
  gen::Rng rng(81);
  for (int trial = 0; trial < 200; ++trial) {
    const auto depth = 1 + gen::below(rng, 3);
    TreeParams params{depth, {}, {}};
    for (std::size_t n = 0; n < depth; ++n) params.widths.push_back(1 + gen::below(rng, 3));
    std::set<Branch> chosen;
    for (auto k = 1 + gen::below(rng, 3); k > 0; --k) {
      Branch f;
      for (std::size_t n = 0; n < depth; ++n) f.push_back(gen::below(rng, params.widths[n]));
      chosen.insert(f);
    }
    params.branches.assign(chosen.begin(), chosen.end());
    BConstruction c;
    try {
      c = build_construction(params, rng());
    } catch (const PreconditionError&) {
      continue;
    }
    for (std::size_t i = 0; i < c.branches(); ++i) {
      const auto& lv = c.levels[i];
      for (std::size_t n = 0; n < depth; ++n) {
        CHECK(lv[n].x != lv[n].y);
        const TreeNode t(params.branches[i].begin(), params.branches[i].begin() + static_cast<std::ptrdiff_t>(n));
        const auto& pool = c.pools.at(t);
        CHECK(std::count(pool.x.begin(), pool.x.end(), lv[n].x) == 1);
        CHECK(std::count(pool.x.begin(), pool.x.end(), lv[n].y) == 1);
        CHECK(std::count(pool.z.begin(), pool.z.end(), lv[n].z) == 1);
        for (std::size_t m = 0; m < n; ++m) CHECK(supports_disjoint(lv[n].s, lv[m].s));
      }
      CHECK(check_partition(c, i).ok());
      CHECK(check_partition(c, i).remainder_nonzero);
      // stored tables agree with the defining formulas
      const auto vars = static_cast<VarId>(c.names.size());
      for (int k = 0; k < 64; ++k) {
        VarAssignment a;
        for (VarId v = 0; v < vars; ++v) a[v] = gen::coin(rng);
        CHECK(c.b[i].evaluate(a) == evaluate_b(c, i, a));
      }
    }
  }
}

TEST_CASE("remainder is met by the all-zero x, all-one y assignment") {
  const auto c = build_construction({3, {1, 2, 2}, {{0, 0, 0}, {0, 1, 1}}}, 2);
  for (std::size_t i = 0; i < c.branches(); ++i) {
    VarAssignment a;
    for (const auto& l : c.levels[i]) {
      a[l.x] = false;
      a[l.y] = true;
    }
    CHECK(c.remainder(i).evaluate(a));
    CHECK_FALSE(evaluate_b(c, i, a));
  }
}

TEST_CASE("ideal independence examples") {
  const auto c = build_construction({2, {2, 2}, {{0, 0}, {1, 0}, {1, 1}}}, 5);
  const std::size_t one[] = {1};
  const auto r = check_ideal_independence(c, 0, one);
  CHECK(r.independent);
  CHECK(r.witness_verified);
  CHECK(r.predicted);
  const auto e = check_ideal_independence(c, 0, std::span<const std::size_t>{});
  CHECK(e.independent == !c.b[0].is_zero());
  const std::size_t self[] = {0, 1};
  CHECK_THROWS_AS(check_ideal_independence(c, 0, self), PreconditionError);
  const std::size_t others[] = {1, 2};
  const auto w = split_witness(c, 0, others, 1);
  REQUIRE(w);
  CHECK(w->ok());
  CHECK_FALSE(split_witness(c, 0, others, 0));
  // branches 1 and 2 share their first value
  const std::size_t sibling[] = {2};
  CHECK_FALSE(split_witness(c, 1, sibling, 1));
}

TEST_CASE("lemma on sums over a partition of unity") {
  gen::Rng rng(82);
  const auto id_alg = gen::algebra_with_atoms(rng, 4);
  FiniteHomomorphism id{id_alg, id_alg, {}};
  for (std::size_t k = 0; k < 4; ++k) id.atom_images.push_back(id_alg->atom(k));
  const auto part = random_partition(rng, *id_alg, 3);
  std::vector<Element> xs;
  for (std::size_t n = 0; n < part.size(); ++n) xs.push_back(gen::element(rng, *id_alg));
  CHECK(lemma81_check(id, part, xs));

  const auto two = gen::algebra_with_atoms(rng, 2);
  const std::vector<Element> halves{two->atom(0), two->atom(1)};
  FiniteHomomorphism broken{two, two, {two->one(), two->one()}};
  CHECK_FALSE(is_homomorphism(broken));
  CHECK_THROWS_AS(lemma81_check(broken, halves, halves), PreconditionError);
  const FiniteHomomorphism id2{two, two, {two->atom(0), two->atom(1)}};
  const std::vector<Element> overlapping{two->one(), two->atom(0)};
  CHECK_THROWS_AS(lemma81_check(id2, overlapping, halves), PreconditionError);
  CHECK_THROWS_AS(lemma81_check(id2, halves, std::vector<Element>{two->one()}), PreconditionError);

  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto from = gen::algebra_with_atoms(rng, 1 + gen::below(rng, 8));
    const auto to = gen::algebra_with_atoms(rng, 1 + gen::below(rng, 8));
    const auto h = random_hom(rng, from, to);
    REQUIRE(is_homomorphism(h));
    const auto c = random_partition(rng, *from, 4);
    std::vector<Element> images;
    for (const auto& cn : c) images.push_back(h(cn));
    // homomorphisms carry partitions of unity to partitions of unity
    REQUIRE(is_partition_of_unity(images));
    std::vector<Element> xn;
    for (std::size_t n = 0; n < c.size(); ++n) xn.push_back(gen::element(rng, *from));
    CHECK(lemma81_check(h, c, xn));
    // direct evaluation on atom masks
    auto image = [&](oracle::Mask m) {
      oracle::Mask out = 0;
      for (std::size_t k = 0; k < from->atom_count(); ++k)
        if ((m >> k) & 1U) out |= oracle::mask_of(h.atom_images[k]);
      return out;
    };
    oracle::Mask inner = 0, outer = 0;
    for (std::size_t n = 0; n < c.size(); ++n) {
      const auto term = oracle::mask_of(xn[n]) & oracle::mask_of(c[n]);
      inner |= term;
      outer |= image(term);
    }
    CHECK(image(inner) == outer);
    ++checked;
  }
  CHECK(checked == 300);
}

TEST_CASE("lemma on equivalent elements") {
  gen::Rng rng(83);
  const auto d = gen::algebra_with_atoms(rng, 4);
  const std::vector<Element> gens{d->atom(0) | d->atom(1)};
  const auto x = d->atom(2);
  CHECK(lemma82_check(gens, x, x) == Lemma82::holds);
  CHECK(lemma82_check(gens, d->atom(0), d->atom(2)) == Lemma82::not_applicable);

  int applicable = 0;
  for (int trial = 0; trial < 600; ++trial) {
    const auto alg = gen::algebra_with_atoms(rng, 1 + gen::below(rng, 8));
    std::vector<Element> cg;
    std::vector<oracle::Mask> cm;
    for (auto k = gen::below(rng, 3); k > 0; --k) {
      cg.push_back(gen::element(rng, *alg));
      cm.push_back(oracle::mask_of(cg.back()));
    }
    const auto c = oracle::generated_subalgebra(alg->atom_count(), cm);
    const auto a = gen::element(rng, *alg), b = gen::element(rng, *alg);
    const auto ma = oracle::mask_of(a), mb = oracle::mask_of(b), full = oracle::full(alg->atom_count());
    const bool equiv = annihilator(c, ma) == annihilator(c, mb) &&
                       annihilator(c, full & ~ma) == annihilator(c, full & ~mb);
    CHECK(equivalent_over(cg, a, b) == equiv);
    const auto got = lemma82_check(cg, a, b);
    if (!equiv) {
      CHECK(got == Lemma82::not_applicable);
      continue;
    }
    const auto target = ma | (full & ~mb);
    const bool some_disjoint = std::any_of(c.begin(), c.end(), [&](oracle::Mask m) { return m != 0 && (m & target) == 0; });
    CHECK_FALSE(some_disjoint);
    CHECK(got == Lemma82::holds);
    ++applicable;
  }
  CHECK(applicable > 100);
}
