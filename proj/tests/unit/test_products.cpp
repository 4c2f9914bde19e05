#include <boolpres/products.hpp>

#include "../support/generators.hpp"

#include <doctest.h>

#include <bit>

using namespace boolpres;

namespace {

std::vector<std::shared_ptr<const Algebra>> random_factors(gen::Rng& rng, std::size_t n, std::size_t max_atoms) {
  std::vector<std::shared_ptr<const Algebra>> out;
  for (std::size_t m = 0; m < n; ++m) out.push_back(gen::algebra_with_atoms(rng, 1 + gen::below(rng, max_atoms)));
  return out;
}

Tuple random_tuple(gen::Rng& rng, const std::vector<std::shared_ptr<const Algebra>>& fs) {
  Tuple t;
  for (const auto& f : fs) t.push_back(gen::element(rng, *f));
  return t;
}

ValuationFunction all_perp(std::size_t n) {
  std::vector<Index> dom(n);
  for (std::size_t k = 0; k < n; ++k) dom[k] = static_cast<Index>(k);
  ValuationFunction p(dom);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) p.set(dom[a], dom[b], Trit::perp);
  return p;
}

}  // namespace

TEST_CASE("filters on a finite set") {
  const auto t = FilterOnFinite::trivial(3);
  CHECK(t.members() == std::vector<IndexSubset>{7});
  CHECK_FALSE(t.is_ultrafilter());
  const auto p = FilterOnFinite::principal(3, 1);
  CHECK(p.members() == std::vector<IndexSubset>{2, 3, 6, 7});
  CHECK(p.principal_point() == std::size_t{1});
  const IndexSubset gens[] = {3, 6};
  CHECK(FilterOnFinite::generated_by(3, gens).kernel() == 2);
  const IndexSubset bad[] = {1, 2};
  CHECK_THROWS_AS(FilterOnFinite::generated_by(3, bad), PreconditionError);
  const IndexSubset members[] = {2, 3, 6, 7};
  CHECK(FilterOnFinite::from_members(3, members).kernel() == 2);
  const IndexSubset not_closed[] = {3, 6, 7};
  CHECK_THROWS_AS(FilterOnFinite::from_members(3, not_closed), PreconditionError);
  CHECK_THROWS_AS(FilterOnFinite::principal(2, 2), PreconditionError);
  CHECK_THROWS_AS(FilterOnFinite::trivial(0), PreconditionError);
}

TEST_CASE("every filter member contains the kernel") {
  for (std::size_t n = 1; n <= 5; ++n)
    for (IndexSubset k = 1; k < (IndexSubset{1} << n); ++k) {
      const IndexSubset g[] = {k};
      const auto f = FilterOnFinite::generated_by(n, g);
      const auto members = f.members();
      CHECK(members.size() == (std::size_t{1} << (n - std::popcount(k))));
      for (IndexSubset s = 0; s < (IndexSubset{1} << n); ++s)
        CHECK(f.contains(s) == std::binary_search(members.begin(), members.end(), s));
    }
}

TEST_CASE("reduced product over the trivial filter is the full product") {
  gen::Rng rng(61);
  const auto fs = random_factors(rng, 3, 3);
  const ReducedProduct prod(fs, FilterOnFinite::trivial(3));
  std::size_t total = 0;
  for (const auto& f : fs) total += f->atom_count();
  CHECK(prod.atom_count() == total);
  CHECK(prod.classes().size() == (std::size_t{1} << total));
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_tuple(rng, fs), b = random_tuple(rng, fs);
    CHECK(prod.equivalent(a, b) == (a == b));
  }
}

TEST_CASE("principal ultrapowers are isomorphic to the chosen factor") {
  gen::Rng rng(62);
  for (int trial = 0; trial < 40; ++trial) {
    const auto n = 1 + gen::below(rng, 4);
    const auto fs = random_factors(rng, n, 5);
    const auto point = gen::below(rng, n);
    const ReducedProduct prod(fs, FilterOnFinite::principal(n, point));
    CHECK(prod.atom_count() == fs[point]->atom_count());
    const auto iso = check_principal_isomorphism(prod);
    CHECK(iso.ok());
    CHECK(iso.classes == (std::size_t{1} << fs[point]->atom_count()));
    for (int k = 0; k < 10; ++k) {
      const auto a = random_tuple(rng, fs), b = random_tuple(rng, fs);
      CHECK(prod.equivalent(a, b) == (a[point] == b[point]));
      CHECK(prod.equivalent(a, prod.canonical(a)));
    }
  }
  gen::Rng r2(63);
  const auto fs = random_factors(r2, 2, 2);
  CHECK_THROWS_AS(check_principal_isomorphism(ReducedProduct(fs, FilterOnFinite::trivial(2))), PreconditionError);
}

TEST_CASE("generator relations transfer by the filter") {
  gen::Rng rng(64);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = 1 + gen::below(rng, 3);
    std::vector<std::shared_ptr<const Algebra>> fs;
    std::vector<ValuationFunction> ps;
    for (std::size_t m = 0; m < n; ++m) {
      ps.push_back(gen::valuation(rng, std::vector<Index>{0, 1, 2}));
      fs.push_back(Algebra::make(algebra_of(ps.back())));
    }
    const IndexSubset g[] = {static_cast<IndexSubset>(1 + gen::below(rng, (1U << n) - 1))};
    const auto filter = FilterOnFinite::generated_by(n, g);
    const ReducedProduct prod(fs, filter);
    std::vector<Tuple> xs(3);
    for (std::size_t m = 0; m < n; ++m)
      for (Index i = 0; i < 3; ++i) xs[i].push_back(fs[m]->generator(i));
    for (Index i = 0; i < 3; ++i)
      for (Index j = i + 1; j < 3; ++j)
        for (bool perp : {true, false}) {
          IndexSubset where = 0;
          const auto want = perp ? Trit::perp : Trit::geq;
          for (std::size_t m = 0; m < n; ++m)
            if (ps[m].at(i, j) == want) where |= IndexSubset{1} << m;
          CHECK(holds_in_product(prod, xs, i, j, perp) == filter.contains(where));
        }
  }
}

TEST_CASE("density of a reduced product") {
  gen::Rng rng(65);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = 1 + gen::below(rng, 4);
    const auto fs = random_factors(rng, n, 4);
    const IndexSubset g[] = {static_cast<IndexSubset>(1 + gen::below(rng, (1U << n) - 1))};
    const auto filter = FilterOnFinite::generated_by(n, g);
    const auto cmp = compare_densities(fs, filter);
    std::uint64_t sum = 0, prod = 1;
    for (std::size_t m = 0; m < n; ++m)
      if ((filter.kernel() >> m) & 1U) {
        sum += fs[m]->atom_count();
        prod *= fs[m]->atom_count();
      }
    CHECK(cmp.lhs == sum);
    CHECK(cmp.rhs == prod);
    CHECK(cmp.lhs == ReducedProduct(fs, filter).atom_count());
    CHECK(cmp.holds == (sum <= prod));
    if (filter.is_ultrafilter()) CHECK(cmp.equal);
  }
}

TEST_CASE("ultraproducts of standard models") {
  const std::vector<TModelFragment> models{standard_model(all_perp(2), 2), standard_model(all_perp(3), 3),
                                           standard_model(all_perp(4), 2)};
  for (std::size_t point = 0; point < 3; ++point) {
    const auto u = ultraproduct_model(models, FilterOnFinite::principal(3, point));
    const auto& m = models[point];
    CHECK(u.L == m.L);
    CHECK(u.class_of == m.class_of);
    CHECK(u.algebra->atom_count() == m.algebra->atom_count());
    for (std::size_t i = 0; i < m.L.size(); ++i) CHECK(u.v[element_code(u.x[i])] == m.v[element_code(m.x[i])]);
    auto levels = [](const TModelFragment& f) {
      auto v = f.v;
      std::sort(v.begin(), v.end());
      return v;
    };
    CHECK(levels(u) == levels(m));
    CHECK(check_axioms(u).all_pass() == check_axioms(m).all_pass());
  }
  CHECK_THROWS_AS(ultraproduct_model(models, FilterOnFinite::trivial(3)), PreconditionError);
}
