#include <boolpres/text_io.hpp>

#include "../support/generators.hpp"

#include <doctest.h>

using namespace boolpres;

namespace {

bool same_model(const TModelFragment& a, const TModelFragment& b) {
  if (a.algebra->presentation() != b.algebra->presentation()) return false;
  if (a.x.size() != b.x.size()) return false;
  for (std::size_t k = 0; k < a.x.size(); ++k)
    if (element_code(a.x[k]) != element_code(b.x[k])) return false;
  return a.L == b.L && a.class_of == b.class_of && a.v == b.v && a.block_size == b.block_size;
}

}  // namespace

TEST_CASE("presentation text") {
  const auto p = parse_presentation("# two generators\ngens: 0 1\nforbid 0=0 1=1\n\n");
  CHECK(p == Presentation({0, 1}, {{{{0, false}, {1, true}}}}));
  CHECK(format_presentation(p) == "gens: 0 1\nforbid 0=0 1=1\n");
  CHECK_THROWS_AS(parse_presentation("forbid 0=1\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens: 0 1\nforbid 0=2\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens: 0 1\nforbid 3=1\n"), PreconditionError);
  CHECK_THROWS_WITH_AS(parse_presentation("gens: 0\nbogus\n"), doctest::Contains("line 2"), ParseError);
}

TEST_CASE("element text") {
  const auto alg = Algebra::make(Presentation({0, 1}, {{{{0, false}, {1, true}}}}));
  CHECK(format_element(alg->zero()) == "-");
  CHECK(format_element(alg->one()) == "00,10,11");
  CHECK(parse_element(alg, " 10,11\n") == alg->generator(0));
  CHECK_THROWS_AS(parse_element(alg, "01"), PreconditionError);
  CHECK_THROWS_AS(parse_element(alg, "1"), ParseError);
}

TEST_CASE("relation text") {
  const RelationSet r{Relation::geq(0, 1), Relation::perp(2, 1)};
  CHECK(parse_relations(format_relations(r)) == r);
  CHECK(parse_relations("geq 0 1\n# note\nperp 1 2\n") == r);
  CHECK_THROWS_AS(parse_relations("geq 0\n"), ParseError);
  CHECK_THROWS_AS(parse_relations("leq 0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_relations("geq 0 -1\n"), ParseError);
}

TEST_CASE("valuation text") {
  const auto p = parse_valuation("dom: 0 1 2\n0 1 GEQ\n1 2 PERP\n0 2 PERP\n");
  CHECK(p.at(0, 1) == Trit::geq);
  CHECK(p.at(1, 2) == Trit::perp);
  CHECK(format_valuation(p) == "dom: 0 1 2\n0 1 GEQ\n0 2 PERP\n1 2 PERP\n");
  CHECK(parse_valuation("dom:\n") == ValuationFunction(std::vector<Index>{}));
  CHECK_THROWS_AS(parse_valuation("0 1 GEQ\n"), ParseError);
  CHECK_THROWS_AS(parse_valuation("dom: 0 1\n1 0 GEQ\n"), ParseError);
  CHECK_THROWS_AS(parse_valuation("dom: 0 1\n0 3 GEQ\n"), ParseError);
  CHECK_THROWS_AS(parse_valuation("dom: 0 1\n0 1 GEQ\n0 1 PERP\n"), ParseError);
  CHECK_THROWS_AS(parse_valuation("dom: 0 1\n0 1 MAYBE\n"), ParseError);
  CHECK_THROWS_AS(parse_valuation("dom: 1 0\n"), PreconditionError);
}

TEST_CASE("schedule text") {
  const auto s = parse_schedule("dom 0\ndense 4 0=1 1=0\ndense 0\n");
  REQUIRE(s.size() == 3);
  CHECK(std::get<DomainPoint>(s[0]).i == 0);
  CHECK(std::get<DensityBelow>(s[1]).e.bits == std::map<Index, bool>{{0, true}, {1, false}});
  CHECK(parse_schedule(format_schedule(s)) == s);
  CHECK_THROWS_AS(parse_schedule("dense 4 0=1 0=0\n"), PreconditionError);
  CHECK_THROWS_AS(parse_schedule("dense 4 0=2\n"), ParseError);
  CHECK_THROWS_AS(parse_schedule("meet 4\n"), ParseError);
}

TEST_CASE("filter text") {
  CHECK(parse_filter("trivial\n", 3).kernel() == 7);
  CHECK(parse_filter("principal 2\n", 3).kernel() == 4);
  CHECK(parse_filter("member 0 1\nmember 1 2\n", 3).kernel() == 2);
  for (std::size_t n = 1; n <= 4; ++n)
    for (IndexSubset k = 1; k < (IndexSubset{1} << n); ++k) {
      const IndexSubset g[] = {k};
      const auto f = FilterOnFinite::generated_by(n, g);
      CHECK(parse_filter(format_filter(f), n).kernel() == f.kernel());
    }
  CHECK_THROWS_AS(parse_filter("", 2), ParseError);
  CHECK_THROWS_AS(parse_filter("member 0\nmember 1\n", 2), PreconditionError);
  CHECK_THROWS_AS(parse_filter("member 5\n", 2), PreconditionError);
  CHECK_THROWS_AS(parse_filter("principal 0\ntrivial\n", 2), ParseError);
}

TEST_CASE("model text") {
  ValuationFunction p(std::vector<Index>{0, 1, 2, 3});
  p.set(0, 1, Trit::perp);
  p.set(0, 2, Trit::geq);
  p.set(1, 2, Trit::perp);
  const auto m = standard_model(p, 2);
  const auto text = format_model(m);
  CHECK(same_model(parse_model(text), m));
  CHECK(format_model(parse_model(text)) == text);
  CHECK_THROWS_AS(parse_model("gens: 0\nL: 0\n"), PreconditionError);  // x_0 missing
  CHECK_THROWS_AS(parse_model("gens: 0\nx 0 1\n"), ParseError);        // no L
  CHECK_THROWS_AS(parse_model("gens: 0\nL: 0 0\nx 0 1\n"), PreconditionError);
  const auto small = parse_model("gens: 0\nL: 0 1\nx 0 1\nx 1 0,1\n");
  CHECK(small.class_of == std::vector<std::size_t>{0, 1});
  CHECK(small.v[element_code(small.x[0])] == kUndefinedLevel);
}

TEST_CASE("branch and list text") {
  const std::vector<Branch> b{{0, 1}, {1, 0}, {1, 1}};
  CHECK(parse_branches("0,1\n1 0\n# last\n1, 1\n") == b);
  CHECK(parse_branches(format_branches(b)) == b);
  CHECK_THROWS_AS(parse_branches("0,x\n"), ParseError);
  CHECK(parse_list("2,2,3") == std::vector<std::size_t>{2, 2, 3});
  CHECK_THROWS_AS(parse_list("2,,3"), ParseError);
}

TEST_CASE("formats round trip on random objects") {
  gen::Rng rng(91);
  for (int trial = 0; trial < 300; ++trial) {
    const auto p = gen::valuation(rng, gen::domain(rng, gen::below(rng, 7), 10));
    CHECK(parse_valuation(format_valuation(p)) == p);
    const auto r = gen::relations(rng, 8, 6);
    CHECK(parse_relations(format_relations(r)) == r);
    const auto pres = gen::presentation(rng, 6);
    CHECK(parse_presentation(format_presentation(pres)) == pres);
    const auto alg = Algebra::make(pres);
    const auto e = gen::element(rng, *alg);
    CHECK(parse_element(alg, format_element(e)) == e);
  }
}
