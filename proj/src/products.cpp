#include <boolpres/products.hpp>

#include <algorithm>
#include <bit>
#include <map>
#include <set>

namespace boolpres {

namespace {

IndexSubset full_set(std::size_t size) {
  return static_cast<IndexSubset>((std::uint64_t{1} << size) - 1);
}

void check_size(std::size_t size) {
  if (size == 0 || size > kMaxFactors)
    throw PreconditionError("index set size must be between 1 and " + std::to_string(kMaxFactors));
}

}  // namespace

FilterOnFinite FilterOnFinite::trivial(std::size_t size) {
  check_size(size);
  return {size, full_set(size)};
}

FilterOnFinite FilterOnFinite::principal(std::size_t size, std::size_t point) {
  check_size(size);
  if (point >= size) throw PreconditionError("principal point outside the index set");
  return {size, IndexSubset{1} << point};
}

FilterOnFinite FilterOnFinite::generated_by(std::size_t size,
                                            std::span<const IndexSubset> generators) {
  check_size(size);
  IndexSubset kernel = full_set(size);
  for (auto s : generators) {
    if (s & ~full_set(size)) throw PreconditionError("subset outside the index set");
    kernel &= s;
  }
  if (kernel == 0) throw PreconditionError("filter would contain the empty set");
  return {size, kernel};
}

FilterOnFinite FilterOnFinite::from_members(std::size_t size, std::span<const IndexSubset> members) {
  if (members.empty()) throw PreconditionError("a filter is nonempty");
  auto f = generated_by(size, members);
  std::set<IndexSubset> given(members.begin(), members.end());
  const auto expected = f.members();
  if (given != std::set<IndexSubset>(expected.begin(), expected.end()))
    throw PreconditionError("member family is not upward closed and closed under intersection");
  return f;
}

std::vector<IndexSubset> FilterOnFinite::members() const {
  std::vector<IndexSubset> out;
  const auto rest = full_set(size_) & ~kernel_;
  // all subsets of `rest`, each joined with the kernel
  IndexSubset sub = 0;
  do {
    out.push_back(kernel_ | sub);
    sub = (sub - rest) & rest;
  } while (sub != 0);
  std::sort(out.begin(), out.end());
  return out;
}

bool FilterOnFinite::is_ultrafilter() const { return std::popcount(kernel_) == 1; }

std::optional<std::size_t> FilterOnFinite::principal_point() const {
  if (!is_ultrafilter()) return std::nullopt;
  return static_cast<std::size_t>(std::countr_zero(kernel_));
}

// ---------------------------------------------------------------------------

ReducedProduct::ReducedProduct(std::vector<std::shared_ptr<const Algebra>> factors,
                               FilterOnFinite filter)
    : factors_(std::move(factors)), filter_(filter) {
  if (factors_.size() != filter_.size())
    throw PreconditionError("filter index set does not match the number of factors");
  for (std::size_t m = 0; m < factors_.size(); ++m)
    if ((filter_.kernel() >> m) & 1U)
      for (std::size_t k = 0; k < factors_[m]->atom_count(); ++k) labels_.emplace_back(m, k);
}

void ReducedProduct::check_tuple(const Tuple& a) const {
  if (a.size() != factors_.size()) throw PreconditionError("tuple has the wrong length");
  for (std::size_t m = 0; m < a.size(); ++m)
    if (a[m].algebra().presentation() != factors_[m]->presentation())
      throw PreconditionError("tuple coordinate " + std::to_string(m) + " is in the wrong factor");
}

bool ReducedProduct::equivalent(const Tuple& a, const Tuple& b) const {
  check_tuple(a);
  check_tuple(b);
  IndexSubset agree = 0;
  for (std::size_t m = 0; m < a.size(); ++m)
    if (a[m] == b[m]) agree |= IndexSubset{1} << m;
  return filter_.contains(agree);
}

Tuple ReducedProduct::canonical(const Tuple& a) const {
  check_tuple(a);
  Tuple out = a;
  for (std::size_t m = 0; m < a.size(); ++m)
    if (!((filter_.kernel() >> m) & 1U)) out[m] = factors_[m]->zero();
  return out;
}

Tuple ReducedProduct::meet(const Tuple& a, const Tuple& b) const {
  check_tuple(a);
  check_tuple(b);
  Tuple out;
  for (std::size_t m = 0; m < a.size(); ++m) out.push_back(a[m] & b[m]);
  return out;
}

Tuple ReducedProduct::join(const Tuple& a, const Tuple& b) const {
  check_tuple(a);
  check_tuple(b);
  Tuple out;
  for (std::size_t m = 0; m < a.size(); ++m) out.push_back(a[m] | b[m]);
  return out;
}

Tuple ReducedProduct::complement(const Tuple& a) const {
  check_tuple(a);
  Tuple out;
  for (const auto& x : a) out.push_back(~x);
  return out;
}

const std::shared_ptr<const Algebra>& ReducedProduct::algebra() const {
  if (!algebra_) {
    const auto n = labels_.size();
    if (n == 0) throw PreconditionError("reduced product is degenerate");
    if (n > kMaxGenerators)
      throw PreconditionError("reduced product has " + std::to_string(n) +
                              " atoms; too many to materialize");
    std::vector<Index> gens(n);
    std::vector<ElementaryConstraint> forbidden;
    ElementaryConstraint none;
    for (Index g = 0; g < n; ++g) {
      gens[g] = g;
      none.bits[g] = false;
      for (Index h = g + 1; h < n; ++h) forbidden.push_back({{{g, true}, {h, true}}});
    }
    forbidden.push_back(std::move(none));
    algebra_ = Algebra::make(Presentation(std::move(gens), std::move(forbidden)));
  }
  return algebra_;
}

Element ReducedProduct::quotient(const Tuple& a) const {
  check_tuple(a);
  const auto& alg = algebra();
  auto out = alg->zero();
  for (Index g = 0; g < labels_.size(); ++g) {
    const auto [m, k] = labels_[g];
    if (a[m].atoms()[k]) out = out | alg->generator(g);
  }
  return out;
}

std::vector<Tuple> ReducedProduct::classes() const {
  if (labels_.size() > 20) throw PreconditionError("too many classes to enumerate");
  std::vector<Tuple> out;
  const std::uint64_t total = std::uint64_t{1} << labels_.size();
  for (std::uint64_t pick = 0; pick < total; ++pick) {
    Tuple t;
    std::vector<AtomSet> parts;
    for (const auto& f : factors_) parts.emplace_back(f->atom_count());
    for (std::size_t g = 0; g < labels_.size(); ++g)
      if ((pick >> g) & 1U) parts[labels_[g].first].set(labels_[g].second);
    for (std::size_t m = 0; m < factors_.size(); ++m)
      t.push_back(factors_[m]->from_atoms(std::move(parts[m])));
    out.push_back(std::move(t));
  }
  return out;
}

IsomorphismCheck check_principal_isomorphism(const ReducedProduct& product) {
  const auto point = product.filter().principal_point();
  if (!point) throw PreconditionError("filter is not an ultrafilter");
  const auto& target = *product.factors()[*point];
  const auto classes = product.classes();

  IsomorphismCheck out;
  out.classes = classes.size();
  std::set<std::vector<std::uint64_t>> images;
  for (const auto& c : classes) {
    std::vector<std::uint64_t> blocks;
    boost::to_block_range(c[*point].atoms(), std::back_inserter(blocks));
    images.insert(std::move(blocks));
  }
  out.bijective = images.size() == classes.size() &&
                  classes.size() == (std::uint64_t{1} << target.atom_count());

  auto image = [&](const Tuple& t) { return product.canonical(t)[*point]; };
  bool ok = true;
  const bool all_pairs = classes.size() <= 1024;
  for (std::size_t a = 0; a < classes.size() && ok; ++a) {
    const auto& x = classes[a];
    ok = image(product.complement(x)) == ~x[*point] &&
         product.quotient(product.complement(x)) == ~product.quotient(x);
    for (std::size_t b = 0; b < classes.size() && ok; ++b) {
      if (!all_pairs && std::popcount(b) > 1) continue;
      const auto& y = classes[b];
      ok = image(product.meet(x, y)) == (x[*point] & y[*point]) &&
           image(product.join(x, y)) == (x[*point] | y[*point]) &&
           product.quotient(product.meet(x, y)) == (product.quotient(x) & product.quotient(y));
    }
  }
  out.preserves_operations = ok;
  return out;
}

bool holds_in_product(const ReducedProduct& product, const std::vector<Tuple>& generators,
                      std::size_t i, std::size_t j, bool perp) {
  const auto xi = product.quotient(generators.at(i));
  const auto xj = product.quotient(generators.at(j));
  return perp ? disjoint(xi, xj) : leq(xj, xi);
}

DensityComparison compare_densities(std::span<const std::shared_ptr<const Algebra>> factors,
                                    const FilterOnFinite& filter) {
  if (factors.size() != filter.size())
    throw PreconditionError("filter index set does not match the number of factors");
  std::vector<std::uint64_t> pi;
  for (const auto& f : factors) {
    if (f->degenerate()) throw PreconditionError("degenerate factor");
    pi.push_back(f->atom_count());
  }

  DensityComparison out;
  for (std::size_t m = 0; m < pi.size(); ++m)
    if ((filter.kernel() >> m) & 1U) out.lhs += pi[m];

  // count tuples f with f(m) < pi(A_m), modulo agreement on a member of F
  constexpr std::uint64_t kEnumerationLimit = 1U << 20;
  std::uint64_t total = 1;
  for (auto v : pi) total = std::min(total * v, kEnumerationLimit + 1);
  if (total <= kEnumerationLimit) {
    std::set<std::vector<std::uint64_t>> seen;
    std::vector<std::uint64_t> f(pi.size(), 0);
    while (true) {
      auto c = f;
      for (std::size_t m = 0; m < c.size(); ++m)
        if (!((filter.kernel() >> m) & 1U)) c[m] = 0;
      seen.insert(std::move(c));
      std::size_t m = 0;
      while (m < f.size() && ++f[m] == pi[m]) f[m++] = 0;
      if (m == f.size()) break;
    }
    out.rhs = seen.size();
  } else {
    out.rhs = 1;
    for (std::size_t m = 0; m < pi.size(); ++m)
      if ((filter.kernel() >> m) & 1U) out.rhs *= pi[m];
  }
  out.holds = out.lhs <= out.rhs;
  out.equal = out.lhs == out.rhs;
  return out;
}

TModelFragment ultraproduct_model(const std::vector<TModelFragment>& models,
                                  const FilterOnFinite& ultrafilter) {
  const auto point = ultrafilter.principal_point();
  if (!point) throw PreconditionError("ultraproduct needs an ultrafilter");
  if (models.size() != ultrafilter.size())
    throw PreconditionError("filter index set does not match the number of models");
  for (const auto& m : models)
    if (m.L.empty()) throw PreconditionError("model with empty L");

  std::vector<std::shared_ptr<const Algebra>> algebras;
  for (const auto& m : models) algebras.push_back(m.algebra);
  const ReducedProduct product(algebras, ultrafilter);
  const auto K = ultrafilter.kernel();
  auto in_filter = [&](IndexSubset s) { return ultrafilter.contains(s); };
  auto agree_set = [&](auto&& pred) {
    IndexSubset s = 0;
    for (std::size_t m = 0; m < models.size(); ++m)
      if (pred(m)) s |= IndexSubset{1} << m;
    return s;
  };

  // L: classes of tuples of L-positions, by least representative
  using LTuple = std::vector<std::size_t>;
  std::vector<LTuple> Ls;
  for (std::size_t l = 0; l < models[*point].L.size(); ++l) {
    LTuple t(models.size(), 0);
    t[*point] = l;
    Ls.push_back(std::move(t));
  }
  auto l_leq = [&](const LTuple& a, const LTuple& b) {
    return in_filter(agree_set([&](std::size_t m) { return a[m] <= b[m]; }));
  };
  std::sort(Ls.begin(), Ls.end(),
            [&](const LTuple& a, const LTuple& b) { return l_leq(a, b) && !l_leq(b, a); });
  auto l_class = [&](const LTuple& t) {
    for (std::size_t c = 0; c < Ls.size(); ++c)
      if (in_filter(agree_set([&](std::size_t m) { return Ls[c][m] == t[m]; }))) return c;
    throw std::logic_error("tuple outside every L-class");
  };

  TModelFragment out;
  out.algebra = product.algebra();
  if (out.algebra->atom_count() > kMaxModelAtoms)
    throw PreconditionError("ultraproduct algebra is too large for a model");
  out.block_size = models[*point].block_size;
  for (const auto& t : Ls) out.L.push_back(models[*point].L[t[*point]]);

  std::size_t classes = 0;
  for (std::size_t a = 0; a < Ls.size(); ++a) {
    std::size_t cls = classes;
    for (std::size_t b = 0; b < a; ++b)
      if (in_filter(agree_set([&](std::size_t m) {
            return models[m].class_of[Ls[a][m]] == models[m].class_of[Ls[b][m]];
          }))) {
        cls = out.class_of[b];
        break;
      }
    if (cls == classes) ++classes;
    out.class_of.push_back(cls);
  }

  for (const auto& t : Ls) {
    Tuple xs;
    for (std::size_t m = 0; m < models.size(); ++m) xs.push_back(models[m].x[t[m]]);
    out.x.push_back(product.quotient(xs));
  }

  // v on each element of the quotient, via its least representative tuple
  const auto atoms = out.algebra->atom_count();
  const auto& labels = product.atom_labels();
  out.v.resize(std::size_t{1} << atoms);
  for (ElementCode code = 0; code < out.v.size(); ++code) {
    const auto e = element_from_code(*out.algebra, code);
    Tuple rep;
    for (std::size_t m = 0; m < models.size(); ++m) {
      AtomSet s(models[m].algebra->atom_count());
      if ((K >> m) & 1U)
        for (Index g = 0; g < labels.size(); ++g)
          if (labels[g].first == m && leq(out.algebra->generator(g), e)) s.set(labels[g].second);
      rep.push_back(models[m].algebra->from_atoms(std::move(s)));
    }
    if (product.quotient(rep) != e) throw std::logic_error("representative does not map back");
    LTuple vt;
    for (std::size_t m = 0; m < models.size(); ++m)
      vt.push_back(models[m].v[element_code(rep[m])]);
    out.v[code] = l_class(vt);
  }
  return out;
}

}  // namespace boolpres
