#include <boolpres/sampler.hpp>

#include <algorithm>
#include <random>
#include <stdexcept>

namespace boolpres {

std::string describe(const DenseRequest& req) {
  if (const auto* d = std::get_if<DomainPoint>(&req)) return "dom " + std::to_string(d->i);
  const auto& r = std::get<DensityBelow>(req);
  std::string s = "dense " + std::to_string(r.alpha);
  for (const auto& [i, b] : r.e.bits) s += " " + std::to_string(i) + "=" + (b ? "1" : "0");
  return s;
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::met: return "met";
    case Outcome::trivial: return "trivial";
    case Outcome::capacity: return "capacity";
    case Outcome::malformed: break;
  }
  return "malformed";
}

GenericSession::GenericSession(std::size_t lambda, std::size_t mu, std::uint64_t seed)
    : lambda_(lambda), mu_(mu), seed_(seed) {
  if (mu == 0) throw PreconditionError("mu must be at least 1");
  if (lambda % mu != 0) throw PreconditionError("mu must divide lambda");
  if (lambda > kMaxLambda)
    throw PreconditionError("lambda is limited to " + std::to_string(kMaxLambda));
}

std::size_t GenericSession::block_usage(std::size_t block) const {
  const auto lo = block * mu_, hi = lo + mu_;
  return static_cast<std::size_t>(std::count_if(current_.domain().begin(), current_.domain().end(),
                                                [&](Index i) { return i >= lo && i < hi; }));
}

const MeetRecord& GenericSession::meet(const DenseRequest& req) {
  log_.push_back(std::visit(
      [this](const auto& r) {
        if constexpr (std::is_same_v<std::decay_t<decltype(r)>, DomainPoint>)
          return meet_domain(r);
        else
          return meet_density(r);
      },
      req));
  return log_.back();
}

MeetRecord GenericSession::meet_domain(const DomainPoint& req) {
  if (req.i >= lambda_)
    return {req, Outcome::malformed, std::nullopt,
            "index " + std::to_string(req.i) + " is not below lambda"};
  if (current_.contains(req.i)) return {req, Outcome::met, std::nullopt, "already in domain"};
  std::vector<Index> w(current_.domain().begin(), current_.domain().end());
  w.insert(std::upper_bound(w.begin(), w.end(), req.i), req.i);
  current_ = canonical_extension(rel(current_), std::move(w));
  return {req, Outcome::met, std::nullopt, {}};
}

ValuationFunction witness_condition(const ValuationFunction& r, const ElementaryConstraint& e,
                                    Index witness) {
  std::vector<Index> a;
  for (const auto& [i, b] : e.bits) {
    if (i >= witness) throw PreconditionError("product indices must lie below the witness");
    a.push_back(i);
  }
  auto s = r.restrict_to(a);
  std::vector<Index> dom = a;
  dom.push_back(witness);
  ValuationFunction out(std::move(dom));
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = x + 1; y < a.size(); ++y) out.set(a[x], a[y], s.at(a[x], a[y]));
  for (const auto& [i, b] : e.bits) out.set(i, witness, b ? Trit::geq : Trit::perp);
  return out;
}

MeetRecord GenericSession::meet_density(const DensityBelow& req) {
  auto fail = [&](Outcome o, std::string msg) {
    return MeetRecord{req, o, std::nullopt, std::move(msg)};
  };
  if (req.alpha >= lambda_ || req.alpha % mu_ != 0)
    return fail(Outcome::malformed, "alpha " + std::to_string(req.alpha) + " is not a block boundary");
  for (const auto& [i, b] : req.e.bits) {
    if (i >= req.alpha)
      return fail(Outcome::malformed, "index " + std::to_string(i) + " is not below alpha");
    if (!current_.contains(i))
      return fail(Outcome::malformed,
                  "index " + std::to_string(i) + " is not in the domain of the condition");
  }

  const auto pres = algebra_of(current_);
  if (!pres.satisfiable(req.e)) return fail(Outcome::trivial, "product is already zero");

  std::optional<Index> witness;
  for (Index i = req.alpha; i < req.alpha + mu_; ++i)
    if (!current_.contains(i)) {
      witness = i;
      break;
    }
  if (!witness)
    return fail(Outcome::capacity, "block at " + std::to_string(req.alpha) + " is exhausted");

  const auto s = witness_condition(current_, req.e, *witness);
  if (auto v = s.violation())
    throw std::logic_error("witness condition is not a valuation function: " + v->describe());
  auto next = merge(current_, s);

  // x_{i*} != 0 and x_{i*} <= y in A(next)
  const auto after = algebra_of(next);
  if (!after.satisfiable({{{*witness, true}}}))
    throw std::logic_error("witness generator is zero");
  for (const auto& [i, b] : req.e.bits)
    if (after.satisfiable({{{*witness, true}, {i, !b}}}))
      throw std::logic_error("witness generator is not below the product");

  current_ = std::move(next);
  return {req, Outcome::met, witness, {}};
}

ScheduleReport run_schedule(GenericSession& session, const std::vector<DenseRequest>& requests) {
  ScheduleReport report;
  for (const auto& req : requests) {
    const auto& rec = session.meet(req);
    switch (rec.outcome) {
      case Outcome::met: ++report.met; break;
      case Outcome::trivial: ++report.trivial; break;
      case Outcome::capacity: ++report.capacity; break;
      case Outcome::malformed: ++report.malformed; break;
    }
    report.records.push_back(rec);
  }
  report.final = session.current();
  return report;
}

std::vector<DenseRequest> random_schedule(std::size_t lambda, std::size_t mu, std::uint64_t seed,
                                          std::size_t per_block, std::size_t width) {
  if (mu == 0 || lambda % mu != 0) throw PreconditionError("mu must divide lambda");
  std::mt19937_64 rng(seed);
  std::vector<DenseRequest> out;
  for (std::size_t alpha = 0; alpha < lambda; alpha += mu) {
    for (std::size_t t = 0; t < per_block; ++t) {
      DensityBelow req{static_cast<Index>(alpha), {}};
      if (alpha > 0) {
        std::vector<Index> below(alpha);
        for (std::size_t i = 0; i < alpha; ++i) below[i] = static_cast<Index>(i);
        std::shuffle(below.begin(), below.end(), rng);
        const auto k = 1 + rng() % std::min(width, alpha);
        for (std::size_t s = 0; s < k; ++s) req.e.bits[below[s]] = rng() & 1U;
      }
      out.push_back(std::move(req));
    }
    for (std::size_t i = alpha; i < alpha + mu; ++i) out.push_back(DomainPoint{static_cast<Index>(i)});
  }
  return out;
}

void check_disjointness_preconditions(const DisjointnessInput& in) {
  const auto& [p, q, alpha, beta, alpha_star] = in;
  auto fail = [](const std::string& msg) { throw PreconditionError(msg); };
  if (!(alpha_star < alpha && alpha < beta)) fail("need alpha* < alpha < beta");
  if (!p.contains(alpha)) fail("alpha is not in dom p");
  if (!q.contains(beta)) fail("beta is not in dom q");
  for (Index i : p.domain()) {
    if (i < alpha && i >= alpha_star) fail("dom p meets [alpha*, alpha) at " + std::to_string(i));
    if (i >= beta) fail("dom p is not below beta: " + std::to_string(i));
  }
  for (Index i : q.domain())
    if (i < beta && i >= alpha_star) fail("dom q meets [alpha*, beta) at " + std::to_string(i));
  std::vector<Index> common;
  std::set_intersection(p.domain().begin(), p.domain().end(), q.domain().begin(), q.domain().end(),
                        std::back_inserter(common));
  if (p.restrict_to(common) != q.restrict_to(common)) fail("p and q disagree on their common domain");
}

ValuationFunction add_disjointness(const DisjointnessInput& in) {
  check_disjointness_preconditions(in);
  auto r = rel(in.p);
  r.merge(rel(in.q));
  r.insert(Relation::perp(in.beta, in.alpha));
  std::vector<Index> dom;
  std::set_union(in.p.domain().begin(), in.p.domain().end(), in.q.domain().begin(),
                 in.q.domain().end(), std::back_inserter(dom));
  if (!is_consistent(r))
    throw std::logic_error("rel p u rel q u {x_beta _|_ x_alpha} is inconsistent");
  return canonical_extension(r, std::move(dom));
}

}  // namespace boolpres
