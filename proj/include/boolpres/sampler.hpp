#pragma once

// Finite simulation of a generic valuation function: a growing condition is
// extended to meet an explicit schedule of dense sets.

#include <boolpres/valuation.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace boolpres {

// Meet D_i = {p : i in dom p}.
struct DomainPoint {
  Index i;
  bool operator==(const DomainPoint&) const = default;
};

// Meet the conditions forcing x_{i*} <= y for some i* in [alpha, alpha + mu),
// where y is the elementary product of `e` over indices below alpha.
struct DensityBelow {
  Index alpha;
  ElementaryConstraint e;
  bool operator==(const DensityBelow&) const = default;
};

using DenseRequest = std::variant<DomainPoint, DensityBelow>;

std::string describe(const DenseRequest& req);

enum class Outcome {
  met,        // the condition now lies in the dense set
  trivial,    // y is already zero, nothing to witness
  capacity,   // no free index left in the block
  malformed,  // request violates its preconditions
};

std::string_view to_string(Outcome o);

struct MeetRecord {
  DenseRequest request;
  Outcome outcome;
  std::optional<Index> witness;  // i* for a met DensityBelow
  std::string message;
};

class GenericSession {
 public:
  static constexpr std::size_t kMaxLambda = kMaxGenerators;

  // Requires mu >= 1, mu | lambda and lambda <= kMaxLambda.
  GenericSession(std::size_t lambda, std::size_t mu, std::uint64_t seed);

  std::size_t lambda() const { return lambda_; }
  std::size_t mu() const { return mu_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t blocks() const { return lambda_ / mu_; }
  const ValuationFunction& current() const { return current_; }
  const std::vector<MeetRecord>& log() const { return log_; }
  // Indices of the block already in dom(current).
  std::size_t block_usage(std::size_t block) const;

  // Extends the current condition into the requested dense set. Failures are
  // recorded in the log and returned; the condition is left unchanged then.
  const MeetRecord& meet(const DenseRequest& req);

 private:
  MeetRecord meet_domain(const DomainPoint& req);
  MeetRecord meet_density(const DensityBelow& req);

  std::size_t lambda_;
  std::size_t mu_;
  std::uint64_t seed_;
  ValuationFunction current_;
  std::vector<MeetRecord> log_;
};

// The condition s on a u {i*} with s|[a]^2 = r|[a]^2, s(i,i*) = >= where
// e(i) = 1 and s(i,i*) = _|_ where e(i) = 0.
ValuationFunction witness_condition(const ValuationFunction& r, const ElementaryConstraint& e,
                                    Index witness);

struct ScheduleReport {
  ValuationFunction final;
  std::vector<MeetRecord> records;
  std::size_t met = 0, trivial = 0, capacity = 0, malformed = 0;
};

ScheduleReport run_schedule(GenericSession& session, const std::vector<DenseRequest>& requests);

// A deterministic schedule: every index as a DomainPoint of block 0, then for
// each later block up to `per_block` DensityBelow requests over random
// products of at most `width` indices below the block.
std::vector<DenseRequest> random_schedule(std::size_t lambda, std::size_t mu, std::uint64_t seed,
                                          std::size_t per_block, std::size_t width = 3);

// Relation-level check that r u q u {x_beta _|_ x_alpha} is consistent when
// p, q satisfy the support conditions relative to alpha_star < alpha < beta.
struct DisjointnessInput {
  ValuationFunction p;
  ValuationFunction q;
  Index alpha = 0;
  Index beta = 0;
  Index alpha_star = 0;
};

// Throws PreconditionError naming the first violated support condition.
void check_disjointness_preconditions(const DisjointnessInput& in);

// The canonical extension of rel p u rel q u {x_beta _|_ x_alpha} over
// dom p u dom q. Throws std::logic_error if that set is inconsistent.
ValuationFunction add_disjointness(const DisjointnessInput& in);

}  // namespace boolpres
