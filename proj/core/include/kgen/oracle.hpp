#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <string>
#include <utility>
#include <vector>

#include "kgen/formula.hpp"
#include "kgen/infer.hpp"
#include "kgen/spec.hpp"

namespace kgen {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::rational<BigInt>;

struct OracleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact emission probabilities of rnd_clause at one (remaining, nesting)
// position, conditioned on acceptance.  Entries are canonical clauses with
// strictly positive probability, sorted, summing to exactly 1.
struct ClauseDistribution {
  std::vector<std::pair<Clause, Rat>> entries;

  Rat probability_of(const Clause& c) const;
  Rat total() const;
};

inline constexpr long long kOracleGuard = 1000000;

// Exhaustively enumerates all ordered literal tuples per shape, folds the
// accepted ones to canonical clauses, and conditions per shape (rejection
// keeps the shape).  Throws OracleError when the estimated outcome count
// exceeds the guard.
ClauseDistribution enumerate_clause_distribution(int remaining_d, int nesting_depth,
                                                 const GenParams& gp,
                                                 long long guard = kOracleGuard);

enum class ProbabilityMode { kOrdered, kAsSet };

struct FormulaProbability {
  Rat value;
  std::string note;  // non-empty when a clause has zero support
};

// Ordered mode: prod_k P_k / (1 - sum_{s<k} P_s), the exact probability of
// the top-level repeat-until-new loop emitting the clauses in this order.
// As-set mode sums the ordered probability over all L! clause orderings
// (L <= 6).
FormulaProbability formula_probability(const Formula& phi, const GenParams& gp,
                                       ProbabilityMode mode,
                                       long long guard = kOracleGuard);

struct TheoremReport {
  Rat probability;
  Rat probability_widened;
  bool positive = false;
  bool monotone = false;
};

// Emission probability of phi under its inferred parameters, and again after
// widening the given zero coordinates; checks P > 0 and 0 < P' <= P.
TheoremReport check_theorem_6_1(const Formula& phi,
                                const std::vector<LengthCoord>& c_widenings,
                                const std::vector<PropCoord>& p_widenings,
                                long long fill = 1, long long guard = kOracleGuard);

struct MonteCarloResult {
  long long hits = 0;
  long long samples = 0;
  double frequency = 0.0;
  double ci_low = 0.0;   // exact (Clopper-Pearson) 99% interval
  double ci_high = 0.0;
};

MonteCarloResult monte_carlo_frequency(const Formula& phi, const GenParams& gp,
                                       long long samples, std::uint64_t master_seed);

}  // namespace kgen
