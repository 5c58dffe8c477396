#include "kgen/oracle.hpp"

#include <algorithm>
#include <boost/math/distributions/binomial.hpp>
#include <map>
#include <numeric>

#include "kgen/generator.hpp"
#include "kgen/rng.hpp"
#include "kgen/text.hpp"

namespace kgen {

namespace {

struct ClauseLess {
  bool operator()(const Clause& a, const Clause& b) const { return compare(a, b) < 0; }
};

using ClauseMap = std::map<Clause, Rat, ClauseLess>;

struct AtomOption {
  Atom atom;
  Rat prob;
};

long long sum_weights(const WeightList& w) {
  return std::accumulate(w.begin(), w.end(), 0LL);
}

// Enumerate all (sign, atom) fillings of the slot list, splitting mass into
// accepted canonical clauses and a rejected remainder.
void enumerate_tuples(const std::vector<const std::vector<AtomOption>*>& slots,
                      size_t slot, std::vector<Literal>& lits, const Rat& prob,
                      ClauseMap& accepted, Rat& rejected) {
  if (slot == slots.size()) {
    for (size_t a = 0; a < lits.size(); ++a)
      for (size_t b = a + 1; b < lits.size(); ++b)
        if (equal(lits[a].atom, lits[b].atom)) {
          rejected += prob;
          return;
        }
    accepted[canonicalize_clause(lits)] += prob;
    return;
  }
  const Rat half(1, 2);
  for (const AtomOption& opt : *slots[slot]) {
    for (bool neg : {false, true}) {
      lits.push_back(Literal{neg, opt.atom});
      enumerate_tuples(slots, slot + 1, lits, prob * half * opt.prob, accepted,
                       rejected);
      lits.pop_back();
    }
  }
}

ClauseDistribution enumerate_level(int remaining_d, int nesting_depth,
                                   const GenParams& gp, long long guard) {
  std::vector<AtomOption> prop_options;
  prop_options.reserve(gp.N);
  for (int i = 1; i <= gp.N; ++i)
    prop_options.push_back({Atom::prop(i), Rat(1, gp.N)});

  std::vector<AtomOption> modal_options;
  if (remaining_d > 0) {
    ClauseDistribution child =
        enumerate_level(remaining_d - 1, nesting_depth + 1, gp, guard);
    const Rat inv_m(1, gp.m);
    for (int r = 1; r <= gp.m; ++r)
      for (const auto& [cl, p] : child.entries)
        modal_options.push_back({Atom::box(r, cl), inv_m * p});
  }

  const WeightList& lengths = gp.C.at_depth(nesting_depth);
  const long long length_total = sum_weights(lengths);
  if (length_total <= 0) throw OracleError("all-zero length weights");

  // guard on the estimated ordered-tuple count across shapes
  long long estimate = 0;
  auto bump = [&](int props, int modals) {
    long long e = 1;
    for (int i = 0; i < props; ++i) {
      e *= 2LL * gp.N;
      if (e > guard) throw OracleError("intractable for exact oracle");
    }
    for (int i = 0; i < modals; ++i) {
      e *= 2LL * static_cast<long long>(modal_options.size());
      if (e > guard || e < 0) throw OracleError("intractable for exact oracle");
    }
    estimate += e;
    if (estimate > guard) throw OracleError("intractable for exact oracle");
  };

  ClauseMap out;
  for (int k = 1; k <= static_cast<int>(lengths.size()); ++k) {
    if (lengths[k - 1] <= 0) continue;
    const Rat length_prob(lengths[k - 1], length_total);

    std::vector<std::pair<int, Rat>> prop_counts;  // (P, probability)
    if (remaining_d == 0) {
      prop_counts.emplace_back(k, Rat(1));
    } else {
      const auto& per_length = gp.p.at_depth(nesting_depth);
      if (static_cast<size_t>(k) > per_length.size() || per_length[k - 1].empty())
        throw OracleError("missing prop-count weights for reachable shape");
      const WeightList& pw = per_length[k - 1];
      const long long pt = sum_weights(pw);
      for (int r = 0; r <= k; ++r)
        if (pw[r] > 0) prop_counts.emplace_back(r, Rat(pw[r], pt));
    }

    for (const auto& [props, prop_prob] : prop_counts) {
      bump(props, k - props);
      std::vector<const std::vector<AtomOption>*> slots;
      for (int j = 0; j < props; ++j) slots.push_back(&prop_options);
      for (int j = props; j < k; ++j) slots.push_back(&modal_options);

      ClauseMap accepted;
      Rat rejected(0);
      std::vector<Literal> lits;
      enumerate_tuples(slots, 0, lits, Rat(1), accepted, rejected);
      const Rat accept_mass = Rat(1) - rejected;
      if (accept_mass == Rat(0))
        throw OracleError("shape K=" + std::to_string(k) + " P=" +
                          std::to_string(props) + " can never be instantiated");
      const Rat shape_prob = length_prob * prop_prob;
      for (auto& [cl, p] : accepted) out[cl] += shape_prob * (p / accept_mass);
    }
  }

  ClauseDistribution dist;
  dist.entries.assign(out.begin(), out.end());
  return dist;
}

}  // namespace

Rat ClauseDistribution::probability_of(const Clause& c) const {
  auto it = std::lower_bound(
      entries.begin(), entries.end(), c,
      [](const auto& e, const Clause& x) { return compare(e.first, x) < 0; });
  if (it != entries.end() && equal(it->first, c)) return it->second;
  return Rat(0);
}

Rat ClauseDistribution::total() const {
  Rat t(0);
  for (const auto& [cl, p] : entries) t += p;
  return t;
}

ClauseDistribution enumerate_clause_distribution(int remaining_d, int nesting_depth,
                                                 const GenParams& gp,
                                                 long long guard) {
  Diagnostics diag = validate_params(gp);
  if (!diag.ok()) throw OracleError("invalid parameters: " + diag.errors.front());
  return enumerate_level(remaining_d, nesting_depth, gp, guard);
}

FormulaProbability formula_probability(const Formula& phi, const GenParams& gp,
                                       ProbabilityMode mode, long long guard) {
  const ClauseDistribution dist = enumerate_clause_distribution(gp.d, 0, gp, guard);

  std::vector<Rat> probs;
  probs.reserve(phi.clauses.size());
  for (const auto& c : phi.clauses) {
    Rat p = dist.probability_of(c);
    if (p == Rat(0))
      return FormulaProbability{Rat(0), "zero-support clause: " + print_clause(c)};
    probs.push_back(std::move(p));
  }

  auto ordered = [&](const std::vector<size_t>& order) {
    Rat result(1), drawn(0);
    for (size_t idx : order) {
      result *= probs[idx] / (Rat(1) - drawn);
      drawn += probs[idx];
    }
    return result;
  };

  std::vector<size_t> order(probs.size());
  std::iota(order.begin(), order.end(), 0);
  if (mode == ProbabilityMode::kOrdered) return {ordered(order), ""};

  if (probs.size() > 6)
    throw OracleError("as-set probability requires L <= 6 (L! orderings)");
  Rat total(0);
  do {
    total += ordered(order);
  } while (std::next_permutation(order.begin(), order.end()));
  return {total, ""};
}

TheoremReport check_theorem_6_1(const Formula& phi,
                                const std::vector<LengthCoord>& c_widenings,
                                const std::vector<PropCoord>& p_widenings,
                                long long fill, long long guard) {
  const InferredParams inf = infer_params(phi);
  GenParams gp;
  gp.d = inf.d;
  gp.m = std::max(inf.m, 1);
  gp.L = inf.L;
  gp.N = std::max(inf.N, 1);
  gp.C = inf.C;
  gp.p = inf.p;

  TheoremReport report;
  report.probability = formula_probability(phi, gp, ProbabilityMode::kAsSet, guard).value;

  GenParams widened = gp;
  widened.C = widen_spec(gp.C, c_widenings, fill);
  widened.p = widen_spec(gp.p, p_widenings, fill);
  // A C widening can make a length reachable that the inferred p never saw
  // (its per-length list is empty); give such lengths a uniform list so the
  // widened parameters stay valid.
  for (const LengthCoord& pos : c_widenings) {
    if (pos.depth >= widened.d) continue;  // deepest level ignores p
    if (static_cast<size_t>(pos.depth) >= widened.p.per_depth.size()) continue;
    auto& per_length = widened.p.per_depth[pos.depth];
    if (per_length.size() < static_cast<size_t>(pos.length)) per_length.resize(pos.length);
    auto& w = per_length[pos.length - 1];
    if (w.empty()) w.assign(static_cast<size_t>(pos.length) + 1, fill);
  }
  report.probability_widened =
      formula_probability(phi, widened, ProbabilityMode::kAsSet, guard).value;

  report.positive = report.probability > Rat(0);
  report.monotone = report.probability_widened > Rat(0) &&
                    report.probability_widened <= report.probability;
  return report;
}

MonteCarloResult monte_carlo_frequency(const Formula& phi, const GenParams& gp,
                                       long long samples, std::uint64_t master_seed) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  MonteCarloResult res;
  res.samples = samples;
  for (long long i = 0; i < samples; ++i) {
    GenParams sample_gp = gp;
    sample_gp.seed = derive_seed(master_seed, 0, static_cast<std::uint64_t>(i));
    if (equal_as_set(generate_formula(sample_gp), phi)) ++res.hits;
  }
  res.frequency = static_cast<double>(res.hits) / static_cast<double>(samples);
  using boost::math::binomial_distribution;
  const double alpha = 0.01;
  res.ci_low = binomial_distribution<>::find_lower_bound_on_p(
      static_cast<double>(samples), static_cast<double>(res.hits), alpha / 2);
  res.ci_high = binomial_distribution<>::find_upper_bound_on_p(
      static_cast<double>(samples), static_cast<double>(res.hits), alpha / 2);
  return res;
}

}  // namespace kgen
