#include "kgen/generator.hpp"

#include <string>

namespace kgen {

namespace {

int draw_weighted(const WeightList& w, RandomStream& rng) {
  long long total = 0;
  for (long long v : w) total += v;
  if (total <= 0) throw GenerationError("all-zero weight list");
  std::uint64_t u = rng.uniform_below(static_cast<std::uint64_t>(total));
  long long acc = 0;
  for (size_t i = 0; i < w.size(); ++i) {
    acc += w[i];
    if (static_cast<long long>(u) < acc) return static_cast<int>(i);
  }
  throw GenerationError("weight lookup out of range");  // unreachable
}

bool draw_negated(RandomStream& rng) { return rng.uniform_below(2) != 0; }

}  // namespace

int rnd_length(int nesting_depth, const LengthSpec& c, RandomStream& rng) {
  return draw_weighted(c.at_depth(nesting_depth), rng) + 1;
}

int rnd_propnum(int nesting_depth, int k, int remaining_d, const PropRateSpec& p,
                RandomStream& rng) {
  if (remaining_d == 0) return k;
  const auto& per_length = p.at_depth(nesting_depth);
  if (static_cast<size_t>(k) > per_length.size() || per_length[k - 1].empty())
    throw GenerationError("missing prop-count weights for depth " +
                          std::to_string(nesting_depth) + " length " +
                          std::to_string(k));
  return draw_weighted(per_length[k - 1], rng);
}

Atom rnd_atom(int remaining_d, int nesting_depth, const GenParams& gp,
              RandomStream& rng) {
  if (remaining_d == 0)
    return Atom::prop(1 + static_cast<int>(rng.uniform_below(gp.N)));
  const int r = 1 + static_cast<int>(rng.uniform_below(gp.m));
  return Atom::box(r, rnd_clause(remaining_d - 1, nesting_depth + 1, gp, rng));
}

Clause rnd_clause(int remaining_d, int nesting_depth, const GenParams& gp,
                  RandomStream& rng) {
  const int k = rnd_length(nesting_depth, gp.C, rng);
  const int p = rnd_propnum(nesting_depth, k, remaining_d, gp.p, rng);

  for (long long attempt = 0; attempt < kRejectionCap; ++attempt) {
    std::vector<Literal> lits;
    lits.reserve(k);
    for (int j = 0; j < p; ++j) {
      const bool neg = draw_negated(rng);
      lits.push_back(Literal{neg, rnd_atom(0, nesting_depth, gp, rng)});
    }
    for (int j = p; j < k; ++j) {
      const bool neg = draw_negated(rng);
      lits.push_back(Literal{neg, rnd_atom(remaining_d, nesting_depth, gp, rng)});
    }
    bool repeated = false;
    for (size_t a = 0; a < lits.size() && !repeated; ++a)
      for (size_t b = a + 1; b < lits.size(); ++b)
        if (equal(lits[a].atom, lits[b].atom)) {
          repeated = true;
          break;
        }
    if (!repeated) return canonicalize_clause(std::move(lits));
  }
  throw GenerationError("rejection cap exceeded instantiating clause shape (depth " +
                        std::to_string(nesting_depth) + ", K=" + std::to_string(k) +
                        ", P=" + std::to_string(p) + "): atom pool too small");
}

Formula generate_formula(const GenParams& gp) {
  Diagnostics diag = validate_params(gp);
  if (!diag.ok()) throw SpecError("invalid parameters: " + diag.errors.front());

  RandomStream rng(gp.seed);
  Formula f;
  f.clauses.reserve(gp.L);
  for (int i = 0; i < gp.L; ++i) {
    long long attempt = 0;
    for (;; ++attempt) {
      if (attempt >= kRejectionCap)
        throw GenerationError(
            "rejection cap exceeded drawing distinct top-level clause " +
            std::to_string(i + 1) + " of " + std::to_string(gp.L));
      Clause c = rnd_clause(gp.d, 0, gp, rng);
      bool seen = false;
      for (const auto& prev : f.clauses)
        if (equal(prev, c)) {
          seen = true;
          break;
        }
      if (!seen) {
        f.clauses.push_back(std::move(c));
        break;
      }
    }
  }
  return f;
}

}  // namespace kgen
