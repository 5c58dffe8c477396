#pragma once

#include <functional>
#include <stdexcept>

#include "kgen/formula.hpp"
#include "kgen/rng.hpp"
#include "kgen/spec.hpp"

namespace kgen {

struct GenerationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The (length, propositional count) pair fixed before atom instantiation.
struct ClauseShape {
  int length = 0;
  int props = 0;
};

inline constexpr long long kRejectionCap = 1000000;

// Clause length by cumulative-weight lookup on one uniform draw.
int rnd_length(int nesting_depth, const LengthSpec& c, RandomStream& rng);

// Propositional count for a clause of length k; at remaining depth 0 all
// literals are propositional and the spec is not consulted.
int rnd_propnum(int nesting_depth, int k, int remaining_d, const PropRateSpec& p,
                RandomStream& rng);

Atom rnd_atom(int remaining_d, int nesting_depth, const GenParams& gp,
              RandomStream& rng);

// Draws a shape, then instantiates it until the atoms are pairwise distinct.
// Rejection keeps the shape.  Draw order: length, prop count, then per
// literal sign before atom, propositional block first.
Clause rnd_clause(int remaining_d, int nesting_depth, const GenParams& gp,
                  RandomStream& rng);

// L pairwise-distinct top-level clauses; a repeated clause is redrawn in
// full, shape included.  Clause order is generation order.
Formula generate_formula(const GenParams& gp);

}  // namespace kgen
