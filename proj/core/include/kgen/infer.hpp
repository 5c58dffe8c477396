#pragma once

#include "kgen/formula.hpp"
#include "kgen/spec.hpp"

namespace kgen {

struct InferredParams {
  int d = 0;
  int m = 0;  // max box index seen (0 for propositional formulas)
  int L = 0;
  int N = 0;
  LengthSpec C;
  PropRateSpec p;
};

// Builds C and p whose weights are the occurrence counts of clause shapes
// in phi: C gets d+1 depth entries, p gets d (the deepest level is all
// propositional and needs none).
InferredParams infer_params(const Formula& phi);

// Zero-valued coordinates to replace: (depth, length) in a LengthSpec,
// (depth, length, prop_count) in a PropRateSpec.
struct LengthCoord {
  int depth;
  int length;
};
struct PropCoord {
  int depth;
  int length;
  int prop_count;
};

// Replaces the named zeros with fill.  Non-zero or out-of-range coordinates
// are rejected; so is extending an empty per-length list.
LengthSpec widen_spec(LengthSpec spec, const std::vector<LengthCoord>& positions,
                      long long fill);
PropRateSpec widen_spec(PropRateSpec spec, const std::vector<PropCoord>& positions,
                        long long fill);

}  // namespace kgen
