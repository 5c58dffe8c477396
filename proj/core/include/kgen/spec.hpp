#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kgen {

using WeightList = std::vector<long long>;

// Depth-indexed clause-length distributions.  Entry j-1 of a weight list is
// the relative weight of clause length j.  Depths beyond the last entry
// reuse the last entry.
struct LengthSpec {
  std::vector<WeightList> per_depth;

  const WeightList& at_depth(int nesting_depth) const;
  int max_length(int nesting_depth) const;
};

// Depth- and length-indexed propositional-count distributions.  For depth i
// and clause length j, entry r of the (i, j) weight list is the relative
// weight of r propositional atoms; an empty list means length j never
// occurs at depth i.
struct PropRateSpec {
  std::vector<std::vector<WeightList>> per_depth;

  const std::vector<WeightList>& at_depth(int nesting_depth) const;
};

enum class Method { kNew, kOld };

struct GenParams {
  int d = 1;           // maximum modal depth
  int m = 1;           // number of box symbols
  int L = 1;           // top-level clause count
  int N = 1;           // propositional variable count
  LengthSpec C;
  PropRateSpec p;
  Method method = Method::kNew;
  std::uint64_t seed = 0;
};

struct SpecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SpecKind { kLength, kProp };

// Nested bracket lists of non-negative integers, e.g. "[[0, 0, 1]]" for a
// LengthSpec or "[[[], [], [0, 3, 3, 0]]]" for a PropRateSpec.
LengthSpec parse_length_spec(std::string_view text);
PropRateSpec parse_prop_spec(std::string_view text);

std::string print_spec(const LengthSpec& spec);
std::string print_spec(const PropRateSpec& spec);

// Divides every weight list by the GCD of its positive entries.
LengthSpec normalize_spec(LengthSpec spec);
PropRateSpec normalize_spec(PropRateSpec spec);

// Exact rational scalar for the basic-method parameters, e.g. 2.25 = 9/4.
struct Rational64 {
  long long num = 0;
  long long den = 1;

  static Rational64 of(long long n, long long d);
  static Rational64 parse(std::string_view text);  // "0.6", "3/5", "2"
  double to_double() const;
};

// Basic scalar parameters to the advanced list representation.  The clause
// length is floor(C) or ceil(C) with probabilities ceil(C)-C and C-floor(C);
// the propositional count per length K is floor(pK)/ceil(pK) for the new
// method, binomial(K, p) weights for the old method.
void basic_to_advanced(Rational64 c_scalar, Rational64 p_scalar, int d,
                       Method method, LengthSpec& out_c, PropRateSpec& out_p);

struct Diagnostics {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  bool ok() const { return errors.empty(); }
};

Diagnostics validate_params(const GenParams& gp);

}  // namespace kgen
