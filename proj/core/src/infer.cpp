#include "kgen/infer.hpp"

#include <string>

namespace kgen {

InferredParams infer_params(const Formula& phi) {
  for (const auto& c : phi.clauses)
    if (!is_canonical(c)) throw std::invalid_argument("formula is not canonical");

  InferredParams out;
  out.d = depth(phi);
  out.m = max_box_index(phi);
  out.L = static_cast<int>(phi.clauses.size());
  out.N = max_prop_index(phi);

  const ShapeCounts counts = count_shapes(phi);
  for (int i = 0; i <= out.d; ++i) {
    auto it = counts.find(i);
    int max_len = 0;
    if (it != counts.end() && !it->second.empty()) max_len = it->second.rbegin()->first;
    WeightList lengths(max_len, 0);
    if (it != counts.end())
      for (const auto& [len, by_props] : it->second)
        for (const auto& [props, n] : by_props) lengths[len - 1] += n;
    out.C.per_depth.push_back(std::move(lengths));

    if (i == out.d) continue;  // deepest level is purely propositional
    std::vector<WeightList> per_length;
    for (int j = 1; j <= max_len; ++j) {
      if (it == counts.end() || it->second.find(j) == it->second.end()) {
        per_length.emplace_back();
        continue;
      }
      WeightList w(j + 1, 0);
      for (const auto& [props, n] : it->second.at(j)) w[props] += n;
      per_length.push_back(std::move(w));
    }
    out.p.per_depth.push_back(std::move(per_length));
  }
  return out;
}

LengthSpec widen_spec(LengthSpec spec, const std::vector<LengthCoord>& positions,
                      long long fill) {
  if (fill <= 0) throw SpecError("fill must be positive");
  for (const auto& pos : positions) {
    if (pos.depth < 0 || static_cast<size_t>(pos.depth) >= spec.per_depth.size())
      throw SpecError("widen: depth " + std::to_string(pos.depth) +
                              " out of range");
    auto& w = spec.per_depth[pos.depth];
    if (pos.length < 1 || static_cast<size_t>(pos.length) > w.size())
      throw SpecError("widen: length " + std::to_string(pos.length) +
                              " out of range at depth " + std::to_string(pos.depth));
    if (w[pos.length - 1] != 0)
      throw SpecError("widen: coordinate (depth " +
                                  std::to_string(pos.depth) + ", length " +
                                  std::to_string(pos.length) + ") is not zero");
    w[pos.length - 1] = fill;
  }
  return spec;
}

PropRateSpec widen_spec(PropRateSpec spec, const std::vector<PropCoord>& positions,
                        long long fill) {
  if (fill <= 0) throw SpecError("fill must be positive");
  for (const auto& pos : positions) {
    if (pos.depth < 0 || static_cast<size_t>(pos.depth) >= spec.per_depth.size())
      throw SpecError("widen: depth out of range");
    auto& per_length = spec.per_depth[pos.depth];
    if (pos.length < 1 || static_cast<size_t>(pos.length) > per_length.size())
      throw SpecError("widen: length out of range");
    auto& w = per_length[pos.length - 1];
    if (w.empty())
      throw SpecError(
          "widen: cannot extend an empty per-length list; only zero entries "
          "may be replaced");
    if (pos.prop_count < 0 || static_cast<size_t>(pos.prop_count) >= w.size())
      throw SpecError("widen: prop count out of range");
    if (w[pos.prop_count] != 0)
      throw SpecError("widen: coordinate is not zero");
    w[pos.prop_count] = fill;
  }
  return spec;
}

}  // namespace kgen
