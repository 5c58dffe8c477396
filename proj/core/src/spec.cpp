#include "kgen/spec.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

namespace kgen {

const WeightList& LengthSpec::at_depth(int nesting_depth) const {
  if (per_depth.empty()) throw SpecError("length spec has no depth entries");
  const size_t i = static_cast<size_t>(nesting_depth);
  return i < per_depth.size() ? per_depth[i] : per_depth.back();
}

int LengthSpec::max_length(int nesting_depth) const {
  const WeightList& w = at_depth(nesting_depth);
  for (int j = static_cast<int>(w.size()); j >= 1; --j)
    if (w[j - 1] > 0) return j;
  return 0;
}

const std::vector<WeightList>& PropRateSpec::at_depth(int nesting_depth) const {
  if (per_depth.empty()) throw SpecError("prop spec has no depth entries");
  const size_t i = static_cast<size_t>(nesting_depth);
  return i < per_depth.size() ? per_depth[i] : per_depth.back();
}

namespace {

struct Node {
  bool is_num = false;
  long long num = 0;
  std::vector<Node> items;
};

class ListParser {
 public:
  explicit ListParser(std::string_view text) : text_(text) {}

  Node parse() {
    skip();
    Node n = parse_node();
    skip();
    if (pos_ != text_.size()) throw SpecError("trailing input after spec");
    return n;
  }

 private:
  std::string_view text_;
  size_t pos_ = 0;

  char cur() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip() {
    while (cur() == ' ' || cur() == ',' || cur() == '\n' || cur() == '\t' ||
           cur() == '\r')
      ++pos_;
  }

  Node parse_node() {
    if (cur() == '[') {
      ++pos_;
      Node n;
      skip();
      while (cur() != ']') {
        if (cur() == '\0') throw SpecError("unterminated list in spec");
        n.items.push_back(parse_node());
        skip();
      }
      ++pos_;
      return n;
    }
    if (cur() == '-') throw SpecError("negative weight in spec");
    if (!std::isdigit(static_cast<unsigned char>(cur())))
      throw SpecError("expected '[' or integer in spec");
    Node n;
    n.is_num = true;
    while (std::isdigit(static_cast<unsigned char>(cur()))) {
      n.num = n.num * 10 + (cur() - '0');
      if (n.num > (1LL << 40)) throw SpecError("weight too large");
      ++pos_;
    }
    return n;
  }
};

WeightList to_weights(const Node& n, const char* what) {
  if (n.is_num) throw SpecError(std::string("expected a list of weights for ") + what);
  WeightList w;
  for (const Node& item : n.items) {
    if (!item.is_num) throw SpecError(std::string("nesting too deep for ") + what);
    w.push_back(item.num);
  }
  return w;
}

long long weights_gcd(const WeightList& w) {
  long long g = 0;
  for (long long v : w)
    if (v > 0) g = std::gcd(g, v);
  return g;
}

void print_weights(std::ostringstream& os, const WeightList& w) {
  os << '[';
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) os << ", ";
    os << w[i];
  }
  os << ']';
}

}  // namespace

LengthSpec parse_length_spec(std::string_view text) {
  Node root = ListParser(text).parse();
  if (root.is_num) throw SpecError("length spec must be a list of lists");
  LengthSpec spec;
  for (const Node& d : root.items) spec.per_depth.push_back(to_weights(d, "length spec"));
  return spec;
}

PropRateSpec parse_prop_spec(std::string_view text) {
  Node root = ListParser(text).parse();
  if (root.is_num) throw SpecError("prop spec must be a list of lists of lists");
  PropRateSpec spec;
  for (const Node& d : root.items) {
    if (d.is_num) throw SpecError("prop spec must be nested three levels");
    std::vector<WeightList> per_length;
    for (const Node& l : d.items) per_length.push_back(to_weights(l, "prop spec"));
    spec.per_depth.push_back(std::move(per_length));
  }
  return spec;
}

std::string print_spec(const LengthSpec& spec) {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < spec.per_depth.size(); ++i) {
    if (i) os << ", ";
    print_weights(os, spec.per_depth[i]);
  }
  os << ']';
  return os.str();
}

std::string print_spec(const PropRateSpec& spec) {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < spec.per_depth.size(); ++i) {
    if (i) os << ", ";
    os << '[';
    for (size_t j = 0; j < spec.per_depth[i].size(); ++j) {
      if (j) os << ", ";
      print_weights(os, spec.per_depth[i][j]);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

LengthSpec normalize_spec(LengthSpec spec) {
  for (auto& w : spec.per_depth)
    if (long long g = weights_gcd(w); g > 1)
      for (auto& v : w) v /= g;
  return spec;
}

PropRateSpec normalize_spec(PropRateSpec spec) {
  for (auto& d : spec.per_depth)
    for (auto& w : d)
      if (long long g = weights_gcd(w); g > 1)
        for (auto& v : w) v /= g;
  return spec;
}

Rational64 Rational64::of(long long n, long long d) {
  if (d == 0) throw SpecError("zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  long long g = std::gcd(n < 0 ? -n : n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  return Rational64{n, d};
}

namespace {
long long parse_ll(const std::string& s) {
  size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw SpecError("malformed rational: '" + s + "'");
  }
  if (used != s.size()) throw SpecError("malformed rational: '" + s + "'");
  return v;
}
}  // namespace

Rational64 Rational64::parse(std::string_view text) {
  std::string s(text);
  if (auto slash = s.find('/'); slash != std::string::npos) {
    return of(parse_ll(s.substr(0, slash)), parse_ll(s.substr(slash + 1)));
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    long long den = 1;
    for (size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    return of(parse_ll(digits), den);
  }
  return of(parse_ll(s), 1);
}

double Rational64::to_double() const {
  return static_cast<double>(num) / static_cast<double>(den);
}

namespace {

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

long long choose(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

WeightList reduced(WeightList w) {
  if (long long g = weights_gcd(w); g > 1)
    for (auto& v : w) v /= g;
  return w;
}

}  // namespace

void basic_to_advanced(Rational64 c_scalar, Rational64 p_scalar, int /*d*/,
                       Method method, LengthSpec& out_c, PropRateSpec& out_p) {
  if (c_scalar.num < c_scalar.den) throw SpecError("C must be >= 1");
  if (p_scalar.num < 0 || p_scalar.num > p_scalar.den)
    throw SpecError("p must be in [0, 1]");

  const long long cfloor = c_scalar.num / c_scalar.den;
  const long long cceil = (c_scalar.num + c_scalar.den - 1) / c_scalar.den;
  WeightList lengths(static_cast<size_t>(cceil), 0);
  if (cfloor == cceil) {
    lengths[cfloor - 1] = 1;
  } else {
    lengths[cfloor - 1] = cceil * c_scalar.den - c_scalar.num;
    lengths[cceil - 1] = c_scalar.num - cfloor * c_scalar.den;
  }
  out_c.per_depth = {reduced(std::move(lengths))};

  std::vector<WeightList> per_length;
  for (long long k = 1; k <= cceil; ++k) {
    if (out_c.per_depth[0][k - 1] == 0) {
      per_length.emplace_back();
      continue;
    }
    WeightList w(static_cast<size_t>(k) + 1, 0);
    if (method == Method::kNew) {
      const long long pk_num = p_scalar.num * k;  // p*k = pk_num / den
      const long long den = p_scalar.den;
      const long long pfloor = pk_num / den;
      const long long pceil = (pk_num + den - 1) / den;
      if (pfloor == pceil) {
        w[pfloor] = 1;
      } else {
        w[pfloor] = pceil * den - pk_num;
        w[pceil] = pk_num - pfloor * den;
      }
    } else {
      // binomial weights choose(k, r) * p^r * (1-p)^(k-r), denominator cleared
      for (long long r = 0; r <= k; ++r)
        w[r] = choose(static_cast<int>(k), static_cast<int>(r)) *
               ipow(p_scalar.num, static_cast<int>(r)) *
               ipow(p_scalar.den - p_scalar.num, static_cast<int>(k - r));
    }
    per_length.push_back(reduced(std::move(w)));
  }
  out_p.per_depth = {std::move(per_length)};
}

Diagnostics validate_params(const GenParams& gp) {
  Diagnostics diag;
  auto err = [&](std::string s) { diag.errors.push_back(std::move(s)); };
  auto warn = [&](std::string s) { diag.warnings.push_back(std::move(s)); };

  if (gp.m < 1) err("m must be >= 1");
  if (gp.N < 1) err("N must be >= 1");
  if (gp.L < 1) err("L must be >= 1");
  if (gp.d < 0) err("d must be >= 0");
  if (gp.C.per_depth.empty()) err("length spec has no depth entries");
  if (!diag.ok()) return diag;

  for (int i = 0; i <= gp.d; ++i) {
    const WeightList& lw = gp.C.at_depth(i);
    bool any = false;
    for (long long v : lw) any = any || v > 0;
    if (!any) {
      err("length spec at depth " + std::to_string(i) + " is all-zero");
      continue;
    }
    for (int j = 1; j <= static_cast<int>(lw.size()); ++j) {
      if (lw[j - 1] <= 0) continue;
      if (i == gp.d) {
        // deepest level: all literals propositional and pairwise distinct
        if (j > gp.N)
          err("depth " + std::to_string(i) + " length " + std::to_string(j) +
              ": more distinct propositional atoms than N=" + std::to_string(gp.N));
        continue;
      }
      if (gp.p.per_depth.empty()) {
        err("prop spec has no depth entries but depth " + std::to_string(i) +
            " clauses need one");
        continue;
      }
      const auto& pl = gp.p.at_depth(i);
      if (static_cast<size_t>(j) > pl.size() || pl[j - 1].empty()) {
        err("depth " + std::to_string(i) + " length " + std::to_string(j) +
            ": missing prop-count weight list");
        continue;
      }
      const WeightList& pw = pl[j - 1];
      if (pw.size() != static_cast<size_t>(j) + 1) {
        err("depth " + std::to_string(i) + " length " + std::to_string(j) +
            ": prop-count list must have " + std::to_string(j + 1) + " entries, has " +
            std::to_string(pw.size()));
        continue;
      }
      bool anyp = false;
      for (int r = 0; r <= j; ++r) {
        if (pw[r] <= 0) continue;
        anyp = true;
        if (r > gp.N)
          err("depth " + std::to_string(i) + " length " + std::to_string(j) +
              " prop-count " + std::to_string(r) + ": exceeds N=" + std::to_string(gp.N));
      }
      if (!anyp)
        err("depth " + std::to_string(i) + " length " + std::to_string(j) +
            ": prop-count weight list is all-zero");
    }
  }
  if (!diag.ok()) return diag;

  if (gp.d > 0) {
    const WeightList& top = gp.C.at_depth(0);
    if (!top.empty() && top[0] > 0)
      warn("top-level unary clauses possible; consider C = [[0, ...], ...]");
    const auto& pl = gp.p.at_depth(0);
    for (int j = 1; j <= static_cast<int>(top.size()); ++j) {
      if (top[j - 1] <= 0) continue;
      const WeightList& pw = pl[j - 1];
      if (pw.back() > 0) {
        warn("purely propositional top-level clauses possible (length " +
             std::to_string(j) + "); consider a trailing zero in p");
        break;
      }
    }
  }
  return diag;
}

}  // namespace kgen
