#include "kgen/formula.hpp"

#include <algorithm>

namespace kgen {

Atom Atom::prop(int i) {
  if (i < 1) throw std::invalid_argument("propositional index must be >= 1");
  Atom a;
  a.index = i;
  return a;
}

Atom Atom::box(int r, Clause body) {
  if (r < 1) throw std::invalid_argument("box index must be >= 1");
  Atom a;
  a.index = r;
  a.body = std::make_shared<const Clause>(std::move(body));
  return a;
}

int compare(const Atom& a, const Atom& b) {
  if (a.is_prop() != b.is_prop()) return a.is_prop() ? -1 : 1;
  if (a.index != b.index) return a.index < b.index ? -1 : 1;
  if (a.is_prop()) return 0;
  return compare(*a.body, *b.body);
}

int compare(const Literal& a, const Literal& b) {
  if (int c = compare(a.atom, b.atom)) return c;
  if (a.negated == b.negated) return 0;
  return a.negated ? 1 : -1;  // positive before negative
}

int compare(const Clause& a, const Clause& b) {
  const size_t n = std::min(a.literals.size(), b.literals.size());
  for (size_t i = 0; i < n; ++i)
    if (int c = compare(a.literals[i], b.literals[i])) return c;
  if (a.literals.size() == b.literals.size()) return 0;
  return a.literals.size() < b.literals.size() ? -1 : 1;
}

bool equal(const Atom& a, const Atom& b) { return compare(a, b) == 0; }
bool equal(const Clause& a, const Clause& b) { return compare(a, b) == 0; }

bool equal(const Formula& a, const Formula& b) {
  if (a.clauses.size() != b.clauses.size()) return false;
  for (size_t i = 0; i < a.clauses.size(); ++i)
    if (!equal(a.clauses[i], b.clauses[i])) return false;
  return true;
}

bool equal_as_set(const Formula& a, const Formula& b) {
  if (a.clauses.size() != b.clauses.size()) return false;
  auto sorted = [](const Formula& f) {
    std::vector<const Clause*> v;
    v.reserve(f.clauses.size());
    for (const auto& c : f.clauses) v.push_back(&c);
    std::sort(v.begin(), v.end(),
              [](const Clause* x, const Clause* y) { return compare(*x, *y) < 0; });
    return v;
  };
  auto va = sorted(a), vb = sorted(b);
  for (size_t i = 0; i < va.size(); ++i)
    if (!equal(*va[i], *vb[i])) return false;
  return true;
}

Clause canonicalize_clause(std::vector<Literal> raw) {
  if (raw.empty()) throw std::invalid_argument("empty clause");
  std::sort(raw.begin(), raw.end(),
            [](const Literal& a, const Literal& b) { return compare(a, b) < 0; });
  for (size_t i = 1; i < raw.size(); ++i)
    if (equal(raw[i - 1].atom, raw[i].atom))
      throw std::invalid_argument("repeated atom in clause");
  return Clause{std::move(raw)};
}

bool is_canonical(const Clause& c) {
  if (c.literals.empty()) return false;
  for (size_t i = 1; i < c.literals.size(); ++i) {
    if (compare(c.literals[i - 1], c.literals[i]) >= 0) return false;
    if (equal(c.literals[i - 1].atom, c.literals[i].atom)) return false;
  }
  return true;
}

int depth(const Atom& a) { return a.is_prop() ? 0 : 1 + depth(*a.body); }

int depth(const Clause& c) {
  int d = 0;
  for (const auto& l : c.literals) d = std::max(d, depth(l.atom));
  return d;
}

int depth(const Formula& f) {
  int d = 0;
  for (const auto& c : f.clauses) d = std::max(d, depth(c));
  return d;
}

namespace {

void scan_indices(const Clause& c, int& max_prop, int& max_box) {
  for (const auto& l : c.literals) {
    if (l.atom.is_prop()) {
      max_prop = std::max(max_prop, l.atom.index);
    } else {
      max_box = std::max(max_box, l.atom.index);
      scan_indices(*l.atom.body, max_prop, max_box);
    }
  }
}

void count_clause(const Clause& c, int nesting, ShapeCounts& out) {
  int props = 0;
  for (const auto& l : c.literals)
    if (l.atom.is_prop()) ++props;
  out[nesting][static_cast<int>(c.literals.size())][props] += 1;
  for (const auto& l : c.literals)
    if (l.atom.is_box()) count_clause(*l.atom.body, nesting + 1, out);
}

}  // namespace

int max_prop_index(const Formula& f) {
  int p = 0, b = 0;
  for (const auto& c : f.clauses) scan_indices(c, p, b);
  return p;
}

int max_box_index(const Formula& f) {
  int p = 0, b = 0;
  for (const auto& c : f.clauses) scan_indices(c, p, b);
  return b;
}

ShapeCounts count_shapes(const Formula& f) {
  ShapeCounts out;
  for (const auto& c : f.clauses) count_clause(c, 0, out);
  return out;
}

}  // namespace kgen
