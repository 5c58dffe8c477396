#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace kgen {

struct Clause;

// An atom is either a propositional variable A_i (body == nullptr) or a
// boxed clause with a box index in [1, m].  Clause bodies are shared so
// copying formulas is cheap.
struct Atom {
  int index = 0;
  std::shared_ptr<const Clause> body;

  bool is_prop() const { return body == nullptr; }
  bool is_box() const { return body != nullptr; }

  static Atom prop(int i);
  static Atom box(int r, Clause body);
};

struct Literal {
  bool negated = false;
  Atom atom;
};

struct Clause {
  std::vector<Literal> literals;
};

struct Formula {
  std::vector<Clause> clauses;
};

// Total order: propositional atoms before boxed atoms; propositional by
// index; boxed by box index, then recursively by body.  Literals order by
// atom, positive before negative.  Clauses lexicographically, shorter
// prefix first.
int compare(const Atom& a, const Atom& b);
int compare(const Literal& a, const Literal& b);
int compare(const Clause& a, const Clause& b);

bool equal(const Atom& a, const Atom& b);
bool equal(const Clause& a, const Clause& b);
bool equal(const Formula& a, const Formula& b);

// Clause-order-insensitive formula comparison.
bool equal_as_set(const Formula& a, const Formula& b);

// Sorts the literals under the canonical order.  Throws std::invalid_argument
// if two literals share the same atom.
Clause canonicalize_clause(std::vector<Literal> raw);

bool is_canonical(const Clause& c);

int depth(const Atom& a);
int depth(const Clause& c);
int depth(const Formula& f);

int max_prop_index(const Formula& f);
int max_box_index(const Formula& f);

// shape_counts[depth][length][prop_count] = number of clause occurrences.
// Top-level clauses are at nesting depth 0, box bodies one deeper.
using ShapeCounts = std::map<int, std::map<int, std::map<int, int>>>;

ShapeCounts count_shapes(const Formula& f);

}  // namespace kgen
