#include <algorithm>

#include "doctest.h"
#include "kgen/formula.hpp"
#include "kgen/rng.hpp"
#include "kgen/text.hpp"
#include "test_util.hpp"

using namespace kgen;

namespace {

Literal pos(Atom a) { return Literal{false, std::move(a)}; }
Literal neg(Atom a) { return Literal{true, std::move(a)}; }

Clause unary(Literal l) { return Clause{{std::move(l)}}; }

// small random atom for order properties
Atom random_atom(RandomStream& rng, int levels) {
  if (levels == 0 || rng.uniform_below(2) == 0)
    return Atom::prop(1 + static_cast<int>(rng.uniform_below(3)));
  return Atom::box(1 + static_cast<int>(rng.uniform_below(2)),
                   unary(Literal{rng.uniform_below(2) == 0,
                                 random_atom(rng, levels - 1)}));
}

}  // namespace

TEST_CASE("atom order: identity and prop-before-box") {
  CHECK(compare(Atom::prop(1), Atom::prop(1)) == 0);
  CHECK(compare(Atom::prop(3), Atom::box(1, unary(pos(Atom::prop(1))))) < 0);
  CHECK(compare(Atom::prop(1), Atom::prop(2)) < 0);
  CHECK(compare(Atom::box(1, unary(pos(Atom::prop(1)))),
                Atom::box(2, unary(pos(Atom::prop(1))))) < 0);
}

TEST_CASE("clause order on the regression formula's first two clauses") {
  const Formula f = parse_formula(kRegressionFormula);
  // first clause starts with ~A3, second with ~A1: A3 after A1
  CHECK(compare(f.clauses[0], f.clauses[1]) > 0);
}

TEST_CASE("literal order: positive before negative on the same atom") {
  CHECK(compare(pos(Atom::prop(1)), neg(Atom::prop(1))) < 0);
}

TEST_CASE("canonicalize_clause sorts and is idempotent") {
  Clause c = canonicalize_clause({neg(Atom::prop(2)), pos(Atom::prop(1))});
  REQUIRE(c.literals.size() == 2);
  CHECK(!c.literals[0].negated);
  CHECK(c.literals[0].atom.index == 1);
  CHECK(c.literals[1].negated);
  CHECK(c.literals[1].atom.index == 2);

  Clause again = canonicalize_clause(c.literals);
  CHECK(equal(c, again));

  // prop-before-box
  Clause mixed = canonicalize_clause(
      {pos(Atom::box(1, unary(pos(Atom::prop(2))))), neg(Atom::prop(1))});
  CHECK(mixed.literals[0].atom.is_prop());
  CHECK(mixed.literals[1].atom.is_box());
}

TEST_CASE("canonicalize_clause rejects repeated atoms") {
  CHECK_THROWS_AS(canonicalize_clause({pos(Atom::prop(1)), neg(Atom::prop(1))}),
                  std::invalid_argument);
}

TEST_CASE("depth") {
  Formula flat;
  flat.clauses.push_back(canonicalize_clause({pos(Atom::prop(1)), pos(Atom::prop(2))}));
  CHECK(depth(flat) == 0);

  CHECK(depth(parse_formula(kRegressionFormula)) == 2);

  Atom nested = Atom::box(1, unary(pos(Atom::box(1, unary(pos(Atom::prop(4)))))));
  CHECK(depth(nested) == 2);
}

TEST_CASE("parse basic formula") {
  const Formula f = parse_formula("(and (or A1 (not (box 1 (or A2)))))");
  REQUIRE(f.clauses.size() == 1);
  REQUIRE(f.clauses[0].literals.size() == 2);
  CHECK(f.clauses[0].literals[0].atom.is_prop());
  CHECK(f.clauses[0].literals[1].negated);
  CHECK(f.clauses[0].literals[1].atom.is_box());
}

TEST_CASE("print emits canonical order and round-trips") {
  const Formula f = parse_formula(kRegressionFormula);
  const std::string text = print_formula(f);
  const Formula g = parse_formula(text);
  CHECK(equal(f, g));
  CHECK(print_formula(g) == text);
}

TEST_CASE("parser diagnostics") {
  CHECK_THROWS_AS(parse_formula("(and (or A1 A1))"), ParseError);
  CHECK_THROWS_AS(parse_formula("(and (or A1) (or A1))"), ParseError);
  CHECK_THROWS_AS(parse_formula("(and (or))"), ParseError);
  CHECK_THROWS_AS(parse_formula("(and)"), ParseError);
  try {
    parse_formula("(and\n (or A1 A1))");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("count_shapes on the regression formula") {
  const ShapeCounts counts = count_shapes(parse_formula(kRegressionFormula));
  CHECK(counts.at(0).at(2).at(1) == 2);
  CHECK(counts.at(0).at(3).at(1) == 2);
  CHECK(counts.at(1).at(1).at(0) == 2);
  CHECK(counts.at(1).at(2).at(1) == 4);
  CHECK(counts.at(2).at(1).at(1) == 6);
}

TEST_CASE("count_shapes small cases") {
  Formula f;
  f.clauses.push_back(canonicalize_clause({pos(Atom::prop(1)), pos(Atom::prop(2))}));
  ShapeCounts c = count_shapes(f);
  CHECK(c.at(0).at(2).at(2) == 1);

  Formula g;
  g.clauses.push_back(unary(pos(Atom::box(1, unary(pos(Atom::prop(1)))))));
  ShapeCounts cg = count_shapes(g);
  CHECK(cg.at(0).at(1).at(0) == 1);
  CHECK(cg.at(1).at(1).at(1) == 1);
}

TEST_CASE("compare is a total order on random small atoms") {
  RandomStream rng(7);
  std::vector<Atom> atoms;
  for (int i = 0; i < 60; ++i) atoms.push_back(random_atom(rng, 2));
  for (const Atom& a : atoms) CHECK(compare(a, a) == 0);
  for (const Atom& a : atoms)
    for (const Atom& b : atoms) CHECK(compare(a, b) == -compare(b, a));
  for (size_t i = 0; i < 20; ++i)
    for (size_t j = 0; j < 20; ++j)
      for (size_t k = 0; k < 20; ++k) {
        if (compare(atoms[i], atoms[j]) <= 0 && compare(atoms[j], atoms[k]) <= 0)
          CHECK(compare(atoms[i], atoms[k]) <= 0);
      }
}
