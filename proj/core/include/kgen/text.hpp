#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "kgen/formula.hpp"

namespace kgen {

struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(std::string msg, int line_, int column_)
      : std::runtime_error(std::move(msg)), line(line_), column(column_) {}
};

// Grammar:
//   formula := "(and" WS clause+ ")"
//   clause  := "(or" WS literal+ ")"
//   literal := atom | "(not" WS atom ")"
//   atom    := "A" INT | "(box" WS INT WS clause ")"
// Repeated atoms within a clause and repeated clauses are rejected.
Formula parse_formula(std::string_view text);

// Canonical rendering: single spaces, no trailing whitespace.
std::string print_formula(const Formula& f);
std::string print_clause(const Clause& c);

}  // namespace kgen
