#pragma once

#include <chrono>
#include <functional>
#include <optional>

#include "kgen/formula.hpp"

namespace kgen {

using Clock = std::chrono::steady_clock;

// Bijection between the distinct outermost atoms of a formula and surrogate
// propositional variables 1..size().
struct AbstractionMap {
  std::vector<Atom> atoms;                  // surrogate v -> atoms[v-1]
  std::vector<std::vector<int>> clauses;    // signed surrogates

  int num_vars() const { return static_cast<int>(atoms.size()); }
};

AbstractionMap abstract_formula(const Formula& f);

enum class Status { kSat, kUnsat, kTimeout };

struct DecisionStats {
  long long propositional_branches = 0;
  long long modal_successor_checks = 0;
};

struct DecisionOutcome {
  Status status = Status::kTimeout;
  bool trivially_sat = false;
  bool trivially_unsat = false;
  std::chrono::nanoseconds elapsed{0};
  DecisionStats stats;
};

// Assignment values: +1 true, -1 false, 0 unassigned.
using Assignment = std::vector<signed char>;

// DPLL over surrogate clauses.  The callback receives each satisfying partial
// assignment at most once (branching stops as soon as every clause holds;
// variables still 0 are unconstrained) and returns false to stop the
// enumeration early.  Returns true iff satisfiable (or a callback stopped the
// search).
bool dpll_sat(const std::vector<std::vector<int>>& clauses, int num_vars,
              const std::function<bool(const Assignment&)>& on_model = nullptr,
              std::optional<Clock::time_point> deadline = std::nullopt,
              DecisionStats* stats = nullptr);

// Propositional abstraction unsatisfiable: no propositional valuation.
bool is_trivially_unsatisfiable(const Formula& f);

// Satisfiable in a one-world Kripke structure with no successors: every box
// atom true, every negated box false.
bool is_trivially_satisfiable(const Formula& f);

// Sound and complete K(m) satisfiability via assignment enumeration on the
// abstraction plus recursive successor checks.
DecisionOutcome k_satisfiable(const Formula& f, std::chrono::nanoseconds timeout);

struct OracleGuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Independent brute force: searches tree Kripke models of depth <= depth(f)
// with per-level branching bounded by the number of distinct negated-box
// atoms at that level.  Guard: N <= 3, d <= 2.
Status bounded_model_oracle(const Formula& f, std::chrono::nanoseconds timeout);

}  // namespace kgen
