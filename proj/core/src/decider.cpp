#include "kgen/decider.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace kgen {

namespace {

struct AtomLess {
  bool operator()(const Atom& a, const Atom& b) const { return compare(a, b) < 0; }
};

struct DeadlineHit {};

void check_deadline(const std::optional<Clock::time_point>& deadline) {
  if (deadline && Clock::now() >= *deadline) throw DeadlineHit{};
}

class Dpll {
 public:
  Dpll(const std::vector<std::vector<int>>& clauses, int num_vars,
       const std::function<bool(const Assignment&)>& on_model,
       std::optional<Clock::time_point> deadline, DecisionStats* stats)
      : clauses_(clauses),
        on_model_(on_model),
        deadline_(deadline),
        stats_(stats),
        assign_(num_vars + 1, 0) {}

  bool run() {
    search();
    return found_;
  }

 private:
  const std::vector<std::vector<int>>& clauses_;
  const std::function<bool(const Assignment&)>& on_model_;
  std::optional<Clock::time_point> deadline_;
  DecisionStats* stats_;
  Assignment assign_;
  bool found_ = false;
  bool stopped_ = false;

  int value(int lit) const {
    signed char v = assign_[std::abs(lit)];
    if (v == 0) return 0;
    return (lit > 0) == (v > 0) ? 1 : -1;
  }

  // Returns false on conflict; appends propagated vars to trail.
  bool propagate(std::vector<int>& trail) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& cl : clauses_) {
        int unassigned = 0, unit_lit = 0;
        bool satisfied = false;
        for (int lit : cl) {
          int v = value(lit);
          if (v > 0) {
            satisfied = true;
            break;
          }
          if (v == 0) {
            ++unassigned;
            unit_lit = lit;
          }
        }
        if (satisfied) continue;
        if (unassigned == 0) return false;
        if (unassigned == 1) {
          assign_[std::abs(unit_lit)] = unit_lit > 0 ? 1 : -1;
          trail.push_back(std::abs(unit_lit));
          changed = true;
        }
      }
    }
    return true;
  }

  void undo(const std::vector<int>& trail) {
    for (int v : trail) assign_[v] = 0;
  }

  void search() {
    if (stopped_) return;
    check_deadline(deadline_);
    std::vector<int> trail;
    if (!propagate(trail)) {
      undo(trail);
      return;
    }
    // branch on a variable from an unsatisfied clause; if none is left the
    // partial assignment already satisfies everything and is a model
    int var = 0;
    for (const auto& cl : clauses_) {
      bool satisfied = false;
      int candidate = 0;
      for (int lit : cl) {
        int v = value(lit);
        if (v > 0) {
          satisfied = true;
          break;
        }
        if (v == 0 && candidate == 0) candidate = std::abs(lit);
      }
      if (!satisfied) {
        var = candidate;
        break;
      }
    }
    if (var == 0) {
      found_ = true;
      if (on_model_ && !on_model_(assign_)) stopped_ = true;
      undo(trail);
      return;
    }
    if (stats_) ++stats_->propositional_branches;
    for (signed char v : {static_cast<signed char>(1), static_cast<signed char>(-1)}) {
      assign_[var] = v;
      search();
      assign_[var] = 0;
      if (stopped_ || (found_ && !on_model_)) break;
    }
    undo(trail);
  }
};

Literal negate(const Literal& l) { return Literal{!l.negated, l.atom}; }

bool k_sat_rec(const Formula& f, const std::optional<Clock::time_point>& deadline,
               DecisionStats& stats);

// One satisfying abstraction assignment passes iff every false box surrogate
// has a consistent successor world.
bool assignment_passes(const AbstractionMap& abs, const Assignment& assign,
                       const std::optional<Clock::time_point>& deadline,
                       DecisionStats& stats) {
  std::map<int, std::vector<const Clause*>> forced;  // box index -> true bodies
  for (int v = 1; v <= abs.num_vars(); ++v) {
    const Atom& a = abs.atoms[v - 1];
    if (a.is_box() && assign[v] > 0) forced[a.index].push_back(a.body.get());
  }
  for (int v = 1; v <= abs.num_vars(); ++v) {
    const Atom& a = abs.atoms[v - 1];
    if (!a.is_box() || assign[v] >= 0) continue;  // unassigned boxes carry no obligation
    // successor must satisfy all forced bodies and falsify this one
    Formula succ;
    for (const Clause* c : forced[a.index]) succ.clauses.push_back(*c);
    for (const Literal& l : a.body->literals)
      succ.clauses.push_back(Clause{{negate(l)}});
    ++stats.modal_successor_checks;
    check_deadline(deadline);
    if (!k_sat_rec(succ, deadline, stats)) return false;
  }
  return true;
}

bool k_sat_rec(const Formula& f, const std::optional<Clock::time_point>& deadline,
               DecisionStats& stats) {
  const AbstractionMap abs = abstract_formula(f);
  bool witness = false;
  dpll_sat(
      abs.clauses, abs.num_vars(),
      [&](const Assignment& assign) {
        if (assignment_passes(abs, assign, deadline, stats)) {
          witness = true;
          return false;  // stop
        }
        return true;
      },
      deadline, &stats);
  return witness;
}

}  // namespace

AbstractionMap abstract_formula(const Formula& f) {
  AbstractionMap abs;
  std::map<Atom, int, AtomLess> index;
  for (const auto& c : f.clauses) {
    std::vector<int> cl;
    for (const auto& l : c.literals) {
      auto [it, inserted] = index.emplace(l.atom, abs.num_vars() + 1);
      if (inserted) abs.atoms.push_back(l.atom);
      cl.push_back(l.negated ? -it->second : it->second);
    }
    abs.clauses.push_back(std::move(cl));
  }
  return abs;
}

bool dpll_sat(const std::vector<std::vector<int>>& clauses, int num_vars,
              const std::function<bool(const Assignment&)>& on_model,
              std::optional<Clock::time_point> deadline, DecisionStats* stats) {
  return Dpll(clauses, num_vars, on_model, deadline, stats).run();
}

bool is_trivially_unsatisfiable(const Formula& f) {
  const AbstractionMap abs = abstract_formula(f);
  return !dpll_sat(abs.clauses, abs.num_vars());
}

bool is_trivially_satisfiable(const Formula& f) {
  // substitute truth for every outermost box atom (no-successor world)
  std::vector<std::vector<int>> reduced;
  std::map<Atom, int, AtomLess> index;
  int num_vars = 0;
  for (const auto& c : f.clauses) {
    std::vector<int> cl;
    bool satisfied = false;
    for (const auto& l : c.literals) {
      if (l.atom.is_box()) {
        if (!l.negated) satisfied = true;  // box literal is true, clause holds
        continue;                          // negated box literal is false, drop
      }
      auto [it, inserted] = index.emplace(l.atom, num_vars + 1);
      if (inserted) ++num_vars;
      cl.push_back(l.negated ? -it->second : it->second);
    }
    if (satisfied) continue;
    if (cl.empty()) return false;  // clause falsified in the successor-free world
    reduced.push_back(std::move(cl));
  }
  return dpll_sat(reduced, num_vars);
}

DecisionOutcome k_satisfiable(const Formula& f, std::chrono::nanoseconds timeout) {
  DecisionOutcome out;
  const auto start = Clock::now();
  const auto deadline = start + timeout;

  // cheap, so a timeout never hides them
  out.trivially_sat = is_trivially_satisfiable(f);
  out.trivially_unsat = is_trivially_unsatisfiable(f);

  try {
    out.status = k_sat_rec(f, deadline, out.stats) ? Status::kSat : Status::kUnsat;
  } catch (const DeadlineHit&) {
    out.status = Status::kTimeout;
  }
  out.elapsed = Clock::now() - start;
  return out;
}

namespace {

struct World {
  unsigned valuation = 0;
  std::vector<std::vector<int>> succ;  // per box index, indices into next level
};

bool eval_clause(const Clause& c, size_t level, const World& w,
                 const std::vector<std::vector<World>>& levels);

bool eval_literal(const Literal& l, size_t level, const World& w,
                  const std::vector<std::vector<World>>& levels) {
  bool v;
  if (l.atom.is_prop()) {
    v = (w.valuation >> (l.atom.index - 1)) & 1u;
  } else {
    v = true;
    const int r = l.atom.index;
    if (static_cast<size_t>(r) <= w.succ.size()) {
      for (int s : w.succ[r - 1])
        if (!eval_clause(*l.atom.body, level + 1, levels[level + 1][s], levels)) {
          v = false;
          break;
        }
    }
  }
  return l.negated ? !v : v;
}

bool eval_clause(const Clause& c, size_t level, const World& w,
                 const std::vector<std::vector<World>>& levels) {
  for (const auto& l : c.literals)
    if (eval_literal(l, level, w, levels)) return true;
  return false;
}

void collect_negated_boxes(const Clause& c, int level,
                           std::vector<std::vector<std::set<Atom, AtomLess>>>& out,
                           int m) {
  for (const auto& l : c.literals) {
    if (!l.atom.is_box()) continue;
    if (l.negated) out[level][l.atom.index - 1].insert(l.atom);
    collect_negated_boxes(*l.atom.body, level + 1, out, m);
  }
}

void subsets_up_to(int n, int max_size, std::vector<int>& cur,
                   std::vector<std::vector<int>>& out, int start) {
  out.push_back(cur);
  if (static_cast<int>(cur.size()) == max_size) return;
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    subsets_up_to(n, max_size, cur, out, i + 1);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> successor_choices(int n, int max_size) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  subsets_up_to(n, max_size, cur, out, 0);
  return out;
}

}  // namespace

Status bounded_model_oracle(const Formula& f, std::chrono::nanoseconds timeout) {
  const int d = depth(f);
  const int n = max_prop_index(f);
  const int m = std::max(1, max_box_index(f));
  if (n > 3 || d > 2)
    throw OracleGuardError("bounded model oracle guard: requires N <= 3, d <= 2");

  const auto deadline = Clock::now() + timeout;

  std::vector<std::vector<std::set<Atom, AtomLess>>> negated(
      d + 1, std::vector<std::set<Atom, AtomLess>>(m));
  for (const auto& c : f.clauses) collect_negated_boxes(c, 0, negated, m);

  const unsigned num_vals = 1u << n;
  std::vector<std::vector<World>> levels(d + 1);
  for (unsigned v = 0; v < num_vals; ++v) levels[d].push_back(World{v, {}});

  for (int i = d - 1; i >= 1; --i) {
    std::vector<std::vector<std::vector<int>>> choices(m);
    for (int r = 0; r < m; ++r)
      choices[r] = successor_choices(static_cast<int>(levels[i + 1].size()),
                                     static_cast<int>(negated[i][r].size()));
    std::vector<size_t> pick(m, 0);
    for (unsigned v = 0; v < num_vals; ++v) {
      std::fill(pick.begin(), pick.end(), 0);
      for (;;) {
        World w;
        w.valuation = v;
        w.succ.resize(m);
        for (int r = 0; r < m; ++r) w.succ[r] = choices[r][pick[r]];
        levels[i].push_back(std::move(w));
        int r = 0;
        while (r < m && ++pick[r] == choices[r].size()) pick[r++] = 0;
        if (r == m) break;
      }
    }
  }

  // root worlds iterated lazily
  std::vector<std::vector<std::vector<int>>> root_choices(m);
  const int next_count = d > 0 ? static_cast<int>(levels[1].size()) : 0;
  for (int r = 0; r < m; ++r)
    root_choices[r] =
        successor_choices(next_count, static_cast<int>(negated[0][r].size()));

  std::vector<size_t> pick(m, 0);
  for (unsigned v = 0; v < num_vals; ++v) {
    std::fill(pick.begin(), pick.end(), 0);
    for (;;) {
      if (Clock::now() >= deadline) return Status::kTimeout;
      World root;
      root.valuation = v;
      root.succ.resize(m);
      for (int r = 0; r < m; ++r) root.succ[r] = root_choices[r][pick[r]];
      bool all = true;
      for (const auto& c : f.clauses)
        if (!eval_clause(c, 0, root, levels)) {
          all = false;
          break;
        }
      if (all) return Status::kSat;
      int r = 0;
      while (r < m && ++pick[r] == root_choices[r].size()) pick[r++] = 0;
      if (r == m) break;
    }
  }
  return Status::kUnsat;
}

}  // namespace kgen
