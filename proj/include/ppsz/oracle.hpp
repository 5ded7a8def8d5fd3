#pragma once

// Exhaustive ground truth: sat(F), S(F), implied literals and the
// frozen/liquid split. Deliberately naive; everything else is checked
// against it at small n.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ppsz/cnf.hpp"

namespace ppsz {

class OracleLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsatisfiableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultOracleLimit = 24;

struct SolutionSet {
  std::vector<Var> variables;
  std::vector<Assignment> solutions;  // each sorted by variable, in lexicographic order
  std::uint64_t count() const { return solutions.size(); }
};

namespace detail {

// Depth-first truth-table walk over V(F) in index order. A clause is checked
// once its largest variable has been assigned.
class TruthTableWalk {
 public:
  explicit TruthTableWalk(const Formula& f) : f_(f) {
    auto vars = f.variables();
    closing_.resize(vars.size());
    for (std::uint32_t ci = 0; ci < f.size(); ++ci) {
      const Clause& c = f.clauses()[ci];
      if (c.empty()) {
        trivially_unsat_ = true;
        continue;
      }
      Var last = c.literals().back().var();
      auto pos = std::lower_bound(vars.begin(), vars.end(), last) - vars.begin();
      closing_[pos].push_back(ci);
    }
  }

  template <class Visit>
  void run(Visit&& visit) {
    if (trivially_unsat_) return;
    Assignment a;
    descend(0, a, visit);
  }

 private:
  template <class Visit>
  void descend(std::size_t depth, Assignment& a, Visit& visit) {
    auto vars = f_.variables();
    if (depth == vars.size()) {
      visit(a);
      return;
    }
    for (bool value : {false, true}) {
      a.add(Literal(vars[depth], value));
      bool ok = true;
      for (std::uint32_t ci : closing_[depth]) {
        if (clause_falsified(f_.clauses()[ci], a)) {
          ok = false;
          break;
        }
      }
      if (ok) descend(depth + 1, a, visit);
      a.pop_back();
    }
  }

  const Formula& f_;
  std::vector<std::vector<std::uint32_t>> closing_;
  bool trivially_unsat_ = false;
};

inline void check_limit(const Formula& f, std::size_t limit) {
  if (f.variable_count() > limit)
    throw OracleLimitError("formula has " + std::to_string(f.variable_count()) +
                           " variables, oracle limit is " + std::to_string(limit));
}

}  // namespace detail

inline SolutionSet enumerate_solutions(const Formula& f, std::size_t limit = kDefaultOracleLimit) {
  detail::check_limit(f, limit);
  SolutionSet out;
  out.variables.assign(f.variables().begin(), f.variables().end());
  detail::TruthTableWalk(f).run([&](const Assignment& a) { out.solutions.push_back(a); });
  return out;
}

inline std::uint64_t count_solutions(const Formula& f, std::size_t limit = kDefaultOracleLimit) {
  detail::check_limit(f, limit);
  std::uint64_t n = 0;
  detail::TruthTableWalk(f).run([&](const Assignment&) { ++n; });
  return n;
}

inline bool is_satisfiable(const Formula& f, std::size_t limit = kDefaultOracleLimit) {
  return count_solutions(f, limit) > 0;
}

/// Intersection of all solutions. Unlike tau-implication, the empty family
/// is an error here.
inline std::vector<Literal> implied_literals(const Formula& f,
                                             std::size_t limit = kDefaultOracleLimit) {
  SolutionSet s = enumerate_solutions(f, limit);
  if (s.solutions.empty()) throw UnsatisfiableError("implied_literals: formula is unsatisfiable");
  std::vector<Literal> out;
  const Assignment& first = s.solutions.front();
  for (Var v : s.variables) {
    bool val = *first.value(v);
    bool agree = std::all_of(s.solutions.begin(), s.solutions.end(),
                             [&](const Assignment& a) { return *a.value(v) == val; });
    if (agree) out.emplace_back(v, val);
  }
  return out;
}

struct VariableClassification {
  std::vector<Var> frozen;
  std::vector<Var> liquid;
};

inline VariableClassification classify_variables(const Formula& f,
                                                 std::size_t limit = kDefaultOracleLimit) {
  auto implied = implied_literals(f, limit);
  VariableClassification out;
  std::size_t j = 0;
  for (Var v : f.variables()) {
    if (j < implied.size() && implied[j].var() == v) {
      out.frozen.push_back(v);
      ++j;
    } else {
      out.liquid.push_back(v);
    }
  }
  return out;
}

}  // namespace ppsz
