#pragma once

// Seeded random k-CNF families: uniform, planted, and planted with a unique
// solution. Shared by the CLI and the test suites.

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "ppsz/cnf.hpp"
#include "ppsz/oracle.hpp"

namespace ppsz::gen {

using Rng = std::mt19937_64;

inline std::uint64_t below(Rng& rng, std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng); }

inline std::vector<Var> distinct_vars(Rng& rng, std::uint32_t n, std::size_t k) {
  std::vector<Var> out;
  while (out.size() < std::min<std::size_t>(k, n)) {
    Var v(static_cast<std::uint32_t>(below(rng, n)) + 1);
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

inline Clause random_clause(Rng& rng, std::uint32_t n, std::size_t k) {
  std::vector<Literal> lits;
  for (Var v : distinct_vars(rng, n, k)) lits.emplace_back(v, below(rng, 2) == 1);
  return Clause(std::move(lits));
}

/// m clauses of width min(k, n), uniform variables and polarities.
inline Formula random_kcnf(Rng& rng, std::uint32_t n, std::size_t k, std::size_t m) {
  std::vector<Clause> cs;
  for (std::size_t i = 0; i < m; ++i) cs.push_back(random_clause(rng, n, k));
  return Formula::over(n, std::move(cs));
}

inline Assignment random_assignment(Rng& rng, std::uint32_t n) {
  Assignment a;
  for (std::uint32_t v = 1; v <= n; ++v) a.add(Literal(Var(v), below(rng, 2) == 1));
  return a;
}

/// Random clauses kept only if the planted assignment satisfies them.
inline Formula planted_kcnf(Rng& rng, std::uint32_t n, std::size_t k, std::size_t m, const Assignment& planted) {
  std::vector<Clause> cs;
  while (cs.size() < m) {
    Clause c = random_clause(rng, n, k);
    if (clause_satisfied(c, planted)) cs.push_back(std::move(c));
  }
  return Formula::over(n, std::move(cs));
}

/// Planted instance tightened until the planted assignment is the only
/// solution: each added clause is satisfied by it and falsifies some other
/// solution.
inline Formula unique_planted_kcnf(Rng& rng, std::uint32_t n, std::size_t k, std::size_t m, const Assignment& planted) {
  if (n > kDefaultOracleLimit) throw std::invalid_argument("unique planting needs an oracle-enumerable n");
  Formula f = planted_kcnf(rng, n, k, m, planted);
  std::vector<Clause> cs(f.clauses().begin(), f.clauses().end());
  for (;;) {
    SolutionSet s = enumerate_solutions(f);
    if (s.count() == 1) return f;
    std::vector<const Assignment*> others;
    for (const auto& a : s.solutions)
      if (!a.same_literals(planted)) others.push_back(&a);
    const Assignment& other = *others[below(rng, others.size())];
    std::vector<Var> differ;
    for (std::uint32_t v = 1; v <= n; ++v)
      if (*other.value(Var(v)) != *planted.value(Var(v))) differ.push_back(Var(v));
    std::vector<Var> vars{differ[below(rng, differ.size())]};
    while (vars.size() < std::min<std::size_t>(k, n)) {
      Var v(static_cast<std::uint32_t>(below(rng, n)) + 1);
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
    std::vector<Literal> lits;
    for (Var v : vars) lits.emplace_back(v, !*other.value(v));
    cs.emplace_back(std::move(lits));
    f = Formula::over(n, cs);
  }
}

}  // namespace ppsz::gen
