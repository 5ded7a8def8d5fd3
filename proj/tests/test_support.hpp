#pragma once

// Independent helpers for the tests: a bitmask brute force that shares no
// code with the oracle module, and seeded formula generators.

#include <cstdint>
#include <vector>

#include "instance_generator.hpp"
#include "ppsz/cnf.hpp"

namespace testing_support {

using namespace ppsz;

// Solutions of f over variables 1..n as bitmasks (bit v-1 set means x_v true).
inline std::vector<std::uint32_t> brute_solutions(const Formula& f) {
  const auto n = f.max_variable();
  std::vector<std::uint32_t> out;
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    bool ok = true;
    for (const Clause& c : f.clauses()) {
      bool sat = false;
      for (Literal l : c) sat = sat || (((m >> (l.var().index - 1)) & 1u) == (l.is_positive() ? 1u : 0u));
      if (!sat) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(m);
  }
  return out;
}

inline Assignment from_mask(std::uint32_t n, std::uint32_t m) {
  Assignment a;
  for (std::uint32_t v = 1; v <= n; ++v) a.add(Literal(Var(v), ((m >> (v - 1)) & 1u) != 0));
  return a;
}

inline std::uint32_t to_mask(const Assignment& a) {
  std::uint32_t m = 0;
  for (Literal l : a.literals())
    if (l.is_positive()) m |= 1u << (l.var().index - 1);
  return m;
}

inline Formula satisfiable_kcnf(gen::Rng& rng, std::uint32_t n, std::size_t k, std::size_t m) {
  for (;;) {
    Formula f = gen::random_kcnf(rng, n, k, m);
    if (!brute_solutions(f).empty()) return f;
  }
}

}  // namespace testing_support
