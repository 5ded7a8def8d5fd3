#pragma once

// Property suites over seeded random instances, shared by `ppsz_cli verify`
// and the acceptance binary. Every suite is deterministic in its seed.

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "instance_generator.hpp"
#include "ppsz/ppsz.hpp"

namespace ppsz::suites {

struct SuiteOptions {
  std::size_t count = 200;
  std::uint32_t n_max = 8;
  std::uint64_t seed = 1;
  std::size_t oracle_limit = kDefaultOracleLimit;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t instances = 0;
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
  std::vector<std::string> failures;  // first few only
  nlohmann::json details = nlohmann::json::object();

  bool ok() const { return failed == 0 && instances > 0; }

  void record(bool pass, const std::string& what) {
    ++instances;
    if (pass) {
      ++passed;
    } else {
      ++failed;
      if (failures.size() < 20) failures.push_back(what);
    }
  }

  nlohmann::json to_json() const {
    return {{"suite", suite},     {"instances", instances}, {"passed", passed},
            {"failed", failed},   {"failures", failures},   {"details", details},
            {"ok", ok()}};
  }
};

inline std::size_t clause_count(gen::Rng& rng, std::uint32_t n, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(d(rng) * n)));
}

inline Formula random_satisfiable(gen::Rng& rng, std::uint32_t n, std::size_t k, double lo, double hi,
                                  std::size_t oracle_limit) {
  for (;;) {
    Formula f = gen::random_kcnf(rng, n, k, clause_count(rng, n, lo, hi));
    if (is_satisfiable(f, oracle_limit)) return f;
  }
}

inline std::string describe(std::size_t i, const Formula& f) {
  return "instance " + std::to_string(i) + " (n=" + std::to_string(f.variable_count()) +
         ", m=" + std::to_string(f.size()) + ")";
}

/// Exact Pr[Success] by enumeration equals the sum over solutions of
/// E_sigma[2^-G], as rationals. Satisfiable 3-CNFs, n in [3, n_max].
inline SuiteReport identity(const SuiteOptions& o) {
  SuiteReport r;
  r.suite = "identity";
  gen::Rng rng(o.seed);
  for (std::size_t i = 0; i < o.count; ++i) {
    const auto n = static_cast<std::uint32_t>(3 + i % (o.n_max - 2));
    Formula f = random_satisfiable(rng, n, 3, 2.0, 5.0, o.oracle_limit);
    const unsigned tau = choose_tau(n).tau;
    PermutationSet sigma = construct_sigma(f, tau);
    ImplicationConfig cfg{tau};
    Rational exact = success_probability_exact(f, sigma, cfg);
    Rational via = success_probability_via_identity(f, sigma, cfg, kDefaultEnumerationBudget, o.oracle_limit);
    r.record(exact == via, describe(i, f) + ": " + exact.str() + " != " + via.str());
  }
  return r;
}

/// Frozen trees for every variable of unique-solution 3-CNFs, K = tau,
/// d = floor(log_k K); all six properties.
inline SuiteReport tree(const SuiteOptions& o) {
  SuiteReport r;
  r.suite = "tree";
  gen::Rng rng(o.seed);
  std::array<std::uint64_t, 6> property_pass{};
  std::uint64_t trees = 0, cuts = 0;
  for (std::size_t i = 0; i < o.count; ++i) {
    const auto n = static_cast<std::uint32_t>(4 + i % (o.n_max - 3));
    Assignment planted = gen::random_assignment(rng, n);
    Formula f = gen::unique_planted_kcnf(rng, n, 3, clause_count(rng, n, 2.0, 4.0), planted);
    const std::size_t K = choose_tau(n).tau;
    const std::size_t d = tree_depth(f.width(), K);
    bool all = true;
    std::string why;
    for (Var x : f.variables()) {
      FrozenTree t = construct_tree(f, planted, x, d);
      TreeReport rep = verify_tree(t, f, planted, K);
      ++trees;
      cuts += rep.cuts_checked;
      for (std::size_t p = 0; p < 6; ++p) property_pass[p] += rep.property[p] ? 1 : 0;
      if (!rep.all_pass()) {
        all = false;
        why = "x" + std::to_string(x.index) + ": " + (rep.failures.empty() ? "" : rep.failures.front());
      }
    }
    r.record(all, describe(i, f) + " " + why);
  }
  r.details = {{"trees", trees}, {"cuts_checked", cuts}, {"property_pass", property_pass}};
  return r;
}

/// Construct-a: |V(a)| = ceil(log2 S), S(F_a) = 1, and each liquid fixing
/// at least halves the count.
inline SuiteReport construct_a(const SuiteOptions& o) {
  SuiteReport r;
  r.suite = "construct-a";
  gen::Rng rng(o.seed);
  std::uint64_t max_s = 0;
  for (std::size_t i = 0; i < o.count; ++i) {
    const auto n = static_cast<std::uint32_t>(3 + i % (o.n_max - 2));
    Formula f = random_satisfiable(rng, n, 3, 0.5, 4.5, o.oracle_limit);
    GoodAssignment g = construct_good_assignment(f, o.oracle_limit);
    max_s = std::max(max_s, g.solutions);
    bool size_ok = g.a.size() == ceil_log2(g.solutions);
    bool unique_ok = count_solutions(restrict(f, g.a), o.oracle_limit) == 1;
    bool halving = true;
    for (std::size_t s = 0; s < g.liquid_fixings; ++s) halving = halving && 2 * g.counts[s + 1] <= g.counts[s];
    r.record(size_ok && unique_ok && halving,
             describe(i, f) + ": S=" + std::to_string(g.solutions) + " |a|=" + std::to_string(g.a.size()) +
                 (unique_ok ? "" : " S(F_a)!=1") + (halving ? "" : " no halving"));
  }
  r.details = {{"max_solutions", max_s}};
  return r;
}

/// Every K-tuple of distinct inputs is mapped to every point of [p]^K by
/// exactly one family member.
inline SuiteReport kwise(const std::vector<std::uint64_t>& primes = {3, 5, 7},
                         const std::vector<unsigned>& ks = {2, 3}) {
  SuiteReport r;
  r.suite = "kwise";
  r.details = nlohmann::json::array();
  for (std::uint64_t p : primes) {
    for (unsigned K : ks) {
      HashFamily fam(p, K);
      std::uint64_t tuples = 0, max_dev = 0;
      std::vector<std::uint64_t> xs(K);
      std::vector<std::uint64_t> hist;
      // ordered K-tuples of distinct inputs from [p]
      auto rec = [&](auto&& self, unsigned depth) -> void {
        if (depth == K) {
          ++tuples;
          hist.assign(fam.size(), 0);
          for (std::uint64_t m = 0; m < fam.size(); ++m) {
            std::uint64_t cell = 0;
            for (unsigned j = 0; j < K; ++j) cell = cell * p + fam.evaluate(m, xs[j]);
            ++hist[cell];
          }
          for (std::uint64_t c : hist) max_dev = std::max(max_dev, c > 1 ? c - 1 : 1 - c);
          return;
        }
        for (std::uint64_t v = 0; v < p; ++v) {
          if (std::find(xs.begin(), xs.begin() + depth, v) != xs.begin() + depth) continue;
          xs[depth] = v;
          self(self, depth + 1);
        }
      };
      rec(rec, 0);
      r.record(max_dev == 0, "p=" + std::to_string(p) + " K=" + std::to_string(K) +
                                 " max deviation " + std::to_string(max_dev));
      r.details.push_back({{"p", p}, {"K", K}, {"tuples", tuples}, {"members", fam.size()}, {"max_deviation", max_dev}});
    }
  }
  return r;
}

/// solve_general against the oracle on random 3- and 4-CNFs, n in
/// [3, n_max]. Densities straddle the threshold; unsatisfiable instances
/// enumerate every restriction, so the largest n lean satisfiable and 4-CNFs
/// stop at n = 9.
inline SuiteReport equivalence(const SuiteOptions& o) {
  SuiteReport r;
  r.suite = "equivalence";
  gen::Rng rng(o.seed);
  std::map<std::string, std::uint64_t> tally;
  for (std::size_t i = 0; i < o.count; ++i) {
    const auto n = static_cast<std::uint32_t>(3 + i % (o.n_max - 2));
    const std::size_t k = (i / (o.n_max - 2)) % 2 == 1 && n <= 9 ? 4 : 3;
    const double threshold = k == 3 ? 4.27 : 9.93;
    const bool large = n + 2 > o.n_max;
    Formula f = gen::random_kcnf(rng, n, k, clause_count(rng, n, threshold * (large ? 0.5 : 0.7),
                                                         threshold * (large ? 0.95 : 1.5)));
    const bool sat = is_satisfiable(f, o.oracle_limit);
    GeneralResult g = solve_general(f);
    const bool got = g.status == GeneralStatus::sat;
    const bool verified = !got || (g.solution && is_solution(f, *g.solution));
    ++tally[std::string(sat ? "sat" : "unsat") + "_k" + std::to_string(k)];
    r.record(sat == got && verified, describe(i, f) + ": oracle " + (sat ? "sat" : "unsat") + ", solver " +
                                         (got ? "sat" : "unsat") + (verified ? "" : ", bad assignment"));
  }
  r.details = tally;
  return r;
}

inline SuiteReport run_suite(const std::string& name, const SuiteOptions& o) {
  if (name == "identity") return identity(o);
  if (name == "tree") return tree(o);
  if (name == "construct-a") return construct_a(o);
  if (name == "kwise") return kwise();
  if (name == "equivalence") return equivalence(o);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"identity", "tree", "construct-a", "kwise", "equivalence"};
  return names;
}

}  // namespace ppsz::suites
