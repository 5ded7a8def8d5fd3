#pragma once

// dPPSZ: rounds i = 1..q, every beta in {0,1}^i (lexicographic, first bit
// most significant), every sigma in Sigma (index order); the first
// successful Modify run wins.
//
// Two engines produce identical (solution, round, modify_calls):
//  - literal: runs Modify on the grid exactly as written.
//  - tree: explores, for each sigma, the decision tree of Modify over its
//    guesses. A run with beta of length r returns the solution leaf reached
//    by beta's prefix when that leaf has depth <= r, so the first success is
//    located by search instead of replaying all of the earlier grid.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ppsz/cnf.hpp"
#include "ppsz/implication.hpp"
#include "ppsz/modify.hpp"
#include "ppsz/permutations.hpp"

namespace ppsz {

enum class DppszEngine { literal, tree };

inline const char* to_string(DppszEngine e) { return e == DppszEngine::literal ? "literal" : "tree"; }

struct DppszOptions {
  std::optional<std::size_t> max_round;  // q; defaults to max(1, free variable count)
  std::uint64_t cutoff = 0;              // maximum modify calls, 0 = none
  DppszEngine engine = DppszEngine::literal;
};

enum class DppszStatus { solution, unsat, incomplete };

inline const char* to_string(DppszStatus s) {
  switch (s) {
    case DppszStatus::solution: return "solution";
    case DppszStatus::unsat: return "unsat";
    default: return "incomplete";
  }
}

struct DppszResult {
  DppszStatus status = DppszStatus::incomplete;
  std::optional<Assignment> solution;
  std::size_t round = 0;  // round of the success, or last round entered
  std::uint64_t modify_calls = 0;
  std::vector<std::uint64_t> calls_per_round;  // index 0 is round 1
  std::uint64_t sigma_size = 0;
  std::size_t max_round = 0;
};

namespace detail {

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

// Modify calls in rounds 1..r: |Sigma| * (2^{r+1} - 2).
inline std::uint64_t calls_through_round(std::uint64_t sigma, std::size_t r) {
  if (r >= 62) return std::numeric_limits<std::uint64_t>::max();
  return saturating_mul(sigma, (std::uint64_t{1} << (r + 1)) - 2);
}

inline std::vector<std::uint64_t> split_by_round(std::uint64_t sigma, std::uint64_t calls) {
  std::vector<std::uint64_t> out;
  for (std::size_t r = 1; calls > 0; ++r) {
    std::uint64_t full = saturating_mul(sigma, std::uint64_t{1} << std::min<std::size_t>(r, 63));
    std::uint64_t here = std::min(calls, full);
    out.push_back(here);
    calls -= here;
  }
  return out;
}

inline void check_sigma(const ModifyRunner& runner, const PermutationSet& sigma) {
  auto fv = runner.free_variables();
  auto sv = sigma.variables();
  if (!std::equal(fv.begin(), fv.end(), sv.begin(), sv.end()))
    throw std::invalid_argument("permutation set does not cover exactly the free variables");
  if (sigma.size() == 0) throw std::invalid_argument("empty permutation set");
}

class DecisionTreeSearch {
 public:
  DecisionTreeSearch(ModifyRunner& runner, std::span<const Var> order) : runner_(runner), order_(order) {}

  // Smallest guess count of a solution leaf, searching depths <= bound.
  std::optional<std::size_t> min_guesses(std::size_t bound) {
    best_depth_.reset();
    bound_ = bound;
    mode_ = Mode::min_depth;
    walk(0, 0, 0);
    return best_depth_;
  }

  // First solution leaf of depth <= r in 0-first order, its bits padded to r.
  std::optional<std::uint64_t> first_rank(std::size_t r, std::uint64_t beat) {
    bound_ = r;
    beat_ = beat;
    found_.reset();
    mode_ = Mode::first_leaf;
    walk(0, 0, 0);
    return found_;
  }

  const Assignment& leaf() const { return leaf_; }

 private:
  enum class Mode { min_depth, first_leaf };

  // Guesses are allowed at depths below this limit.
  std::size_t branch_limit() const {
    if (mode_ == Mode::min_depth && best_depth_) return std::min(bound_, *best_depth_ == 0 ? 0 : *best_depth_ - 1);
    return bound_;
  }

  // Returns true to stop the whole walk.
  bool walk(std::size_t pos, std::size_t depth, std::uint64_t prefix) {
    // leaves below pad to at least this; later leaves pad to more
    if (mode_ == Mode::first_leaf && (prefix << (bound_ - depth)) >= beat_) return true;
    std::size_t pushed = 0;
    bool stop = false;
    bool conflict = false;
    while (pos < order_.size()) {
      auto f = runner_.forced(order_[pos]);
      if (!f) break;
      ++pushed;
      ++pos;
      if (!runner_.push(*f, Provenance::forced)) {
        conflict = true;
        break;
      }
    }
    if (!conflict && pos == order_.size()) {
      if (is_solution(runner_.root(), runner_.working())) {
        if (mode_ == Mode::min_depth) {
          if (!best_depth_ || depth < *best_depth_) best_depth_ = depth;
        } else {
          found_ = prefix << (bound_ - depth);
          leaf_ = runner_.working();
          stop = true;
        }
      }
    } else if (!conflict) {
      for (bool b : {false, true}) {
        if (depth >= branch_limit()) break;
        if (runner_.push(Literal(order_[pos], b), Provenance::guessed))
          stop = walk(pos + 1, depth + 1, (prefix << 1) | (b ? 1u : 0u));
        runner_.pop();
        if (stop) break;
      }
    }
    unwind(pushed);
    return stop;
  }

  void unwind(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) runner_.pop();
  }

  ModifyRunner& runner_;
  std::span<const Var> order_;
  Mode mode_ = Mode::min_depth;
  std::size_t bound_ = 0;
  std::optional<std::size_t> best_depth_;
  std::uint64_t beat_ = 0;
  std::optional<std::uint64_t> found_;
  Assignment leaf_;
};

inline DppszResult dppsz_literal(ModifyRunner& runner, const PermutationSet& sigma, std::size_t q,
                                 std::uint64_t cap) {
  DppszResult res;
  res.sigma_size = sigma.size();
  res.max_round = q;
  std::vector<std::vector<Var>> orders;
  if (sigma.size() <= 4096) {
    for (std::uint64_t s = 0; s < sigma.size(); ++s) orders.push_back(sigma.at(s));
  }
  std::vector<Var> scratch;
  for (std::size_t i = 1; i <= q; ++i) {
    if (cap != 0 && res.modify_calls >= cap) return res;
    res.round = i;
    res.calls_per_round.push_back(0);
    const std::uint64_t betas = std::uint64_t{1} << i;
    for (std::uint64_t b = 0; b < betas; ++b) {
      for (std::uint64_t s = 0; s < sigma.size(); ++s) {
        if (cap != 0 && res.modify_calls >= cap) {
          res.status = DppszStatus::incomplete;
          return res;
        }
        ++res.modify_calls;
        ++res.calls_per_round.back();
        const std::vector<Var>* order;
        if (!orders.empty()) {
          order = &orders[s];
        } else {
          scratch = sigma.at(s);
          order = &scratch;
        }
        ModifyResult r = runner.run(*order, BitVector::from_integer(b, static_cast<unsigned>(i)));
        if (r.ok()) {
          res.status = DppszStatus::solution;
          res.solution = std::move(r.assignment);
          return res;
        }
      }
    }
  }
  res.status = DppszStatus::unsat;
  return res;
}

inline DppszResult dppsz_tree(ModifyRunner& runner, const PermutationSet& sigma, std::size_t q,
                              std::uint64_t cap) {
  DppszResult res;
  res.sigma_size = sigma.size();
  res.max_round = q;
  const std::uint64_t S = sigma.size();
  const std::uint64_t total = calls_through_round(S, q);
  const std::uint64_t limit = (cap == 0) ? total : std::min(cap, total);
  // The last round whose first call is within the limit.
  std::size_t reach = 0;
  while (reach < q && calls_through_round(S, reach) < limit) ++reach;

  auto finish_without_solution = [&]() {
    res.modify_calls = limit;
    res.calls_per_round = split_by_round(S, limit);
    res.round = res.calls_per_round.size();
    res.status = limit == total ? DppszStatus::unsat : DppszStatus::incomplete;
    return res;
  };
  if (reach == 0) return finish_without_solution();

  // Iterative deepening on the guess bound keeps the walk to shallow states
  // when some sigma needs few guesses.
  std::vector<std::vector<Var>> orders;
  orders.reserve(S);
  for (std::uint64_t s = 0; s < S; ++s) orders.push_back(sigma.at(s));
  std::optional<std::size_t> g_min;
  for (std::size_t bound = 1; bound <= reach && !g_min; ++bound) {
    for (std::uint64_t s = 0; s < S; ++s) {
      DecisionTreeSearch search(runner, orders[s]);
      if (auto g = search.min_guesses(g_min ? std::min(bound, *g_min) : bound); g && (!g_min || *g < *g_min))
        g_min = g;
      if (g_min && *g_min <= 1) break;  // the round cannot drop below 1
    }
  }
  if (!g_min) return finish_without_solution();

  const std::size_t r = std::max<std::size_t>(1, *g_min);
  std::uint64_t best_rank = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t best_sigma = 0;
  Assignment best_leaf;
  for (std::uint64_t s = 0; s < S; ++s) {
    DecisionTreeSearch search(runner, orders[s]);
    if (auto rank = search.first_rank(r, best_rank)) {
      best_rank = *rank;
      best_sigma = s;
      best_leaf = search.leaf();
    }
  }
  const std::uint64_t t = calls_through_round(S, r - 1) + best_rank * S + best_sigma + 1;
  if (t > limit) return finish_without_solution();
  res.status = DppszStatus::solution;
  res.modify_calls = t;
  res.calls_per_round = split_by_round(S, t);
  res.round = r;
  res.solution = std::move(best_leaf);
  return res;
}

}  // namespace detail

/// dPPSZ on F_a, where F and a are fixed by the runner; sigma ranges over
/// the free variables. A formula with no free variables still gets round 1.
inline DppszResult dppsz(ModifyRunner& runner, const PermutationSet& sigma, const DppszOptions& opt = {}) {
  detail::check_sigma(runner, sigma);
  const std::size_t m = runner.free_variables().size();
  const std::size_t q_full = std::max<std::size_t>(1, m);
  const std::size_t q = opt.max_round ? *opt.max_round : q_full;
  if (q < 1 || q > q_full) throw std::invalid_argument("round budget q must lie in [1, max(1, n)]");
  if (q > 40) throw std::invalid_argument("round budget too large to enumerate");
  DppszResult res = opt.engine == DppszEngine::literal ? detail::dppsz_literal(runner, sigma, q, opt.cutoff)
                                                       : detail::dppsz_tree(runner, sigma, q, opt.cutoff);
  if (res.status == DppszStatus::unsat && q < q_full) res.status = DppszStatus::incomplete;
  return res;
}

inline DppszResult dppsz(const Formula& f, const PermutationSet& sigma, const ImplicationConfig& cfg,
                         const DppszOptions& opt = {}) {
  ImplicationMemo memo(f, cfg);
  ModifyRunner runner(f, memo);
  return dppsz(runner, sigma, opt);
}

struct UniqueConfig {
  std::optional<unsigned> tau;
  std::optional<unsigned> kwise;
  DppszOptions dppsz;
};

struct UniqueResult {
  DppszResult run;
  TauChoice tau;
  unsigned kwise = 1;
  std::uint64_t field_prime = 2;
};

/// Construct Sigma with K = tau (unless overridden) and run dPPSZ.
inline UniqueResult solve_unique(const Formula& f, const UniqueConfig& cfg = {}) {
  UniqueResult out;
  out.tau = choose_tau(f.variable_count(), cfg.tau);
  PermutationSet sigma = construct_sigma(f, cfg.kwise.value_or(out.tau.tau));
  out.kwise = sigma.independence();
  out.field_prime = sigma.field_prime();
  out.run = dppsz(f, sigma, ImplicationConfig{out.tau.tau}, cfg.dppsz);
  return out;
}

struct GuessRateProbe {
  std::vector<Var> variables;
  std::vector<double> mean_guessed;  // E_sigma[G_x(alpha, sigma)] per variable
  double mean_total = 0;             // E_sigma[G(alpha, sigma)]
  std::size_t min_total = 0;         // min_sigma G(alpha, sigma)
};

/// Per-variable guess rates of the run returning alpha, averaged over Sigma.
inline GuessRateProbe guess_rate_probe(const Formula& f, const PermutationSet& sigma, const ImplicationConfig& cfg,
                                       const Assignment& alpha) {
  ImplicationMemo memo(f, cfg);
  ModifyRunner runner(f, memo);
  GuessRateProbe p;
  p.variables.assign(f.variables().begin(), f.variables().end());
  p.mean_guessed.assign(p.variables.size(), 0.0);
  p.min_total = std::numeric_limits<std::size_t>::max();
  for (std::uint64_t s = 0; s < sigma.size(); ++s) {
    GuessProfile prof = replay_profile(runner, sigma.at(s), alpha);
    for (std::size_t i = 0; i < p.variables.size(); ++i)
      if (prof.guessed(p.variables[i])) p.mean_guessed[i] += 1.0;
    std::size_t g = prof.guesses();
    p.mean_total += static_cast<double>(g);
    p.min_total = std::min(p.min_total, g);
  }
  const double S = static_cast<double>(sigma.size());
  for (double& v : p.mean_guessed) v /= S;
  p.mean_total /= S;
  return p;
}

}  // namespace ppsz
