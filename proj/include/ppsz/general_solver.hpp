#pragma once

// Deterministic general k-SAT: instances i = 0..n, where instance i runs
// dPPSZ on F_a for every i-subset of V (lexicographic) and every polarity
// vector over it (binary counter), each under a modify-call cutoff of
// |Sigma| * 2^{(1 - lambda_k)(n - i) + slack}.
//
// Also Construct-a, the oracle-backed partial assignment that leaves a
// unique solution.

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ppsz/analysis.hpp"
#include "ppsz/cnf.hpp"
#include "ppsz/dppsz.hpp"
#include "ppsz/implication.hpp"
#include "ppsz/oracle.hpp"
#include "ppsz/permutations.hpp"

namespace ppsz {

struct GeneralConfig {
  std::optional<unsigned> tau;    // default: choose_tau(n - i) per instance
  std::optional<unsigned> kwise;  // default: tau
  std::optional<double> slack;    // default: 2 log2(n + 1)
  std::uint64_t slice = 0;        // modify calls per turn; 0 runs instances to completion in order
  DppszEngine engine = DppszEngine::tree;
};

enum class GeneralStatus { sat, unsat };

struct InstanceStats {
  std::size_t i = 0;
  std::uint64_t combinations_tried = 0;  // assignments a started
  std::uint64_t skipped = 0;             // F_a contains the empty clause
  std::uint64_t modify_calls = 0;
  std::uint64_t cutoff = 0;
  double cutoff_exponent = 0;
  unsigned tau = 1;
  unsigned kwise = 1;
  std::uint64_t sigma_size = 0;
  bool finished = false;
};

struct GeneralResult {
  GeneralStatus status = GeneralStatus::unsat;
  std::optional<Assignment> solution;  // over V(F), sorted by variable
  std::optional<std::size_t> winning_instance;
  std::optional<std::size_t> winning_round;
  std::uint64_t combinations_tried = 0;
  std::uint64_t modify_calls = 0;
  double slack = 0;
  double lambda = 0;
  std::size_t k_effective = 3;
  std::vector<InstanceStats> instances;
};

inline double default_slack(std::size_t n) { return 2.0 * std::log2(static_cast<double>(n) + 1.0); }

namespace detail {

// Lexicographic i-subsets of {0..n-1}.
inline bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t i = c.size();
  for (std::size_t j = i; j-- > 0;) {
    if (c[j] < n - i + j) {
      ++c[j];
      for (std::size_t t = j + 1; t < i; ++t) c[t] = c[t - 1] + 1;
      return true;
    }
  }
  return false;
}

class GeneralSolver {
 public:
  GeneralSolver(const Formula& f, const GeneralConfig& cfg) : f_(f), cfg_(cfg) {
    n_ = f.variable_count();
    res_.slack = cfg.slack.value_or(default_slack(n_));
    if (res_.slack < 0) throw std::invalid_argument("slack must be non-negative");
    res_.k_effective = std::max<std::size_t>(f.width(), 3);
    res_.lambda = lambda_k(static_cast<unsigned>(res_.k_effective)).value;
    for (std::size_t i = 0; i <= n_; ++i) states_.push_back(make_state(i));
  }

  GeneralResult run() {
    if (cfg_.slice == 0) {
      for (auto& st : states_) {
        while (!st.stats.finished) {
          if (step(st, std::numeric_limits<std::uint64_t>::max())) return finish();
        }
      }
      return finish();
    }
    for (bool active = true; active;) {
      active = false;
      for (auto& st : states_) {
        if (st.stats.finished) continue;
        active = true;
        if (step(st, cfg_.slice)) return finish();
      }
    }
    return finish();
  }

 private:
  struct State {
    InstanceStats stats;
    std::vector<std::size_t> combo;
    std::uint64_t polarity = 0;
    // outcome of the current F_a, replayed against the slice budget
    std::optional<DppszResult> pending;
    std::uint64_t pending_spent = 0;
  };

  State make_state(std::size_t i) {
    State st;
    st.stats.i = i;
    const std::size_t m = n_ - i;
    TauChoice tc = choose_tau(m, cfg_.tau);
    st.stats.tau = tc.tau;
    st.stats.kwise = std::clamp<unsigned>(cfg_.kwise.value_or(tc.tau), 1u,
                                          std::max<unsigned>(1u, static_cast<unsigned>(m)));
    st.stats.sigma_size = sigma_for(m, st.stats.kwise).size();
    st.stats.cutoff_exponent = (1.0 - res_.lambda) * static_cast<double>(m) + res_.slack;
    double c = std::ceil(static_cast<double>(st.stats.sigma_size) * std::exp2(st.stats.cutoff_exponent));
    st.stats.cutoff = c >= 1.8e19 ? std::numeric_limits<std::uint64_t>::max() : static_cast<std::uint64_t>(c);
    st.combo.resize(i);
    for (std::size_t j = 0; j < i; ++j) st.combo[j] = j;
    return st;
  }

  const PermutationSet& sigma_for(std::size_t m, unsigned K) {
    auto key = std::make_pair(m, K);
    auto it = sigma_cache_.find(key);
    if (it == sigma_cache_.end()) {
      std::vector<Var> placeholder;
      for (std::uint32_t v = 1; v <= m; ++v) placeholder.emplace_back(v);
      it = sigma_cache_.emplace(key, PermutationSet(std::move(placeholder), K)).first;
    }
    return it->second;
  }

  ImplicationMemo& memo_for(unsigned tau) {
    auto it = memos_.find(tau);
    if (it == memos_.end()) it = memos_.emplace(tau, std::make_unique<ImplicationMemo>(f_, ImplicationConfig{tau})).first;
    return *it->second;
  }

  Assignment current_a(const State& st) const {
    Assignment a;
    const std::size_t i = st.combo.size();
    for (std::size_t j = 0; j < i; ++j) {
      bool positive = ((st.polarity >> (i - 1 - j)) & 1u) != 0;
      a.add(Literal(f_.variables()[st.combo[j]], positive));
    }
    return a;
  }

  void advance(State& st) {
    const std::size_t i = st.combo.size();
    if (i < 64 && st.polarity + 1 < (std::uint64_t{1} << i)) {
      ++st.polarity;
      return;
    }
    st.polarity = 0;
    if (!next_combination(st.combo, n_)) st.stats.finished = true;
  }

  // Nothing when F_a contains the empty clause.
  std::optional<DppszResult> solve_restricted(State& st, const Assignment& a) {
    ImplicationMemo& memo = memo_for(st.stats.tau);
    ModifyRunner runner(f_, memo, a);
    if (runner.base_conflict()) return std::nullopt;
    std::vector<Var> free(runner.free_variables().begin(), runner.free_variables().end());
    PermutationSet sigma = sigma_for(free.size(), st.stats.kwise).rebind(std::move(free));
    DppszOptions opt;
    opt.cutoff = st.stats.cutoff;
    opt.engine = cfg_.engine;
    return dppsz(runner, sigma, opt);
  }

  // Spends up to `budget` modify calls; true once a solution is found.
  bool step(State& st, std::uint64_t budget) {
    while (!st.stats.finished) {
      if (!st.pending) {
        Assignment a = current_a(st);
        ++st.stats.combinations_tried;
        ++res_.combinations_tried;
        st.pending = solve_restricted(st, a);
        if (!st.pending) {
          ++st.stats.skipped;
          advance(st);
          continue;
        }
        st.pending_spent = 0;
      }
      const std::uint64_t left = st.pending->modify_calls - st.pending_spent;
      if (left > budget) {
        st.pending_spent += budget;
        st.stats.modify_calls += budget;
        res_.modify_calls += budget;
        return false;
      }
      budget -= left;
      st.stats.modify_calls += left;
      res_.modify_calls += left;
      DppszResult done = std::move(*st.pending);
      st.pending.reset();
      if (done.status == DppszStatus::solution) {
        Assignment sol;
        Assignment a = current_a(st);
        std::vector<Literal> lits = done.solution->sorted_literals();
        for (Literal l : a.literals())
          if (!done.solution->assigns(l.var())) lits.push_back(l);
        std::sort(lits.begin(), lits.end());
        for (Literal l : lits) sol.add(l);
        if (!is_solution(f_, sol)) throw std::logic_error("general solver produced a non-solution");
        res_.status = GeneralStatus::sat;
        res_.solution = std::move(sol);
        res_.winning_instance = st.stats.i;
        res_.winning_round = done.round;
        return true;
      }
      advance(st);
      if (budget == 0) return false;
    }
    return false;
  }

  GeneralResult finish() {
    for (auto& st : states_) res_.instances.push_back(st.stats);
    return std::move(res_);
  }

  const Formula& f_;
  GeneralConfig cfg_;
  std::size_t n_ = 0;
  GeneralResult res_;
  std::vector<State> states_;
  std::map<std::pair<std::size_t, unsigned>, PermutationSet> sigma_cache_;
  std::map<unsigned, std::unique_ptr<ImplicationMemo>> memos_;
};

}  // namespace detail

/// Sequential by default; with cfg.slice > 0 the instances take turns of
/// `slice` modify calls each.
inline GeneralResult solve_general(const Formula& f, const GeneralConfig& cfg = {}) {
  return detail::GeneralSolver(f, cfg).run();
}

struct GoodAssignment {
  Assignment a;
  std::uint64_t solutions = 0;              // S(F)
  std::vector<std::uint64_t> counts;        // S(F_{a_i}) after each fixing, starting with S(F)
  std::size_t liquid_fixings = 0;           // literals added by the first loop
};

inline std::size_t ceil_log2(std::uint64_t s) {
  std::size_t r = 0;
  while ((std::uint64_t{1} << r) < s) ++r;
  return r;
}

/// Construct-a: fix liquid variables toward the smaller residual count,
/// then pad with satisfiable literals up to ceil(log2 S(F)).
inline GoodAssignment construct_good_assignment(const Formula& f, std::size_t oracle_limit = kDefaultOracleLimit) {
  GoodAssignment out;
  out.solutions = count_solutions(f, oracle_limit);
  if (out.solutions == 0) throw UnsatisfiableError("construct_good_assignment: formula is unsatisfiable");
  out.counts.push_back(out.solutions);
  Assignment& a = out.a;
  for (;;) {
    Formula fa = restrict(f, a);
    auto cls = classify_variables(fa, oracle_limit);
    if (cls.liquid.empty()) break;
    Var x = cls.liquid.front();
    Assignment pos = a, neg = a;
    pos.add(Literal::positive(x));
    neg.add(Literal::negative(x));
    std::uint64_t sp = count_solutions(restrict(f, pos), oracle_limit);
    std::uint64_t sn = count_solutions(restrict(f, neg), oracle_limit);
    if (sp <= sn) {
      a.add(Literal::positive(x));
      out.counts.push_back(sp);
    } else {
      a.add(Literal::negative(x));
      out.counts.push_back(sn);
    }
    ++out.liquid_fixings;
  }
  const std::size_t target = ceil_log2(out.solutions);
  while (a.size() < target) {
    std::optional<Var> x;
    for (Var v : f.variables())
      if (!a.assigns(v)) {
        x = v;
        break;
      }
    if (!x) break;
    Assignment pos = a;
    pos.add(Literal::positive(*x));
    a.add(is_satisfiable(restrict(f, pos), oracle_limit) ? Literal::positive(*x) : Literal::negative(*x));
    out.counts.push_back(count_solutions(restrict(f, a), oracle_limit));
  }
  return out;
}

}  // namespace ppsz
