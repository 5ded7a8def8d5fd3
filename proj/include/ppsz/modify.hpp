#pragma once

// Modify and randomized PPSZ, plus success probabilities computed exactly
// by two independent routes: enumeration of every (sigma, beta) pair, and
// the per-solution sum of E_sigma[2^-G(alpha, sigma)].

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ppsz/cnf.hpp"
#include "ppsz/implication.hpp"
#include "ppsz/oracle.hpp"
#include "ppsz/permutations.hpp"

namespace ppsz {

using Rational = boost::multiprecision::cpp_rational;

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite bit vector consumed front to back.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::vector<bool> bits) : bits_(std::move(bits)) {}
  /// The `length` low bits of `value`, most significant first.
  static BitVector from_integer(std::uint64_t value, unsigned length) {
    std::vector<bool> bits(length);
    for (unsigned j = 0; j < length; ++j) bits[j] = ((value >> (length - 1 - j)) & 1u) != 0;
    return BitVector(std::move(bits));
  }

  std::optional<bool> next(Var) {
    if (cursor_ >= bits_.size()) return std::nullopt;
    return bits_[cursor_++];
  }
  std::size_t cursor() const { return cursor_; }
  std::size_t size() const { return bits_.size(); }
  const std::vector<bool>& bits() const { return bits_; }
  void rewind() { cursor_ = 0; }

  std::string str() const {
    std::string s;
    for (bool b : bits_) s += b ? '1' : '0';
    return s;
  }

 private:
  std::vector<bool> bits_;
  std::size_t cursor_ = 0;
};

/// Bit source that answers every guess with alpha's value: replays the run
/// that returns alpha.
class ReplayBits {
 public:
  explicit ReplayBits(const Assignment& alpha) : alpha_(alpha) {}
  std::optional<bool> next(Var x) { return alpha_.value(x); }

 private:
  const Assignment& alpha_;
};

struct StepRecord {
  Var var;
  Literal literal;
  Provenance provenance;
};

/// Per-step provenance of one Modify run; G = number of guessed steps.
struct GuessProfile {
  std::vector<StepRecord> steps;

  std::size_t guesses() const {
    return static_cast<std::size_t>(std::count_if(steps.begin(), steps.end(), [](const StepRecord& s) {
      return s.provenance == Provenance::guessed;
    }));
  }
  bool guessed(Var x) const {
    for (const auto& s : steps)
      if (s.var == x) return s.provenance == Provenance::guessed;
    return false;
  }
  std::optional<std::size_t> step_of(Var x) const {
    for (std::size_t i = 0; i < steps.size(); ++i)
      if (steps[i].var == x) return i;
    return std::nullopt;
  }
};

enum class ModifyStatus { solution, bits_exhausted, conflict, not_satisfying };

inline const char* to_string(ModifyStatus s) {
  switch (s) {
    case ModifyStatus::solution: return "solution";
    case ModifyStatus::bits_exhausted: return "bits_exhausted";
    case ModifyStatus::conflict: return "conflict";
    default: return "not_satisfying";
  }
}

struct ModifyResult {
  ModifyStatus status = ModifyStatus::not_satisfying;
  std::optional<Assignment> assignment;  // set iff status == solution
  GuessProfile profile;
  std::size_t bits_used = 0;

  bool ok() const { return status == ModifyStatus::solution; }
};

/// Shared step machinery for Modify runs over one root formula F and a fixed
/// base assignment a (empty for plain Modify). Runs process the free
/// variables V(F) \ V(a) and see the formula F_a.
///
/// A run stops as soon as the partial assignment falsifies a clause; such a
/// run cannot end satisfying F, so the returned value is unchanged.
class ModifyRunner {
 public:
  ModifyRunner(const Formula& root, ImplicationMemo& memo, const Assignment& base = {})
      : root_(root), memo_(memo) {
    if (&memo.root() != &root) throw std::invalid_argument("memo belongs to a different formula");
    for (Literal l : base.literals()) work_.add(l, Provenance::fixed);
    base_size_ = work_.size();
    base_conflict_ = evaluate(root_, work_) == Evaluation::falsified;
    for (Var v : root_.variables())
      if (!work_.assigns(v)) free_.push_back(v);
  }

  const Formula& root() const { return root_; }
  std::span<const Var> free_variables() const { return free_; }
  bool base_conflict() const { return base_conflict_; }
  const Assignment& working() const { return work_; }
  const ImplicationConfig& config() const { return memo_.config(); }

  std::optional<Literal> forced(Var x) { return memo_.query(work_, x); }

  /// Adds l; returns false if that falsifies a clause of F.
  bool push(Literal l, Provenance p) {
    work_.add(l, p);
    for (std::uint32_t ci : root_.occurrences(~l))
      if (clause_falsified(root_.clauses()[ci], work_)) return false;
    return true;
  }
  void pop() { work_.pop_back(); }

  template <class BitSource>
  ModifyResult run(std::span<const Var> order, BitSource&& bits) {
    ModifyResult r;
    r.profile.steps.reserve(order.size());
    if (base_conflict_) {
      r.status = ModifyStatus::conflict;
      return r;
    }
    bool stopped = false;
    for (Var x : order) {
      Literal lit;
      Provenance prov;
      if (auto f = forced(x)) {
        lit = *f;
        prov = Provenance::forced;
      } else {
        auto b = bits.next(x);
        if (!b) {
          r.status = ModifyStatus::bits_exhausted;
          stopped = true;
          break;
        }
        ++r.bits_used;
        lit = Literal(x, *b);
        prov = Provenance::guessed;
      }
      r.profile.steps.push_back({x, lit, prov});
      if (!push(lit, prov)) {
        r.status = ModifyStatus::conflict;
        stopped = true;
        break;
      }
    }
    if (!stopped) {
      if (is_solution(root_, work_)) {
        r.status = ModifyStatus::solution;
        r.assignment = work_;
      } else {
        r.status = ModifyStatus::not_satisfying;
      }
    }
    while (work_.size() > base_size_) work_.pop_back();
    return r;
  }

 private:
  const Formula& root_;
  ImplicationMemo& memo_;
  Assignment work_;
  std::size_t base_size_ = 0;
  bool base_conflict_ = false;
  std::vector<Var> free_;
};

inline void check_permutation(const Formula& f, std::span<const Var> sigma) {
  std::vector<Var> s(sigma.begin(), sigma.end());
  std::sort(s.begin(), s.end());
  if (!std::equal(s.begin(), s.end(), f.variables().begin(), f.variables().end()))
    throw std::invalid_argument("sigma is not a permutation of V(F)");
}

/// One Modify run. Forced steps never consume bits; a run that needs a
/// guess after beta is exhausted returns bottom.
inline ModifyResult modify(const Formula& f, std::span<const Var> sigma, BitVector beta,
                           const ImplicationConfig& cfg) {
  check_permutation(f, sigma);
  ImplicationMemo memo(f, cfg);
  ModifyRunner runner(f, memo);
  return runner.run(sigma, beta);
}

/// G(alpha, sigma) and its per-variable profile, from the run that returns
/// alpha. Throws if that run does not return alpha, which would contradict
/// the soundness of tau-implication.
inline GuessProfile replay_profile(ModifyRunner& runner, std::span<const Var> sigma,
                                   const Assignment& alpha) {
  ModifyResult r = runner.run(sigma, ReplayBits(alpha));
  if (!r.ok() || !r.assignment->same_literals(alpha))
    throw std::logic_error("replay of a solution did not return it");
  return std::move(r.profile);
}

struct TrialRecord {
  std::uint64_t sigma_index = 0;
  BitVector beta;
  ModifyResult result;
};

/// Derived per-trial engine: identical for a given (seed, trial).
inline std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

inline TrialRecord ppsz_trial(ModifyRunner& runner, const PermutationSet& sigma, std::mt19937_64& rng) {
  if (sigma.size() == 0) throw std::invalid_argument("empty permutation set");
  TrialRecord t;
  t.sigma_index = std::uniform_int_distribution<std::uint64_t>(0, sigma.size() - 1)(rng);
  std::vector<bool> bits(runner.free_variables().size());
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = coin(rng);
  t.beta = BitVector(std::move(bits));
  auto order = sigma.at(t.sigma_index);
  BitVector b = t.beta;
  t.result = runner.run(order, b);
  return t;
}

/// One randomized PPSZ trial: uniform sigma from Sigma, uniform beta in {0,1}^n.
inline TrialRecord ppsz_randomized(const Formula& f, const PermutationSet& sigma,
                                   const ImplicationConfig& cfg, std::uint64_t seed) {
  ImplicationMemo memo(f, cfg);
  ModifyRunner runner(f, memo);
  auto rng = trial_rng(seed, 0);
  return ppsz_trial(runner, sigma, rng);
}

inline constexpr std::uint64_t kDefaultEnumerationBudget = std::uint64_t{1} << 26;

/// Pr[Success] by running Modify on every (sigma, beta) in Sigma x {0,1}^n.
inline Rational success_probability_exact(const Formula& f, const PermutationSet& sigma,
                                          const ImplicationConfig& cfg,
                                          std::uint64_t budget = kDefaultEnumerationBudget) {
  const std::size_t n = f.variable_count();
  if (n >= 63 || (sigma.size() > (budget >> n)))
    throw BudgetExceeded("exact enumeration of |Sigma| * 2^n runs exceeds budget");
  ImplicationMemo memo(f, cfg);
  ModifyRunner runner(f, memo);
  const std::uint64_t beta_count = std::uint64_t{1} << n;
  std::uint64_t successes = 0;
  for (std::uint64_t s = 0; s < sigma.size(); ++s) {
    auto order = sigma.at(s);
    for (std::uint64_t b = 0; b < beta_count; ++b) {
      if (runner.run(order, BitVector::from_integer(b, static_cast<unsigned>(n))).ok()) ++successes;
    }
  }
  return Rational(successes) / Rational(boost::multiprecision::cpp_int(sigma.size()) * beta_count);
}

/// Pr[Success] as sum over alpha in sat(F) of E_sigma[2^-G(alpha, sigma)].
inline Rational success_probability_via_identity(const Formula& f, const PermutationSet& sigma,
                                                 const ImplicationConfig& cfg,
                                                 std::uint64_t budget = kDefaultEnumerationBudget,
                                                 std::size_t oracle_limit = kDefaultOracleLimit) {
  SolutionSet sols = enumerate_solutions(f, oracle_limit);
  if (sols.count() != 0 && sigma.size() > budget / sols.count())
    throw BudgetExceeded("identity route: |sat(F)| * |Sigma| replays exceed budget");
  ImplicationMemo memo(f, cfg);
  ModifyRunner runner(f, memo);
  boost::multiprecision::cpp_int numerator = 0;
  const std::size_t n = f.variable_count();
  for (std::uint64_t s = 0; s < sigma.size(); ++s) {
    auto order = sigma.at(s);
    for (const Assignment& alpha : sols.solutions) {
      std::size_t g = replay_profile(runner, order, alpha).guesses();
      numerator += boost::multiprecision::cpp_int(1) << (n - g);  // 2^-G scaled by 2^n
    }
  }
  boost::multiprecision::cpp_int denom = boost::multiprecision::cpp_int(sigma.size()) << n;
  return Rational(numerator, denom);
}

struct MonteCarloEstimate {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double estimate() const { return trials == 0 ? 0.0 : static_cast<double>(successes) / trials; }
};

inline MonteCarloEstimate success_probability_monte_carlo(const Formula& f, const PermutationSet& sigma,
                                                          const ImplicationConfig& cfg,
                                                          std::uint64_t trials, std::uint64_t seed) {
  ImplicationMemo memo(f, cfg);
  ModifyRunner runner(f, memo);
  MonteCarloEstimate est;
  est.trials = trials;
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto rng = trial_rng(seed, t);
    if (ppsz_trial(runner, sigma, rng).result.ok()) ++est.successes;
  }
  return est;
}

}  // namespace ppsz
