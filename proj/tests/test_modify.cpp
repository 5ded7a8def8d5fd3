#include <gtest/gtest.h>

#include "ppsz/modify.hpp"
#include "test_support.hpp"

using namespace ppsz;

namespace {

const Var x1(1), x2(2);

BitVector bits(std::initializer_list<int> b) {
  std::vector<bool> v;
  for (int i : b) v.push_back(i != 0);
  return BitVector(std::move(v));
}

// Independent Pr[Success] oracle: every (sigma, beta) pair through a Modify
// written directly against tau_implied_reference.
Rational brute_probability(const Formula& f, const PermutationSet& sigma, unsigned tau) {
  const std::size_t n = f.variable_count();
  std::uint64_t ok = 0;
  for (std::uint64_t s = 0; s < sigma.size(); ++s) {
    const auto order = sigma.at(s);
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
      Assignment a;
      std::size_t used = 0;
      bool failed = false;
      for (Var x : order) {
        auto l = tau_implied_reference(restrict(f, a), x, {tau});
        if (!l) {
          if (used == n) {
            failed = true;
            break;
          }
          l = Literal(x, ((b >> (n - 1 - used)) & 1u) != 0);
          ++used;
        }
        a.add(*l);
      }
      ok += !failed && is_solution(f, a) ? 1 : 0;
    }
  }
  return Rational(ok) / Rational(boost::multiprecision::cpp_int(sigma.size()) << n);
}

}  // namespace

TEST(Modify, AllForcedUsesNoBits) {
  Formula f = Formula::over(2, {Clause{1}, Clause{2}});
  std::vector<Var> order{x2, x1};
  ModifyResult r = modify(f, order, BitVector(), {1});
  ASSERT_TRUE(r.ok());
  EXPECT_TRUE(r.assignment->same_literals(Assignment{1, 2}));
  EXPECT_EQ(r.profile.guesses(), 0u);
  EXPECT_EQ(r.bits_used, 0u);
}

TEST(Modify, BothGuessed) {
  Formula f = Formula::over(2, {Clause{1, 2}});
  std::vector<Var> order{x1, x2};
  ModifyResult r = modify(f, order, bits({1, 1}), {1});
  ASSERT_TRUE(r.ok());
  EXPECT_TRUE(r.assignment->same_literals(Assignment{1, 2}));
  EXPECT_EQ(r.profile.guesses(), 2u);
}

TEST(Modify, BitsExhausted) {
  Formula f = Formula::over(2, {Clause{1, 2}});
  std::vector<Var> order{x1, x2};
  ModifyResult r = modify(f, order, bits({1}), {1});
  EXPECT_EQ(r.status, ModifyStatus::bits_exhausted);
  EXPECT_FALSE(r.assignment);
  EXPECT_EQ(r.bits_used, 1u);
}

TEST(Modify, ForcedAfterGuess) {
  // x1 = 0 leaves the unit clause {x2}
  Formula f = Formula::over(2, {Clause{1, 2}});
  std::vector<Var> order{x1, x2};
  ModifyResult r = modify(f, order, bits({0}), {1});
  ASSERT_TRUE(r.ok());
  EXPECT_TRUE(r.assignment->same_literals(Assignment{-1, 2}));
  EXPECT_FALSE(r.profile.guessed(x2));
  EXPECT_EQ(r.profile.steps[1].provenance, Provenance::forced);
}

TEST(Modify, UnsatisfiableNeverSucceeds) {
  Formula f = Formula::over(2, {Clause{1, 2}, Clause{1, -2}, Clause{-1, 2}, Clause{-1, -2}});
  std::vector<Var> order{x1, x2};
  for (std::uint64_t b = 0; b < 4; ++b) EXPECT_FALSE(modify(f, order, BitVector::from_integer(b, 2), {1}).ok());
  PermutationSet sigma = construct_sigma(f, 2);
  EXPECT_EQ(success_probability_exact(f, sigma, {2}), Rational(0));
  EXPECT_EQ(success_probability_via_identity(f, sigma, {2}), Rational(0));
}

TEST(Modify, RejectsNonPermutation) {
  Formula f = Formula::over(2, {Clause{1, 2}});
  std::vector<Var> order{x1};
  EXPECT_THROW(modify(f, order, BitVector(), {1}), std::invalid_argument);
}

TEST(BitVector, FromIntegerIsMostSignificantFirst) {
  EXPECT_EQ(BitVector::from_integer(0b011, 3).str(), "011");
  EXPECT_EQ(BitVector::from_integer(1, 1).str(), "1");
}

TEST(Probability, UnitFormulaIsCertain) {
  Formula f = Formula::over(1, {Clause{1}});
  PermutationSet sigma = construct_sigma(f, 1);
  EXPECT_EQ(success_probability_exact(f, sigma, {1}), Rational(1));
  EXPECT_EQ(success_probability_via_identity(f, sigma, {1}), Rational(1));
}

TEST(Probability, OneWideClauseIsCertain) {
  // a guessed 0 leaves the unit clause on the other variable, which is forced
  Formula f = Formula::over(2, {Clause{1, 2}});
  PermutationSet sigma = construct_sigma(f, 2);
  EXPECT_EQ(success_probability_exact(f, sigma, {1}), Rational(1));
  EXPECT_EQ(success_probability_via_identity(f, sigma, {1}), Rational(1));
  EXPECT_EQ(brute_probability(f, sigma, 1), Rational(1));
}

TEST(Probability, TwoClausesHalfTheTime) {
  // {x1, x2}, {x1, -x2}: x1 guessed first fails on bit 0 unless tau = 2
  Formula f = Formula::over(2, {Clause{1, 2}, Clause{1, -2}});
  PermutationSet sigma = construct_sigma(f, 2);
  EXPECT_EQ(success_probability_exact(f, sigma, {2}), Rational(1));
  EXPECT_EQ(success_probability_exact(f, sigma, {1}), brute_probability(f, sigma, 1));
  EXPECT_LT(success_probability_exact(f, sigma, {1}), Rational(1));
}

TEST(Probability, UniqueAllForcedIsOne) {
  Formula f = Formula::over(2, {Clause{1}, Clause{-1, 2}});
  PermutationSet sigma = construct_sigma(f, 2);
  EXPECT_EQ(success_probability_via_identity(f, sigma, {2}), Rational(1));
  // at tau = 1 the member that orders x2 first guesses it and fails on bit 0
  EXPECT_EQ(success_probability_via_identity(f, sigma, {1}), Rational(7, 8));
}

TEST(Probability, BudgetIsEnforced) {
  Formula f = Formula::over(10, {});
  PermutationSet sigma = construct_sigma(f, 3);
  EXPECT_THROW(success_probability_exact(f, sigma, {1}, 1000), BudgetExceeded);
}

TEST(Replay, ProfileOfEachSolution) {
  Formula f = Formula::over(2, {Clause{1, 2}});
  ImplicationMemo memo(f, {1});
  ModifyRunner runner(f, memo);
  std::vector<Var> order{x1, x2};
  EXPECT_EQ(replay_profile(runner, order, Assignment{1, 2}).guesses(), 2u);
  EXPECT_EQ(replay_profile(runner, order, Assignment{-1, 2}).guesses(), 1u);
  EXPECT_THROW(replay_profile(runner, order, Assignment{-1, -2}), std::logic_error);
}

TEST(Randomized, SeedDeterminesTrial) {
  gen::Rng rng(5);
  Formula f = testing_support::satisfiable_kcnf(rng, 8, 3, 20);
  PermutationSet sigma = construct_sigma(f, 3);
  TrialRecord a = ppsz_randomized(f, sigma, {3}, 42), b = ppsz_randomized(f, sigma, {3}, 42);
  EXPECT_EQ(a.sigma_index, b.sigma_index);
  EXPECT_EQ(a.beta.str(), b.beta.str());
  EXPECT_EQ(a.result.status, b.result.status);
  auto mc1 = success_probability_monte_carlo(f, sigma, {3}, 300, 9);
  auto mc2 = success_probability_monte_carlo(f, sigma, {3}, 300, 9);
  EXPECT_EQ(mc1.successes, mc2.successes);
}

TEST(Randomized, ForcedFormulaAlwaysSucceeds) {
  Formula f = Formula::over(1, {Clause{1}});
  PermutationSet sigma = construct_sigma(f, 1);
  for (std::uint64_t seed = 0; seed < 20; ++seed) EXPECT_TRUE(ppsz_randomized(f, sigma, {1}, seed).result.ok());
}

// Property: enumeration, the per-solution identity and an independent
// reference Modify give the same rational on small random formulas; a
// Monte Carlo estimate lands within a wide binomial band.
TEST(Property, ExactEqualsIdentity) {
  gen::Rng rng(21);
  for (int t = 0; t < 60; ++t) {
    const auto n = static_cast<std::uint32_t>(2 + t % 5);
    Formula f = gen::random_kcnf(rng, n, 3, gen::below(rng, 5 * n));
    const unsigned tau = 1 + static_cast<unsigned>(gen::below(rng, 3));
    PermutationSet sigma = construct_sigma(f, 1 + static_cast<unsigned>(gen::below(rng, 3)));
    Rational exact = success_probability_exact(f, sigma, {tau});
    EXPECT_EQ(exact, success_probability_via_identity(f, sigma, {tau}));
    if (t % 4 == 0) {
      EXPECT_EQ(exact, brute_probability(f, sigma, tau));
    }
    if (t % 10 == 0) {
      auto mc = success_probability_monte_carlo(f, sigma, {tau}, 2000, 77 + t);
      const double p = exact.convert_to<double>();
      EXPECT_NEAR(mc.estimate(), p, 5.0 * std::sqrt(p * (1 - p) / 2000) + 1e-9);
    }
  }
}
