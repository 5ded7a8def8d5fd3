#include <gtest/gtest.h>

#include "ppsz/general_solver.hpp"
#include "test_support.hpp"

using namespace ppsz;

TEST(NextCombination, LexicographicSubsets) {
  std::vector<std::size_t> c{0, 1};
  std::vector<std::vector<std::size_t>> seen{c};
  while (detail::next_combination(c, 4)) seen.push_back(c);
  EXPECT_EQ(seen, (std::vector<std::vector<std::size_t>>{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));
  std::vector<std::size_t> empty;
  EXPECT_FALSE(detail::next_combination(empty, 3));
}

TEST(General, UniqueFormulaWinsAtInstanceZero) {
  Formula f = Formula::over(3, {Clause{1, 2}, Clause{1, -2}, Clause{-2, 3}, Clause{-1, -2}, Clause{-1, 2, 3}});
  GeneralResult g = solve_general(f);
  ASSERT_EQ(g.status, GeneralStatus::sat);
  EXPECT_EQ(g.winning_instance, 0u);
  EXPECT_TRUE(g.solution->same_literals(Assignment{1, -2, 3}));
  UniqueResult u = solve_unique(f);
  EXPECT_EQ(g.winning_round, u.run.round);
}

TEST(General, EmptyFormulaIsSatisfied) {
  Formula f = Formula::over(3, {});
  GeneralResult g = solve_general(f);
  ASSERT_EQ(g.status, GeneralStatus::sat);
  ASSERT_TRUE(g.winning_instance);
  EXPECT_LE(*g.winning_instance, 3u);
  EXPECT_EQ(g.solution->size(), 3u);
}

TEST(General, UnsatisfiableEnumeratesEverything) {
  Formula f = Formula::over(3, {Clause{1, 2}, Clause{1, -2}, Clause{-1, 3}, Clause{-1, -3}});
  GeneralResult g = solve_general(f);
  EXPECT_EQ(g.status, GeneralStatus::unsat);
  EXPECT_FALSE(g.solution);
  ASSERT_EQ(g.instances.size(), 4u);
  // sum_i C(3, i) 2^i = 27
  EXPECT_EQ(g.combinations_tried, 27u);
  for (const auto& s : g.instances) EXPECT_TRUE(s.finished);
}

TEST(General, CutoffScalesWithSigma) {
  Formula f = Formula::over(4, {Clause{1, 2, 3}, Clause{-1, -2, 4}});
  GeneralResult g = solve_general(f);
  for (const auto& s : g.instances) {
    EXPECT_EQ(s.cutoff, static_cast<std::uint64_t>(std::ceil(static_cast<double>(s.sigma_size) *
                                                             std::exp2(s.cutoff_exponent))))
        << "i=" << s.i;
  }
  EXPECT_EQ(g.k_effective, 3u);
  EXPECT_NEAR(g.slack, default_slack(4), 1e-12);
}

TEST(ConstructA, UniqueNeedsNothing) {
  Formula f = Formula::over(2, {Clause{1}, Clause{-1, 2}});
  GoodAssignment g = construct_good_assignment(f);
  EXPECT_TRUE(g.a.empty());
  EXPECT_EQ(g.solutions, 1u);
}

TEST(ConstructA, EmptyFormulaFixesEveryVariable) {
  GoodAssignment g = construct_good_assignment(Formula::over(2, {}));
  EXPECT_EQ(g.a.size(), 2u);
  EXPECT_EQ(g.counts, (std::vector<std::uint64_t>{4, 2, 1}));
  EXPECT_THROW(construct_good_assignment(Formula::over(1, {Clause{1}, Clause{-1}})), UnsatisfiableError);
}

TEST(ConstructA, CeilLog2) {
  EXPECT_EQ(ceil_log2(1), 0u);
  EXPECT_EQ(ceil_log2(2), 1u);
  EXPECT_EQ(ceil_log2(3), 2u);
  EXPECT_EQ(ceil_log2(1024), 10u);
  EXPECT_EQ(ceil_log2(1025), 11u);
}

// Property: the verdict matches the brute force, the assignment checks, and
// interleaved slices reach the same verdict as sequential runs.
TEST(Property, AgreesWithBruteForce) {
  gen::Rng rng(51);
  std::size_t sat = 0, unsat = 0;
  for (int t = 0; t < 80; ++t) {
    const auto n = static_cast<std::uint32_t>(1 + t % 7);
    const std::size_t k = 2 + gen::below(rng, 2);
    Formula f = gen::random_kcnf(rng, n, k, gen::below(rng, 6 * n + 1));
    const bool want = !testing_support::brute_solutions(f).empty();
    GeneralResult g = solve_general(f);
    ASSERT_EQ(g.status == GeneralStatus::sat, want) << "t=" << t;
    if (want) {
      ASSERT_TRUE(g.solution);
      EXPECT_TRUE(is_solution(f, *g.solution));
      ++sat;
    } else {
      ++unsat;
    }
    if (t % 4 == 0) {
      GeneralConfig c;
      c.slice = 5;
      GeneralResult s = solve_general(f, c);
      EXPECT_EQ(s.status, g.status);
      if (s.solution) {
        EXPECT_TRUE(is_solution(f, *s.solution));
      }
    }
  }
  EXPECT_GT(sat, 20u);
  EXPECT_GT(unsat, 10u);
}

// Property: Construct-a leaves exactly one solution, uses ceil(log2 S)
// literals, and each liquid fixing at least halves the count.
TEST(Property, ConstructAHalves) {
  gen::Rng rng(52);
  for (int t = 0; t < 150; ++t) {
    const auto n = static_cast<std::uint32_t>(1 + t % 9);
    Formula f = testing_support::satisfiable_kcnf(rng, n, 3, gen::below(rng, 4 * n + 1));
    GoodAssignment g = construct_good_assignment(f);
    EXPECT_EQ(g.a.size(), ceil_log2(g.solutions));
    EXPECT_EQ(count_solutions(restrict(f, g.a)), 1u);
    for (std::size_t i = 0; i < g.liquid_fixings; ++i) EXPECT_LE(2 * g.counts[i + 1], g.counts[i]);
  }
}
