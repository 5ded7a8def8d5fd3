#include <gtest/gtest.h>

#include <map>
#include <numeric>

#include "ppsz/permutations.hpp"

using namespace ppsz;

namespace {

std::vector<Var> vars_1_to(std::uint32_t n) {
  std::vector<Var> v;
  for (std::uint32_t i = 1; i <= n; ++i) v.emplace_back(i);
  return v;
}

// Direct evaluation of sum_j c_j z^j mod p, for comparison with Horner.
std::uint64_t naive_eval(const std::vector<std::uint64_t>& c, std::uint64_t z, std::uint64_t p) {
  std::uint64_t acc = 0, pw = 1;
  for (std::uint64_t cj : c) {
    acc = (acc + cj * pw) % p;
    pw = pw * z % p;
  }
  return acc;
}

}  // namespace

TEST(Primes, SmallestPrimeAtLeast) {
  EXPECT_EQ(smallest_prime_at_least(0), 2u);
  EXPECT_EQ(smallest_prime_at_least(2), 2u);
  EXPECT_EQ(smallest_prime_at_least(3), 3u);
  EXPECT_EQ(smallest_prime_at_least(8), 11u);
  EXPECT_EQ(smallest_prime_at_least(12), 13u);
  EXPECT_EQ(smallest_prime_at_least(90), 97u);
  for (std::uint64_t v : {2u, 3u, 5u, 97u, 7919u}) EXPECT_TRUE(is_prime(v));
  for (std::uint64_t v : {0u, 1u, 4u, 91u, 7917u}) EXPECT_FALSE(is_prime(v));
}

TEST(HashFamily, DegreeZeroIsConstant) {
  HashFamily h = build_hash_family(2, 1);
  EXPECT_EQ(h.prime(), 2u);
  ASSERT_EQ(h.size(), 2u);
  for (std::uint64_t m = 0; m < 2; ++m)
    for (std::uint64_t z = 0; z < 5; ++z) EXPECT_EQ(h.evaluate(m, z), m);
}

TEST(HashFamily, Sizes) {
  EXPECT_EQ(build_hash_family(3, 2).size(), 9u);
  EXPECT_EQ(build_hash_family(5, 2).size(), 25u);
  EXPECT_EQ(build_hash_family(8, 3).size(), 1331u);
  EXPECT_THROW(build_hash_family(3, 4), std::invalid_argument);
  EXPECT_THROW(build_hash_family(3, 0), std::invalid_argument);
  EXPECT_THROW(HashFamily(4, 2), std::invalid_argument);
  EXPECT_THROW(HashFamily(3, 2).evaluate(9, 0), std::out_of_range);
}

TEST(HashFamily, HornerMatchesNaive) {
  HashFamily h(7, 3);
  for (std::uint64_t m = 0; m < h.size(); ++m)
    for (std::uint64_t z = 0; z < 7; ++z) EXPECT_EQ(h.evaluate(m, z), naive_eval(h.coefficients(m), z, 7));
}

// Exhaustive K-wise check: each K-tuple of distinct inputs hits every point
// of [p]^K exactly once across the family.
TEST(HashFamily, ExactlyKWiseIndependent) {
  for (std::uint64_t p : {2u, 3u, 5u, 7u}) {
    for (unsigned K = 1; K <= 3 && K <= p; ++K) {
      HashFamily h(p, K);
      std::vector<std::uint64_t> xs(K);
      std::iota(xs.begin(), xs.end(), 0);
      // walk all K-subsets; ordered tuples follow by symmetry of the check
      for (;;) {
        std::map<std::vector<std::uint64_t>, int> hist;
        for (std::uint64_t m = 0; m < h.size(); ++m) {
          std::vector<std::uint64_t> cell;
          for (auto x : xs) cell.push_back(h.evaluate(m, x));
          ++hist[cell];
        }
        ASSERT_EQ(hist.size(), h.size()) << "p=" << p << " K=" << K;
        for (const auto& [cell, c] : hist) ASSERT_EQ(c, 1);
        int i = static_cast<int>(K) - 1;
        while (i >= 0 && xs[i] == p - K + i) --i;
        if (i < 0) break;
        ++xs[i];
        for (unsigned j = i + 1; j < K; ++j) xs[j] = xs[j - 1] + 1;
      }
    }
  }
}

TEST(PermutationSet, SingleVariable) {
  PermutationSet s(vars_1_to(1), 1);
  EXPECT_EQ(s.field_prime(), 2u);
  EXPECT_EQ(s.size(), 2u);
  for (std::uint64_t m = 0; m < s.size(); ++m) EXPECT_EQ(s.at(m), vars_1_to(1));
}

TEST(PermutationSet, ConstantPolynomialKeepsIndexOrder) {
  PermutationSet s(vars_1_to(4), 2);
  const std::uint64_t p = s.field_prime();
  // member c * p has coefficients (c, 0): constant, so ties break by index
  for (std::uint64_t c = 0; c < p; ++c) {
    for (Var v : s.variables()) EXPECT_EQ(s.placement(c * p, v), c);
    EXPECT_EQ(s.at(c * p), vars_1_to(4));
  }
}

TEST(PermutationSet, IdentityPolynomial) {
  PermutationSet s(vars_1_to(5), 2);
  ASSERT_EQ(s.field_prime(), 5u);
  const std::uint64_t id = 1;  // coefficients (0, 1): h(z) = z
  ASSERT_EQ(s.family().coefficients(id), (std::vector<std::uint64_t>{0, 1}));
  for (std::uint32_t i = 1; i <= 4; ++i) EXPECT_EQ(s.placement(id, Var(i)), i);
  EXPECT_EQ(s.placement(id, Var(5)), 0u);  // 5 mod 5
  EXPECT_EQ(s.at(id), (std::vector<Var>{Var(5), Var(1), Var(2), Var(3), Var(4)}));
}

TEST(PermutationSet, KIsClamped) {
  EXPECT_EQ(PermutationSet(vars_1_to(3), 7).independence(), 3u);
  EXPECT_EQ(PermutationSet(vars_1_to(3), 0).independence(), 1u);
  EXPECT_EQ(PermutationSet({}, 3).independence(), 1u);
}

TEST(PermutationSet, RebindKeepsOrders) {
  PermutationSet s(vars_1_to(4), 2);
  PermutationSet r = s.rebind({Var(10), Var(20), Var(30), Var(40)});
  for (std::uint64_t m = 0; m < s.size(); ++m) {
    auto a = s.at(m), b = r.at(m);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(b[i].index, a[i].index * 10);
  }
  EXPECT_THROW(s.rebind({Var(1)}), std::invalid_argument);
}

TEST(PermutationSet, Deterministic) {
  PermutationSet a(vars_1_to(7), 3), b(vars_1_to(7), 3);
  for (std::uint64_t m = 0; m < a.size(); ++m) EXPECT_EQ(a.at(m), b.at(m));
}

// Property: every member is a permutation sorted by placement with index
// tie-break; the sum of placements of a fixed variable over the family is
// p^{K-1} * p(p-1)/2; pairs of placements are uniform for K >= 2.
TEST(Property, Placements) {
  for (std::uint32_t n = 2; n <= 9; ++n) {
    for (unsigned K = 1; K <= 3 && K <= n; ++K) {
      PermutationSet s(vars_1_to(n), K);
      const std::uint64_t p = s.field_prime();
      std::vector<std::uint64_t> sums(n, 0);
      std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> pairs;
      for (std::uint64_t m = 0; m < s.size(); ++m) {
        auto order = s.at(m);
        auto sorted = order;
        std::sort(sorted.begin(), sorted.end());
        ASSERT_EQ(sorted, vars_1_to(n));
        for (std::size_t i = 1; i < order.size(); ++i) {
          auto a = s.placement(m, order[i - 1]), b = s.placement(m, order[i]);
          ASSERT_TRUE(a < b || (a == b && order[i - 1] < order[i]));
        }
        for (std::uint32_t v = 1; v <= n; ++v) sums[v - 1] += s.placement(m, Var(v));
        ++pairs[{s.placement(m, Var(1)), s.placement(m, Var(2))}];
      }
      std::uint64_t pk1 = s.size() / p;
      for (auto sum : sums) EXPECT_EQ(sum, pk1 * p * (p - 1) / 2);
      if (K >= 2) {
        EXPECT_EQ(pairs.size(), p * p);
        for (const auto& [cell, c] : pairs) EXPECT_EQ(c, s.size() / (p * p));
      }
    }
  }
}
