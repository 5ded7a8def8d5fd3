#include <gtest/gtest.h>

#include "ppsz/implication.hpp"
#include "test_support.hpp"

using namespace ppsz;

namespace {

const Var x(1), y(2);

std::optional<Literal> implied(const Formula& f, Var v, unsigned tau) { return tau_implied(f, v, {tau}); }

// Independent oracle for one sub-CNF: sat(J) over V(J) by bitmask brute force.
std::optional<Literal> brute_implied(const Formula& f, Var v, unsigned tau) {
  const auto clauses = f.clauses();
  bool pos = false, neg = false;
  std::vector<std::size_t> idx;
  auto visit = [&] {
    std::vector<Var> vars;
    for (auto i : idx)
      for (Literal l : clauses[i])
        if (std::find(vars.begin(), vars.end(), l.var()) == vars.end()) vars.push_back(l.var());
    auto at = std::find(vars.begin(), vars.end(), v);
    if (at == vars.end()) return;
    const auto xi = static_cast<std::size_t>(at - vars.begin());
    bool seen0 = false, seen1 = false;
    for (std::uint32_t m = 0; m < (1u << vars.size()); ++m) {
      bool ok = true;
      for (auto i : idx) {
        bool sat = false;
        for (Literal l : clauses[i]) {
          auto j = static_cast<std::size_t>(std::find(vars.begin(), vars.end(), l.var()) - vars.begin());
          sat = sat || (((m >> j) & 1u) == (l.is_positive() ? 1u : 0u));
        }
        ok = ok && sat;
      }
      if (ok) ((m >> xi) & 1u ? seen1 : seen0) = true;
    }
    pos = pos || !seen0;
    neg = neg || !seen1;
  };
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (!idx.empty()) visit();
    if (idx.size() == tau) return;
    for (std::size_t i = start; i < clauses.size(); ++i) {
      idx.push_back(i);
      self(self, i + 1);
      idx.pop_back();
    }
  };
  rec(rec, 0);
  if (pos) return Literal::positive(v);
  if (neg) return Literal::negative(v);
  return std::nullopt;
}

}  // namespace

TEST(TauImplied, TwoClausesResolveAtTauTwo) {
  Formula f = Formula::over(2, {Clause{1, 2}, Clause{1, -2}});
  EXPECT_EQ(implied(f, x, 2), Literal::positive(x));
  EXPECT_EQ(implied(f, x, 1), std::nullopt);
}

TEST(TauImplied, UnitClause) {
  EXPECT_EQ(implied(Formula::over(1, {Clause{1}}), x, 1), Literal::positive(x));
  EXPECT_EQ(implied(Formula::over(1, {Clause{-1}}), x, 1), Literal::negative(x));
}

TEST(TauImplied, UnsatisfiableSubCnfPrefersPositive) {
  Formula f = Formula::over(2, {Clause{-1, 2}, Clause{-1, -2}, Clause{1, 2}, Clause{1, -2}});
  // {-1 2},{-1 -2} implies -1 at tau 2; all four clauses are unsatisfiable
  EXPECT_EQ(implied(f, x, 2), Literal::positive(x));
  EXPECT_EQ(implied(f, x, 4), Literal::positive(x));
  EXPECT_EQ(implied(Formula::over(2, {Clause{-1, 2}, Clause{-1, -2}}), x, 2), Literal::negative(x));
}

TEST(TauImplied, VariableOutsideEveryClause) {
  Formula f = Formula::over(3, {Clause{1, 2}, Clause{1, -2}});
  EXPECT_EQ(implied(f, Var(3), 4), std::nullopt);
}

TEST(TauImplied, EmptyClauseDoesNotImplyAbsentVariables) {
  // J = {empty clause} is unsatisfiable but V(J) is empty
  Formula f({Var(1)}, {Clause(std::vector<Literal>{})});
  EXPECT_EQ(implied(f, x, 1), std::nullopt);
  // with a second clause over x the pair is unsatisfiable and mentions x
  Formula g({Var(1), Var(2)}, {Clause(std::vector<Literal>{}), Clause{-1, 2}});
  EXPECT_EQ(implied(g, x, 2), Literal::positive(x));
  EXPECT_EQ(implied(g, x, 1), std::nullopt);
}

TEST(TauImplied, RejectsTauZero) {
  Formula f = Formula::over(1, {Clause{1}});
  EXPECT_THROW(tau_implied(f, x, {0}), std::invalid_argument);
  EXPECT_THROW(tau_implied_all(f, {0}), std::invalid_argument);
}

TEST(SubCnf, Solutions) {
  std::vector<Clause> j{Clause{1, 2}};
  EXPECT_EQ(sub_cnf_solutions(j).count(), 3u);
  std::vector<Clause> bottom{Clause(std::vector<Literal>{})};
  SolutionSet b = sub_cnf_solutions(bottom);
  EXPECT_EQ(b.count(), 0u);
  EXPECT_TRUE(b.variables.empty());
  SolutionSet e = sub_cnf_solutions({});
  ASSERT_EQ(e.count(), 1u);
  EXPECT_TRUE(e.solutions[0].empty());
}

TEST(SubCnf, ImpliesLiteral) {
  std::vector<Clause> j{Clause{1, 2}, Clause{1, -2}};
  EXPECT_TRUE(implies_literal(j, Literal::positive(x)));
  EXPECT_FALSE(implies_literal(j, Literal::negative(x)));
  EXPECT_FALSE(implies_literal(j, Literal::positive(Var(3))));
}

TEST(ChooseTau, LogarithmicAndClamped) {
  EXPECT_EQ(choose_tau(1).tau, 1u);
  EXPECT_TRUE(choose_tau(1).clamped);
  EXPECT_EQ(choose_tau(3).tau, 1u);
  EXPECT_EQ(choose_tau(4).tau, 2u);
  EXPECT_EQ(choose_tau(12).tau, 3u);
  EXPECT_EQ(choose_tau(16).tau, 4u);
  EXPECT_EQ(choose_tau(1000).tau, 4u);
  EXPECT_EQ(choose_tau(1000).unclamped, 9u);
  EXPECT_TRUE(choose_tau(1000).clamped);
  EXPECT_EQ(choose_tau(1000, 6u).tau, 6u);
  EXPECT_THROW(choose_tau(5, 0u), std::invalid_argument);
}

// Property: the literal reference, an independent brute force, the per-x
// search, the all-variables search and the memo all agree, including on
// restricted formulas that contain empty clauses.
TEST(Property, ImplementationsAgree) {
  gen::Rng rng(11);
  std::size_t checked = 0, nonempty = 0;
  for (int t = 0; t < 400; ++t) {
    const auto n = static_cast<std::uint32_t>(1 + gen::below(rng, 7));
    const std::size_t k = 1 + gen::below(rng, 4);
    Formula root = gen::random_kcnf(rng, n, k, gen::below(rng, 3 * n + 2));
    const unsigned tau = 1 + static_cast<unsigned>(gen::below(rng, 4));
    Assignment a;
    for (std::uint32_t v = 1; v <= n; ++v)
      if (gen::below(rng, 3) == 0) a.add(Literal(Var(v), gen::below(rng, 2) == 1));
    Formula f = restrict(root, a);
    auto all = tau_implied_all(f, {tau});
    ImplicationMemo memo(root, {tau});
    for (Var v : f.variables()) {
      auto want = tau_implied_reference(f, v, {tau});
      ASSERT_EQ(brute_implied(f, v, tau), want);
      EXPECT_EQ(tau_implied(f, v, {tau}), want);
      std::int8_t code = v.index < all.size() ? all[v.index] : 0;
      EXPECT_EQ(code, want ? (want->is_positive() ? 1 : -1) : 0);
      EXPECT_EQ(memo.query(a, v), want);
      ++checked;
      nonempty += want ? 1 : 0;
    }
  }
  EXPECT_GT(checked, 800u);
  EXPECT_GT(nonempty, 100u);
}

// Property: tau-implication is monotone in tau and sound: an implied
// literal holds in every solution of F.
TEST(Property, MonotoneAndSound) {
  gen::Rng rng(12);
  for (int t = 0; t < 200; ++t) {
    const auto n = static_cast<std::uint32_t>(2 + gen::below(rng, 7));
    Formula f = gen::random_kcnf(rng, n, 3, gen::below(rng, 5 * n));
    auto sols = testing_support::brute_solutions(f);
    for (Var v : f.variables()) {
      std::optional<Literal> prev;
      for (unsigned tau = 1; tau <= 3; ++tau) {
        auto got = tau_implied(f, v, {tau});
        if (prev) {
          ASSERT_TRUE(got.has_value());
          // a negative literal may be overtaken by the positive one once an
          // unsatisfiable J fits
          if (prev->is_positive()) {
            EXPECT_EQ(got, prev);
          }
        }
        if (got && !sols.empty()) {
          for (auto m : sols) EXPECT_EQ(((m >> (v.index - 1)) & 1u) == 1u, got->is_positive());
        }
        prev = got;
      }
    }
  }
}

TEST(Memo, HitsAfterFirstMiss) {
  Formula f = Formula::over(3, {Clause{1, 2}, Clause{1, -2}, Clause{-1, 3}});
  ImplicationMemo memo(f, {2});
  Assignment empty;
  EXPECT_EQ(memo.query(empty, x), Literal::positive(x));
  EXPECT_EQ(memo.misses(), 1u);
  EXPECT_EQ(memo.query(empty, Var(3)), std::nullopt);
  EXPECT_EQ(memo.hits(), 1u);
  EXPECT_EQ(memo.query(Assignment{1}, Var(3)), Literal::positive(Var(3)));
  EXPECT_EQ(memo.misses(), 2u);
}
