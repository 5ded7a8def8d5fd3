#pragma once

// tau-implication: a literal l over x is tau-implied by F if some sub-CNF
// J of F with at most tau clauses implies l, i.e. l lies in every solution of
// J taken over V(J). An unsatisfiable J with x in V(J) implies both
// polarities; the positive literal wins in that case.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "ppsz/cnf.hpp"
#include "ppsz/oracle.hpp"

namespace ppsz {

struct ImplicationConfig {
  unsigned tau = 1;
  // Only visit sub-CNFs containing a clause over x. Never changes the answer.
  bool restrict_to_relevant = true;
};

/// Default tau: floor(log2 n) clamped to [1, 4].
struct TauChoice {
  unsigned tau = 1;
  unsigned unclamped = 0;
  bool clamped = false;
  bool overridden = false;
};

inline TauChoice choose_tau(std::size_t n, std::optional<unsigned> override_tau = std::nullopt) {
  TauChoice c;
  c.unclamped = n == 0 ? 0u : static_cast<unsigned>(std::bit_width(n) - 1);
  if (override_tau) {
    if (*override_tau < 1) throw std::invalid_argument("tau must be at least 1");
    c.tau = *override_tau;
    c.overridden = true;
    return c;
  }
  c.tau = std::clamp(c.unclamped, 1u, 4u);
  c.clamped = c.tau != c.unclamped;
  return c;
}

/// sat(J) over exactly V(J).
inline SolutionSet sub_cnf_solutions(std::span<const Clause> j) {
  Formula g = Formula::over_own_variables({j.begin(), j.end()});
  return enumerate_solutions(g, 64);
}

/// Does J (over V(J)) imply l? Requires V(l) in V(J); vacuously true when J
/// is unsatisfiable.
inline bool implies_literal(std::span<const Clause> j, Literal l) {
  bool mentions = std::any_of(j.begin(), j.end(), [&](const Clause& c) { return c.mentions(l.var()); });
  if (!mentions) return false;
  SolutionSet s = sub_cnf_solutions(j);
  return std::all_of(s.solutions.begin(), s.solutions.end(),
                     [&](const Assignment& a) { return a.satisfies(l); });
}

/// Literal reading of the definition: every J of at most tau clauses, sat(J)
/// by truth table, intersect. Exponential in tau; kept as the reference the
/// fast search is tested against.
inline std::optional<Literal> tau_implied_reference(const Formula& f, Var x,
                                                    const ImplicationConfig& cfg) {
  const auto clauses = f.clauses();
  const std::size_t m = clauses.size();
  bool pos = false, neg = false;
  std::vector<std::size_t> idx;
  std::vector<Clause> j;
  auto visit = [&]() {
    j.clear();
    for (auto i : idx) j.push_back(clauses[i]);
    bool mentions = std::any_of(j.begin(), j.end(), [&](const Clause& c) { return c.mentions(x); });
    if (cfg.restrict_to_relevant && !mentions) return;
    SolutionSet s = sub_cnf_solutions(j);
    if (!mentions) return;  // no literal over x lies in sat(J) over V(J)
    bool all_pos = true, all_neg = true;
    for (const Assignment& a : s.solutions) {
      if (*a.value(x)) all_neg = false;
      else all_pos = false;
    }
    pos = pos || all_pos;
    neg = neg || all_neg;
  };
  // Enumerate all index subsets of size 1..tau in lexicographic order.
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (!idx.empty()) visit();
    if (idx.size() == cfg.tau) return;
    for (std::size_t i = start; i < m; ++i) {
      idx.push_back(i);
      self(self, i + 1);
      idx.pop_back();
    }
  };
  rec(rec, 0);
  if (pos) return Literal::positive(x);
  if (neg) return Literal::negative(x);
  return std::nullopt;
}

namespace detail {

// Depth-first search over sub-CNFs that contain a clause mentioning x, with
// sat(J) kept as a bit-parallel truth table over the local variables of J
// (x is local variable 0). Adding a clause whose truth table already
// contains the current one cannot change any superset's table, so such
// branches are skipped.
class ImplicationSearch {
 public:
  static constexpr unsigned kMaxLocalVars = 24;

  ImplicationSearch(const Formula& g, Var x, unsigned tau) : g_(g), x_(x), tau_(tau) {}

  std::optional<Literal> run() {
    const auto clauses = g_.clauses();
    std::vector<std::uint32_t> roots;
    std::vector<char> is_root(clauses.size(), 0);
    for (std::uint32_t i = 0; i < clauses.size(); ++i) {
      if (clauses[i].mentions(x_)) {
        roots.push_back(i);
        is_root[i] = 1;
      }
    }
    levels_.resize(tau_ + 1);
    for (std::uint32_t r : roots) {
      pool_.clear();
      for (std::uint32_t i = 0; i < clauses.size(); ++i)
        if (i != r && !(is_root[i] && i < r)) pool_.push_back(i);
      vars_.assign(1, x_);
      Level& base = levels_[0];
      base.nvars = 1;
      base.table.assign(1, 0b11);  // x free: rows 0 and 1
      Level& first = levels_[1];
      extend(base, clauses[r], first);
      if (inspect(first)) return Literal::positive(x_);
      if (tau_ > 1 && dfs(0, 1)) return Literal::positive(x_);
    }
    if (neg_) return Literal::negative(x_);
    return std::nullopt;
  }

 private:
  struct Level {
    std::vector<std::uint64_t> table;
    unsigned nvars = 0;
  };

  static constexpr std::array<std::uint64_t, 6> kPattern = {
      0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
      0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};

  static std::uint64_t var_mask(unsigned local, std::size_t word) {
    if (local < 6) return kPattern[local];
    return ((word >> (local - 6)) & 1u) ? ~0ull : 0ull;
  }

  // Returns true iff x = 0 rows are all gone (positive literal implied,
  // including the unsatisfiable case). Records a negative implication.
  bool inspect(const Level& lv) {
    std::uint64_t x0 = 0, x1 = 0;
    for (std::uint64_t w : lv.table) {
      x0 |= w & ~kPattern[0];
      x1 |= w & kPattern[0];
    }
    if (x0 == 0) return true;
    if (x1 == 0) neg_ = true;
    return false;
  }

  unsigned local_index(Var v) {
    for (unsigned i = 0; i < vars_.size(); ++i)
      if (vars_[i] == v) return i;
    return static_cast<unsigned>(vars_.size());
  }

  // to = from AND clause, over from's variables plus the clause's new ones.
  // Returns false if the clause is redundant for the table.
  bool extend(const Level& from, const Clause& c, Level& to) {
    to.table = from.table;
    to.nvars = from.nvars;
    vars_.resize(from.nvars);
    std::array<unsigned, 64> locals{};
    std::size_t nl = 0;
    for (Literal l : c) {
      unsigned li = local_index(l.var());
      if (li == vars_.size()) {
        if (vars_.size() >= kMaxLocalVars)
          throw std::runtime_error("tau-implication: sub-CNF exceeds local variable budget");
        vars_.push_back(l.var());
        if (to.nvars < 6) {
          to.table[0] |= to.table[0] << (1u << to.nvars);
        } else {
          to.table.insert(to.table.end(), to.table.begin(), to.table.end());
        }
        ++to.nvars;
      }
      locals[nl++] = li * 2 + (l.is_positive() ? 1 : 0);
    }
    bool changed = false;
    for (std::size_t w = 0; w < to.table.size(); ++w) {
      std::uint64_t cm = 0;
      for (std::size_t i = 0; i < nl; ++i) {
        std::uint64_t m = var_mask(locals[i] >> 1, w);
        cm |= (locals[i] & 1) ? m : ~m;
      }
      std::uint64_t nw = to.table[w] & cm;
      if (nw != to.table[w]) changed = true;
      to.table[w] = nw;
    }
    return changed;
  }

  bool dfs(std::size_t start, unsigned depth) {
    const auto clauses = g_.clauses();
    for (std::size_t p = start; p < pool_.size(); ++p) {
      const Level& cur = levels_[depth];
      Level& next = levels_[depth + 1];
      std::size_t saved_vars = cur.nvars;
      if (!extend(cur, clauses[pool_[p]], next)) {
        vars_.resize(saved_vars);
        continue;
      }
      if (inspect(next)) return true;
      if (depth + 1 < tau_ && dfs(p + 1, depth + 1)) return true;
      vars_.resize(saved_vars);
    }
    return false;
  }

  const Formula& g_;
  Var x_;
  unsigned tau_;
  bool neg_ = false;
  std::vector<Var> vars_;
  std::vector<std::uint32_t> pool_;
  std::vector<Level> levels_;
};

// All variables at once: every sub-CNF J with |J| <= tau, in increasing
// index order, skipping clauses that leave the table unchanged. A minimal
// implying or unsatisfiable J never contains such a clause, so nothing is
// lost. An unsatisfiable J of size < tau extends by any clause over x, so
// it makes every mentioned variable positive.
class AllImplicationSearch {
 public:
  AllImplicationSearch(const Formula& g, unsigned tau) : g_(g), tau_(tau) {}

  // result[v] is +1, -1 or 0 for each variable index v <= max_variable.
  std::vector<std::int8_t> run() {
    result_.assign(g_.max_variable() + 1, 0);
    local_of_.assign(g_.max_variable() + 1, kNoLocal);
    use_masks_ = g_.max_variable() < 64;
    if (use_masks_) {
      masks_.clear();
      for (const Clause& c : g_.clauses()) {
        std::uint64_t m = 0;
        for (Literal l : c) m |= 1ull << l.var().index;
        masks_.push_back(m);
      }
    }
    levels_.resize(tau_ + 1);
    levels_[0].table.assign(1, 1);
    levels_[0].nvars = 0;
    vars_.clear();
    dfs(0, 0);
    if (min_unsat_ < tau_) {
      for (const Clause& c : g_.clauses())
        for (Literal l : c) result_[l.var().index] = 1;
    }
    return std::move(result_);
  }

 private:
  struct Level {
    std::vector<std::uint64_t> table;
    unsigned nvars = 0;
  };

  static constexpr std::array<std::uint64_t, 6> kPattern = {
      0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
      0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};

  static std::uint64_t var_mask(unsigned local, std::size_t word) {
    if (local < 6) return kPattern[local];
    return ((word >> (local - 6)) & 1u) ? ~0ull : 0ull;
  }

  unsigned local_index(Var v) const {
    unsigned li = local_of_[v.index];
    return li < vars_.size() ? li : static_cast<unsigned>(vars_.size());
  }

  void truncate(std::size_t n) {
    while (vars_.size() > n) {
      local_of_[vars_.back().index] = kNoLocal;
      vars_.pop_back();
    }
  }

  bool extend(const Level& from, const Clause& c, Level& to) {
    to.table = from.table;
    to.nvars = from.nvars;
    truncate(from.nvars);
    std::array<unsigned, 64> locals{};
    std::size_t nl = 0;
    for (Literal l : c) {
      unsigned li = local_index(l.var());
      if (li == vars_.size()) {
        if (vars_.size() >= ImplicationSearch::kMaxLocalVars)
          throw std::runtime_error("tau-implication: sub-CNF exceeds local variable budget");
        local_of_[l.var().index] = static_cast<std::uint8_t>(vars_.size());
        vars_.push_back(l.var());
        if (to.nvars < 6) {
          to.table[0] |= to.table[0] << (1u << to.nvars);
        } else {
          to.table.insert(to.table.end(), to.table.begin(), to.table.end());
        }
        ++to.nvars;
      }
      locals[nl++] = li * 2 + (l.is_positive() ? 1 : 0);
    }
    bool changed = false;
    for (std::size_t w = 0; w < to.table.size(); ++w) {
      std::uint64_t cm = 0;
      for (std::size_t i = 0; i < nl; ++i) {
        std::uint64_t m = var_mask(locals[i] >> 1, w);
        cm |= (locals[i] & 1) ? m : ~m;
      }
      std::uint64_t nw = to.table[w] & cm;
      if (nw != to.table[w]) changed = true;
      to.table[w] = nw;
    }
    return changed;
  }

  void inspect(const Level& lv, unsigned size) {
    bool any = false;
    for (std::uint64_t w : lv.table) any = any || w != 0;
    if (!any) {
      min_unsat_ = std::min(min_unsat_, size);
      for (unsigned i = 0; i < lv.nvars; ++i) result_[vars_[i].index] = 1;
      return;
    }
    for (unsigned i = 0; i < lv.nvars; ++i) {
      std::int8_t& r = result_[vars_[i].index];
      if (r == 1) continue;
      std::uint64_t zero = 0, one = 0;
      for (std::size_t w = 0; w < lv.table.size(); ++w) {
        std::uint64_t m = var_mask(i, w);
        zero |= lv.table[w] & ~m;
        one |= lv.table[w] & m;
      }
      if (zero == 0) r = 1;
      else if (one == 0) r = -1;
    }
  }

  void mark(Var v, bool positive) {
    std::int8_t& r = result_[v.index];
    if (positive) r = 1;
    else if (r == 0) r = -1;
  }

  bool noop(Var v, bool positive) const {
    const std::int8_t r = result_[v.index];
    return r == 1 || (!positive && r == -1);
  }

  // Last clause of J: no table needed. Adding c removes exactly the rows on
  // which every literal of c is false, so it suffices to know which local
  // variables are constant on the rows with v = p.
  void last_level(const Level& t, std::size_t start) {
    const unsigned nv = t.nvars;
    constexpr unsigned kSlots = 2 * ImplicationSearch::kMaxLocalVars + 1;
    std::array<std::uint32_t, kSlots> c0{}, c1{};
    std::array<std::int8_t, kSlots> state{};  // 0 unknown, 1 empty, 2 nonempty
    const unsigned whole = 2 * nv;
    auto compute = [&](unsigned slot) {
      std::uint64_t any = 0;
      std::array<std::uint64_t, ImplicationSearch::kMaxLocalVars> ones{}, zeros{};
      for (std::size_t w = 0; w < t.table.size(); ++w) {
        std::uint64_t rows = t.table[w];
        if (slot != whole) {
          std::uint64_t m = var_mask(slot / 2, w);
          rows &= (slot & 1) ? m : ~m;
        }
        if (rows == 0) continue;
        any |= rows;
        for (unsigned u = 0; u < nv; ++u) {
          std::uint64_t m = var_mask(u, w);
          ones[u] |= rows & m;
          zeros[u] |= rows & ~m;
        }
      }
      state[slot] = any ? 2 : 1;
      for (unsigned u = 0; u < nv; ++u) {
        if (ones[u] == 0) c0[slot] |= 1u << u;
        if (zeros[u] == 0) c1[slot] |= 1u << u;
      }
    };
    compute(whole);
    const auto clauses = g_.clauses();
    std::uint64_t jmask = 0;
    for (unsigned u = 0; u < nv && use_masks_; ++u) jmask |= 1ull << vars_[u].index;
    std::array<unsigned, 64> inside{};
    for (std::size_t ci = start; ci < clauses.size(); ++ci) {
      if (use_masks_ && std::popcount(masks_[ci] & ~jmask) >= 2) continue;
      const Clause& c = clauses[ci];
      std::size_t ni = 0, nout = 0;
      Literal out;
      for (Literal l : c) {
        unsigned li = local_of_[l.var().index];
        if (li >= nv) {  // kNoLocal, or a variable beyond this level
          if (++nout >= 2) break;
          out = l;
        } else {
          inside[ni++] = li * 2 + (l.is_positive() ? 1 : 0);
        }
      }
      if (nout >= 2) continue;
      auto all_false = [&](unsigned slot) {
        for (std::size_t i = 0; i < ni; ++i) {
          std::uint32_t need = (inside[i] & 1) ? c0[slot] : c1[slot];
          if (!((need >> (inside[i] >> 1)) & 1u)) return false;
        }
        return true;
      };
      if (nout == 1) {
        if (!noop(out.var(), out.is_positive()) && all_false(whole)) mark(out.var(), out.is_positive());
        continue;
      }
      const bool kills_all = all_false(whole);
      if (kills_all) {
        for (unsigned u = 0; u < nv; ++u) mark(vars_[u], true);
        min_unsat_ = std::min(min_unsat_, tau_);
        continue;
      }
      for (unsigned u = 0; u < nv; ++u) {
        for (unsigned p = 0; p < 2; ++p) {
          const unsigned slot = 2 * u + p;
          if (noop(vars_[u], p == 0)) continue;
          if (state[slot] == 0) compute(slot);
          if (state[slot] == 2 && all_false(slot)) mark(vars_[u], p == 0);
        }
      }
    }
  }

  void dfs(std::size_t start, unsigned depth) {
    const auto clauses = g_.clauses();
    if (depth + 1 == tau_) {
      last_level(levels_[depth], start);
      return;
    }
    for (std::size_t c = start; c < clauses.size() && min_unsat_ >= tau_; ++c) {
      const Level& cur = levels_[depth];
      Level& next = levels_[depth + 1];
      const std::size_t saved = cur.nvars;
      if (extend(cur, clauses[c], next)) {
        inspect(next, depth + 1);
        bool unsat = std::all_of(next.table.begin(), next.table.end(), [](std::uint64_t w) { return w == 0; });
        if (!unsat && depth + 1 < tau_) dfs(c + 1, depth + 1);
      }
      truncate(saved);
    }
  }

  const Formula& g_;
  unsigned tau_;
  unsigned min_unsat_ = std::numeric_limits<unsigned>::max();
  std::vector<Var> vars_;
  std::vector<Level> levels_;
  std::vector<std::int8_t> result_;
  static constexpr std::uint8_t kNoLocal = 0xFF;
  std::vector<std::uint8_t> local_of_;  // variable index -> position in vars_
  bool use_masks_ = false;
  std::vector<std::uint64_t> masks_;  // variables of each clause, when indices fit
};

}  // namespace detail

/// The tau-implied literal over x in f, if any. Same answer as
/// tau_implied_reference, much faster.
inline std::optional<Literal> tau_implied(const Formula& f, Var x, const ImplicationConfig& cfg) {
  if (cfg.tau < 1) throw std::invalid_argument("tau must be at least 1");
  return detail::ImplicationSearch(f, x, cfg.tau).run();
}

/// tau_implied for every variable of f at once, indexed by variable index
/// (+1 positive, -1 negative, 0 none).
inline std::vector<std::int8_t> tau_implied_all(const Formula& f, const ImplicationConfig& cfg) {
  if (cfg.tau < 1) throw std::invalid_argument("tau must be at least 1");
  return detail::AllImplicationSearch(f, cfg.tau).run();
}

/// Memoized tau-implication over restrictions of one root formula:
/// query(a, x) == tau_implied(restrict(root, a), x, cfg).
///
/// A miss computes the answers for every free variable of F_a in one
/// sub-CNF enumeration and stores the whole row. Keys are the full
/// assignment over the root's variables: a dense table (3^n * n bytes) up to
/// 13 variables, a hash map up to 64, no caching beyond that.
class ImplicationMemo {
 public:
  ImplicationMemo(const Formula& root, ImplicationConfig cfg) : root_(root), cfg_(cfg) {
    if (cfg.tau < 1) throw std::invalid_argument("tau must be at least 1");
    n_ = root.max_variable();
  }

  const Formula& root() const { return root_; }
  const ImplicationConfig& config() const { return cfg_; }

  std::optional<Literal> query(const Assignment& a, Var x) {
    if (n_ <= kDenseLimit) {
      if (dense_.empty()) {
        std::size_t states = 1;
        for (std::uint32_t i = 0; i < n_; ++i) states *= 3;
        dense_.assign(states * std::max<std::uint32_t>(n_, 1), kUnknown);
      }
      std::size_t key = 0;
      for (std::uint32_t v = n_; v >= 1; --v) {
        auto val = a.value(Var(v));
        key = key * 3 + (val ? (*val ? 2 : 1) : 0);
      }
      std::uint8_t* row = &dense_[key * n_];
      if (row[x.index - 1] == kUnknown) fill(a, row);
      else ++hits_;
      return decode(row[x.index - 1], x);
    }
    if (n_ <= 64) {
      std::uint64_t assigned = 0, positive = 0;
      for (Literal l : a.literals()) {
        if (l.var().index > 64) continue;
        assigned |= 1ull << (l.var().index - 1);
        if (l.is_positive()) positive |= 1ull << (l.var().index - 1);
      }
      auto [it, inserted] = sparse_.try_emplace(Key{assigned, positive});
      if (inserted) {
        it->second.assign(n_, kUnknown);
        fill(a, it->second.data());
      } else {
        ++hits_;
      }
      return decode(it->second[x.index - 1], x);
    }
    ++misses_;
    return tau_implied(restrict(root_, a), x, cfg_);
  }

  std::uint64_t hits() const { return hits_; }
  std::uint64_t misses() const { return misses_; }

 private:
  static constexpr std::uint32_t kDenseLimit = 13;
  static constexpr std::uint8_t kUnknown = 0, kNone = 1, kPos = 2, kNeg = 3;

  struct Key {
    std::uint64_t assigned, positive;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::uint64_t h = k.assigned * 0x9E3779B97F4A7C15ull;
      h ^= (k.positive + 0x632BE59BD9B4E019ull + (h << 6) + (h >> 2));
      return static_cast<std::size_t>(h);
    }
  };

  // row[v - 1] for every variable index v <= n
  void fill(const Assignment& a, std::uint8_t* row) {
    ++misses_;
    Formula g = restrict(root_, a);
    std::vector<std::int8_t> all = tau_implied_all(g, cfg_);
    for (std::uint32_t v = 1; v <= n_; ++v) {
      std::int8_t r = v < all.size() ? all[v] : 0;
      row[v - 1] = r > 0 ? kPos : r < 0 ? kNeg : kNone;
    }
  }
  static std::optional<Literal> decode(std::uint8_t s, Var x) {
    if (s == kPos) return Literal::positive(x);
    if (s == kNeg) return Literal::negative(x);
    return std::nullopt;
  }

  const Formula& root_;
  ImplicationConfig cfg_;
  std::uint32_t n_ = 0;
  std::vector<std::uint8_t> dense_;
  std::unordered_map<Key, std::vector<std::uint8_t>, KeyHash> sparse_;
  std::uint64_t hits_ = 0, misses_ = 0;
};

}  // namespace ppsz
