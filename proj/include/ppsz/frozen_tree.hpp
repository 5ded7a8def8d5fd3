#pragma once

// K-frozen trees: construction from a solution and a frozen variable, cut
// enumeration, and a checker for the six structural properties.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ppsz/cnf.hpp"
#include "ppsz/implication.hpp"

namespace ppsz {

/// Label of the dummy vertex. Var index 0 is never a formula variable.
inline constexpr Var kKappa{0};

inline bool is_kappa(Var v) { return v.index == 0; }

struct TreeVertex {
  Var label;
  std::optional<Clause> clause;  // C(v); set on every non-leaf vertex
  std::vector<std::size_t> children;
  std::optional<std::size_t> parent;
  std::size_t depth = 0;
};

/// Vertices in preorder; vertex 0 is the root.
class FrozenTree {
 public:
  std::size_t add(Var label, std::optional<std::size_t> parent) {
    TreeVertex v;
    v.label = label;
    v.parent = parent;
    if (parent) {
      v.depth = vertices_[*parent].depth + 1;
      vertices_[*parent].children.push_back(vertices_.size());
    }
    vertices_.push_back(std::move(v));
    return vertices_.size() - 1;
  }

  const TreeVertex& operator[](std::size_t i) const { return vertices_[i]; }
  TreeVertex& operator[](std::size_t i) { return vertices_[i]; }
  std::size_t size() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }
  const TreeVertex& root() const { return vertices_.front(); }
  const std::vector<TreeVertex>& vertices() const { return vertices_; }

  std::vector<Var> distinct_labels() const {
    std::set<Var> s;
    for (const auto& v : vertices_)
      if (!is_kappa(v.label)) s.insert(v.label);
    return {s.begin(), s.end()};
  }

 private:
  std::vector<TreeVertex> vertices_;
};

class TreeConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// floor(log_k K) with k taken as at least 2.
inline std::size_t tree_depth(std::size_t k, std::size_t K) {
  const std::size_t base = std::max<std::size_t>(k, 2);
  std::size_t d = 0;
  for (std::size_t p = base; p <= K; p *= base) ++d;
  return d;
}

namespace detail {

class TreeBuilder {
 public:
  TreeBuilder(const Formula& f, const Assignment& alpha, std::size_t d) : f_(f), d_(d) {
    for (Literal l : alpha.literals()) work_.add(l);
    for (Var v : f.variables())
      if (!work_.assigns(v)) throw std::invalid_argument("alpha does not assign every variable of F");
    if (!is_solution(f, work_)) throw std::invalid_argument("alpha is not a solution of F");
  }

  FrozenTree build(Var x) {
    if (!f_.has_variable(x)) throw std::invalid_argument("root variable not in F");
    grow(x, std::nullopt);
    return std::move(tree_);
  }

 private:
  void flip(Var v) {
    if (is_kappa(v)) return;
    // positions are irrelevant to restriction and evaluation, only values
    for (std::size_t i = 0; i < work_.size(); ++i) {
      if (work_.literals()[i].var() == v) {
        Assignment next;
        for (std::size_t j = 0; j < work_.size(); ++j) {
          Literal l = work_.literals()[j];
          next.add(j == i ? ~l : l);
        }
        work_ = std::move(next);
        return;
      }
    }
  }

  bool on_path(std::size_t v, Var y) const {
    for (std::optional<std::size_t> u = v; u; u = tree_[*u].parent)
      if (tree_[*u].label == y) return true;
    return false;
  }

  void grow(Var label, std::optional<std::size_t> parent) {
    std::size_t v = tree_.add(label, parent);
    flip(label);
    if (tree_[v].depth < d_) {
      const Clause* chosen = nullptr;
      for (const Clause& c : f_.clauses()) {
        if (clause_falsified(c, work_)) {
          chosen = &c;
          break;
        }
      }
      if (!chosen) {
        flip(label);
        throw TreeConstructionError("no clause falsified at depth " + std::to_string(tree_[v].depth) +
                                    ": root variable is not frozen or alpha is not the unique solution");
      }
      tree_[v].clause = *chosen;
      bool created = false;
      for (Literal l : *chosen) {
        if (on_path(v, l.var())) continue;
        created = true;
        grow(l.var(), v);
      }
      if (!created) grow(kKappa, v);
    }
    flip(label);
  }

  const Formula& f_;
  std::size_t d_;
  Assignment work_;
  FrozenTree tree_;
};

}  // namespace detail

/// Builds the tree rooted at x to depth d from solution alpha. Each vertex
/// sees alpha with the labels on its root path flipped.
inline FrozenTree construct_tree(const Formula& f, const Assignment& alpha, Var x, std::size_t d) {
  return detail::TreeBuilder(f, alpha, d).build(x);
}

class CutBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultCutBudget = 1'000'000;

/// Calls visit(cut) for every cut (vertex indices, preorder). Returns the
/// number of cuts.
inline std::uint64_t enumerate_cuts(const FrozenTree& t, const std::function<void(const std::vector<std::size_t>&)>& visit,
                                    std::uint64_t budget = kDefaultCutBudget) {
  if (t.empty() || t.root().children.empty()) return 0;
  std::uint64_t count = 0;
  std::vector<std::size_t> cut;
  // Walk a frontier of subtrees still to be cut: each is either taken whole
  // or replaced by its children.
  std::function<void(std::vector<std::size_t>&, std::size_t)> rec = [&](std::vector<std::size_t>& pending,
                                                                        std::size_t next) {
    if (next == pending.size()) {
      if (++count > budget) throw CutBudgetExceeded("cut enumeration exceeded budget of " + std::to_string(budget));
      visit(cut);
      return;
    }
    std::size_t v = pending[next];
    cut.push_back(v);
    rec(pending, next + 1);
    cut.pop_back();
    const auto& ch = t[v].children;
    if (!ch.empty()) {
      std::vector<std::size_t> expanded(pending.begin(), pending.begin() + static_cast<std::ptrdiff_t>(next));
      expanded.insert(expanded.end(), ch.begin(), ch.end());
      expanded.insert(expanded.end(), pending.begin() + static_cast<std::ptrdiff_t>(next + 1), pending.end());
      rec(expanded, next);
    }
  };
  std::vector<std::size_t> start(t.root().children.begin(), t.root().children.end());
  rec(start, 0);
  return count;
}

inline std::vector<std::vector<std::size_t>> all_cuts(const FrozenTree& t, std::uint64_t budget = kDefaultCutBudget) {
  std::vector<std::vector<std::size_t>> out;
  enumerate_cuts(t, [&](const std::vector<std::size_t>& c) { out.push_back(c); }, budget);
  return out;
}

struct TreeReport {
  std::array<bool, 6> property{};  // property[i] is Property i+1
  std::vector<std::string> failures;
  std::size_t vertices = 0;
  std::size_t distinct_labels = 0;
  std::uint64_t cuts_checked = 0;
  std::size_t expected_depth = 0;

  bool all_pass() const { return std::all_of(property.begin(), property.end(), [](bool b) { return b; }); }
};

/// Checks Properties 1-6 with d = floor(log_k K); Property 6 queries
/// tau-implication with tau = K on F restricted by each cut's literals.
inline TreeReport verify_tree(const FrozenTree& t, const Formula& f, const Assignment& alpha, std::size_t K,
                              std::uint64_t cut_budget = kDefaultCutBudget) {
  TreeReport r;
  r.property.fill(true);
  r.vertices = t.size();
  auto fail = [&](int p, const std::string& why) {
    r.property[static_cast<std::size_t>(p - 1)] = false;
    r.failures.push_back("property " + std::to_string(p) + ": " + why);
  };
  if (t.empty()) {
    fail(1, "empty tree");
    return r;
  }
  const std::size_t k = std::max<std::size_t>(f.width(), 2);
  r.expected_depth = tree_depth(k, K);

  const Var x = t.root().label;
  if (is_kappa(x) || !f.has_variable(x)) fail(1, "root label is not a variable of F");
  for (const auto& v : t.vertices())
    if (!is_kappa(v.label) && !f.has_variable(v.label))
      fail(1, "label " + std::to_string(v.label.index) + " outside V(F)");

  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i].children.size() > k - 1)
      fail(2, "vertex " + std::to_string(i) + " has " + std::to_string(t[i].children.size()) + " children");
    if (!t[i].children.empty() && !t[i].clause) fail(2, "inner vertex " + std::to_string(i) + " has no clause");
  }

  for (std::size_t i = 0; i < t.size(); ++i) {
    if (is_kappa(t[i].label)) continue;
    for (auto u = t[i].parent; u; u = t[*u].parent) {
      if (t[*u].label == t[i].label) {
        fail(3, "label " + std::to_string(t[i].label.index) + " repeats on a root path");
        break;
      }
    }
  }

  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i].children.empty() && t[i].depth != r.expected_depth)
      fail(4, "leaf " + std::to_string(i) + " at depth " + std::to_string(t[i].depth) + ", expected " +
                  std::to_string(r.expected_depth));

  r.distinct_labels = t.distinct_labels().size();
  if (r.distinct_labels > K)
    fail(5, std::to_string(r.distinct_labels) + " distinct labels exceed K=" + std::to_string(K));

  auto root_value = alpha.value(x);
  if (!root_value) {
    fail(6, "alpha does not assign the root variable");
    return r;
  }
  const Literal target(x, *root_value);
  const ImplicationConfig cfg{static_cast<unsigned>(K)};
  try {
    r.cuts_checked = enumerate_cuts(
        t,
        [&](const std::vector<std::size_t>& cut) {
          if (!r.property[5]) return;
          Assignment a;
          for (std::size_t v : cut) {
            Var y = t[v].label;
            if (is_kappa(y) || a.assigns(y)) continue;
            auto val = alpha.value(y);
            if (!val) return fail(6, "alpha does not assign label " + std::to_string(y.index));
            a.add(Literal(y, *val));
          }
          Formula g = restrict(f, a);
          auto got = g.has_variable(x) ? tau_implied(g, x, cfg) : std::nullopt;
          if (got != target) {
            std::ostringstream os;
            os << "cut {";
            for (std::size_t j = 0; j < cut.size(); ++j) os << (j ? "," : "") << cut[j];
            os << "} does not K-imply " << target.to_dimacs();
            fail(6, os.str());
          }
        },
        cut_budget);
  } catch (const CutBudgetExceeded& e) {
    fail(6, e.what());
  }
  return r;
}

/// Indented text rendering, one vertex per line.
inline std::string render_tree(const FrozenTree& t) {
  std::ostringstream os;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    os << std::string(2 * t[i].depth, ' ') << (is_kappa(t[i].label) ? std::string("kappa") : "x" + std::to_string(t[i].label.index));
    if (t[i].clause) {
      os << "  C = (";
      bool first = true;
      for (Literal l : *t[i].clause) {
        os << (first ? "" : " ") << l.to_dimacs();
        first = false;
      }
      os << ")";
    }
    os << '\n';
    for (std::size_t c : t[i].children) rec(c);
  };
  if (!t.empty()) rec(0);
  return os.str();
}

}  // namespace ppsz
