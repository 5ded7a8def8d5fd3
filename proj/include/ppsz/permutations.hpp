#pragma once

// Enumerable permutation sets from a K-wise independent hash family.
//
// The family is every polynomial of degree < K over GF(p), p the smallest
// prime >= n. Evaluating at K distinct points is a bijection between
// coefficient vectors and value tuples, so for h drawn uniformly from the
// family the placements of any K distinct variables are independent and
// uniform over [0, p). Each member h yields one variable order: sort by
// placement h(i(x)), ties by variable index. Duplicate orders are kept, so
// member index and permutation index coincide.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "ppsz/cnf.hpp"

namespace ppsz {

inline bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

inline std::uint64_t smallest_prime_at_least(std::uint64_t n) {
  std::uint64_t p = std::max<std::uint64_t>(n, 2);
  while (!is_prime(p)) ++p;
  return p;
}

/// Polynomials c_0 + c_1 z + ... + c_{K-1} z^{K-1} over GF(p), indexed
/// lexicographically by (c_0, ..., c_{K-1}).
class HashFamily {
 public:
  HashFamily(std::uint64_t prime, unsigned degree) : p_(prime), k_(degree) {
    if (!is_prime(p_)) throw std::invalid_argument("field size must be prime");
    if (k_ < 1) throw std::invalid_argument("independence K must be at least 1");
    size_ = 1;
    for (unsigned i = 0; i < k_; ++i) {
      if (size_ > std::numeric_limits<std::uint64_t>::max() / p_)
        throw std::overflow_error("hash family too large");
      size_ *= p_;
    }
  }

  std::uint64_t prime() const { return p_; }
  unsigned independence() const { return k_; }
  std::uint64_t size() const { return size_; }

  std::vector<std::uint64_t> coefficients(std::uint64_t member) const {
    check(member);
    std::vector<std::uint64_t> c(k_);
    for (unsigned i = k_; i-- > 0;) {
      c[i] = member % p_;
      member /= p_;
    }
    return c;
  }

  /// h_member(z) by Horner's rule.
  std::uint64_t evaluate(std::uint64_t member, std::uint64_t z) const {
    auto c = coefficients(member);
    z %= p_;
    std::uint64_t acc = 0;
    for (unsigned i = k_; i-- > 0;) acc = (acc * z + c[i]) % p_;
    return acc;
  }

 private:
  void check(std::uint64_t member) const {
    if (member >= size_)
      throw std::out_of_range("hash family member " + std::to_string(member) + " out of range");
  }

  std::uint64_t p_;
  unsigned k_;
  std::uint64_t size_ = 1;
};

/// Family for n inputs with independence K (1 <= K <= n).
inline HashFamily build_hash_family(std::uint64_t n, unsigned K) {
  if (K < 1 || K > n)
    throw std::invalid_argument("hash family needs 1 <= K <= n (n=" + std::to_string(n) +
                                ", K=" + std::to_string(K) + ")");
  return HashFamily(smallest_prime_at_least(n), K);
}

/// The indexed multiset of permutations built from a hash family.
/// Permutations are produced on demand; orders are cached (as positions into
/// the variable list) when the set is small enough.
class PermutationSet {
 public:
  /// K is clamped into [1, max(1, |V|)].
  PermutationSet(std::vector<Var> vars, unsigned K)
      : vars_(std::move(vars)),
        family_(smallest_prime_at_least(vars_.size()),
                std::clamp<unsigned>(K, 1u, std::max<unsigned>(1u, static_cast<unsigned>(vars_.size())))) {
    std::sort(vars_.begin(), vars_.end());
  }

  std::uint64_t size() const { return family_.size(); }
  const HashFamily& family() const { return family_; }
  std::uint64_t field_prime() const { return family_.prime(); }
  unsigned independence() const { return family_.independence(); }
  std::span<const Var> variables() const { return vars_; }

  /// gamma(x) for member h: h evaluated at the 1-based index of x in V.
  std::uint64_t placement(std::uint64_t member, Var x) const {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), x);
    if (it == vars_.end() || *it != x)
      throw std::invalid_argument("variable " + std::to_string(x.index) + " not in permutation set");
    return family_.evaluate(member, static_cast<std::uint64_t>(it - vars_.begin()) + 1);
  }

  std::vector<std::uint64_t> placements(std::uint64_t member) const {
    auto c = family_.coefficients(member);
    const std::uint64_t p = family_.prime();
    std::vector<std::uint64_t> out(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      std::uint64_t z = (i + 1) % p, acc = 0;
      for (unsigned j = static_cast<unsigned>(c.size()); j-- > 0;) acc = (acc * z + c[j]) % p;
      out[i] = acc;
    }
    return out;
  }

  /// Positions into variables() in permutation order.
  void positions(std::uint64_t member, std::vector<std::uint32_t>& out) const {
    if (member >= size()) throw std::out_of_range("permutation index out of range");
    materialize();
    const std::size_t n = vars_.size();
    if (table_) {
      auto first = table_->begin() + static_cast<std::ptrdiff_t>(member * n);
      out.assign(first, first + static_cast<std::ptrdiff_t>(n));
      return;
    }
    compute_positions(member, out);
  }

  std::vector<Var> at(std::uint64_t member) const {
    std::vector<std::uint32_t> pos;
    positions(member, pos);
    std::vector<Var> out;
    out.reserve(pos.size());
    for (auto p : pos) out.push_back(vars_[p]);
    return out;
  }

  /// Same orders over a different variable set of equal size.
  PermutationSet rebind(std::vector<Var> vars) const {
    if (vars.size() != vars_.size()) throw std::invalid_argument("rebind: variable count differs");
    materialize();
    PermutationSet out = *this;
    out.vars_ = std::move(vars);
    std::sort(out.vars_.begin(), out.vars_.end());
    return out;
  }

 private:
  static constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 24;

  void compute_positions(std::uint64_t member, std::vector<std::uint32_t>& out) const {
    auto gamma = placements(member);
    out.resize(vars_.size());
    std::iota(out.begin(), out.end(), 0u);
    // positions are in ascending variable order, so a stable sort breaks
    // placement ties by variable index
    std::stable_sort(out.begin(), out.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return gamma[a] < gamma[b]; });
  }

  void materialize() const {
    if (table_ || vars_.empty() || size() * vars_.size() > kTableLimit) return;
    auto t = std::make_shared<std::vector<std::uint32_t>>();
    t->reserve(size() * vars_.size());
    std::vector<std::uint32_t> tmp;
    for (std::uint64_t m = 0; m < size(); ++m) {
      compute_positions(m, tmp);
      t->insert(t->end(), tmp.begin(), tmp.end());
    }
    table_ = std::move(t);
  }

  std::vector<Var> vars_;
  HashFamily family_;
  mutable std::shared_ptr<const std::vector<std::uint32_t>> table_;
};

inline PermutationSet construct_sigma(std::vector<Var> vars, unsigned K) {
  return PermutationSet(std::move(vars), K);
}

inline PermutationSet construct_sigma(const Formula& f, unsigned K) {
  return PermutationSet({f.variables().begin(), f.variables().end()}, K);
}

}  // namespace ppsz
