#pragma once

// Numeric side: lambda_k, binary entropy, the R_j recurrence and its
// Riemann brackets, the discrete phi_j sequence, runtime exponents and
// crossover thresholds. Double precision with explicit error bounds.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ppsz {

struct SeriesValue {
  double value = 0;        // partial sum
  double error_bound = 0;  // the true value lies in [value, value + error_bound]
  std::uint64_t terms = 0;
};

inline constexpr double kDefaultSeriesTolerance = 1e-7;

/// lambda_k = sum_{j>=1} 1/(j(kj - j + 1)). The tail after N terms is below
/// sum_{j>N} 1/((k-1) j^2) < 1/((k-1) N).
inline SeriesValue lambda_k(unsigned k, double tol = kDefaultSeriesTolerance) {
  if (k < 3) throw std::invalid_argument("lambda_k needs k >= 3");
  if (!(tol > 0)) throw std::invalid_argument("series tolerance must be positive");
  const double a = static_cast<double>(k - 1);
  const double n_needed = std::ceil(1.0 / (a * tol));
  if (n_needed > 1e9) throw std::invalid_argument("series tolerance too small");
  const auto N = static_cast<std::uint64_t>(n_needed);
  double sum = 0;
  for (std::uint64_t j = N; j >= 1; --j) {  // small terms first
    const double jd = static_cast<double>(j);
    sum += 1.0 / (jd * (a * jd + 1.0));
  }
  return {sum, 1.0 / (a * static_cast<double>(N)), N};
}

/// rho(delta) = -delta log2 delta - (1 - delta) log2(1 - delta), rho(0) = rho(1) = 0.
inline double binary_entropy(double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw std::domain_error("binary entropy needs delta in [0, 1]");
  if (delta == 0.0 || delta == 1.0) return 0.0;
  return -delta * std::log2(delta) - (1.0 - delta) * std::log2(1.0 - delta);
}

struct BinomialBound {
  boost::multiprecision::cpp_int binom;
  double log2_bound = 0;  // rho(delta) n
  double bound = 0;       // 2^{rho(delta) n}
  bool holds = false;
};

/// C(n, delta n) against 2^{rho(delta) n}.
inline BinomialBound entropy_binomial_bound(std::uint64_t n, double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw std::domain_error("delta must lie in [0, 1]");
  const double dn = delta * static_cast<double>(n);
  const double r = std::round(dn);
  if (std::abs(dn - r) > 1e-9) throw std::invalid_argument("delta * n must be an integer");
  const auto m = static_cast<std::uint64_t>(r);
  BinomialBound out;
  out.binom = 1;
  for (std::uint64_t i = 0; i < m; ++i) out.binom = out.binom * (n - i) / (i + 1);
  out.log2_bound = binary_entropy(delta) * static_cast<double>(n);
  out.bound = std::exp2(out.log2_bound);
  // compare in log space; the binomial may exceed double range only when the bound does too
  const double lb = std::log2(out.binom.convert_to<double>());
  out.holds = lb <= out.log2_bound + 1e-9;
  return out;
}

/// f(x, y) = (y + (1 - y) x)^{k-1}.
inline double r_step(unsigned k, double x, double y) { return std::pow(y + (1.0 - y) * x, static_cast<double>(k - 1)); }

/// R_0..R_d sampled at y = g / G for g = 0..G, with left and right
/// Riemann sums of each.
struct RGrid {
  unsigned k = 3;
  std::size_t grid = 0;
  std::vector<std::vector<double>> values;  // values[j][g]
  std::vector<double> left;                 // lower bracket of the integral of R_j
  std::vector<double> right;                // upper bracket

  double y(std::size_t g) const { return static_cast<double>(g) / static_cast<double>(grid); }
  std::size_t depth() const { return values.size() - 1; }
};

inline RGrid r_sequence(unsigned k, std::size_t d, std::size_t grid) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (grid < 2) throw std::invalid_argument("grid size must be at least 2");
  RGrid out;
  out.k = k;
  out.grid = grid;
  out.values.assign(d + 1, std::vector<double>(grid + 1, 0.0));
  for (std::size_t j = 1; j <= d; ++j)
    for (std::size_t g = 0; g <= grid; ++g) out.values[j][g] = r_step(k, out.values[j - 1][g], out.y(g));
  const double w = 1.0 / static_cast<double>(grid);
  for (const auto& row : out.values) {
    double l = 0, r = 0;
    for (std::size_t g = 0; g < grid; ++g) l += row[g];
    for (std::size_t g = 1; g <= grid; ++g) r += row[g];
    out.left.push_back(l * w);
    out.right.push_back(r * w);
  }
  return out;
}

struct PhiReport {
  unsigned k = 3;
  std::size_t d = 0;
  std::size_t n = 0;
  std::vector<std::vector<double>> phi;  // phi[j][r - 1] for r = 1..n
  bool pointwise = true;                 // phi_j(r) >= R_j(r/n) for all j <= d, r
  double max_shortfall = 0;              // max of R_j(r/n) - phi_j(r), clipped at 0
  double mean_phi = 0;                   // (1/n) sum_r phi_d(r)
  double right_sum_n = 0;                // right Riemann sum of R_d with n cells
  double integral_lower = 0;             // left sum of R_d on the fine grid
  double integral_upper = 0;             // right sum of R_d on the fine grid
  bool chain = true;                     // mean_phi >= right_sum_n >= integral_upper
};

/// phi_0 = 0, phi_j(r) = (r/n + (1 - r/n) phi_{j-1}(r))^{k-1}, checked
/// against R_j(r/n) read from a grid refined by `refine` per cell.
inline PhiReport phi_riemann_check(unsigned k, std::size_t d, std::size_t n, std::size_t refine = 100) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (refine < 1) throw std::invalid_argument("refinement must be at least 1");
  PhiReport rep;
  rep.k = k;
  rep.d = d;
  rep.n = n;
  rep.phi.assign(d + 1, std::vector<double>(n, 0.0));
  for (std::size_t j = 1; j <= d; ++j) {
    for (std::size_t r = 1; r <= n; ++r) {
      const double t = static_cast<double>(r) / static_cast<double>(n);
      rep.phi[j][r - 1] = std::pow(t + (1.0 - t) * rep.phi[j - 1][r - 1], static_cast<double>(k - 1));
    }
  }
  const RGrid fine = r_sequence(k, d, n * refine);
  for (std::size_t j = 0; j <= d; ++j) {
    for (std::size_t r = 1; r <= n; ++r) {
      const double R = fine.values[j][r * refine];
      const double gap = R - rep.phi[j][r - 1];
      if (gap > 0) {
        rep.pointwise = false;
        rep.max_shortfall = std::max(rep.max_shortfall, gap);
      }
    }
  }
  for (double v : rep.phi[d]) rep.mean_phi += v;
  rep.mean_phi /= static_cast<double>(n);
  for (std::size_t r = 1; r <= n; ++r) rep.right_sum_n += fine.values[d][r * refine];
  rep.right_sum_n /= static_cast<double>(n);
  rep.integral_lower = fine.left[d];
  rep.integral_upper = fine.right[d];
  rep.chain = rep.mean_phi >= rep.right_sum_n && rep.right_sum_n >= rep.integral_upper;
  return rep;
}

/// e(delta) = 1 - lambda_k + lambda_k delta + rho(delta).
inline double runtime_exponent(unsigned k, double delta, double tol = kDefaultSeriesTolerance) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw std::domain_error("delta must lie in [0, 1]");
  const double lam = lambda_k(k, tol).value;
  return 1.0 - lam + lam * delta + binary_entropy(delta);
}

inline double runtime_base(unsigned k, double delta, double tol = kDefaultSeriesTolerance) {
  return std::exp2(runtime_exponent(k, delta, tol));
}

class NoCrossover : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Solves 2^{e(delta)} = base on [0, 1/2], where e is increasing.
inline double crossover_delta(unsigned k, double competitor_base, double tol = kDefaultSeriesTolerance) {
  if (!(competitor_base > 1.0)) throw std::invalid_argument("competitor base must exceed 1");
  const double lam = lambda_k(k, tol).value;
  const double target = std::log2(competitor_base);
  auto e = [&](double d) { return 1.0 - lam + lam * d + binary_entropy(d); };
  double lo = 0.0, hi = 0.5;
  if (target < e(lo) || target > e(hi))
    throw NoCrossover("no crossover in [0, 1/2] for base " + std::to_string(competitor_base));
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (e(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Best known deterministic 4-SAT base used as the default competitor.
inline constexpr double kDefaultCompetitor4 = 1.4976;
inline constexpr double kDefaultCompetitor3 = 1.328;

}  // namespace ppsz
