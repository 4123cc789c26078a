// Pick-freeze Monte-Carlo estimation of first-order and total Sobol
// indices, and conversion of the estimates into constraint bounds.
#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sobolopt/constraints.hpp"
#include "sobolopt/rng.hpp"

namespace sobolopt {

struct SensitivityEstimate {
  std::vector<double> first_order;  // S_i, unclipped
  std::vector<double> total;        // T_i, unclipped
  int n_base = 0;
  long total_evals = 0;  // n_base * (d + 2)
  double variance = 0.0;
};

/// Saltelli pick-freeze estimate from two n_base x d uniform sample
/// matrices A and B (drawn row-major, A first). For each variable i the
/// hybrid matrix AB_i is A with column i taken from B. First-order indices
/// use the Saltelli-2010 correlation form
///   S_i = (1/n) sum_j f(B)_j (f(AB_i)_j - f(A)_j) / V,
/// total indices the Jansen form
///   T_i = (1/2n) sum_j (f(A)_j - f(AB_i)_j)^2 / V,
/// with V the sample variance (ddof = 1) pooled over the A and B
/// evaluations. Estimates may fall slightly outside [0,1] by Monte-Carlo
/// noise and are reported unclipped.
template <typename F>
SensitivityEstimate estimate(F&& f, int d, int n_base, Rng& rng) {
  if (d < 1) throw std::invalid_argument("estimate: d must be >= 1");
  if (n_base < 2) throw std::invalid_argument("estimate: n_base must be >= 2");

  const std::size_t n = static_cast<std::size_t>(n_base);
  std::vector<double> A(n * d), B(n * d);
  rng.fill_symmetric(A);
  rng.fill_symmetric(B);

  std::vector<double> fA(n), fB(n), row(d);
  for (std::size_t j = 0; j < n; ++j)
    fA[j] = f(std::span<const double>(A).subspan(j * d, d));
  for (std::size_t j = 0; j < n; ++j)
    fB[j] = f(std::span<const double>(B).subspan(j * d, d));

  double mean = 0.0;
  for (double v : fA) mean += v;
  for (double v : fB) mean += v;
  mean /= static_cast<double>(2 * n);
  double var = 0.0;
  for (double v : fA) var += (v - mean) * (v - mean);
  for (double v : fB) var += (v - mean) * (v - mean);
  var /= static_cast<double>(2 * n - 1);
  if (!(var > 0.0))
    throw std::runtime_error(
        "estimate: degenerate variance (constant objective)");

  SensitivityEstimate est;
  est.n_base = n_base;
  est.total_evals = static_cast<long>(n) * (d + 2);
  est.variance = var;
  est.first_order.resize(d);
  est.total.resize(d);

  for (int i = 0; i < d; ++i) {
    double s_acc = 0.0, t_acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      std::copy_n(A.begin() + j * d, d, row.begin());
      row[i] = B[j * d + i];
      const double fAB = f(std::span<const double>(row));
      s_acc += fB[j] * (fAB - fA[j]);
      t_acc += (fA[j] - fAB) * (fA[j] - fAB);
    }
    est.first_order[i] = s_acc / (static_cast<double>(n) * var);
    est.total[i] = t_acc / (2.0 * static_cast<double>(n) * var);
  }
  return est;
}

/// Conservative constraint bounds from an estimate: for each variable a
/// singleton bound min(1, S_i (1+margin)) and a bound on the family of all
/// subsets containing i of min(1, T_i (1+margin)). Negative estimates are
/// treated as zero. With assume_zero, variables whose estimate falls below
/// zero_tol become zero bounds (eliminations); otherwise the bound is
/// floored at zero_tol so noise never silently hardens into an equality.
inline std::vector<SobolConstraint> suggest_bounds(
    const SensitivityEstimate& est, double margin, bool assume_zero = false,
    double zero_tol = 1e-3) {
  if (!(margin >= 0.0))
    throw std::invalid_argument("suggest_bounds: margin must be >= 0");
  const int d = static_cast<int>(est.first_order.size());
  if (d == 0 || est.total.size() != est.first_order.size())
    throw std::invalid_argument("suggest_bounds: degenerate estimate");
  if (d > 16)
    throw std::invalid_argument(
        "suggest_bounds: total-index families grow as 2^d; d > 16 unsupported");

  auto to_bound = [&](double raw) {
    if (assume_zero && raw < zero_tol) return 0.0;
    const double scaled = std::max(raw, 0.0) * (1.0 + margin);
    return std::clamp(scaled, zero_tol, 1.0);
  };

  std::vector<SobolConstraint> out;
  out.reserve(2 * d);
  for (int i = 0; i < d; ++i)
    out.push_back({{make_subset({i + 1}, d)}, to_bound(est.first_order[i])});
  for (int i = 0; i < d; ++i) {
    SobolConstraint c;
    c.bound = to_bound(est.total[i]);
    // every nonempty subset of 1..d containing variable i+1
    const VarSubset bit = VarSubset{1} << i;
    const VarSubset all = (VarSubset{1} << d) - 1;
    for (VarSubset u = 1; u <= all; ++u)
      if (u & bit) c.family.push_back(u);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace sobolopt
