// Surrogates represented by coefficient vectors on the truncated tensor
// basis: evaluation, variance, and closed Sobol indices read directly off
// the coefficients (Parseval on an orthonormal basis).
#pragma once

#include <Eigen/Dense>
#include <map>
#include <span>
#include <stdexcept>

#include "sobolopt/legendre.hpp"

namespace sobolopt {

/// Support grouping of the enumerated basis, computed once per BasisConfig
/// and shared by Sobol-index evaluation and constraint compilation.
class SupportMap {
 public:
  explicit SupportMap(const BasisConfig& cfg) : cfg_(cfg), indices_(enumerate_basis(cfg)) {
    supports_.reserve(indices_.size());
    for (std::size_t i = 0; i < indices_.size(); ++i) {
      VarSubset s = support_of(indices_[i]);
      supports_.push_back(s);
      groups_[s].push_back(static_cast<int>(i));
    }
  }

  const BasisConfig& config() const { return cfg_; }
  const std::vector<BasisIndex>& indices() const { return indices_; }
  VarSubset support(int position) const { return supports_[position]; }
  std::size_t size() const { return indices_.size(); }

  /// Positions whose support equals the given subset; empty if none.
  std::span<const int> positions_of(VarSubset subset) const {
    auto it = groups_.find(subset);
    if (it == groups_.end()) return {};
    return it->second;
  }

 private:
  BasisConfig cfg_;
  std::vector<BasisIndex> indices_;
  std::vector<VarSubset> supports_;
  std::map<VarSubset, std::vector<int>> groups_;
};

/// Coefficients of a surrogate in enumerate_basis order.
struct CoeffVector {
  BasisConfig cfg;
  Eigen::VectorXd a;

  void validate() const {
    if (static_cast<std::size_t>(a.size()) != cfg.basis_size())
      throw std::invalid_argument(
          "CoeffVector: coefficient count does not match basis size");
  }
};

/// sum_k a_k psi_k(x).
inline double eval_surrogate(const CoeffVector& cv, std::span<const double> x) {
  cv.validate();
  std::vector<double> row(cv.cfg.basis_size());
  eval_basis_row(cv.cfg, x, row);
  return Eigen::Map<const Eigen::VectorXd>(row.data(), cv.a.size()).dot(cv.a);
}

/// Var of the surrogate under the uniform measure: sum of squared
/// non-constant coefficients.
inline double variance(const CoeffVector& cv) {
  cv.validate();
  return cv.a.squaredNorm() - cv.a[0] * cv.a[0];
}

/// Unnormalized energy attributed to supports in the family:
/// sum_{u in family} sum_{support(k)=u} a_k^2.
inline double group_energy(const CoeffVector& cv,
                           std::span<const VarSubset> family,
                           const SupportMap& sm) {
  cv.validate();
  double e = 0.0;
  for (VarSubset u : family)
    for (int p : sm.positions_of(u)) e += cv.a[p] * cv.a[p];
  return e;
}

inline double group_energy(const CoeffVector& cv,
                           std::span<const VarSubset> family) {
  return group_energy(cv, family, SupportMap(cv.cfg));
}

/// Closed Sobol index of the subset u: energy with support exactly u over
/// total variance. Requires a non-degenerate surrogate.
inline double sobol_index(const CoeffVector& cv, VarSubset u,
                          const SupportMap& sm) {
  if (u == 0) throw std::invalid_argument("sobol_index: empty subset");
  const double var = variance(cv);
  if (var <= 0.0)
    throw std::domain_error(
        "sobol_index: degenerate surrogate (zero variance)");
  const VarSubset fam[] = {u};
  return group_energy(cv, fam, sm) / var;
}

inline double sobol_index(const CoeffVector& cv, VarSubset u) {
  return sobol_index(cv, u, SupportMap(cv.cfg));
}

}  // namespace sobolopt
