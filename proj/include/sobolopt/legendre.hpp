// Normalized Legendre polynomials on [-1,1] under the uniform probability
// measure, and their tensor products truncated at a per-coordinate degree.
#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sobolopt {

/// Per-coordinate degrees of one tensor basis function. Entry l is the
/// degree of the univariate factor acting on coordinate l.
using BasisIndex = std::vector<int>;

/// Variable subsets of {1..d} as bitmasks; bit (i-1) set means variable i
/// is a member.
using VarSubset = std::uint32_t;

/// Dimension and truncation of the tensor basis. The basis holds every
/// multi-index with all degrees <= max_degree, so it has
/// (max_degree+1)^dim members.
struct BasisConfig {
  int dim = 1;
  int max_degree = 1;
  std::size_t size_cap = 1'000'000;

  void validate() const {
    if (dim < 1) throw std::invalid_argument("BasisConfig: dim must be >= 1");
    if (max_degree < 1)
      throw std::invalid_argument("BasisConfig: max_degree must be >= 1");
    if (dim > 25)
      throw std::invalid_argument("BasisConfig: dim > 25 unsupported");
  }

  /// (max_degree+1)^dim, guarded by size_cap.
  std::size_t basis_size() const {
    validate();
    std::size_t n = 1;
    for (int l = 0; l < dim; ++l) {
      n *= static_cast<std::size_t>(max_degree + 1);
      if (n > size_cap)
        throw std::length_error(
            "BasisConfig: basis size (max_degree+1)^dim exceeds cap of " +
            std::to_string(size_cap));
    }
    return n;
  }
};

namespace detail {
inline void check_coordinate(double x) {
  if (!(x >= -1.0 - 1e-12 && x <= 1.0 + 1e-12))
    throw std::domain_error(
        "coordinate outside [-1,1]: " + std::to_string(x) +
        " (map inputs to the canonical box before evaluating the basis)");
}

/// Classical P_0..P_n at x via (n+1) P_{n+1} = (2n+1) x P_n - n P_{n-1},
/// written into out[0..n].
inline void legendre_all(int max_degree, double x, double* out) {
  out[0] = 1.0;
  if (max_degree == 0) return;
  out[1] = x;
  for (int n = 1; n < max_degree; ++n)
    out[n + 1] = ((2 * n + 1) * x * out[n] - n * out[n - 1]) / (n + 1);
}
}  // namespace detail

/// psi_n(x) = sqrt(2n+1) * P_n(x), so E[psi_i psi_j] = delta_ij for X
/// uniform on [-1,1]; psi_0 is the constant 1.
inline double eval_psi(int degree, double x) {
  if (degree < 0) throw std::invalid_argument("eval_psi: negative degree");
  detail::check_coordinate(x);
  double prev = 1.0, cur = x;
  if (degree == 0) return 1.0;
  for (int n = 1; n < degree; ++n) {
    double next = ((2 * n + 1) * x * cur - n * prev) / (n + 1);
    prev = cur;
    cur = next;
  }
  return std::sqrt(2.0 * degree + 1.0) * cur;
}

/// Product of univariate psi over the coordinates: prod_l psi_{k_l}(x_l).
/// The all-zeros index evaluates to 1.
inline double eval_tensor(const BasisIndex& k, std::span<const double> x) {
  if (k.size() != x.size())
    throw std::invalid_argument("eval_tensor: index/point dimension mismatch");
  double v = 1.0;
  for (std::size_t l = 0; l < k.size(); ++l) v *= eval_psi(k[l], x[l]);
  return v;
}

/// All (max_degree+1)^dim multi-indices in lexicographic order (leftmost
/// coordinate most significant). Position 0 is the all-zeros index. The
/// order is a pure function of cfg, identical across runs and platforms.
inline std::vector<BasisIndex> enumerate_basis(const BasisConfig& cfg) {
  const std::size_t n = cfg.basis_size();
  std::vector<BasisIndex> out;
  out.reserve(n);
  BasisIndex k(cfg.dim, 0);
  out.push_back(k);
  for (std::size_t i = 1; i < n; ++i) {
    int l = cfg.dim - 1;
    while (k[l] == cfg.max_degree) k[l--] = 0;
    ++k[l];
    out.push_back(k);
  }
  return out;
}

/// Values of every basis function at x, in enumerate_basis order.
/// out must hold cfg.basis_size() entries.
inline void eval_basis_row(const BasisConfig& cfg, std::span<const double> x,
                           std::span<double> out) {
  const std::size_t n = cfg.basis_size();
  if (x.size() != static_cast<std::size_t>(cfg.dim))
    throw std::invalid_argument("eval_basis_row: point dimension mismatch");
  if (out.size() != n)
    throw std::invalid_argument("eval_basis_row: output size mismatch");
  const int width = cfg.max_degree + 1;
  // per-coordinate tables psi_0..psi_D
  std::vector<double> table(static_cast<std::size_t>(cfg.dim) * width);
  for (int l = 0; l < cfg.dim; ++l) {
    detail::check_coordinate(x[l]);
    double* row = table.data() + static_cast<std::size_t>(l) * width;
    detail::legendre_all(cfg.max_degree, x[l], row);
    for (int m = 0; m <= cfg.max_degree; ++m)
      row[m] *= std::sqrt(2.0 * m + 1.0);
  }
  BasisIndex k(cfg.dim, 0);
  for (std::size_t i = 0; i < n; ++i) {
    double v = 1.0;
    for (int l = 0; l < cfg.dim; ++l)
      v *= table[static_cast<std::size_t>(l) * width + k[l]];
    out[i] = v;
    if (i + 1 < n) {
      int l = cfg.dim - 1;
      while (k[l] == cfg.max_degree) k[l--] = 0;
      ++k[l];
    }
  }
}

/// Support of a multi-index: the subset of coordinates with positive degree.
inline VarSubset support_of(const BasisIndex& k) {
  VarSubset s = 0;
  for (std::size_t l = 0; l < k.size(); ++l)
    if (k[l] > 0) s |= VarSubset{1} << l;
  return s;
}

/// Build a subset mask from 1-based variable ids.
inline VarSubset make_subset(std::span<const int> vars, int dim) {
  VarSubset s = 0;
  for (int v : vars) {
    if (v < 1 || v > dim)
      throw std::invalid_argument("subset member " + std::to_string(v) +
                                  " outside 1.." + std::to_string(dim));
    s |= VarSubset{1} << (v - 1);
  }
  return s;
}

inline VarSubset make_subset(std::initializer_list<int> vars, int dim) {
  return make_subset(std::span<const int>(vars.begin(), vars.size()), dim);
}

}  // namespace sobolopt
