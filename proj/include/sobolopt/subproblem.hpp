// Certified lower bound m(x): the smallest value at x over all coefficient
// vectors that interpolate the evaluation history and satisfy the compiled
// variance and Sobol constraints.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "sobolopt/constraints.hpp"
#include "sobolopt/legendre.hpp"
#include "sobolopt/qcqp.hpp"

namespace sobolopt {

/// Evaluation record of the run so far. Points are kept in evaluation
/// order; best tracks the running minimum.
class History {
 public:
  explicit History(int dim) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("History: dim must be >= 1");
  }

  void add(std::span<const double> x, double y) {
    if (static_cast<int>(x.size()) != dim_)
      throw std::invalid_argument("History: point dimension mismatch");
    for (double xi : x) detail::check_coordinate(xi);
    if (!std::isfinite(y))
      throw std::invalid_argument("History: non-finite objective value");
    points_.emplace_back(x.begin(), x.end());
    values_.push_back(y);
    best_ = std::min(best_, y);
  }

  int dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<double>& point(std::size_t i) const { return points_[i]; }
  double value(std::size_t i) const { return values_[i]; }

  /// Minimum recorded value; +inf while empty.
  double best() const { return best_; }

 private:
  int dim_;
  std::vector<std::vector<double>> points_;
  std::vector<double> values_;
  double best_ = std::numeric_limits<double>::infinity();
};

struct LowerBound {
  double value = std::numeric_limits<double>::quiet_NaN();  // -inf, finite, +inf
  QcqpStatus status = QcqpStatus::Infeasible;
};

/// Strict m < best with a relative guard at the solver's noise floor.
/// The barrier reports m(x*) a few ulps below best at an interpolation
/// point (the eliminated equalities leave ~1e-15 of objective slack), so a
/// bitwise < would classify the incumbent itself as improving. The guard
/// sits three orders below the solver tolerance, so any certified true
/// improvement clears it.
inline bool below_incumbent(double m, double best) {
  return m < best - 1e-9 * (1.0 + std::abs(best));
}

/// Reusable certifier: compiles the constraint geometry once and refactors
/// the interpolation equalities only when the history changes, so certifying
/// a stream of rejected proposals against a fixed history costs one barrier
/// solve each. lower_bound() is const and safe to call concurrently;
/// history mutation is single-writer.
class Certifier {
 public:
  Certifier(const BasisConfig& cfg, const CompiledConstraints& cc,
            QcqpOptions opts = {})
      : cfg_(cfg), opts_(opts), history_(cfg.dim) {
    cfg_.validate();
    if (cc.n_basis != cfg_.basis_size())
      throw std::invalid_argument("Certifier: constraints compiled for a different basis");

    std::vector<int> compact(cc.n_basis, -1);
    std::size_t e = 0;
    for (std::size_t p = 0; p < cc.n_basis; ++p) {
      if (e < cc.eliminated.size() &&
          cc.eliminated[e] == static_cast<int>(p)) {
        ++e;
        continue;
      }
      compact[p] = static_cast<int>(keep_.size());
      keep_.push_back(static_cast<int>(p));
    }
    for (const Ball& b : cc.all_balls()) {
      Ball rb;
      rb.radius_sq = b.radius_sq;
      rb.positions.reserve(b.positions.size());
      for (int p : b.positions) rb.positions.push_back(compact[p]);
      balls_.push_back(std::move(rb));
    }
    rebuild();
  }

  void add_point(std::span<const double> x, double y) {
    history_.add(x, y);
    rebuild();
  }

  void set_history(const History& h) {
    if (h.dim() != cfg_.dim)
      throw std::invalid_argument("Certifier: history dimension mismatch");
    history_ = h;
    rebuild();
  }

  const History& history() const { return history_; }
  const BasisConfig& config() const { return cfg_; }

  /// m(x): minimum of the surrogate class at x. -inf when the class is
  /// unconstrained in a direction visible at x (possible while the history
  /// is empty), +inf when no class member interpolates the history.
  LowerBound lower_bound(std::span<const double> x) const {
    Eigen::VectorXd c(keep_.size());
    gather_row(x, c);
    QcqpSolution sol = prep_->minimize(c);
    LowerBound lb;
    lb.status = sol.status;
    lb.value = sol.value;
    return lb;
  }

 private:
  void gather_row(std::span<const double> x, Eigen::VectorXd& out) const {
    std::vector<double> full(cfg_.basis_size());
    eval_basis_row(cfg_, x, full);
    for (std::size_t j = 0; j < keep_.size(); ++j) out(j) = full[keep_[j]];
  }

  void rebuild() {
    const auto n = static_cast<Eigen::Index>(keep_.size());
    Eigen::MatrixXd A(history_.size(), n);
    Eigen::VectorXd b(history_.size());
    Eigen::VectorXd row(n);
    for (std::size_t i = 0; i < history_.size(); ++i) {
      gather_row(history_.point(i), row);
      A.row(i) = row;
      b(i) = history_.value(i);
    }
    prep_.emplace(A, b, balls_, static_cast<int>(n), opts_);
  }

  BasisConfig cfg_;
  QcqpOptions opts_;
  std::vector<int> keep_;    // surviving basis positions, ascending
  std::vector<Ball> balls_;  // compiled balls in compact coordinates
  History history_;
  std::optional<PreparedQcqp> prep_;
};

/// One-shot m(x) for a given history.
inline LowerBound lower_bound(std::span<const double> x, const History& h,
                              const CompiledConstraints& cc,
                              const BasisConfig& cfg, QcqpOptions opts = {}) {
  Certifier cert(cfg, cc, opts);
  cert.set_history(h);
  return cert.lower_bound(x);
}

/// Membership test for the promising region: does some class member
/// consistent with the history dip strictly below the incumbent at x?
/// -inf counts as improving, +inf (infeasible) does not.
inline bool is_improving(std::span<const double> x, const History& h,
                         const CompiledConstraints& cc, const BasisConfig& cfg,
                         QcqpOptions opts = {}) {
  if (h.empty())
    throw std::invalid_argument("is_improving: history must be nonempty");
  return below_incumbent(lower_bound(x, h, cc, cfg, opts).value, h.best());
}

}  // namespace sobolopt
