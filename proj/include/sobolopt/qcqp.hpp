// Dense solver for the certification subproblem class: minimize a linear
// objective subject to affine equalities and Euclidean-ball constraints.
//
// Method: equalities are eliminated through a rank-revealing SVD (minimum
// norm particular solution + orthonormal null-space basis), then a
// log-barrier Newton method with backtracking line search runs on the
// reduced variables. The barrier parameter follows mu <- mu/10 from mu = 1
// until (number of balls) * mu < tol, which bounds the duality gap by tol.
// Phase 1 minimizes the maximum ball violation over the equality-affine
// subspace with the same machinery; the problem is infeasible when that
// minimum exceeds feas_tol.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace sobolopt {

/// Euclidean-ball constraint on a group of coordinates:
/// sum_{p in positions} z_p^2 <= radius_sq.
struct Ball {
  std::vector<int> positions;
  double radius_sq = 1.0;
};

struct QcqpProblem {
  Eigen::VectorXd c;
  Eigen::MatrixXd A;  // zero rows allowed; rank deficiency handled
  Eigen::VectorXd b;
  std::vector<Ball> balls;
};

struct QcqpOptions {
  double tol = 1e-7;        // duality-gap bound at termination
  int max_newton = 200;     // global Newton step cap per solve
  double rank_tol = 1e-10;  // relative singular value cutoff
  double feas_tol = 1e-9;   // phase-1 infeasibility threshold
};

enum class QcqpStatus { Optimal, Infeasible, Unbounded, MaxIter };

inline const char* to_string(QcqpStatus s) {
  switch (s) {
    case QcqpStatus::Optimal: return "OPTIMAL";
    case QcqpStatus::Infeasible: return "INFEASIBLE";
    case QcqpStatus::Unbounded: return "UNBOUNDED";
    case QcqpStatus::MaxIter: return "MAX_ITER";
  }
  return "?";
}

struct QcqpSolution {
  QcqpStatus status = QcqpStatus::Infeasible;
  double value = std::numeric_limits<double>::quiet_NaN();
  Eigen::VectorXd z;
  double kkt_residual = std::numeric_limits<double>::quiet_NaN();
  int newton_steps = 0;
};

namespace detail {

/// Ball reduced to the null-space coordinates:
/// value(y) = c0 + 2 q.y + y.M y <= r2.
struct ReducedBall {
  Eigen::MatrixXd M;
  Eigen::VectorXd q;
  double c0 = 0.0;
  double r2 = 0.0;
};

struct BarrierResult {
  Eigen::VectorXd y;
  double mu_final = 0.0;
  std::vector<double> slack;
  int steps = 0;
  bool hit_cap = false;
  bool early_exit = false;
};

/// Log-barrier Newton path for min c.y s.t. reduced balls, from a strictly
/// feasible start. early_exit, when given, is checked after every accepted
/// step and ends the solve as soon as it returns true (used by phase 1).
template <typename EarlyExit>
BarrierResult barrier_minimize(const Eigen::VectorXd& c,
                               const std::vector<ReducedBall>& balls,
                               Eigen::VectorXd y, const QcqpOptions& opts,
                               int steps_used, EarlyExit early_exit) {
  const int nf = static_cast<int>(y.size());
  const int nb = static_cast<int>(balls.size());
  BarrierResult res;
  res.slack.resize(nb);

  // cached per-ball state: My = M y, val = c0 + 2 q.y + y.My
  std::vector<Eigen::VectorXd> My(nb);
  std::vector<double> val(nb);
  auto refresh = [&](const Eigen::VectorXd& yy) {
    for (int j = 0; j < nb; ++j) {
      My[j] = balls[j].M * yy;
      val[j] = balls[j].c0 + 2.0 * balls[j].q.dot(yy) + yy.dot(My[j]);
      res.slack[j] = balls[j].r2 - val[j];
    }
  };
  refresh(y);

  double mu = 1.0;
  const double c_scale = 1.0 + c.cwiseAbs().maxCoeff();
  const double grad_tol = 1e-9 * c_scale;
  Eigen::MatrixXd H(nf, nf);
  Eigen::VectorXd grad(nf), delta(nf), g_j(nf);
  std::vector<Eigen::VectorXd> Md(nb, Eigen::VectorXd(nf));

  const auto phi_at = [&](double t, const std::vector<double>& lin,
                          const std::vector<double>& quad, double cdotd,
                          double phi0) {
    // phi(y + t d) from cached per-ball scalars; +inf when infeasible
    double p = phi0 + t * cdotd;
    for (int j = 0; j < nb; ++j) {
      double s = res.slack[j] - 2.0 * t * lin[j] - t * t * quad[j];
      if (s <= 0.0) return std::numeric_limits<double>::infinity();
      p += -mu * std::log(s);
    }
    return p;
  };

  std::vector<double> lin(nb), quad(nb);
  bool done = false;
  while (!done) {
    // inner Newton loop for the current mu
    for (;;) {
      if (res.steps + steps_used >= opts.max_newton) {
        res.hit_cap = true;
        res.mu_final = mu;
        res.y = y;
        return res;
      }
      grad = c;
      H.setZero();
      for (int j = 0; j < nb; ++j) {
        const double s = res.slack[j];
        g_j = balls[j].q + My[j];
        grad.noalias() += (2.0 * mu / s) * g_j;
        H.noalias() += (2.0 * mu / s) * balls[j].M;
        H.noalias() += (4.0 * mu / (s * s)) * (g_j * g_j.transpose());
      }
      // centered at this mu; checking the raw gradient keeps KKT residuals
      // tight even when the Hessian is stiff near a boundary
      if (grad.cwiseAbs().maxCoeff() <= grad_tol) break;
      // plain Cholesky first; the Hessian is PSD and can be singular along
      // directions touched by no ball, so escalate a tiny diagonal shift
      // only when the factorization rejects it (a large blanket shift would
      // flatten the step along weakly curved directions and stall early)
      Eigen::LLT<Eigen::MatrixXd> llt(H);
      if (llt.info() != Eigen::Success) {
        double damping = 1e-14 * (1.0 + H.trace() / std::max(nf, 1));
        for (int attempt = 0; attempt < 8; ++attempt) {
          Eigen::MatrixXd Hd = H;
          Hd.diagonal().array() += damping;
          llt.compute(Hd);
          if (llt.info() == Eigen::Success) break;
          damping *= 100.0;
        }
        if (llt.info() != Eigen::Success) {
          res.hit_cap = true;  // hopeless curvature; report what we have
          break;
        }
      }
      delta = llt.solve(-grad);
      const double dec2 = -grad.dot(delta);
      double phi0 = c.dot(y);
      for (int j = 0; j < nb; ++j) phi0 -= mu * std::log(res.slack[j]);
      // a vanishing (or negative) Newton decrement with the gradient still
      // above tol means slack cancellation has hit the floating-point floor;
      // the gradient is then a few ulps of mu/slack, far below kkt needs
      if (dec2 * 0.5 <= 1e-18 * (1.0 + std::abs(phi0))) break;

      // per-ball scalars make the line search O(1) per trial point
      const double cdotd = c.dot(delta);
      double gdotd = grad.dot(delta);
      for (int j = 0; j < nb; ++j) {
        Md[j].noalias() = balls[j].M * delta;
        lin[j] = (balls[j].q + My[j]).dot(delta);
        quad[j] = delta.dot(Md[j]);
      }
      double t = 1.0;
      const double phi_ref = phi_at(0.0, lin, quad, cdotd, phi0);
      int bt = 0;
      while (bt < 70) {
        const double p = phi_at(t, lin, quad, cdotd, phi0);
        if (std::isfinite(p) && p <= phi_ref + 0.25 * t * gdotd) break;
        t *= 0.5;
        ++bt;
      }
      if (bt == 70) break;  // no productive step at this mu

      y.noalias() += t * delta;
      for (int j = 0; j < nb; ++j) {
        My[j].noalias() += t * Md[j];
        val[j] += 2.0 * t * lin[j] + t * t * quad[j];
        res.slack[j] = balls[j].r2 - val[j];
      }
      ++res.steps;
      if (early_exit(y)) {
        res.early_exit = true;
        res.mu_final = mu;
        res.y = y;
        return res;
      }
    }
    if (nb * mu < opts.tol || nb == 0) {
      done = true;
    } else {
      mu *= 0.1;
      refresh(y);  // drop incremental rounding before the next stage
    }
  }
  res.mu_final = mu;
  res.y = y;
  return res;
}

inline bool no_early_exit(const Eigen::VectorXd&) { return false; }

/// Newton refinement of the active-set KKT equations, started from the
/// barrier iterate. Near the optimum the barrier cannot push the gradient
/// much below sqrt(eps * curvature): the predicted decrement falls under the
/// double-precision resolution of the barrier value while the stationarity
/// residual is still ~1e-4. The KKT system has no such floor. Steps are
/// adopted only while the measured residual improves and every ball stays
/// within its feasibility tolerance, so a wrong active-set guess degrades
/// into a no-op rather than a bad answer.
inline void kkt_polish(const Eigen::VectorXd& c,
                       const std::vector<ReducedBall>& balls,
                       Eigen::VectorXd& y, std::vector<double>& lambda) {
  const int nf = static_cast<int>(y.size());
  const int nb = static_cast<int>(balls.size());
  std::vector<Eigen::VectorXd> My(nb);
  std::vector<double> val(nb);
  auto refresh_vals = [&](const Eigen::VectorXd& yy) {
    for (int j = 0; j < nb; ++j) {
      My[j] = balls[j].M * yy;
      val[j] = balls[j].c0 + 2.0 * balls[j].q.dot(yy) + yy.dot(My[j]);
    }
  };
  refresh_vals(y);

  std::vector<int> active;
  for (int j = 0; j < nb; ++j)
    if (balls[j].r2 - val[j] <= 1e-5 * (1.0 + balls[j].r2)) active.push_back(j);
  const int k = static_cast<int>(active.size());
  if (k == 0) return;

  // stationarity plus complementarity, assuming refresh_vals(yy) just ran
  auto residual = [&](const std::vector<double>& lam) {
    Eigen::VectorXd r = c;
    for (int j = 0; j < nb; ++j)
      r.noalias() += (2.0 * lam[j]) * (balls[j].q + My[j]);
    double worst = r.cwiseAbs().maxCoeff();
    for (int j = 0; j < nb; ++j)
      worst = std::max(worst, std::abs(lam[j] * (val[j] - balls[j].r2)));
    return worst;
  };
  auto within_balls = [&]() {
    for (int j = 0; j < nb; ++j)
      if (val[j] - balls[j].r2 > 1e-9 * (1.0 + balls[j].r2)) return false;
    return true;
  };

  Eigen::VectorXd y_best = y, yy = y;
  std::vector<double> lam_best = lambda, lam = lambda;
  double best = residual(lam);

  for (int it = 0; it < 5; ++it) {
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(nf + k, nf + k);
    Eigen::VectorXd rhs(nf + k);
    Eigen::VectorXd f1 = c;
    for (int j = 0; j < nb; ++j) {
      f1.noalias() += (2.0 * lam[j]) * (balls[j].q + My[j]);
      K.topLeftCorner(nf, nf).noalias() += (2.0 * lam[j]) * balls[j].M;
    }
    for (int a = 0; a < k; ++a) {
      const int j = active[a];
      const Eigen::VectorXd g = 2.0 * (balls[j].q + My[j]);
      K.col(nf + a).head(nf) = g;
      K.row(nf + a).head(nf) = g.transpose();
      rhs(nf + a) = balls[j].r2 - val[j];
    }
    rhs.head(nf) = -f1;

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(K);
    if (qr.rank() < nf + k) break;
    const Eigen::VectorXd step = qr.solve(rhs);
    if (!step.allFinite()) break;
    yy.noalias() += step.head(nf);
    for (int a = 0; a < k; ++a)
      lam[active[a]] = std::max(lam[active[a]] + step(nf + a), 0.0);
    refresh_vals(yy);
    const double r = residual(lam);
    if (r < best && within_balls()) {
      best = r;
      y_best = yy;
      lam_best = lam;
    }
  }
  y = y_best;
  lambda = lam_best;
}

}  // namespace detail

/// Equality-reduced problem with a strictly feasible interior point,
/// reusable across objectives. Construction performs the rank-revealing
/// factorization and phase 1 once; minimize() is then a pure function of
/// the objective vector and safe to call concurrently.
class PreparedQcqp {
 public:
  PreparedQcqp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
               std::vector<Ball> balls, int n, QcqpOptions opts = {})
      : n_(n), opts_(opts), balls_(std::move(balls)) {
    if (A.rows() != b.size())
      throw std::invalid_argument("qcqp: A and b row counts differ");
    if (A.rows() > 0 && A.cols() != n)
      throw std::invalid_argument("qcqp: A column count differs from n");
    if (!A.allFinite() || !b.allFinite())
      throw std::invalid_argument("qcqp: non-finite equality data");
    for (const auto& ball : balls_) {
      if (!(ball.radius_sq >= 0.0) || !std::isfinite(ball.radius_sq))
        throw std::invalid_argument("qcqp: ball radius_sq must be >= 0");
      for (int p : ball.positions)
        if (p < 0 || p >= n)
          throw std::invalid_argument("qcqp: ball position out of range");
    }

    reduce_equalities(A, b);
    if (eq_inconsistent_) return;
    mark_free_coordinates(A);
    prepare_balls();
    run_phase1();
  }

  /// Minimize c.z over the prepared feasible set.
  QcqpSolution minimize(const Eigen::VectorXd& c) const {
    if (c.size() != n_)
      throw std::invalid_argument("qcqp: objective dimension mismatch");
    if (!c.allFinite())
      throw std::invalid_argument("qcqp: non-finite objective");

    QcqpSolution sol;
    if (eq_inconsistent_ || !feasible_) {
      sol.status = QcqpStatus::Infeasible;
      sol.value = std::numeric_limits<double>::infinity();
      sol.kkt_residual = eq_inconsistent_ ? eq_residual_ : phase1_violation_;
      return sol;
    }
    if (is_unbounded(c)) {
      sol.status = QcqpStatus::Unbounded;
      sol.value = -std::numeric_limits<double>::infinity();
      sol.kkt_residual = 0.0;
      return sol;
    }

    const int nf = static_cast<int>(null_basis_.cols());
    const Eigen::VectorXd c_red = null_basis_.transpose() * c;
    const double c_part = c.dot(particular_);

    if (nf == 0 || balls_.empty()) {
      // fixed point, or plain LP on the affine subspace (bounded because the
      // recession pre-check passed, hence c_red == 0 up to roundoff)
      sol.status = QcqpStatus::Optimal;
      sol.z = particular_;
      if (nf > 0) sol.z += null_basis_ * interior_;
      sol.value = c.dot(sol.z);
      sol.newton_steps = 0;
      sol.kkt_residual = kkt_residual(c, sol.z, {});
      return sol;
    }

    auto res = detail::barrier_minimize(c_red, reduced_balls_, interior_,
                                        opts_, 0, detail::no_early_exit);
    Eigen::VectorXd y = res.y;
    std::vector<double> lambda(balls_.size());
    for (std::size_t j = 0; j < balls_.size(); ++j)
      lambda[j] = res.mu_final / res.slack[j];
    detail::kkt_polish(c_red, reduced_balls_, y, lambda);
    sol.z = particular_ + null_basis_ * y;
    sol.value = c_part + c_red.dot(y);
    sol.newton_steps = res.steps;
    sol.kkt_residual = kkt_residual(c, sol.z, lambda);
    sol.status = res.hit_cap ? QcqpStatus::MaxIter : QcqpStatus::Optimal;
    return sol;
  }

  bool equalities_consistent() const { return !eq_inconsistent_; }
  bool feasible() const { return !eq_inconsistent_ && feasible_; }

  /// Feasible-or-boundary witness in the equality-affine subspace
  /// (phase-1 minimizer when the problem is infeasible).
  Eigen::VectorXd witness() const {
    Eigen::VectorXd z = particular_;
    if (null_basis_.cols() > 0) z += null_basis_ * interior_;
    return z;
  }

 private:
  void reduce_equalities(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
    if (A.rows() == 0) {
      particular_ = Eigen::VectorXd::Zero(n_);
      null_basis_ = Eigen::MatrixXd::Identity(n_, n_);
      return;
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(
        A, Eigen::ComputeThinU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cutoff = sv.size() > 0 ? opts_.rank_tol * sv(0) : 0.0;
    int rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff && sv(rank) > 0.0) ++rank;

    Eigen::VectorXd ub = svd.matrixU().transpose() * b;
    Eigen::VectorXd coeff = Eigen::VectorXd::Zero(svd.matrixV().cols());
    for (int i = 0; i < rank; ++i) coeff(i) = ub(i) / sv(i);
    particular_ = svd.matrixV() * coeff;
    null_basis_ = svd.matrixV().rightCols(n_ - rank);

    const double scale = 1.0 + b.cwiseAbs().maxCoeff();
    eq_residual_ = (A * particular_ - b).cwiseAbs().maxCoeff();
    eq_inconsistent_ = eq_residual_ > 1e-8 * scale;
  }

  void mark_free_coordinates(const Eigen::MatrixXd& A) {
    std::vector<char> in_ball(n_, 0);
    for (const auto& ball : balls_)
      for (int p : ball.positions) in_ball[p] = 1;
    for (int i = 0; i < n_; ++i)
      if (!in_ball[i]) free_coords_.push_back(i);
    if (free_coords_.empty()) return;

    // null-space basis of A restricted to the free coordinates; recession
    // directions of the feasible set live exactly there
    const int nf = static_cast<int>(free_coords_.size());
    Eigen::MatrixXd AF(std::max<Eigen::Index>(A.rows(), 1), nf);
    AF.setZero();
    for (int j = 0; j < nf; ++j)
      if (A.rows() > 0) AF.col(j) = A.col(free_coords_[j]);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(AF, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cutoff =
        sv.size() > 0 && sv(0) > 0.0 ? opts_.rank_tol * sv(0) : 0.0;
    int rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff && sv(rank) > 0.0) ++rank;
    free_null_ = svd.matrixV().rightCols(nf - rank);
  }

  bool is_unbounded(const Eigen::VectorXd& c) const {
    if (free_coords_.empty() || free_null_.cols() == 0) return false;
    Eigen::VectorXd cF(free_coords_.size());
    for (std::size_t j = 0; j < free_coords_.size(); ++j)
      cF(j) = c(free_coords_[j]);
    const double proj = (free_null_.transpose() * cF).cwiseAbs().maxCoeff();
    return proj > 1e-10 * (1.0 + c.cwiseAbs().maxCoeff());
  }

  void prepare_balls() {
    const int nf = static_cast<int>(null_basis_.cols());
    reduced_balls_.reserve(balls_.size());
    for (const auto& ball : balls_) {
      detail::ReducedBall rb;
      const int g = static_cast<int>(ball.positions.size());
      Eigen::MatrixXd NG(g, nf);
      Eigen::VectorXd zg(g);
      for (int i = 0; i < g; ++i) {
        NG.row(i) = null_basis_.row(ball.positions[i]);
        zg(i) = particular_(ball.positions[i]);
      }
      rb.M.noalias() = NG.transpose() * NG;
      rb.q.noalias() = NG.transpose() * zg;
      rb.c0 = zg.squaredNorm();
      rb.r2 = ball.radius_sq;
      reduced_balls_.push_back(std::move(rb));
    }
  }

  void run_phase1() {
    const int nf = static_cast<int>(null_basis_.cols());
    interior_ = Eigen::VectorXd::Zero(nf);
    if (balls_.empty()) {
      feasible_ = true;
      phase1_violation_ = 0.0;
      return;
    }

    auto worst_violation = [&](const Eigen::VectorXd& y) {
      double worst = -std::numeric_limits<double>::infinity();
      for (const auto& rb : reduced_balls_) {
        const double val = rb.c0 + 2.0 * rb.q.dot(y) + y.dot(rb.M * y);
        worst = std::max(worst, val - rb.r2);
      }
      return worst;
    };

    const double v0 = worst_violation(interior_);
    double margin = 1e-6;
    for (const auto& rb : reduced_balls_) margin = std::max(margin, 1e-6 * rb.r2);
    if (v0 < -margin) {
      feasible_ = true;
      phase1_violation_ = v0;
      return;
    }

    // minimize t over (y, t) with val_j(y) - r2_j <= t, same barrier code on
    // the augmented variable
    std::vector<detail::ReducedBall> aug(reduced_balls_.size());
    for (std::size_t j = 0; j < reduced_balls_.size(); ++j) {
      aug[j].M = Eigen::MatrixXd::Zero(nf + 1, nf + 1);
      aug[j].M.topLeftCorner(nf, nf) = reduced_balls_[j].M;
      aug[j].q = Eigen::VectorXd::Zero(nf + 1);
      aug[j].q.head(nf) = reduced_balls_[j].q;
      aug[j].q(nf) = -0.5;
      aug[j].c0 = reduced_balls_[j].c0;
      aug[j].r2 = reduced_balls_[j].r2;
    }
    Eigen::VectorXd obj = Eigen::VectorXd::Zero(nf + 1);
    obj(nf) = 1.0;
    Eigen::VectorXd y0 = Eigen::VectorXd::Zero(nf + 1);
    y0(nf) = v0 + 1.0;

    QcqpOptions p1opts = opts_;
    p1opts.tol = 0.1 * opts_.feas_tol;  // certify t* below feas_tol
    p1opts.max_newton = std::max(opts_.max_newton, 400);
    auto res = detail::barrier_minimize(
        obj, aug, y0, p1opts, 0,
        [&](const Eigen::VectorXd& y) { return y(nf) < -margin; });

    const double t_final = res.y(static_cast<int>(nf));
    phase1_violation_ = t_final;
    if (res.early_exit || t_final <= opts_.feas_tol) {
      feasible_ = true;
      interior_ = res.y.head(nf);
      // marginal case: interior may touch a boundary; inflate radii by a
      // hair so phase 2 has strictly positive slacks
      double min_slack = std::numeric_limits<double>::infinity();
      for (const auto& rb : reduced_balls_) {
        const double val =
            rb.c0 + 2.0 * rb.q.dot(interior_) + interior_.dot(rb.M * interior_);
        min_slack = std::min(min_slack, rb.r2 - val);
      }
      if (min_slack <= 0.0) {
        const double delta = -min_slack + 1e-12;
        for (auto& rb : reduced_balls_) rb.r2 += delta;
      }
    } else {
      feasible_ = false;
      interior_ = res.y.head(nf);
    }
  }

  /// Stationarity and complementary-slackness residual at z with ball
  /// multipliers lambda; the equality multipliers are recovered by least
  /// squares against the original rows.
  double kkt_residual(const Eigen::VectorXd& c, const Eigen::VectorXd& z,
                      std::span<const double> lambda) const {
    Eigen::VectorXd w = c;
    double comp = 0.0;
    for (std::size_t j = 0; j < balls_.size() && j < lambda.size(); ++j) {
      for (int p : balls_[j].positions) w(p) += 2.0 * lambda[j] * z(p);
      double norm_sq = 0.0;
      for (int p : balls_[j].positions) norm_sq += z(p) * z(p);
      comp = std::max(comp,
                      std::abs(lambda[j] * (norm_sq - balls_[j].radius_sq)));
    }
    // remove the range(A^T) component: the null-space part is the residual
    const Eigen::VectorXd in_null = null_basis_.transpose() * w;
    const double stat = null_basis_.cols() > 0
                            ? (null_basis_ * in_null).cwiseAbs().maxCoeff()
                            : 0.0;
    return std::max(stat, comp);
  }

  int n_;
  QcqpOptions opts_;
  std::vector<Ball> balls_;
  Eigen::VectorXd particular_;
  Eigen::MatrixXd null_basis_;
  std::vector<detail::ReducedBall> reduced_balls_;
  std::vector<int> free_coords_;
  Eigen::MatrixXd free_null_;
  Eigen::VectorXd interior_;  // reduced coordinates of the phase-1 point
  bool eq_inconsistent_ = false;
  bool feasible_ = false;
  double eq_residual_ = 0.0;
  double phase1_violation_ = 0.0;
};

/// One-shot solve. OPTIMAL values are within opts.tol (duality gap) of the
/// true optimum; INFEASIBLE carries the phase-1 violation in kkt_residual;
/// UNBOUNDED means the objective decreases along a recession direction of
/// the feasible set (value reported as -inf).
inline QcqpSolution solve(const QcqpProblem& p, QcqpOptions opts = {}) {
  if (!(opts.tol > 0.0))
    throw std::invalid_argument("qcqp: tol must be positive");
  PreparedQcqp prep(p.A, p.b, p.balls, static_cast<int>(p.c.size()), opts);
  return prep.minimize(p.c);
}

/// Phase-1 feasibility check: is the intersection of the equality subspace
/// and all balls nonempty (within feas_tol)? Returns a feasible-or-boundary
/// witness on success, no witness otherwise.
inline std::pair<bool, std::optional<Eigen::VectorXd>> phase1(
    const QcqpProblem& p, QcqpOptions opts = {}) {
  PreparedQcqp prep(p.A, p.b, p.balls, static_cast<int>(p.c.size()), opts);
  if (!prep.feasible()) return {false, std::nullopt};
  return {true, prep.witness()};
}

}  // namespace sobolopt
