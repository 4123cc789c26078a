// Sequential rejection-sampling minimization: uniform proposals are
// certified against the surrogate class and the objective is evaluated only
// where some consistent class member dips below the incumbent.
#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sobolopt/constraints.hpp"
#include "sobolopt/rng.hpp"
#include "sobolopt/subproblem.hpp"

namespace sobolopt {

struct RunConfig {
  int dim = 3;
  int degree = 4;
  int budget_solves = 100;  // certification solves, accepted or not
  std::vector<SobolConstraint> constraints;
  std::uint64_t seed = 0;
  int max_consecutive_infeasible = 10;
  QcqpOptions solver;

  BasisConfig basis() const { return BasisConfig{dim, degree}; }

  void validate() const {
    basis().validate();
    if (budget_solves < 1)
      throw std::invalid_argument("RunConfig: budget_solves must be >= 1");
    if (max_consecutive_infeasible < 1)
      throw std::invalid_argument(
          "RunConfig: max_consecutive_infeasible must be >= 1");
    for (const auto& c : constraints) c.validate(dim);
  }
};

enum class Termination { Budget, ModelInconsistent };

inline const char* to_string(Termination t) {
  return t == Termination::Budget ? "BUDGET" : "MODEL_INCONSISTENT";
}

struct RunResult {
  int n_eval = 0;
  double m_best = 0.0;
  History history{1};
  int solves_used = 0;
  Termination termination = Termination::Budget;
  // certified m(x) of each accepted point after the first, in order; each
  // is strictly below the incumbent at its acceptance time
  std::vector<double> certificates;
};

/// Next i.i.d. uniform point on [-1,1]^d, coordinates in index order.
inline std::vector<double> propose(Rng& rng, int dim) {
  std::vector<double> x(dim);
  rng.fill_symmetric(x);
  return x;
}

namespace detail {

template <typename F>
double eval_checked(F&& f, const std::vector<double>& x) {
  const double y = f(std::span<const double>(x));
  if (!std::isfinite(y)) {
    std::ostringstream msg;
    msg << "objective returned a non-finite value at (";
    for (std::size_t i = 0; i < x.size(); ++i)
      msg << (i ? ", " : "") << x[i];
    msg << ")";
    throw std::runtime_error(msg.str());
  }
  return y;
}

}  // namespace detail

/// Run the minimization loop. The first point is evaluated unconditionally
/// and consumes no solve; every later proposal costs one solve and is
/// evaluated only when its certified lower bound is strictly below the
/// incumbent. Stops when the solve budget is spent, or after
/// max_consecutive_infeasible infeasible certifications in a row (the
/// history cannot be interpolated within the constrained class).
template <typename F>
RunResult run(F&& f, const RunConfig& cfg) {
  cfg.validate();
  const BasisConfig bc = cfg.basis();
  Certifier cert(bc, compile(cfg.constraints, bc), cfg.solver);
  Rng rng(cfg.seed);

  RunResult res;
  res.history = History(cfg.dim);

  std::vector<double> x = propose(rng, cfg.dim);
  cert.add_point(x, detail::eval_checked(f, x));

  int consecutive_infeasible = 0;
  res.termination = Termination::Budget;
  while (res.solves_used < cfg.budget_solves) {
    x = propose(rng, cfg.dim);
    const LowerBound lb = cert.lower_bound(x);
    ++res.solves_used;

    if (lb.status == QcqpStatus::Infeasible) {
      if (++consecutive_infeasible >= cfg.max_consecutive_infeasible) {
        res.termination = Termination::ModelInconsistent;
        break;
      }
      continue;
    }
    consecutive_infeasible = 0;
    if (below_incumbent(lb.value, cert.history().best())) {
      cert.add_point(x, detail::eval_checked(f, x));
      res.certificates.push_back(lb.value);
    }
  }

  res.history = cert.history();
  res.n_eval = static_cast<int>(res.history.size());
  res.m_best = res.history.best();
  return res;
}

}  // namespace sobolopt
