// Declarative Sobol-index constraints and their compilation into quadratic
// ball constraints and variable eliminations on the coefficient vector.
#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <vector>

#include "sobolopt/qcqp.hpp"
#include "sobolopt/surrogate.hpp"

namespace sobolopt {

/// Upper bound on the summed closed Sobol indices of a family of subsets:
/// sum_{u in family} S_u <= bound. A zero bound eliminates every
/// coefficient whose support lies in the family.
struct SobolConstraint {
  std::vector<VarSubset> family;
  double bound = 1.0;

  void validate(int dim) const {
    if (family.empty())
      throw std::invalid_argument("SobolConstraint: empty family");
    for (VarSubset u : family) {
      if (u == 0)
        throw std::invalid_argument("SobolConstraint: empty subset in family");
      if (dim < 32 && (u >> dim) != 0)
        throw std::invalid_argument(
            "SobolConstraint: subset member outside 1..d");
    }
    if (!(bound >= 0.0 && bound <= 1.0))
      throw std::invalid_argument("SobolConstraint: bound outside [0,1]");
  }
};

/// Result of compiling a constraint list against a basis: positions forced
/// to zero, one ball per positive bound, and the always-present unit
/// variance ball over the surviving non-constant positions.
struct CompiledConstraints {
  std::vector<int> eliminated;  // sorted, never includes position 0
  std::vector<Ball> balls;      // user bounds; positions sorted, exclude eliminated
  Ball variance_ball;           // radius_sq = 1 over surviving non-constant positions
  std::size_t n_basis = 0;

  /// User balls followed by the variance ball.
  std::vector<Ball> all_balls() const {
    std::vector<Ball> out = balls;
    out.push_back(variance_ball);
    return out;
  }
};

/// Compile Sobol constraints into eliminations and balls. Sobol bounds are
/// relative to unit variance and the subproblem enforces Var <= 1, so a
/// bound s_u becomes a ball of radius_sq = s_u directly. Overlapping
/// families stay separate balls.
inline CompiledConstraints compile(std::span<const SobolConstraint> constraints,
                                   const BasisConfig& cfg) {
  const SupportMap sm(cfg);
  for (const auto& c : constraints) c.validate(cfg.dim);

  CompiledConstraints out;
  out.n_basis = sm.size();

  std::vector<char> is_elim(sm.size(), 0);
  for (const auto& c : constraints) {
    if (c.bound != 0.0) continue;
    for (VarSubset u : c.family)
      for (int p : sm.positions_of(u)) is_elim[p] = 1;
  }
  for (std::size_t p = 0; p < sm.size(); ++p)
    if (is_elim[p]) out.eliminated.push_back(static_cast<int>(p));

  for (const auto& c : constraints) {
    if (c.bound == 0.0) continue;
    Ball b;
    b.radius_sq = c.bound;
    for (VarSubset u : c.family)
      for (int p : sm.positions_of(u))
        if (!is_elim[p]) b.positions.push_back(p);
    std::sort(b.positions.begin(), b.positions.end());
    out.balls.push_back(std::move(b));
  }

  out.variance_ball.radius_sq = 1.0;
  for (std::size_t p = 1; p < sm.size(); ++p)
    if (!is_elim[p]) out.variance_ball.positions.push_back(static_cast<int>(p));
  return out;
}

inline CompiledConstraints compile(const std::vector<SobolConstraint>& constraints,
                                   const BasisConfig& cfg) {
  return compile(std::span<const SobolConstraint>(constraints), cfg);
}

/// The four benchmark constraint sets (d = 3).
///   A: none.
///   B: first-order bounds S_1<=0.42, S_2<=0.46, S_3<=0.004 plus summed
///      bounds S_1+S_12+S_13<=0.47, S_2+S_12+S_23<=0.56, S_3+S_13+S_23<=0.06.
///   C: B plus the eliminations S_13 = S_123 = 0.
///   D: only the eliminations.
inline std::vector<SobolConstraint> experiment_preset(char tag) {
  constexpr int d = 3;
  const VarSubset s1 = make_subset({1}, d), s2 = make_subset({2}, d),
                  s3 = make_subset({3}, d), s12 = make_subset({1, 2}, d),
                  s13 = make_subset({1, 3}, d), s23 = make_subset({2, 3}, d),
                  s123 = make_subset({1, 2, 3}, d);
  std::vector<SobolConstraint> first_order = {
      {{s1}, 0.42},
      {{s2}, 0.46},
      {{s3}, 0.004},
      {{s1, s12, s13}, 0.47},
      {{s2, s12, s23}, 0.56},
      {{s3, s13, s23}, 0.06},
  };
  std::vector<SobolConstraint> eliminations = {{{s13}, 0.0}, {{s123}, 0.0}};

  switch (tag) {
    case 'A':
      return {};
    case 'B':
      return first_order;
    case 'C': {
      auto out = first_order;
      out.insert(out.end(), eliminations.begin(), eliminations.end());
      return out;
    }
    case 'D':
      return eliminations;
    default:
      throw std::invalid_argument(std::string("unknown experiment preset '") +
                                  tag + "' (expected A, B, C or D)");
  }
}

}  // namespace sobolopt
