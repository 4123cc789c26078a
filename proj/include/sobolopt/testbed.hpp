// Benchmark objectives on the canonical box [-1,1]^d and the affine map
// between a user box and the canonical one.
#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sobolopt/legendre.hpp"

namespace sobolopt {

using Objective = std::function<double(std::span<const double>)>;

/// Componentwise affine bijection between a box [lo, hi] and [-1,1]^d.
struct AffineBox {
  std::vector<double> lo, hi;

  AffineBox(std::vector<double> lo_, std::vector<double> hi_)
      : lo(std::move(lo_)), hi(std::move(hi_)) {
    if (lo.size() != hi.size() || lo.empty())
      throw std::invalid_argument("AffineBox: lo and hi sizes differ or empty");
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (!(lo[i] < hi[i]))
        throw std::invalid_argument("AffineBox: requires lo < hi componentwise");
  }

  static AffineBox cube(int d, double lo, double hi) {
    return AffineBox(std::vector<double>(d, lo), std::vector<double>(d, hi));
  }

  int dim() const { return static_cast<int>(lo.size()); }

  /// Canonical u in [-1,1]^d to box coordinates.
  std::vector<double> to_box(std::span<const double> u) const {
    check(u);
    std::vector<double> x(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
      x[i] = lo[i] + 0.5 * (u[i] + 1.0) * (hi[i] - lo[i]);
    return x;
  }

  /// Box coordinates back to canonical.
  std::vector<double> to_canonical(std::span<const double> x) const {
    check(x);
    std::vector<double> u(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      u[i] = 2.0 * (x[i] - lo[i]) / (hi[i] - lo[i]) - 1.0;
    return u;
  }

 private:
  void check(std::span<const double> v) const {
    if (v.size() != lo.size())
      throw std::invalid_argument("AffineBox: dimension mismatch");
  }
};

/// Two-term 3D Rosenbrock on the box [-5,5]^3, scaled by 1/26000 so the
/// variance under the uniform measure stays below 1:
///   f(X) = (1/26000) sum_{m=1,2} [100 (X_{m+1} - X_m^2)^2 + (1 - X_m)^2].
/// Global minimum 0 at X = (1,1,1).
inline double rosenbrock3_box(std::span<const double> X) {
  if (X.size() != 3)
    throw std::invalid_argument("rosenbrock3_box: expects 3 coordinates");
  double s = 0.0;
  for (int m = 0; m < 2; ++m) {
    const double gap = X[m + 1] - X[m] * X[m];
    const double off = 1.0 - X[m];
    s += 100.0 * gap * gap + off * off;
  }
  return s / 26000.0;
}

/// The same objective over the canonical box: X = 5u. Minimum 0 at
/// u = (0.2, 0.2, 0.2).
inline double rosenbrock3_scaled(std::span<const double> u) {
  if (u.size() != 3)
    throw std::invalid_argument("rosenbrock3_scaled: expects 3 coordinates");
  for (double ui : u) detail::check_coordinate(ui);
  const double X[3] = {5.0 * u[0], 5.0 * u[1], 5.0 * u[2]};
  return rosenbrock3_box(std::span<const double>(X, 3));
}

/// An objective on its natural box plus the canonical-domain wrapper the
/// optimizer and estimators consume.
struct TestObjective {
  std::string id;
  int dim = 0;
  AffineBox natural_box{std::vector<double>{-1.0}, std::vector<double>{1.0}};
  Objective on_box;      // evaluates in box coordinates
  Objective canonical;   // evaluates on [-1,1]^d via natural_box
};

/// Registry of benchmark objectives with documented Sobol structure:
///   "add2"        f = sqrt(3) (u1 + u2)        S = (1/2, 1/2)
///   "x1only"      f = u1^2 (d = 2)             S = (1, 0)
///   "prod12"      f = 3 u1 u2                  S_1 = S_2 = 0, S_{1,2} = 1
///   "rosenbrock3" the scaled Rosenbrock above on [-5,5]^3
inline TestObjective make_objective(std::string_view id) {
  TestObjective t;
  t.id = std::string(id);
  auto expect_dim = [](std::span<const double> u, std::size_t d) {
    if (u.size() != d)
      throw std::invalid_argument("objective: wrong dimension");
    for (double ui : u) detail::check_coordinate(ui);
  };
  if (id == "add2") {
    t.dim = 2;
    t.natural_box = AffineBox::cube(2, -1.0, 1.0);
    t.on_box = [expect_dim](std::span<const double> u) {
      expect_dim(u, 2);
      return std::sqrt(3.0) * (u[0] + u[1]);
    };
  } else if (id == "x1only") {
    t.dim = 2;
    t.natural_box = AffineBox::cube(2, -1.0, 1.0);
    t.on_box = [expect_dim](std::span<const double> u) {
      expect_dim(u, 2);
      return u[0] * u[0];
    };
  } else if (id == "prod12") {
    t.dim = 2;
    t.natural_box = AffineBox::cube(2, -1.0, 1.0);
    t.on_box = [expect_dim](std::span<const double> u) {
      expect_dim(u, 2);
      return 3.0 * u[0] * u[1];
    };
  } else if (id == "rosenbrock3") {
    t.dim = 3;
    t.natural_box = AffineBox::cube(3, -5.0, 5.0);
    t.on_box = [](std::span<const double> X) { return rosenbrock3_box(X); };
  } else {
    throw std::invalid_argument("unknown objective id '" + std::string(id) +
                                "' (expected add2, x1only, prod12 or rosenbrock3)");
  }
  const AffineBox box = t.natural_box;
  const Objective raw = t.on_box;
  t.canonical = [box, raw](std::span<const double> u) {
    for (double ui : u) detail::check_coordinate(ui);
    return raw(box.to_box(u));
  };
  return t;
}

}  // namespace sobolopt
