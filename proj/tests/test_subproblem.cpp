#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "sobolopt/subproblem.hpp"
#include "sobolopt/surrogate.hpp"
#include "sobolopt/testbed.hpp"

using namespace sobolopt;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<double> random_point(std::mt19937& gen, int d) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> x(d);
  for (double& v : x) v = u(gen);
  return x;
}

}  // namespace

TEST_CASE("empty history leaves the constant coefficient free", "[subproblem]") {
  const BasisConfig cfg{3, 4};
  const History h(3);
  for (char tag : {'A', 'D'}) {
    const auto cc = compile(experiment_preset(tag), cfg);
    const auto lb = lower_bound(std::vector<double>{0.1, -0.4, 0.8}, h, cc, cfg);
    CHECK(lb.status == QcqpStatus::Unbounded);
    CHECK(lb.value == -std::numeric_limits<double>::infinity());
  }
}

TEST_CASE("single-point history pins its own value", "[subproblem]") {
  const BasisConfig cfg{2, 3};
  const auto cc = compile(std::vector<SobolConstraint>{}, cfg);
  History h(2);
  const std::vector<double> x0{0.3, -0.6};
  h.add(x0, 1.75);
  const auto lb = lower_bound(x0, h, cc, cfg);
  REQUIRE(lb.status == QcqpStatus::Optimal);
  CHECK_THAT(lb.value, WithinAbs(1.75, 1e-6));
}

TEST_CASE("one-dimensional affine class has a closed-form bound", "[subproblem]") {
  // degree-1 class with unit variance ball: m(x) = y0 - sqrt(3)|x - x0|
  const BasisConfig cfg{1, 1};
  const auto cc = compile(std::vector<SobolConstraint>{}, cfg);
  History h(1);
  const double x0 = 0.25, y0 = 0.5;
  h.add(std::vector<double>{x0}, y0);

  for (double x : {-0.9, -0.3, 0.25, 0.6, 1.0}) {
    const auto lb = lower_bound(std::vector<double>{x}, h, cc, cfg);
    REQUIRE(lb.status == QcqpStatus::Optimal);
    CHECK_THAT(lb.value, WithinAbs(y0 - std::sqrt(3.0) * std::abs(x - x0), 1e-6));
  }
  CHECK(is_improving(std::vector<double>{0.9}, h, cc, cfg));
  CHECK_FALSE(is_improving(std::vector<double>{x0}, h, cc, cfg));
}

TEST_CASE("history points are pinned under benchmark constraints", "[subproblem]") {
  const BasisConfig cfg{3, 4};
  const auto cc = compile(experiment_preset('B'), cfg);
  std::mt19937 gen(42);
  History h(3);
  for (int i = 0; i < 5; ++i) {
    const auto x = random_point(gen, 3);
    h.add(x, rosenbrock3_scaled(x));
  }
  for (std::size_t j = 0; j < h.size(); ++j) {
    const auto lb = lower_bound(h.point(j), h, cc, cfg);
    REQUIRE(lb.status == QcqpStatus::Optimal);
    CHECK_THAT(lb.value, WithinAbs(h.value(j), 1e-6));
  }
}

TEST_CASE("tighter constraint sets raise the bound", "[subproblem]") {
  const BasisConfig cfg{3, 4};
  const auto loose = compile(experiment_preset('A'), cfg);
  const auto mid = compile(experiment_preset('B'), cfg);
  const auto tight = compile(experiment_preset('C'), cfg);  // B plus eliminations

  std::mt19937 gen(7);
  History h(3);
  for (int i = 0; i < 6; ++i) {
    const auto x = random_point(gen, 3);
    h.add(x, rosenbrock3_scaled(x));
  }
  for (int rep = 0; rep < 10; ++rep) {
    const auto x = random_point(gen, 3);
    const double ma = lower_bound(x, h, loose, cfg).value;
    const double mb = lower_bound(x, h, mid, cfg).value;
    const double mc = lower_bound(x, h, tight, cfg).value;
    CHECK(mb >= ma - 1e-6);
    CHECK(mc >= mb - 1e-6);
  }
}

TEST_CASE("appending evaluations never lowers the bound", "[subproblem]") {
  const BasisConfig cfg{3, 3};
  const auto cc = compile(experiment_preset('B'), cfg);
  std::mt19937 gen(99);
  const auto query = random_point(gen, 3);

  Certifier cert(cfg, cc);
  double prev = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 8; ++i) {
    const auto x = random_point(gen, 3);
    cert.add_point(x, rosenbrock3_scaled(x));
    const auto lb = cert.lower_bound(query);
    if (lb.status == QcqpStatus::Infeasible) break;  // class exhausted
    CHECK(lb.value >= prev - 1e-6);
    prev = lb.value;
  }
}

TEST_CASE("bound is sound for every class member", "[subproblem]") {
  // f itself drawn from the constrained class: m(x) <= f(x) everywhere
  const BasisConfig cfg{3, 3};
  const auto cc = compile(std::vector<SobolConstraint>{}, cfg);
  std::mt19937 gen(1234);
  std::normal_distribution<double> gauss(0.0, 1.0);

  CoeffVector cv{cfg, Eigen::VectorXd(static_cast<Eigen::Index>(cfg.basis_size()))};
  for (Eigen::Index p = 0; p < cv.a.size(); ++p) cv.a[p] = gauss(gen);
  cv.a *= 0.9 / std::sqrt(variance(cv));  // variance 0.81, strictly inside
  auto f = [&](std::span<const double> x) { return eval_surrogate(cv, x); };

  Certifier cert(cfg, cc);
  for (int i = 0; i < 6; ++i) {
    const auto x = random_point(gen, 3);
    cert.add_point(x, f(x));
  }
  for (int rep = 0; rep < 20; ++rep) {
    const auto x = random_point(gen, 3);
    const auto lb = cert.lower_bound(x);
    REQUIRE(lb.status == QcqpStatus::Optimal);
    CHECK(lb.value <= f(x) + 1e-6);
  }
  // and the history values themselves are reproduced
  for (std::size_t j = 0; j < cert.history().size(); ++j) {
    const auto lb = cert.lower_bound(cert.history().point(j));
    CHECK_THAT(lb.value, WithinAbs(cert.history().value(j), 1e-6));
  }
}

TEST_CASE("histories outside the class are infeasible", "[subproblem]") {
  const BasisConfig cfg{1, 1};
  const auto cc = compile(std::vector<SobolConstraint>{}, cfg);

  // a line of slope 10 needs a coefficient far outside the variance ball
  History steep(1);
  steep.add(std::vector<double>{0.0}, 0.0);
  steep.add(std::vector<double>{0.5}, 5.0 * std::sqrt(3.0));
  CHECK(lower_bound(std::vector<double>{0.8}, steep, cc, cfg).status ==
        QcqpStatus::Infeasible);
  CHECK_FALSE(is_improving(std::vector<double>{0.8}, steep, cc, cfg));

  // three points no affine function interpolates
  History bent(1);
  bent.add(std::vector<double>{-0.5}, 0.0);
  bent.add(std::vector<double>{0.0}, 1.0);
  bent.add(std::vector<double>{0.5}, 0.0);
  CHECK(lower_bound(std::vector<double>{0.8}, bent, cc, cfg).status ==
        QcqpStatus::Infeasible);
}

TEST_CASE("pinning holds at a point whose value exceeds the incumbent", "[subproblem]") {
  const BasisConfig cfg{2, 2};
  const auto cc = compile(std::vector<SobolConstraint>{}, cfg);
  History h(2);
  h.add(std::vector<double>{0.1, 0.1}, 0.2);   // incumbent
  h.add(std::vector<double>{-0.5, 0.4}, 0.9);  // worse point
  CHECK_FALSE(is_improving(std::vector<double>{-0.5, 0.4}, h, cc, cfg));
}

TEST_CASE("cached certifier agrees with one-shot solves", "[subproblem]") {
  const BasisConfig cfg{3, 2};
  const auto cc = compile(experiment_preset('B'), cfg);
  std::mt19937 gen(88);

  Certifier cert(cfg, cc);
  History h(3);
  for (int i = 0; i < 4; ++i) {
    const auto x = random_point(gen, 3);
    const double y = rosenbrock3_scaled(x);
    cert.add_point(x, y);
    h.add(x, y);
  }
  for (int rep = 0; rep < 5; ++rep) {
    const auto x = random_point(gen, 3);
    const auto a = cert.lower_bound(x);
    const auto b = lower_bound(x, h, cc, cfg);
    CHECK(a.status == b.status);
    CHECK_THAT(a.value, WithinAbs(b.value, 1e-9));
  }
}

TEST_CASE("history bookkeeping", "[subproblem]") {
  History h(2);
  CHECK(h.empty());
  CHECK(h.best() == std::numeric_limits<double>::infinity());
  h.add(std::vector<double>{0.0, 0.0}, 3.0);
  h.add(std::vector<double>{0.5, 0.5}, 1.0);
  h.add(std::vector<double>{-0.5, 0.5}, 2.0);
  CHECK(h.size() == 3);
  CHECK(h.best() == 1.0);

  CHECK_THROWS_AS(h.add(std::vector<double>{0.0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(h.add(std::vector<double>{2.0, 0.0}, 0.0), std::domain_error);
  CHECK_THROWS_AS(
      h.add(std::vector<double>{0.0, 0.0}, std::numeric_limits<double>::infinity()),
      std::invalid_argument);
  CHECK_THROWS_AS(is_improving(std::vector<double>{0.0, 0.0}, History(2),
                               compile(std::vector<SobolConstraint>{}, BasisConfig{2, 1}),
                               BasisConfig{2, 1}),
                  std::invalid_argument);
}
