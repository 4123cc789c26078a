#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "sobolopt/surrogate.hpp"

using namespace sobolopt;
using Catch::Matchers::WithinAbs;

namespace {

CoeffVector zeros(const BasisConfig& cfg) {
  return {cfg, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(cfg.basis_size()))};
}

// coefficient at a given multi-index
void set_coeff(CoeffVector& cv, const BasisIndex& k, double value) {
  const auto all = enumerate_basis(cv.cfg);
  for (std::size_t p = 0; p < all.size(); ++p)
    if (all[p] == k) {
      cv.a[static_cast<Eigen::Index>(p)] = value;
      return;
    }
  FAIL("multi-index not in basis");
}

}  // namespace

TEST_CASE("surrogate point values", "[surrogate]") {
  const BasisConfig cfg{3, 2};
  auto cv = zeros(cfg);
  cv.a[0] = 2.5;
  CHECK_THAT(eval_surrogate(cv, std::vector<double>{0.1, -0.2, 0.9}),
             WithinAbs(2.5, 1e-15));

  cv = zeros(cfg);
  set_coeff(cv, {1, 0, 0}, 1.0);
  CHECK_THAT(eval_surrogate(cv, std::vector<double>{0.5, -1.0, 1.0}),
             WithinAbs(0.8660254037844386, 1e-14));

  cv = zeros(cfg);
  cv.a[0] = 1.0;
  set_coeff(cv, {2, 0, 0}, 1.0);
  CHECK_THAT(eval_surrogate(cv, std::vector<double>{1.0, 0.3, -0.7}),
             WithinAbs(3.2360679774997898, 1e-14));
}

TEST_CASE("variance is the energy of non-constant coefficients", "[surrogate]") {
  const BasisConfig cfg{3, 2};
  auto cv = zeros(cfg);
  CHECK(variance(cv) == 0.0);
  cv.a[0] = 42.0;  // constant shift carries no variance
  CHECK(variance(cv) == 0.0);

  set_coeff(cv, {1, 0, 0}, 0.6);
  set_coeff(cv, {0, 1, 0}, 0.8);
  CHECK_THAT(variance(cv), WithinAbs(1.0, 1e-15));
}

TEST_CASE("variance matches a Monte-Carlo oracle", "[surrogate]") {
  const BasisConfig cfg{3, 3};
  std::mt19937 gen(7011);
  std::normal_distribution<double> gauss(0.0, 1.0);
  CoeffVector cv = zeros(cfg);
  const auto all = enumerate_basis(cfg);
  for (std::size_t p = 0; p < all.size(); ++p) {
    int total = 0;
    for (int deg : all[p]) total += deg;
    cv.a[static_cast<Eigen::Index>(p)] = gauss(gen) * std::pow(0.5, total);
  }

  constexpr int kSamples = 1 << 16;
  std::uniform_real_distribution<double> ux(-1.0, 1.0);
  std::vector<double> f(kSamples);
  double mean = 0.0;
  for (int s = 0; s < kSamples; ++s) {
    const std::vector<double> x{ux(gen), ux(gen), ux(gen)};
    f[s] = eval_surrogate(cv, x);
    mean += f[s];
  }
  mean /= kSamples;
  double m2 = 0.0, m4 = 0.0;
  for (double v : f) {
    const double c = v - mean;
    m2 += c * c;
    m4 += c * c * c * c;
  }
  m2 /= kSamples - 1;
  m4 /= kSamples;
  // 3 standard errors of the sample variance
  const double se = std::sqrt((m4 - m2 * m2) / kSamples);
  CHECK_THAT(variance(cv), WithinAbs(m2, 3.0 * se));
}

TEST_CASE("closed Sobol indices from coefficients", "[surrogate]") {
  const BasisConfig cfg{3, 2};
  const SupportMap sm(cfg);

  auto cv = zeros(cfg);
  set_coeff(cv, {1, 0, 0}, -3.0);
  CHECK_THAT(sobol_index(cv, make_subset({1}, 3), sm), WithinAbs(1.0, 1e-15));

  cv = zeros(cfg);
  set_coeff(cv, {1, 0, 0}, 0.6);
  set_coeff(cv, {0, 1, 0}, 0.8);
  CHECK_THAT(sobol_index(cv, make_subset({1}, 3), sm), WithinAbs(0.36, 1e-14));
  CHECK_THAT(sobol_index(cv, make_subset({2}, 3), sm), WithinAbs(0.64, 1e-14));

  cv = zeros(cfg);
  set_coeff(cv, {1, 1, 0}, 1.0);  // pure interaction: no first-order share
  CHECK_THAT(sobol_index(cv, make_subset({1}, 3), sm), WithinAbs(0.0, 1e-15));
  CHECK_THAT(sobol_index(cv, make_subset({1, 2}, 3), sm), WithinAbs(1.0, 1e-15));
}

TEST_CASE("group energy sums squared coefficients by support", "[surrogate]") {
  const BasisConfig cfg{3, 2};
  const SupportMap sm(cfg);
  auto cv = zeros(cfg);
  set_coeff(cv, {1, 0, 0}, 0.6);
  set_coeff(cv, {0, 1, 0}, 0.8);

  const std::vector<VarSubset> both{make_subset({1}, 3), make_subset({2}, 3)};
  CHECK_THAT(group_energy(cv, both, sm), WithinAbs(1.0, 1e-15));
  CHECK(group_energy(cv, std::vector<VarSubset>{}, sm) == 0.0);

  cv = zeros(cfg);
  set_coeff(cv, {1, 1, 0}, 0.5);
  const std::vector<VarSubset> pair{make_subset({1, 2}, 3)};
  CHECK_THAT(group_energy(cv, pair, sm), WithinAbs(0.25, 1e-15));
}

TEST_CASE("Sobol indices partition the variance", "[surrogate]") {
  const BasisConfig cfg{3, 3};
  const SupportMap sm(cfg);
  std::mt19937 gen(515);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int rep = 0; rep < 10; ++rep) {
    CoeffVector cv = zeros(cfg);
    for (Eigen::Index p = 0; p < cv.a.size(); ++p) cv.a[p] = gauss(gen);
    double total = 0.0;
    for (VarSubset u = 1; u < (VarSubset{1} << 3); ++u)
      total += sobol_index(cv, u, sm);
    CHECK_THAT(total, WithinAbs(1.0, 1e-10));
  }
}

TEST_CASE("evaluation is linear in the coefficients", "[surrogate]") {
  const BasisConfig cfg{2, 3};
  std::mt19937 gen(99);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> ux(-1.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    CoeffVector a = zeros(cfg), b = zeros(cfg), mix = zeros(cfg);
    for (Eigen::Index p = 0; p < a.a.size(); ++p) {
      a.a[p] = gauss(gen);
      b.a[p] = gauss(gen);
    }
    const double alpha = gauss(gen), beta = gauss(gen);
    mix.a = alpha * a.a + beta * b.a;
    const std::vector<double> x{ux(gen), ux(gen)};
    CHECK_THAT(eval_surrogate(mix, x),
               WithinAbs(alpha * eval_surrogate(a, x) + beta * eval_surrogate(b, x),
                         1e-12));
  }
}

TEST_CASE("degenerate and malformed inputs are rejected", "[surrogate]") {
  const BasisConfig cfg{3, 2};
  auto cv = zeros(cfg);
  CHECK_THROWS_AS(sobol_index(cv, make_subset({1}, 3)), std::domain_error);
  CHECK_THROWS_AS(sobol_index(cv, VarSubset{0}), std::invalid_argument);

  CoeffVector bad{cfg, Eigen::VectorXd::Zero(5)};
  CHECK_THROWS_AS(variance(bad), std::invalid_argument);
}
