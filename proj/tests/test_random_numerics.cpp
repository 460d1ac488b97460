#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "gpctest/normal.hpp"
#include "gpctest/quadrature.hpp"
#include "gpctest/random.hpp"
#include "oracles.hpp"

using namespace gpctest;
using Catch::Approx;

TEST_CASE("Rng is reproducible and substreams are distinct", "[random]") {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    REQUIRE(x == b());
    (void)c();
  }
  REQUIRE(Rng(42)() != Rng(43)());

  Rng s0 = Rng::substream(7, 0), s0_again = Rng::substream(7, 0), s1 = Rng::substream(7, 1);
  const auto first = s0();
  REQUIRE(first == s0_again());
  REQUIRE(first != s1());
}

TEST_CASE("uniform draws stay in the open unit interval and are uniform", "[random]") {
  Rng rng(1);
  std::vector<double> u(100000);
  for (double& x : u) {
    x = rng.uniform();
    REQUIRE(x > 0.0);
    REQUIRE(x < 1.0);
  }
  REQUIRE(oracle::ks_statistic(u, [](double x) { return x; }) < oracle::ks_critical_001(u.size()));
}

TEST_CASE("normal, exponential and gamma draws have the right laws", "[random]") {
  Rng rng(2);
  constexpr std::size_t n = 100000;
  std::vector<double> z(n), e(n);
  for (std::size_t i = 0; i < n; ++i) {
    z[i] = rng.normal();
    e[i] = rng.exponential();
  }
  REQUIRE(oracle::ks_statistic(z, [](double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }) <
          oracle::ks_critical_001(n));
  REQUIRE(oracle::ks_statistic(e, [](double x) { return 1.0 - std::exp(-x); }) < oracle::ks_critical_001(n));

  for (double shape : {0.3, 1.0, 2.5, 10.0}) {
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double g = rng.gamma(shape);
      REQUIRE(g >= 0.0);
      sum += g;
      sum_sq += g * g;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    // Mean and variance of Gamma(a, 1) are both a.
    CHECK(mean == Approx(shape).margin(5.0 * std::sqrt(shape / n)));
    CHECK(var == Approx(shape).epsilon(0.05));
  }
}

TEST_CASE("normal_cdf and normal_quantile", "[normal]") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(normal_cdf(1.959963984540054) == Approx(0.975).epsilon(1e-14));
  CHECK(normal_cdf(-3.0) == Approx(0.0013498980316300946).epsilon(1e-13));
  CHECK(normal_quantile(0.975) == Approx(1.959963984540054).epsilon(1e-12));
  CHECK(std::isinf(normal_quantile(0.0)));
  CHECK(std::isinf(normal_quantile(1.0)));
  for (double p : {1e-12, 1e-8, 1e-4, 0.01, 0.2, 0.5, 0.8, 0.99, 1.0 - 1e-4, 1.0 - 1e-8}) {
    CHECK(normal_cdf(normal_quantile(p)) == Approx(p).margin(1e-14).epsilon(1e-10));
  }
}

TEST_CASE("Gauss-Kronrod integrates smooth and peaked functions", "[quadrature]") {
  auto r = integrate_gauss_kronrod([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 1e-13);
  CHECK(r.converged);
  CHECK(r.value == Approx(2.0).epsilon(1e-13));

  r = integrate_gauss_kronrod([](double x) { return 1.0 / (1e-4 + x * x); }, -1.0, 1.0, 1e-10);
  CHECK(r.converged);
  CHECK(r.value == Approx(2.0 / 1e-2 * std::atan(1.0 / 1e-2)).epsilon(1e-10));

  r = integrate_gauss_kronrod([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-12);
  CHECK(r.value == Approx(2.0 / 3.0).epsilon(1e-11));
  CHECK(r.abs_error <= 1e-12);
}

TEST_CASE("Wynn epsilon accelerates an alternating series", "[quadrature]") {
  // 1 - 1/2 + 1/3 - ... = log 2; 20 terms alone are only good to ~2.5e-2.
  WynnEpsilon wynn;
  double partial = 0.0, extrapolated = 0.0;
  for (int i = 1; i <= 20; ++i) {
    partial += (i % 2 ? 1.0 : -1.0) / i;
    extrapolated = wynn.push(partial);
  }
  CHECK(std::abs(partial - std::numbers::ln2) > 1e-2);
  CHECK(extrapolated == Approx(std::numbers::ln2).margin(1e-12));
  CHECK(wynn.size() == 20);
}
