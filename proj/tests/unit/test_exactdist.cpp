#include <doctest.h>

#include <chrono>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "pvlt/errors.hpp"
#include "pvlt/exactdist.hpp"
#include "pvlt/rng.hpp"

using namespace pvlt;

TEST_CASE("density matches high-precision sums") {
  for (const auto& p : oracle::ref::kDensity) {
    CAPTURE(p.x);
    CHECK(y1_density(p.x) == doctest::Approx(p.value).epsilon(1e-13));
    CHECK(y1_density(-p.x) == y1_density(p.x));
  }
  CHECK(y1_density(0.0) == doctest::Approx(std::sqrt(2.0 / (M_PI * M_PI * M_PI)) / 2.0).epsilon(1e-15));
}

TEST_CASE("density is continuous across the series switch") {
  const double below = y1_density(0.3 - 1e-12);
  const double above = y1_density(0.3 + 1e-12);
  CHECK(std::fabs(below - above) < 1e-12);
}

TEST_CASE("density integrates to one") {
  using Quad = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double half = Quad::integrate([](double x) { return y1_density(x); }, 0.0,
                                      std::numeric_limits<double>::infinity(), 20, 1e-14);
  CHECK(std::fabs(2.0 * half - 1.0) < 1e-8);
}

TEST_CASE("cdf matches quadrature of the density") {
  CHECK(std::fabs(y1_cdf(0.0) - 0.5) < 1e-12);
  for (const auto& p : oracle::ref::kCdf) {
    CAPTURE(p.x);
    CHECK(y1_cdf(p.x) == doctest::Approx(p.value).epsilon(1e-12));
    CHECK(y1_cdf(-p.x) == doctest::Approx(1.0 - p.value).epsilon(1e-12));
  }
  const auto f = [](double x) { return y1_density(x); };
  for (double z : {-7.0, -2.5, -0.31, -0.1, 0.05, 0.29, 0.3, 0.7, 1.5, 4.0, 9.0}) {
    CAPTURE(z);
    CHECK(std::fabs(y1_cdf(z) - oracle::cdf_by_quadrature(f, z)) < 1e-11);
  }
}

TEST_CASE("survival function keeps relative accuracy in the tail") {
  for (const auto& p : oracle::ref::kSurvival) {
    CAPTURE(p.x);
    CHECK(y1_sf(p.x) == doctest::Approx(p.value).epsilon(1e-9));
  }
  for (double z : {-3.0, 0.0, 0.2, 1.0, 2.5}) CHECK(y1_sf(z) + y1_cdf(z) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("cdf is the integral of the density") {
  for (double z : {0.4, 1.0, 3.0}) {
    const double h = 1e-4;
    CHECK((y1_cdf(z + h) - y1_cdf(z - h)) / (2 * h) == doctest::Approx(y1_density(z)).epsilon(1e-6));
  }
}

TEST_CASE("tail bound dominates the exact tail") {
  for (double z = 1.0; z <= 12.0; z += 0.25) {
    CAPTURE(z);
    CHECK(y1_tail_upper(z) == doctest::Approx(std::exp(-z * z / 8.0)));
    CHECK(y1_tail_upper(z) > y1_sf(z));
  }
  CHECK_THROWS_AS(y1_tail_upper(0.5), DomainError);
}

TEST_CASE("meander integral law, both forms") {
  for (const auto& p : oracle::ref::kMeanderIntegral) {
    CAPTURE(p.x);
    CHECK(std::fabs(meander_integral_cdf(p.x, MeanderForm::PolynomialGaussian) - p.value) < 1e-13);
    CHECK(std::fabs(meander_integral_cdf(p.x, MeanderForm::DualTheta) - p.value) < 1e-13);
    CHECK(std::fabs(meander_integral_cdf(p.x) - p.value) < 1e-13);
  }
  CHECK_THROWS_AS(meander_integral_cdf(0.0), DomainError);
}

TEST_CASE("the two meander forms agree and are fast") {
  const double zs[] = {0.5, 1.0, 2.0, 5.0, 10.0};
  for (double z : zs) {
    CAPTURE(z);
    CHECK(std::fabs(meander_integral_cdf(z, MeanderForm::PolynomialGaussian) -
                    meander_integral_cdf(z, MeanderForm::DualTheta)) < 1e-10);
  }
  for (auto form : {MeanderForm::PolynomialGaussian, MeanderForm::DualTheta}) {
    volatile double sink = 0.0;
    const auto t0 = std::chrono::steady_clock::now();
    for (int rep = 0; rep < 100; ++rep)
      for (double z : zs) sink = sink + meander_integral_cdf(z, form);
    const double per_point = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / 500.0;
    CHECK(per_point < 1e-3);
  }
}

TEST_CASE("meander endpoint, arcsine and cauchy-square laws") {
  CHECK(meander_endpoint_tail(0.0) == 1.0);
  CHECK(meander_endpoint_tail(2.0) == doctest::Approx(std::exp(-2.0)));
  CHECK_THROWS_AS(meander_endpoint_tail(-1.0), DomainError);

  CHECK(arcsine_cdf(0.0) == 0.0);
  CHECK(arcsine_cdf(1.0) == doctest::Approx(1.0));
  CHECK(arcsine_cdf(0.5) == doctest::Approx(0.5));
  CHECK(arcsine_cdf(0.25) == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(arcsine_cdf(1.5), DomainError);

  CHECK(eta_gap_cdf(1.0) == 0.0);
  CHECK(eta_gap_cdf(2.0) == doctest::Approx(0.5));
  CHECK(eta_gap_cdf(4.0) == doctest::Approx(2.0 / 3.0));
  CHECK_THROWS_AS(eta_gap_cdf(0.5), DomainError);
  CHECK(cauchy_square_cdf(1.0) == doctest::Approx(0.5));
  CHECK_THROWS_AS(cauchy_square_cdf(-1.0), DomainError);
}

TEST_CASE("gap law matches simulated 1 + tau^2") {
  NormalSource src(404);
  std::vector<double> gaps(20000);
  for (double& g : gaps) {
    // ratio of independent normals is standard Cauchy
    const double tau = src() / src();
    g = 1.0 + tau * tau;
  }
  CHECK(oracle::ks_distance(gaps, [](double x) { return eta_gap_cdf(x); }) < 0.015);
}
