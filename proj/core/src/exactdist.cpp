#include "pvlt/exactdist.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "pvlt/errors.hpp"

namespace pvlt {

namespace {

using std::numbers::pi;

// sqrt(2 / pi^3)
const double kDensityScale = std::sqrt(2.0 / (pi * pi * pi));

// Below this |x| the density and CDF use the small-argument expansion.
constexpr double kSmallArgument = 0.3;

// |E_{2m}| / (2 m!) for m = 0..31.
constexpr std::array<double, 32> kEulerCoefficients = {
    5.0e-1,
    5.0e-1,
    1.25,
    5.0833333333333333,
    2.8854166666666667e1,
    2.1050416666666667e2,
    1.8769201388888889e3,
    1.9777875099206349e4,
    2.4047014068700397e5,
    3.3136018455701609e6,
    5.1032185328142223e7,
    8.6866775885263725e8,
    1.6194657975627938e10,
    3.2817238295503396e11,
    7.1821758844226455e12,
    1.6882792232302251e14,
    4.2422495405680406e15,
    1.1347505261572063e17,
    3.219279460572384e18,
    9.6549636804515538e19,
    3.0521473261566558e21,
    1.014330749537323e23,
    3.535397809889178e24,
    1.2895584866802006e26,
    4.9128006684668881e27,
    1.9512614526134987e29,
    8.0663280949582561e30,
    3.4653092193693236e32,
    1.5448806198901037e34,
    7.1377284644978457e35,
    3.4135186156712913e37,
    1.6878053230418512e39,
};

// sum_k (-1)^k exp(-(2k+1)^2 s) for small s.
double alternating_theta_small(double s, double tol) {
  double sum = 0.0;
  double power = 1.0;
  for (double c : kEulerCoefficients) {
    const double term = c * power;
    sum += term;
    if (term < tol) break;
    power *= s;
  }
  return sum;
}

// int_0^z of the density for |z| < kSmallArgument (z >= 0).
double density_integral_small(double z, double tol) {
  const double s = z * z / 8.0;
  double sum = 0.0;
  double power = z;  // z^{2m+1} / 8^m
  for (std::size_t m = 0; m < kEulerCoefficients.size(); ++m) {
    const double term = kEulerCoefficients[m] * power / static_cast<double>(2 * m + 1);
    sum += term;
    if (term < tol) break;
    power *= s;
  }
  return kDensityScale * sum;
}

}  // namespace

double y1_density(double x, const PVSeriesSpec& spec) {
  const double ax = std::fabs(x);
  if (!std::isfinite(ax)) return 0.0;
  if (ax < kSmallArgument) {
    return kDensityScale * alternating_theta_small(ax * ax / 8.0, spec.abs_tol);
  }
  const double s = ax * ax / 8.0;
  double sum = 0.0;
  for (std::size_t k = 0; k < spec.max_terms; ++k) {
    const double n = static_cast<double>(2 * k + 1);
    const double term = std::exp(-n * n * s);
    sum += (k % 2 == 0) ? term : -term;
    if (term < spec.abs_tol) break;
  }
  return kDensityScale * sum;
}

double y1_sf(double z, const PVSeriesSpec& spec) {
  if (std::isnan(z)) return z;
  if (z < 0.0) return 1.0 - y1_sf(-z, spec);
  if (z < kSmallArgument) return 0.5 - density_integral_small(z, spec.abs_tol);
  // P(Y >= z) = (2/pi) sum_k (-1)^k erfc((2k+1) z / (2 sqrt 2)) / (2k+1)
  const double scale = z / (2.0 * std::numbers::sqrt2);
  double sum = 0.0;
  for (std::size_t k = 0; k < spec.max_terms; ++k) {
    const double n = static_cast<double>(2 * k + 1);
    const double term = std::erfc(n * scale) / n;
    sum += (k % 2 == 0) ? term : -term;
    if (term < spec.abs_tol) break;
  }
  return std::clamp(2.0 / pi * sum, 0.0, 1.0);
}

double y1_cdf(double z, const PVSeriesSpec& spec) {
  if (z == 0.0) return 0.5;
  if (std::fabs(z) < kSmallArgument) {
    const double half = density_integral_small(std::fabs(z), spec.abs_tol);
    return z > 0.0 ? 0.5 + half : 0.5 - half;
  }
  return z > 0.0 ? 1.0 - y1_sf(z, spec) : y1_sf(-z, spec);
}

double y1_tail_upper(double z) {
  if (!(z >= 1.0)) throw DomainError("tail bound exp(-z^2/8) is stated for z >= 1");
  return std::exp(-z * z / 8.0);
}

double meander_integral_cdf(double z, MeanderForm form, const PVSeriesSpec& spec) {
  if (!(z > 0.0)) throw DomainError("meander integral CDF needs z > 0");
  if (std::isinf(z)) return 1.0;
  if (form == MeanderForm::Auto) {
    form = z < 2.0 ? MeanderForm::DualTheta : MeanderForm::PolynomialGaussian;
  }
  double value = 0.0;
  if (form == MeanderForm::PolynomialGaussian) {
    // 1 + 2 sum_{k>=1} (1 - k^2 z^2) e^{-k^2 z^2 / 2}; the term bound
    // (1 + u) e^{-u/2} decreases once u = k^2 z^2 > 1.
    double sum = 0.0;
    for (std::size_t k = 1; k <= spec.max_terms; ++k) {
      const double u = static_cast<double>(k * k) * z * z;
      const double e = std::exp(-u / 2.0);
      sum += (1.0 - u) * e;
      if (u > 1.0 && 2.0 * (1.0 + u) * e < spec.abs_tol) break;
    }
    value = 1.0 + 2.0 * sum;
  } else {
    // (8 pi^2 sqrt(2 pi) / z^3) sum_{k>=1} k^2 e^{-q k^2}, q = 2 pi^2 / z^2;
    // terms decrease once k^2 q > 1.
    const double q = 2.0 * pi * pi / (z * z);
    const double prefactor = 8.0 * pi * pi * std::sqrt(2.0 * pi) / (z * z * z);
    double sum = 0.0;
    for (std::size_t k = 1; k <= spec.max_terms; ++k) {
      const double k2 = static_cast<double>(k * k);
      const double term = k2 * std::exp(-q * k2);
      sum += term;
      if (k2 * q > 1.0 && prefactor * term < spec.abs_tol) break;
    }
    value = prefactor * sum;
  }
  return std::clamp(value, 0.0, 1.0);
}

double meander_endpoint_tail(double x) {
  if (!(x >= 0.0)) throw DomainError("meander endpoint tail needs x >= 0");
  return std::exp(-x * x / 2.0);
}

double arcsine_cdf(double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw DomainError("arcsine CDF needs u in [0, 1]");
  return 2.0 / pi * std::asin(std::sqrt(u));
}

double eta_gap_cdf(double x) {
  if (!(x >= 1.0)) throw DomainError("gap CDF needs x >= 1");
  if (std::isinf(x)) return 1.0;
  return 2.0 / pi * std::atan(std::sqrt(x - 1.0));
}

double cauchy_square_cdf(double x) {
  if (!(x >= 0.0)) throw DomainError("CDF of tau^2 needs x >= 0");
  if (std::isinf(x)) return 1.0;
  return 2.0 / pi * std::atan(std::sqrt(x));
}

}  // namespace pvlt
