#pragma once

#include <cstddef>

namespace pvlt {

/// Truncation controls for the theta-like series below.
struct PVSeriesSpec {
  double abs_tol = 1e-12;          ///< stop once the next term bound is below this
  std::size_t max_terms = 1'000'000;
};

/// Density of Y(1):
///   sqrt(2/pi^3) * sum_{k>=0} (-1)^k exp(-(2k+1)^2 x^2 / 8).
/// For |x| < 0.3 the slowly convergent alternating sum is replaced by its
/// small-argument expansion in s = x^2/8,
///   sum_k (-1)^k e^{-(2k+1)^2 s} = 1/2 * sum_m |E_{2m}| s^m / m!   (E = Euler numbers),
/// whose remainder is O(exp(-pi^2/(2 x^2))). At x = 0 this gives the Abel
/// limit sqrt(2/pi^3)/2.
double y1_density(double x, const PVSeriesSpec& spec = {});

/// P(Y(1) <= z), by termwise Gaussian integration of the density series.
double y1_cdf(double z, const PVSeriesSpec& spec = {});

/// P(Y(1) > z) without the cancellation of 1 - y1_cdf for large z.
double y1_sf(double z, const PVSeriesSpec& spec = {});

/// Upper tail bound exp(-z^2/8); stated for z >= 1 (DomainError otherwise).
double y1_tail_upper(double z);

enum class MeanderForm { PolynomialGaussian, DualTheta, Auto };

/// P(int_0^1 dv/m(v) < z | m(1) = 0) for the Brownian meander m.
///   PolynomialGaussian: sum_{k in Z} (1 - k^2 z^2) exp(-k^2 z^2 / 2)
///   DualTheta:          8 pi^2 sqrt(2 pi) / z^3 * sum_{k>=1} k^2 exp(-2 k^2 pi^2 / z^2)
/// The two are Poisson-dual. Auto picks DualTheta below z = 2.
double meander_integral_cdf(double z, MeanderForm form = MeanderForm::Auto,
                            const PVSeriesSpec& spec = {});

/// P(m(1) > x) = exp(-x^2/2), x >= 0.
double meander_endpoint_tail(double x);

/// Arcsine law of the last zero: (2/pi) asin(sqrt(u)), u in [0, 1].
double arcsine_cdf(double u);

/// CDF of 1 + tau^2, tau standard Cauchy: (2/pi) atan(sqrt(x - 1)), x >= 1.
double eta_gap_cdf(double x);

/// CDF of tau^2, tau standard Cauchy: (2/pi) atan(sqrt(x)), x >= 0.
double cauchy_square_cdf(double x);

}  // namespace pvlt
