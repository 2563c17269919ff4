#pragma once

// Independent reference implementations and constants for the tests. Nothing
// here calls into the library code it is used to check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace oracle {

// Values computed with mpmath at 25-40 significant digits.
namespace ref {

struct Point {
  double x;
  double value;
};

// sqrt(2/pi^3) sum_k (-1)^k exp(-(2k+1)^2 x^2 / 8), direct summation.
inline constexpr Point kDensity[] = {
    {0.0, 0.12698727186848193957},  {0.05, 0.12702698643316213893},
    {0.1, 0.1271465045419616039},   {0.2, 0.12763031106705129634},
    {0.29, 0.12835890678616061391}, {0.3, 0.128458024576357768},
    {0.31, 0.12856092268135104048}, {0.5, 0.131314331622429225},
    {1.0, 0.152291688697324576},    {2.0, 0.151222891705043874},
    {4.0, 0.0343717129435043278},   {8.0, 0.0000851989678623433324},
};

// 1/2 + adaptive quadrature of the density.
inline constexpr Point kCdf[] = {
    {0.5, 0.564189330475628863}, {1.0, 0.633972217953267015}, {2.0, 0.798566698237889937},
    {3.0, 0.914939871488661478}, {5.0, 0.992093608547664611},
};

inline constexpr Point kSurvival[] = {
    {6.0, 0.00171874355523159375},
    {10.0, 3.64976116877083619e-7},
};

// sum_{k in Z} (1 - k^2 z^2) exp(-k^2 z^2 / 2).
inline constexpr Point kMeanderIntegral[] = {
    {0.5, 8.11057816004615203e-32}, {1.0, 5.29480788134443176e-7},
    {2.0, 0.177923355643070679},    {5.0, 0.999821120647740224},
    {10.0, 1.0},
};

// 2 sum_{k>=1} (-1)^(k-1) exp(-2 k^2 l^2).
inline constexpr Point kKolmogorovSf[] = {
    {0.5, 0.963945243664875094},
    {1.0, 0.269999671677354521},
    {1.36, 0.0494858767553778836},
    {2.0, 0.000670925255779695347},
};

}  // namespace ref

/// Reference splitmix64 step: state += gamma, then the finalizer.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// 1/2 + int_0^z f for a symmetric density f.
inline double cdf_by_quadrature(const std::function<double(double)>& f, double z) {
  using Quad = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double half = Quad::integrate(f, 0.0, std::fabs(z), 20, 1e-14);
  return z >= 0.0 ? 0.5 + half : 0.5 - half;
}

// ---------------------------------------------------------------- window statistics, O(n^2)

inline double sup_sup(std::span<const double> y, std::size_t n, std::size_t w) {
  double best = 0.0;
  for (std::size_t t = 0; t + w <= n; ++t)
    for (std::size_t s = 0; s <= w; ++s) best = std::max(best, std::fabs(y[t + s] - y[t]));
  return best;
}

inline double one_sided_sup(std::span<const double> y, std::size_t n, std::size_t w) {
  double best = 0.0;
  for (std::size_t t = 0; t + w <= n; ++t)
    for (std::size_t s = 0; s <= w; ++s) best = std::max(best, y[t + s] - y[t]);
  return best;
}

inline double one_sided_inf(std::span<const double> y, std::size_t n, std::size_t w) {
  double best = 0.0;
  for (std::size_t t = 0; t + w <= n; ++t)
    for (std::size_t s = 0; s <= w; ++s) best = std::min(best, y[t + s] - y[t]);
  return best;
}

inline double inf_sup(std::span<const double> y, std::size_t n, std::size_t w) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t + w <= n; ++t) {
    double inner = 0.0;
    for (std::size_t s = 0; s <= w; ++s) inner = std::max(inner, std::fabs(y[t + s] - y[t]));
    best = std::min(best, inner);
  }
  return best;
}

inline double lag_sup(std::span<const double> y, std::size_t n, std::size_t w) {
  double best = 0.0;
  for (std::size_t k = w; k <= n; ++k) best = std::max(best, std::fabs(y[k] - y[k - w]));
  return best;
}

// ---------------------------------------------------------------- goodness of fit

/// sup |F_n - F| by checking both sides of every jump.
inline double ks_distance(std::vector<double> x, const std::function<double(double)>& cdf) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

/// sup over every sample point of |F_a - F_b|, counting with <=.
inline double ks_two_sample_distance(std::span<const double> a, std::span<const double> b) {
  auto ecdf = [](std::span<const double> s, double x) {
    return static_cast<double>(std::count_if(s.begin(), s.end(), [x](double v) { return v <= x; })) /
           static_cast<double>(s.size());
  };
  double d = 0.0;
  for (double x : a) d = std::max(d, std::fabs(ecdf(a, x) - ecdf(b, x)));
  for (double x : b) d = std::max(d, std::fabs(ecdf(a, x) - ecdf(b, x)));
  return d;
}

/// Two-sided Wilson score interval.
inline std::pair<double, double> wilson(double hits, double n, double z) {
  const double p = hits / n;
  const double denom = 1.0 + z * z / n;
  const double centre = (p + z * z / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
  return {centre - half, centre + half};
}

/// Riemann sum of dt / w over grid points with w != 0 and |w| >= eps.
inline std::vector<double> riemann(std::span<const double> w, double dt, double eps) {
  std::vector<double> y(w.size(), 0.0);
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    y[i + 1] = y[i] + ((w[i] != 0.0 && std::fabs(w[i]) >= eps) ? dt / w[i] : 0.0);
  }
  return y;
}

}  // namespace oracle
