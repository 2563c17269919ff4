#include "pvlt/mc.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>

#include <boost/math/distributions/normal.hpp>

namespace pvlt {

namespace {

constexpr double kSeriesTol = 1e-12;

std::vector<double> sorted_copy(std::span<const double> x) {
  std::vector<double> s(x.begin(), x.end());
  std::sort(s.begin(), s.end());
  return s;
}

// Pearson correlation of x[0..m) against y[0..m) given as raw pointers.
double pearson_raw(const double* x, const double* y, std::size_t m) {
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

double max_successive_corr(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t m = a.size() - 1;
  const double c1 = pearson_raw(a.data(), a.data() + 1, m);
  const double c2 = pearson_raw(b.data(), b.data() + 1, m);
  const double c3 = pearson_raw(a.data(), b.data() + 1, m);
  const double c4 = pearson_raw(b.data(), a.data() + 1, m);
  return std::max({std::fabs(c1), std::fabs(c2), std::fabs(c3), std::fabs(c4)});
}

std::uint64_t bounded(CounterEngine& eng, std::uint64_t bound) {
  const double u = static_cast<double>(eng() >> 11) * 0x1.0p-53;
  return std::min(bound - 1, static_cast<std::uint64_t>(u * static_cast<double>(bound)));
}

}  // namespace

TestResult check_below(std::string name, double statistic, double threshold) {
  return {std::move(name), statistic, threshold, std::numeric_limits<double>::quiet_NaN(), "<",
          statistic < threshold, false};
}

TestResult check_above(std::string name, double statistic, double threshold) {
  return {std::move(name), statistic, threshold, std::numeric_limits<double>::quiet_NaN(), ">",
          statistic > threshold, false};
}

TestResult check_within(std::string name, double statistic, double lo, double hi) {
  return {std::move(name), statistic, lo, hi, "in", statistic >= lo && statistic <= hi, false};
}

TestResult note(std::string name, double statistic) {
  return {std::move(name), statistic, std::numeric_limits<double>::quiet_NaN(),
          std::numeric_limits<double>::quiet_NaN(), "info", true, true};
}

EnsembleReport run_ensemble(const EnsembleSpec& spec,
                            const std::function<double(std::uint64_t seed)>& statistic) {
  if (spec.n_paths < 1) throw ArgumentError("n_paths must be >= 1");
  if (spec.workers < 1) throw ArgumentError("workers must be >= 1");
  if (spec.n_steps > 0 && spec.n_paths > spec.max_total_steps / spec.n_steps) {
    throw CapacityError("n_paths * n_steps exceeds the configured step budget");
  }
  const auto start = std::chrono::steady_clock::now();
  EnsembleReport r;
  r.master_seed = spec.master_seed;
  r.n_paths = spec.n_paths;
  r.n_steps = spec.n_steps;
  r.statistic_name = spec.statistic_name;
  r.samples = map_paths<double>(spec.n_paths, spec.master_seed, spec.workers,
                                [&](std::size_t, std::uint64_t seed) { return statistic(seed); });
  r.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

double kolmogorov_sf(double lambda) {
  if (!(lambda > 0.0)) return 1.0;
  if (lambda < 1.18) {
    // P(K <= l) = sqrt(2 pi) / l * sum_{k>=1} exp(-(2k-1)^2 pi^2 / (8 l^2))
    const double q = std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
    double sum = 0.0;
    for (int k = 1; k < 1000; ++k) {
      const double n = 2.0 * k - 1.0;
      const double term = std::exp(-n * n * q);
      sum += term;
      if (term < kSeriesTol) break;
    }
    return std::clamp(1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * sum, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int k = 1; k < 1000; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1) ? term : -term;
    if (term < kSeriesTol) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test(std::span<const double> samples, const std::function<double(double)>& cdf,
                 double upper) {
  if (samples.empty()) throw InsufficientData("KS test needs samples");
  const std::vector<double> s = sorted_copy(samples);
  const double n = static_cast<double>(s.size());
  double D = 0.0;
  std::size_t below = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!(s[i] < upper)) break;
    const double F = cdf(s[i]);
    D = std::max({D, F - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - F});
    below = i + 1;
  }
  if (std::isfinite(upper)) {
    D = std::max(D, std::fabs(cdf(upper) - static_cast<double>(below) / n));
  }
  return {D, kolmogorov_sf(std::sqrt(n) * D)};
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw InsufficientData("KS test needs samples");
  const std::vector<double> x = sorted_copy(a);
  const std::vector<double> y = sorted_copy(b);
  const double n = static_cast<double>(x.size());
  const double m = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double D = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    D = std::max(D, std::fabs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  return {D, kolmogorov_sf(std::sqrt(n * m / (n + m)) * D)};
}

std::pair<double, double> wilson_interval(std::size_t hits, std::size_t n, double zq) {
  if (n == 0) throw InsufficientData("Wilson interval needs n >= 1");
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(hits) / nn;
  const double z2 = zq * zq;
  const double denom = 1.0 + z2 / nn;
  const double centre = (p + z2 / (2.0 * nn)) / denom;
  const double half = zq / denom * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

BoundCheck bound_check(std::span<const double> samples, double z, double bound, Tail tail,
                       BoundSide side, double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw ArgumentError("confidence must lie in (0, 1)");
  }
  if (samples.empty()) throw InsufficientData("bound check needs samples");
  BoundCheck c;
  c.n = samples.size();
  for (double x : samples) {
    if (tail == Tail::AtLeast ? x >= z : x <= z) ++c.hits;
  }
  c.p_hat = static_cast<double>(c.hits) / static_cast<double>(c.n);
  const double zq = boost::math::quantile(boost::math::normal(), confidence);
  const auto [lo, hi] = wilson_interval(c.hits, c.n, zq);
  c.ci_low = lo;
  c.ci_high = hi;
  c.pass = side == BoundSide::Upper ? c.ci_low <= bound : c.ci_high >= bound;
  return c;
}

ShapeFit small_deviation_shape(const std::map<double, double>& p_by_z) {
  ShapeFit fit;
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& [z, p] : p_by_z) {
    if (!(z > 0.0)) throw ArgumentError("small-deviation grid needs z > 0");
    if (!(p > 0.0)) {
      fit.dropped_z.push_back(z);
      continue;
    }
    xs.push_back(-1.0 / (z * z));
    ys.push_back(std::log(p));
  }
  fit.n_points = xs.size();
  if (xs.size() < 4) throw InsufficientData("need at least 4 points with P > 0");
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw InsufficientData("all grid points coincide");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  const double sse = std::max(0.0, syy - fit.slope * sxy);
  fit.r_squared = syy == 0.0 ? 1.0 : 1.0 - sse / syy;
  const double se = std::sqrt(sse / (n - 2.0) / sxx);
  fit.slope_low = fit.slope - 1.96 * se;
  fit.slope_high = fit.slope + 1.96 * se;
  return fit;
}

std::map<double, double> empirical_below(std::span<const double> samples,
                                         std::span<const double> z_grid) {
  if (samples.empty()) throw InsufficientData("no samples");
  const std::vector<double> s = sorted_copy(samples);
  std::map<double, double> out;
  for (double z : z_grid) {
    const auto k = std::lower_bound(s.begin(), s.end(), z) - s.begin();
    out[z] = static_cast<double>(k) / static_cast<double>(s.size());
  }
  return out;
}

double quantile(std::span<const double> samples, double q) {
  if (samples.empty()) throw InsufficientData("quantile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw ArgumentError("quantile level must lie in [0, 1]");
  const std::vector<double> s = sorted_copy(samples);
  const double h = (static_cast<double>(s.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, s.size() - 1);
  return s[lo] + (h - static_cast<double>(lo)) * (s[hi] - s[lo]);
}

double median(std::span<const double> samples) { return quantile(samples, 0.5); }

double mean(std::span<const double> samples) {
  if (samples.empty()) throw InsufficientData("mean of an empty sample");
  return std::accumulate(samples.begin(), samples.end(), 0.0) /
         static_cast<double>(samples.size());
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ArgumentError("correlation needs equal lengths");
  if (x.size() < 2) throw InsufficientData("correlation needs two points");
  return pearson_raw(x.data(), y.data(), x.size());
}

std::vector<double> ranks(std::span<const double> x) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && x[idx[j + 1]] == x[idx[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ArgumentError("correlation needs equal lengths");
  const std::vector<double> rx = ranks(x);
  const std::vector<double> ry = ranks(y);
  return pearson(rx, ry);
}

PermutationResult successive_pair_independence(std::span<const double> a,
                                               std::span<const double> b,
                                               std::size_t n_permutations,
                                               std::uint64_t seed) {
  if (a.size() != b.size()) throw ArgumentError("pair components need equal lengths");
  if (a.size() < 4) throw InsufficientData("need at least 4 pairs");
  const std::vector<double> ra = ranks(a);
  const std::vector<double> rb = ranks(b);
  PermutationResult res;
  res.statistic = max_successive_corr(ra, rb);

  std::vector<std::size_t> order(a.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> pa(a.size());
  std::vector<double> pb(a.size());
  CounterEngine eng(seed);
  std::size_t at_least = 0;
  for (std::size_t k = 0; k < n_permutations; ++k) {
    for (std::size_t i = order.size() - 1; i > 0; --i) {
      std::swap(order[i], order[bounded(eng, i + 1)]);
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
      pa[i] = ra[order[i]];
      pb[i] = rb[order[i]];
    }
    if (max_successive_corr(pa, pb) >= res.statistic) ++at_least;
  }
  res.p = static_cast<double>(at_least + 1) / static_cast<double>(n_permutations + 1);
  return res;
}

TrendScan summarize_trend(const std::vector<std::vector<double>>& values,
                          std::span<const double> T_grid, double target) {
  if (values.empty()) throw InsufficientData("trend scan needs at least one path");
  if (!(target > 0.0)) throw ArgumentError("target constant must be positive");
  TrendScan scan;
  std::vector<double> column(values.size());
  for (std::size_t j = 0; j < T_grid.size(); ++j) {
    for (std::size_t p = 0; p < values.size(); ++p) {
      if (values[p].size() != T_grid.size()) throw ArgumentError("ragged trend matrix");
      column[p] = values[p][j] / target;
    }
    scan.points.push_back({T_grid[j], quantile(column, 0.05), median(column),
                           quantile(column, 0.95)});
  }
  scan.running_max.resize(values.size());
  for (std::size_t p = 0; p < values.size(); ++p) {
    double m = -std::numeric_limits<double>::infinity();
    for (double v : values[p]) m = std::max(m, v / target);
    scan.running_max[p] = m;
  }
  scan.running_max_q05 = quantile(scan.running_max, 0.05);
  scan.running_max_median = median(scan.running_max);
  scan.running_max_q95 = quantile(scan.running_max, 0.95);
  return scan;
}

TrendScan trend_scan(const TrendSpec& spec,
                     const std::function<std::vector<double>(std::uint64_t seed,
                                                             std::span<const double> T_grid)>& recipe) {
  if (spec.T_grid.empty()) throw ArgumentError("empty T grid");
  std::vector<double> norms;
  norms.reserve(spec.T_grid.size());
  for (double T : spec.T_grid) norms.push_back(spec.normalizer(T));
  auto values = map_paths<std::vector<double>>(
      spec.n_paths, spec.master_seed, spec.workers, [&](std::size_t, std::uint64_t seed) {
        std::vector<double> v = recipe(seed, spec.T_grid);
        if (v.size() != norms.size()) throw ArgumentError("recipe returned the wrong length");
        for (std::size_t j = 0; j < v.size(); ++j) v[j] /= norms[j];
        return v;
      });
  return summarize_trend(values, spec.T_grid, spec.target);
}

}  // namespace pvlt
