#include "pvlt/paths.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <string>

#include "pvlt/errors.hpp"
#include "pvlt/pv.hpp"
#include "pvlt/rng.hpp"

namespace pvlt {

namespace {

bool opposite_signs(double a, double b) noexcept {
  return (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0);
}

// Root of the linear interpolant on [t_k, t_{k+1}] when the endpoints straddle zero.
double crossing_time(const SamplePath& path, std::size_t k) noexcept {
  const double a = path[k];
  const double b = path[k + 1];
  const double t = path.time(k) + path.dt() * (a / (a - b));
  return std::clamp(t, path.time(k), path.time(k + 1));
}

constexpr std::size_t kSplit = 16;
constexpr int kMaxDepth = 10;
constexpr int kMaxRetries = 100000;

// Brownian bridge from a to b over a step of length h, at kSplit sub-steps.
std::array<double, kSplit + 1> sub_bridge(double a, double b, double h, NormalSource& normal) {
  std::array<double, kSplit + 1> walk{};
  const double sd = std::sqrt(h / static_cast<double>(kSplit));
  for (std::size_t k = 1; k <= kSplit; ++k) walk[k] = walk[k - 1] + sd * normal();
  std::array<double, kSplit + 1> x{};
  const double drift = walk[kSplit] - (b - a);
  for (std::size_t k = 0; k <= kSplit; ++k) {
    x[k] = a + walk[k] - static_cast<double>(k) / static_cast<double>(kSplit) * drift;
  }
  x[0] = a;
  x[kSplit] = b;
  return x;
}

double last_zero_in_step(double a, double b, double h, NormalSource& normal, int depth);

// Last zero of the Brownian path through the grid values x (spacing h),
// sampling its excursions between grid points; nullopt if it avoids zero.
std::optional<double> last_zero_on_grid(std::span<const double> x, double h,
                                        NormalSource& normal, int depth) {
  for (std::size_t j = x.size() - 1; j-- > 0;) {
    const double a = x[j];
    const double b = x[j + 1];
    const double t0 = static_cast<double>(j) * h;
    if (b == 0.0) return t0 + h;
    if (a == 0.0 || opposite_signs(a, b)) return t0 + last_zero_in_step(a, b, h, normal, depth);
    if (normal.uniform01() < std::exp(-2.0 * a * b / h)) {
      return t0 + last_zero_in_step(a, b, h, normal, depth);
    }
  }
  return std::nullopt;
}

// Last zero in (0, h] of a bridge from a to b, conditioned on reaching zero.
double last_zero_in_step(double a, double b, double h, NormalSource& normal, int depth) {
  if (depth >= kMaxDepth) {
    return opposite_signs(a, b) ? h * (a / (a - b)) : 0.5 * h;
  }
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    const auto x = sub_bridge(a, b, h, normal);
    const auto z = last_zero_on_grid(x, h / static_cast<double>(kSplit), normal, depth + 1);
    if (z) return *z;
  }
  return 0.5 * h;
}

}  // namespace

SamplePath SamplePath::from_values(double horizon, std::vector<double> values,
                                   PathKind kind, std::uint64_t seed) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw ArgumentError("path horizon must be positive and finite");
  }
  if (values.size() < 2) {
    throw ArgumentError("path needs at least one step");
  }
  if (values.size() - 1 > kMaxPathSteps) {
    throw CapacityError("path exceeds 2^26 grid steps");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw ArgumentError("path values must be finite");
  }
  return SamplePath(horizon, std::move(values), kind, seed);
}

double SamplePath::value_at(double t) const noexcept {
  if (t <= 0.0) return values_.front();
  if (t >= horizon_) return values_.back();
  const double pos = t / dt();
  auto k = static_cast<std::size_t>(pos);
  if (k >= n_steps()) return values_.back();
  const double frac = pos - static_cast<double>(k);
  return values_[k] + (values_[k + 1] - values_[k]) * frac;
}

SamplePath sample_brownian(std::size_t n_steps, double horizon, std::uint64_t seed) {
  if (n_steps == 0) throw ArgumentError("n_steps must be >= 1");
  if (n_steps > kMaxPathSteps) throw CapacityError("path exceeds 2^26 grid steps");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw ArgumentError("horizon must be positive and finite");
  }
  std::vector<double> values(n_steps + 1);
  values[0] = 0.0;
  const double sd = std::sqrt(horizon / static_cast<double>(n_steps));
  NormalSource normal(seed);
  double w = 0.0;
  for (std::size_t k = 1; k <= n_steps; ++k) {
    w += sd * normal();
    values[k] = w;
  }
  return SamplePath::from_values(horizon, std::move(values), PathKind::BrownianMotion,
                                 seed);
}

SamplePath coarsen(const SamplePath& path, std::size_t factor) {
  if (factor == 0 || path.n_steps() % factor != 0) {
    throw ArgumentError("coarsening factor must divide n_steps");
  }
  const std::size_t n = path.n_steps() / factor;
  std::vector<double> values(n + 1);
  for (std::size_t k = 0; k <= n; ++k) values[k] = path[k * factor];
  return SamplePath::from_values(path.horizon(), std::move(values), path.kind(),
                                 path.seed());
}

SamplePath rescale(const SamplePath& path, double time_factor) {
  if (!(time_factor > 0.0)) throw ArgumentError("time factor must be positive");
  const double space = std::sqrt(time_factor);
  std::vector<double> values(path.values().begin(), path.values().end());
  for (double& v : values) v *= space;
  return SamplePath::from_values(path.horizon() * time_factor, std::move(values),
                                 path.kind(), path.seed());
}

Decomposition decompose_at_last_zero(const SamplePath& path, std::size_t resample_steps,
                                     ZeroLocation location) {
  if (path.kind() != PathKind::BrownianMotion) {
    throw ArgumentError("decomposition needs a Brownian motion path");
  }
  const std::size_t n = path.n_steps();
  const double T = path.horizon();
  if (path.back() == 0.0) throw NoZeroCrossing();

  // g and the index of the first grid point strictly after g.
  double g = 0.0;
  std::size_t next = 0;
  if (location == ZeroLocation::BridgeSampled) {
    NormalSource normal(mix64(path.seed() ^ 0x243f6a8885a308d3ULL));
    const auto z = last_zero_on_grid(path.values(), path.dt(), normal, 0);
    if (z) {
      g = std::min(*z, T);
      next = std::min(n, static_cast<std::size_t>(g / path.dt()) + 1);
      while (next < n && path.time(next) <= g) ++next;
    }
  } else {
    for (std::size_t k = n; k-- > 0;) {
      if (path[k + 1] == 0.0) {
        g = path.time(k + 1);
        next = k + 2;
        break;
      }
      if (opposite_signs(path[k], path[k + 1])) {
        g = crossing_time(path, k);
        next = k + 1;
        break;
      }
      if (path[k] == 0.0 && k > 0) {
        g = path.time(k);
        next = k + 1;
        break;
      }
    }
  }
  if (!(g > 0.0) || !(g < T)) throw NoZeroCrossing();

  const std::size_t m = resample_steps == 0 ? n : resample_steps;
  if (m > kMaxPathSteps) throw CapacityError("resampled path exceeds 2^26 grid steps");

  const double root_g = std::sqrt(g);
  // Between the last grid point before g and g itself the bridge falls linearly to 0.
  const std::size_t prev = next - 1;
  const double t_prev = path.time(prev);
  std::vector<double> bridge(m + 1);
  for (std::size_t j = 1; j < m; ++j) {
    const double t = static_cast<double>(j) / static_cast<double>(m) * g;
    const double w = t <= t_prev ? path.value_at(t) : path[prev] * (g - t) / (g - t_prev);
    bridge[j] = w / root_g;
  }
  bridge[0] = 0.0;
  bridge[m] = 0.0;

  const double tail = T - g;
  const double root_tail = std::sqrt(tail);
  const double t_next = path.time(next);
  const double v_next = std::fabs(path[next]);
  std::vector<double> meander(m + 1);
  meander[0] = 0.0;
  for (std::size_t j = 1; j < m; ++j) {
    const double d = static_cast<double>(j) / static_cast<double>(m) * tail;
    double v;
    if (g + d <= t_next) {
      // Square-root entrance from the zero itself; strictly positive for d > 0.
      v = v_next * std::sqrt(d / (t_next - g));
    } else {
      v = std::fabs(path.value_at(g + d));
    }
    meander[j] = v / root_tail;
  }
  meander[m] = std::fabs(path.back()) / root_tail;

  return Decomposition{
      g,
      SamplePath::from_values(1.0, std::move(bridge), PathKind::Bridge, path.seed()),
      SamplePath::from_values(1.0, std::move(meander), PathKind::Meander, path.seed()),
      path.back() > 0.0 ? 1 : -1};
}

double bridge_sup_abs(const SamplePath& path, double g) {
  if (!(g > 0.0) || g > path.horizon()) throw ArgumentError("g must lie in (0, T]");
  const double dt = path.dt();
  auto last = std::min(path.n_steps(), static_cast<std::size_t>(g / dt));
  while (last > 0 && path.time(last) > g) --last;

  // Pieces (a, b, h): whole steps up to t_last, then t_last -> g ending at 0.
  double grid_max = 0.0;
  for (std::size_t k = 0; k <= last; ++k) grid_max = std::max(grid_max, std::fabs(path[k]));
  const double tail_h = g - path.time(last);

  NormalSource normal(mix64(path.seed() ^ 0xa4093822299f31d0ULL));
  double best = grid_max;
  auto piece = [&](double a, double b, double h) {
    if (!(h > 0.0)) return;
    // The excess over the endpoints exceeds 4 sqrt(h) with probability < e^-32.
    if (std::max(std::fabs(a), std::fabs(b)) + 4.0 * std::sqrt(h) < best) return;
    const double d2 = (b - a) * (b - a);
    const double hi = 0.5 * (a + b + std::sqrt(d2 - 2.0 * h * std::log1p(-normal.uniform01())));
    const double lo = 0.5 * (a + b - std::sqrt(d2 - 2.0 * h * std::log1p(-normal.uniform01())));
    best = std::max({best, hi, -lo});
  };
  for (std::size_t k = 0; k < last; ++k) piece(path[k], path[k + 1], dt);
  piece(path[last], 0.0, tail_h);
  return best / std::sqrt(g);
}

std::optional<double> first_zero_after(const SamplePath& path, double t, bool strict,
                                       ZeroLocation location) {
  const double T = path.horizon();
  if (t < 0.0 || t > T) throw ArgumentError("first_zero_after: t outside [0, T]");
  const std::size_t n = path.n_steps();
  const double dt = path.dt();
  auto accept = [&](double z) { return strict ? z > t : z >= t; };

  std::size_t k = std::min(static_cast<std::size_t>(t / dt), n - 1);
  // Grid time rounding can place t just past the computed step start.
  while (k > 0 && path.time(k) > t) --k;

  if (location == ZeroLocation::GridLinear) {
    for (; k < n; ++k) {
      const double a = path[k];
      const double b = path[k + 1];
      if (a == 0.0 && accept(path.time(k))) return path.time(k);
      if (opposite_signs(a, b)) {
        const double z = crossing_time(path, k);
        if (accept(z)) return z;
      }
      if (b == 0.0 && accept(path.time(k + 1))) return path.time(k + 1);
    }
    return std::nullopt;
  }

  if (t >= T) {
    return (path.back() == 0.0 && !strict) ? std::optional<double>(T) : std::nullopt;
  }
  std::uint64_t t_bits = 0;
  std::memcpy(&t_bits, &t, sizeof t_bits);
  NormalSource normal(mix64(path.seed() ^ 0x13198a2e03707344ULL) ^ mix64(t_bits));

  // W(t) given the two grid values around it.
  const double t_k = path.time(k);
  const double t_k1 = path.time(k + 1);
  double a = path[k];
  if (t > t_k) {
    const double frac = (t - t_k) / (t_k1 - t_k);
    const double sd = std::sqrt((t - t_k) * (t_k1 - t) / (t_k1 - t_k));
    a = path[k] + (path[k + 1] - path[k]) * frac + sd * normal();
  }
  if (a == 0.0 && !strict) return t;

  double t0 = t;
  for (; k < n; ++k) {
    const double b = path[k + 1];
    const double h = path.time(k + 1) - t0;
    if (a == 0.0 && strict && t0 == t && h > 0.0) {
      // Zeros accumulate at t itself; take the last one inside this step.
      return t0 + last_zero_in_step(a, b, h, normal, 0);
    }
    if (h > 0.0 && (a == 0.0 || opposite_signs(a, b) ||
                    normal.uniform01() < std::exp(-2.0 * a * b / h))) {
      // First zero of the bridge a -> b is the last zero of its time reversal.
      return t0 + h - last_zero_in_step(b, a, h, normal, 0);
    }
    if (b == 0.0) return path.time(k + 1);
    t0 = path.time(k + 1);
    a = b;
  }
  return std::nullopt;
}

SamplePath sample_meander(std::size_t n_steps, std::uint64_t seed) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    const std::uint64_t s = attempt == 0 ? seed : mix64(seed + attempt);
    SamplePath w = sample_brownian(n_steps, 1.0, s);
    try {
      return decompose_at_last_zero(w).meander;
    } catch (const NoZeroCrossing&) {
      // redraw
    }
  }
}

double meander_reciprocal_integral(const SamplePath& meander) {
  const auto m = meander.values();
  const double ds = meander.dt();
  const std::size_t n = meander.n_steps();
  if (!(m[1] > 0.0)) throw ArgumentError("meander must be positive after s = 0");
  double sum = 2.0 * ds / m[1];
  for (std::size_t k = 1; k < n; ++k) {
    const double a = m[k];
    const double b = m[k + 1];
    if (!(b > 0.0)) throw ArgumentError("meander must be positive after s = 0");
    const double rel = (b - a) / a;
    if (std::fabs(rel) < 1e-6) {
      // log1p(r)/r expanded to avoid cancellation
      sum += ds / a * (1.0 - rel / 2.0 + rel * rel / 3.0);
    } else {
      sum += ds * (std::log(b) - std::log(a)) / (b - a);
    }
  }
  return sum;
}

EtaScan scan_eta(const SamplePath& path, const PvEstimator& pv) {
  if (path.kind() != PathKind::BrownianMotion) {
    throw ArgumentError("eta skeleton needs a Brownian motion path");
  }
  const PVResult y = pv.evaluate(path);
  const double T = path.horizon();
  EtaScan scan;
  double eta = 0.0;
  for (std::size_t i = 1;; ++i) {
    const double start = eta + 1.0;
    scan.open_start = eta;
    if (start > T) break;
    const double z = y.at(start) - y.at(eta);
    const auto next = first_zero_after(path, start, /*strict=*/true);
    if (!next) {
      scan.open_z = z;
      break;
    }
    scan.records.push_back(EtaRecord{i, *next - eta, z, *next});
    eta = *next;
  }
  return scan;
}

std::vector<EtaRecord> eta_sequence(const SamplePath& path, const PvEstimator& pv) {
  return scan_eta(path, pv).records;
}

}  // namespace pvlt
