#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace pvlt {

class PvEstimator;

enum class PathKind { BrownianMotion, Bridge, Meander };

/// Largest grid accepted for a single path.
inline constexpr std::size_t kMaxPathSteps = std::size_t{1} << 26;
/// Default resolution: grid steps per unit of time.
inline constexpr std::size_t kDefaultStepsPerUnit = std::size_t{1} << 14;

/// A trajectory sampled on the uniform grid t_k = k * horizon / n_steps.
/// Immutable after construction.
class SamplePath {
 public:
  /// Wraps caller-provided values (n_steps = values.size() - 1). Generators
  /// guarantee values[0] == 0; this factory only checks size and finiteness.
  static SamplePath from_values(double horizon, std::vector<double> values,
                                PathKind kind = PathKind::BrownianMotion,
                                std::uint64_t seed = 0);

  double horizon() const noexcept { return horizon_; }
  std::size_t n_steps() const noexcept { return values_.size() - 1; }
  double dt() const noexcept { return horizon_ / static_cast<double>(n_steps()); }
  double time(std::size_t k) const noexcept {
    return horizon_ * static_cast<double>(k) / static_cast<double>(n_steps());
  }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t k) const noexcept { return values_[k]; }
  double back() const noexcept { return values_.back(); }
  std::uint64_t seed() const noexcept { return seed_; }
  PathKind kind() const noexcept { return kind_; }

  /// Linear interpolation between grid values; t is clamped to [0, horizon].
  double value_at(double t) const noexcept;

 private:
  SamplePath(double horizon, std::vector<double> values, PathKind kind,
             std::uint64_t seed)
      : horizon_(horizon), values_(std::move(values)), seed_(seed), kind_(kind) {}

  double horizon_;
  std::vector<double> values_;
  std::uint64_t seed_;
  PathKind kind_;
};

/// Brownian motion on [0, T] with n_steps Gaussian increments of variance T/n_steps.
/// Bit-identical for identical (n_steps, T, seed).
SamplePath sample_brownian(std::size_t n_steps, double horizon, std::uint64_t seed);

/// Keeps every `factor`-th grid value (same skeleton at a coarser dyadic level).
SamplePath coarsen(const SamplePath& path, std::size_t factor);

/// Brownian rescaling (t, W) -> (a t, sqrt(a) W).
SamplePath rescale(const SamplePath& path, double time_factor);

/// Last-zero split of a Brownian path on [0, T]:
///   bridge(s)  = W(s g) / sqrt(g)
///   meander(s) = |W(g + s (T - g))| / sqrt(T - g)
/// Within the grid step that brackets g the meander rises from the zero
/// along a square-root profile rather than the linear interpolant.
struct Decomposition {
  double g = 0.0;
  SamplePath bridge;
  SamplePath meander;
  int sign = 1;  ///< sign of W on (g, T]
};

/// How zeros between grid points are located.
enum class ZeroLocation {
  /// Root of the linear interpolant in a step whose endpoints change sign.
  GridLinear,
  /// Brownian path conditioned on the grid values: a step with endpoints a, b
  /// of equal sign still reaches zero with probability exp(-2ab/dt), and the
  /// zero inside a step is found by recursive bridge subdivision. Seeded from
  /// the path seed, so results are deterministic.
  BridgeSampled,
};

/// Throws NoZeroCrossing when no zero is found inside (0, T) or W(T) == 0.
/// `resample_steps == 0` keeps the source path's step count.
Decomposition decompose_at_last_zero(const SamplePath& path,
                                     std::size_t resample_steps = 0,
                                     ZeroLocation location = ZeroLocation::BridgeSampled);

/// sup_{0<=s<=1} |B(s)| for the bridge ending at the zero g of `path`. The
/// extremes inside each grid step are drawn from the Brownian-bridge law given
/// the step's endpoints (the final piece ends at W(g) = 0), so the result does
/// not shrink with the number of grid points below g. Seeded from the path seed.
double bridge_sup_abs(const SamplePath& path, double g);

/// Smallest zero location >= t (> t when `strict`), or nullopt. With
/// BridgeSampled, `strict` and W(t) == 0 exactly, the zeros accumulate at t
/// and the last zero inside the step after t is returned.
std::optional<double> first_zero_after(const SamplePath& path, double t,
                                       bool strict = false,
                                       ZeroLocation location = ZeroLocation::BridgeSampled);

/// Meander on [0, 1] by decomposition of fresh Brownian paths; paths without
/// a crossing are redrawn from derived seeds.
SamplePath sample_meander(std::size_t n_steps, std::uint64_t seed);

/// int_0^1 dv / m(v) for a meander grid. The first step uses the sqrt(v)
/// entrance shape, later steps integrate the linear interpolant exactly.
double meander_reciprocal_integral(const SamplePath& meander);

/// One observation of the excursion skeleton: stopping times
/// eta_k = first zero after eta_{k-1} + 1 with eta_0 = 0.
struct EtaRecord {
  std::size_t index = 0;   ///< i >= 1
  double eta_gap = 0.0;    ///< eta_i - eta_{i-1} (> 1)
  double z_value = 0.0;    ///< Y(eta_{i-1} + 1) - Y(eta_{i-1})
  double eta_time = 0.0;   ///< eta_i
};

/// Records plus the trailing increment whose closing zero lies beyond the horizon.
struct EtaScan {
  std::vector<EtaRecord> records;
  double open_start = 0.0;            ///< eta of the last completed record (or 0)
  std::optional<double> open_z;       ///< Z of the open record when open_start + 1 <= T
};

EtaScan scan_eta(const SamplePath& path, const PvEstimator& pv);
std::vector<EtaRecord> eta_sequence(const SamplePath& path, const PvEstimator& pv);

}  // namespace pvlt
