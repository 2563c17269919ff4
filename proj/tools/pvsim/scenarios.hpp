#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "config.hpp"
#include "report.hpp"

namespace pvsim {

/// Which statistics sample_fact21 computes; unused parts are left empty.
struct Fact21Parts {
  bool y1 = true;             ///< default Riemann estimator
  bool y1_eps0 = true;        ///< Riemann with eps = 0
  bool decomposition = true;  ///< g, m(1), meander integral, bridge sup
};

struct Fact21Samples {
  std::vector<double> y1;
  std::vector<double> y1_eps0;
  std::vector<double> g;
  std::vector<double> m1;
  std::vector<double> meander_integral;
  std::vector<double> bridge_sup;
};

/// Brownian paths on [0, 1] with `n_steps` steps. A path whose last zero
/// cannot be located is replaced by one from a derived seed.
Fact21Samples sample_fact21(std::size_t n_paths, std::size_t n_steps, std::uint64_t seed,
                            unsigned workers, Fact21Parts parts = {});

struct EtaSamples {
  std::vector<double> z_value;
  std::vector<double> eta_gap;  ///< +inf when the gap exceeds the censoring level
  double horizon = 0.0;
  double censor_at = 0.0;
};

inline constexpr double kEtaHorizon = 16.0;
inline constexpr double kEtaCensor = 8.0;

/// Skeleton records from paths on [0, horizon] with `steps_per_unit` grid
/// steps per unit time. Only records starting at or before
/// horizon - censor_at are kept, so every gap up to censor_at is observed;
/// longer gaps, including the still-open last one, are stored as +inf.
EtaSamples sample_eta(std::size_t n_paths, std::size_t steps_per_unit, std::uint64_t seed,
                      unsigned workers, double horizon = kEtaHorizon,
                      double censor_at = kEtaCensor);

struct PvStudySamples {
  std::vector<double> riemann_eps0;
  std::vector<double> riemann;
  std::vector<double> local_time;
  std::vector<double> riemann_coarse4;
  std::vector<double> riemann_coarse16;
};

/// Y(1) from several estimators applied to the same paths.
PvStudySamples sample_pv_study(std::size_t n_paths, std::size_t n_steps, std::uint64_t seed,
                               unsigned workers);

/// sup_{s<=1} |Y(s)| per path (default Riemann estimator).
std::vector<double> sample_sup_abs_y(std::size_t n_paths, std::size_t n_steps,
                                     std::uint64_t seed, unsigned workers);

struct TrendSamples {
  std::vector<double> T_grid;
  std::vector<std::vector<double>> iterated_log;  ///< [path][T]: Y(T) / sqrt(T loglog T)
  std::vector<double> bm_window;       ///< BM sup-sup at a = T/256 over its normalizer
  std::vector<double> inf_sup_window;  ///< inf-sup at a = window(T), over sqrt(T loglog T) (a/T) sqrt(8)
  std::vector<double> chung_bm;        ///< min over the grid of sup|W| / sqrt(T/loglog T), over pi/sqrt(8)
  std::vector<double> chung_y;         ///< same for sup|Y|, unnormalized by any constant
};

/// Dyadic grid covering the last ten octaves below `horizon`, never below 16.
std::vector<double> trend_grid(double horizon);

/// One path of `n_steps` unit steps per sample; every channel is read off
/// that single trajectory.
TrendSamples sample_trend(std::size_t n_paths, std::size_t n_steps, const pvlt::WindowSpec& window,
                          std::uint64_t seed, unsigned workers);

/// Runs one command. Throws UsageError, pvlt::ArgumentError, DomainError or CapacityError.
Report run_scenario(const RunConfig& config);

}  // namespace pvsim
