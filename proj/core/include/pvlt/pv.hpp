#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "pvlt/paths.hpp"

namespace pvlt {

enum class PvMethod { RiemannCutoff, LocalTimeIntegral };

struct PvDiagnostics {
  std::size_t excluded_step_count = 0;
  double max_abs_term = 0.0;
};

/// Principal value Y(t_k) at every grid time of a path.
struct PVResult {
  std::vector<double> y_values;
  PvMethod estimator = PvMethod::RiemannCutoff;
  double cutoff_eps = 0.0;
  double bin_width = 0.0;  ///< LocalTimeIntegral only
  double dt = 0.0;
  PvDiagnostics diagnostics;

  double final_value() const { return y_values.back(); }
  /// Linear interpolation in t.
  double at(double t) const noexcept;
};

/// Default cutoff for the Riemann estimator: sqrt(dt) / 8.
inline double default_cutoff(double dt) { return 0.125 * std::sqrt(dt); }
/// Default local-time bin width: sqrt(dt) / 2.
inline double default_bin_width(double dt) { return 0.5 * std::sqrt(dt); }

/// y[k] = sum_{i<k} dt / W(t_i) over grid points with |W(t_i)| >= eps.
/// eps == 0 skips exact zeros only. Skipped steps are counted in diagnostics.
PVResult pv_riemann(const SamplePath& path, double eps);

/// Occupation density estimate L(t, x) on bins [j h, (j+1) h).
///
/// Time is measured along the linear interpolant of the path, so each step's
/// duration is split across the bins it sweeps. Bin centres (j + 1/2) h are
/// symmetric about 0, and sum(mass) * h == t.
struct LocalTimeField {
  double t = 0.0;
  double bin_width = 0.0;
  std::vector<double> levels;  ///< bin centres, ascending, symmetric
  std::vector<double> mass;    ///< time in bin / bin_width

  /// Linear interpolation between centres; 0 outside the populated range.
  double at(double x) const noexcept;
  double total_time() const noexcept;
};

LocalTimeField local_time(const SamplePath& path, double t, double bin_width);

/// int_0^inf (L(t,x) - L(t,-x)) / x dx over the binned field: each symmetric
/// pair difference is formed first and then divided by its bin centre.
double pv_localtime(const SamplePath& path, double t, double bin_width);

/// pv_localtime evaluated at every grid time (cumulative over steps).
PVResult pv_localtime_path(const SamplePath& path, double bin_width);

/// Estimator handle with resolution-relative parameters, so one handle
/// works across grids: eps = cutoff_factor * sqrt(dt), h = bin_factor * sqrt(dt).
class PvEstimator {
 public:
  static PvEstimator riemann(double cutoff_factor = 0.125) {
    return PvEstimator(PvMethod::RiemannCutoff, cutoff_factor);
  }
  static PvEstimator local_time(double bin_factor = 0.5) {
    return PvEstimator(PvMethod::LocalTimeIntegral, bin_factor);
  }

  PVResult evaluate(const SamplePath& path) const;
  PvMethod method() const noexcept { return method_; }
  double factor() const noexcept { return factor_; }

 private:
  PvEstimator(PvMethod method, double factor) : method_(method), factor_(factor) {}
  PvMethod method_;
  double factor_;
};

}  // namespace pvlt
