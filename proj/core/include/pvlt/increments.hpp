#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pvlt/pv.hpp"

namespace pvlt {

/// Window length rule T -> a_T.
class WindowSpec {
 public:
  enum class Rule { ConstantFraction, PowerLog, Fixed };

  /// a_T = rho * T, 0 < rho <= 1.
  static WindowSpec constant_fraction(double rho);
  /// a_T = T / (log T)^alpha.
  static WindowSpec power_log(double alpha);
  /// a_T = a.
  static WindowSpec fixed(double a);

  double window(double T) const;
  Rule rule() const noexcept { return rule_; }
  double parameter() const noexcept { return param_; }

  struct Flags {
    bool within_horizon = true;       ///< 0 < a_T <= T
    bool window_nondecreasing = true;
    bool ratio_nondecreasing = true;  ///< T / a_T
  };
  /// Evaluates the hypotheses on an ascending T grid.
  Flags check(std::span<const double> T_grid) const;

 private:
  WindowSpec(Rule rule, double param) : rule_(rule), param_(param) {}
  Rule rule_;
  double param_;
};

/// Normalizers; every statistic is divided by the value returned here.
enum class Normalizer {
  WindowLimsup,       ///< sqrt(a (log sqrt(T/a) + loglog T)); sqrt(8) applied by caller
  WindowLiminfLong,   ///< sqrt(a / loglog T)
  WindowLiminfShort,  ///< sqrt(a log(T/a))
  InfSupLiminf,       ///< a / sqrt(T loglog T)
  InfSupLimsupShort,  ///< a sqrt(loglog T) / sqrt(T)
  IteratedLog,        ///< sqrt(T loglog T)
  LagIncrement,       ///< sqrt(a (log(T/a) + 2 loglog a)), a = lag
  BrownianWindow,     ///< sqrt(a (log(T/a) + loglog T))
  Chung,              ///< sqrt(T / loglog T)
};

enum class LogLogMode {
  Strict,   ///< DomainError when the loglog argument is <= e
  Clipped,  ///< log(log(max(x, e^1.001)))
};

double loglog(double x, LogLogMode mode = LogLogMode::Strict);
double normalizer(Normalizer kind, double T, double a,
                  LogLogMode mode = LogLogMode::Strict);

/// Trajectory sampled on a uniform grid y[k] = Y(k dt). T and a are floored
/// to grid steps; only grid points enter the sup/inf.
struct GridSeries {
  std::span<const double> y;
  double dt;

  GridSeries(std::span<const double> values, double step) : y(values), dt(step) {}
  GridSeries(const PVResult& r) : y(r.y_values), dt(r.dt) {}  // NOLINT
  GridSeries(const SamplePath& p) : y(p.values()), dt(p.dt()) {}  // NOLINT
};

/// sup_{0<=t<=T-a} sup_{0<=s<=a} |Y(t+s) - Y(t)|
double sup_sup_increment(GridSeries y, double T, double a);
/// sup_{0<=t<=T-a} sup_{0<=s<=a} (Y(t+s) - Y(t)); >= 0
double one_sided_sup_increment(GridSeries y, double T, double a);
/// inf_{0<=t<=T-a} inf_{0<=s<=a} (Y(t+s) - Y(t)); <= 0
double one_sided_inf_increment(GridSeries y, double T, double a);
/// inf_{0<=t<=T-a} sup_{0<=s<=a} |Y(t+s) - Y(t)|
double inf_sup_increment(GridSeries y, double T, double a);
/// sup_{lag<=s<=T} |Y(s) - Y(s-lag)|
double lag_inner_sup(GridSeries y, double T, double lag);

struct LagProfile {
  std::vector<double> lags;
  std::vector<double> inner_sup;
  std::vector<double> normalized;  ///< inner_sup / LagIncrement normalizer (clipped loglog)
  double max_normalized = 0.0;
};

/// Lags on a logarithmic grid (`per_decade` per decade, whole grid steps,
/// always including T). Needs T >= 3.
LagProfile lag_sup_increment(GridSeries y, double T, int per_decade = 32);

struct IncrementStat {
  double T = 0.0;
  double a = 0.0;
  double sup_sup = 0.0;
  double one_sided_sup = 0.0;
  double inf_sup = 0.0;
  double lag_sup = 0.0;  ///< lag_inner_sup at lag a
  struct {
    double window_limsup;    ///< sqrt(a (log sqrt(T/a) + loglog T))
    double window_liminf;    ///< sqrt(a log(T/a)); NaN when a == T
    double inf_sup_liminf;   ///< a / sqrt(T loglog T)
    double lag;              ///< sqrt(a (log(T/a) + 2 loglog a))
    double brownian_window;  ///< sqrt(a (log(T/a) + loglog T))
  } normalizers{};
};

/// All window statistics for one (T, a); normalizers use clipped loglog.
IncrementStat increment_stat(GridSeries y, double T, double a);

struct Breakpoint {
  double x;
  double f;
};

struct StrassenCheck {
  double sum = 0.0;
  bool admissible = false;
};

/// sum_i (f(x_i) - f(x_{i-1}))^2 / (x_i - x_{i-1}) over the breakpoints, which
/// must run strictly upward from x = 0 (with f = 0) to x = 1. For a
/// piecewise-linear f this is int (f')^2; admissible iff <= 1.
StrassenCheck strassen_partition_check(std::span<const Breakpoint> f);

/// k rho + rho^2 / (1 - k rho) with k the largest integer such that k rho < 1.
double strassen_partition_bound(double rho);

/// Breakpoints 0, rho, ..., k rho, 1 with f rising by rho on every piece.
std::vector<Breakpoint> equal_rise_profile(double rho);

}  // namespace pvlt
