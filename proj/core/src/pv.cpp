#include "pvlt/pv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pvlt/errors.hpp"

namespace pvlt {

namespace {

// Splits `duration` spent on the segment a -> b over the bins [j h, (j+1) h)
// it sweeps, calling f(j, time_in_bin).
template <class F>
void spread_segment(double a, double b, double duration, double h, F&& f) {
  if (a == b) {
    f(static_cast<long>(std::floor(a / h)), duration);
    return;
  }
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  const double rate = duration / (hi - lo);
  const auto j0 = static_cast<long>(std::floor(lo / h));
  const auto j1 = static_cast<long>(std::floor(hi / h));
  if (j0 == j1) {
    f(j0, duration);
    return;
  }
  f(j0, (static_cast<double>(j0 + 1) * h - lo) * rate);
  for (long j = j0 + 1; j < j1; ++j) f(j, h * rate);
  const double last = (hi - static_cast<double>(j1) * h) * rate;
  if (last > 0.0) f(j1, last);
}

void check_time(const SamplePath& path, double t) {
  if (!(t > 0.0) || t > path.horizon() * (1.0 + 1e-12)) {
    throw ArgumentError("local time: t must lie in (0, T]");
  }
}

void check_bin_width(const SamplePath& path, double t, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw ArgumentError("bin width must be positive");
  const auto last = std::min(path.n_steps(),
                             static_cast<std::size_t>(std::ceil(t / path.dt())));
  const auto v = path.values().subspan(0, last + 1);
  const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
  if (h > *mx - *mn) {
    throw DegenerateBinning("bin width exceeds the range of the path");
  }
}

// Calls f(a, b, duration) for each piece of the interpolant on [0, t].
template <class F>
void for_each_segment(const SamplePath& path, double t, F&& f) {
  const double dt = path.dt();
  const std::size_t n = path.n_steps();
  const double pos = std::min(t / dt, static_cast<double>(n));
  const auto full = static_cast<std::size_t>(pos);
  for (std::size_t k = 0; k < full; ++k) f(path[k], path[k + 1], dt);
  const double frac = pos - static_cast<double>(full);
  if (full < n && frac > 0.0) {
    const double a = path[full];
    f(a, a + (path[full + 1] - a) * frac, frac * dt);
  }
}

}  // namespace

double PVResult::at(double t) const noexcept {
  if (t <= 0.0) return y_values.front();
  const double pos = t / dt;
  const auto k = static_cast<std::size_t>(pos);
  if (k + 1 >= y_values.size()) return y_values.back();
  const double frac = pos - static_cast<double>(k);
  return y_values[k] + (y_values[k + 1] - y_values[k]) * frac;
}

PVResult pv_riemann(const SamplePath& path, double eps) {
  if (!(eps >= 0.0)) throw ArgumentError("cutoff eps must be >= 0");
  const std::size_t n = path.n_steps();
  const double dt = path.dt();
  PVResult r;
  r.estimator = PvMethod::RiemannCutoff;
  r.cutoff_eps = eps;
  r.dt = dt;
  r.y_values.resize(n + 1);
  r.y_values[0] = 0.0;
  double y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = path[i];
    if (w != 0.0 && std::fabs(w) >= eps) {
      const double term = dt / w;
      y += term;
      r.diagnostics.max_abs_term = std::max(r.diagnostics.max_abs_term, std::fabs(term));
    } else {
      ++r.diagnostics.excluded_step_count;
    }
    r.y_values[i + 1] = y;
  }
  return r;
}

double LocalTimeField::at(double x) const noexcept {
  if (levels.empty()) return 0.0;
  if (x <= levels.front() || x >= levels.back()) {
    if (x == levels.front()) return mass.front();
    if (x == levels.back()) return mass.back();
    return 0.0;
  }
  const double pos = (x - levels.front()) / bin_width;
  const auto k = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(k);
  return mass[k] + (mass[k + 1] - mass[k]) * frac;
}

double LocalTimeField::total_time() const noexcept {
  double s = 0.0;
  for (double m : mass) s += m * bin_width;
  return s;
}

LocalTimeField local_time(const SamplePath& path, double t, double bin_width) {
  check_time(path, t);
  check_bin_width(path, t, bin_width);
  const double h = bin_width;
  double reach = 0.0;
  for (double v : path.values()) reach = std::max(reach, std::fabs(v));
  const long half = static_cast<long>(std::ceil(reach / h)) + 1;

  LocalTimeField field;
  field.t = t;
  field.bin_width = h;
  field.levels.resize(static_cast<std::size_t>(2 * half));
  for (long j = -half; j < half; ++j) {
    field.levels[static_cast<std::size_t>(j + half)] = (static_cast<double>(j) + 0.5) * h;
  }
  std::vector<double> time(field.levels.size(), 0.0);
  for_each_segment(path, t, [&](double a, double b, double d) {
    spread_segment(a, b, d, h, [&](long j, double s) {
      time[static_cast<std::size_t>(j + half)] += s;
    });
  });
  field.mass.resize(time.size());
  for (std::size_t i = 0; i < time.size(); ++i) field.mass[i] = time[i] / h;
  return field;
}

double pv_localtime(const SamplePath& path, double t, double bin_width) {
  const LocalTimeField field = local_time(path, t, bin_width);
  const std::size_t half = field.levels.size() / 2;
  const double h = field.bin_width;
  double sum = 0.0;
  for (std::size_t j = 0; j < half; ++j) {
    const double diff = field.mass[half + j] - field.mass[half - 1 - j];
    sum += diff * h / field.levels[half + j];
  }
  return sum;
}

PVResult pv_localtime_path(const SamplePath& path, double bin_width) {
  check_bin_width(path, path.horizon(), bin_width);
  const double h = bin_width;
  const std::size_t n = path.n_steps();
  PVResult r;
  r.estimator = PvMethod::LocalTimeIntegral;
  r.bin_width = h;
  r.dt = path.dt();
  r.y_values.resize(n + 1);
  r.y_values[0] = 0.0;
  double y = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double step = 0.0;
    spread_segment(path[k], path[k + 1], r.dt, h, [&](long j, double s) {
      step += s / ((static_cast<double>(j) + 0.5) * h);
    });
    r.diagnostics.max_abs_term = std::max(r.diagnostics.max_abs_term, std::fabs(step));
    y += step;
    r.y_values[k + 1] = y;
  }
  return r;
}

PVResult PvEstimator::evaluate(const SamplePath& path) const {
  const double scale = std::sqrt(path.dt());
  switch (method_) {
    case PvMethod::RiemannCutoff:
      return pv_riemann(path, factor_ * scale);
    case PvMethod::LocalTimeIntegral:
      return pv_localtime_path(path, factor_ * scale);
  }
  return {};
}

}  // namespace pvlt
