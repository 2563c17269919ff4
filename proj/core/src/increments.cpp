#include "pvlt/increments.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>

#include "pvlt/errors.hpp"

namespace pvlt {

namespace {

constexpr double kGridSlack = 1e-9;

std::size_t to_steps(double t, double dt) {
  return static_cast<std::size_t>(std::floor(t / dt + kGridSlack));
}

struct Window {
  std::size_t n;  // last grid index (T)
  std::size_t w;  // window length in steps (a)
};

Window resolve(const GridSeries& y, double T, double a) {
  if (y.y.empty()) throw ArgumentError("empty trajectory");
  if (!(a > 0.0)) throw ArgumentError("window a must be positive");
  if (!(T > 0.0)) throw ArgumentError("horizon T must be positive");
  if (a > T) throw ArgumentError("window a exceeds horizon T");
  const std::size_t n = to_steps(T, y.dt);
  if (n + 1 > y.y.size()) throw ArgumentError("T beyond the trajectory");
  return {n, to_steps(a, y.dt)};
}

// Calls f(t, max y[t..t+w], min y[t..t+w]) for t = 0..n-w with monotone deques.
template <class F>
void sliding_extremes(std::span<const double> y, Window win, F&& f) {
  std::deque<std::size_t> hi;
  std::deque<std::size_t> lo;
  for (std::size_t j = 0; j <= win.n; ++j) {
    while (!hi.empty() && y[hi.back()] <= y[j]) hi.pop_back();
    hi.push_back(j);
    while (!lo.empty() && y[lo.back()] >= y[j]) lo.pop_back();
    lo.push_back(j);
    if (j < win.w) continue;
    const std::size_t t = j - win.w;
    while (hi.front() < t) hi.pop_front();
    while (lo.front() < t) lo.pop_front();
    f(t, y[hi.front()], y[lo.front()]);
  }
}

}  // namespace

WindowSpec WindowSpec::constant_fraction(double rho) {
  if (!(rho > 0.0 && rho <= 1.0)) throw ArgumentError("rho must lie in (0, 1]");
  return {Rule::ConstantFraction, rho};
}

WindowSpec WindowSpec::power_log(double alpha) {
  if (!std::isfinite(alpha)) throw ArgumentError("alpha must be finite");
  return {Rule::PowerLog, alpha};
}

WindowSpec WindowSpec::fixed(double a) {
  if (!(a > 0.0)) throw ArgumentError("fixed window must be positive");
  return {Rule::Fixed, a};
}

double WindowSpec::window(double T) const {
  if (!(T > 0.0)) throw ArgumentError("T must be positive");
  switch (rule_) {
    case Rule::ConstantFraction:
      return param_ * T;
    case Rule::PowerLog:
      if (!(T > 1.0)) throw DomainError("power-log window needs T > 1");
      return T / std::pow(std::log(T), param_);
    case Rule::Fixed:
      return param_;
  }
  return 0.0;
}

WindowSpec::Flags WindowSpec::check(std::span<const double> T_grid) const {
  Flags flags;
  double prev_a = 0.0;
  double prev_ratio = 0.0;
  for (double T : T_grid) {
    const double a = window(T);
    if (!(a > 0.0 && a <= T)) flags.within_horizon = false;
    if (a < prev_a) flags.window_nondecreasing = false;
    if (T / a < prev_ratio * (1.0 - 1e-12)) flags.ratio_nondecreasing = false;
    prev_a = a;
    prev_ratio = T / a;
  }
  return flags;
}

double loglog(double x, LogLogMode mode) {
  if (mode == LogLogMode::Clipped) {
    return std::log(std::log(std::max(x, std::exp(1.001))));
  }
  if (!(x > std::numbers::e)) throw DomainError("loglog needs an argument > e");
  return std::log(std::log(x));
}

double normalizer(Normalizer kind, double T, double a, LogLogMode mode) {
  if (!(a > 0.0) || !(T > 0.0) || a > T) {
    throw DomainError("normalizer needs 0 < a <= T");
  }
  double v = 0.0;
  switch (kind) {
    case Normalizer::WindowLimsup:
      v = std::sqrt(a * (0.5 * std::log(T / a) + loglog(T, mode)));
      break;
    case Normalizer::WindowLiminfLong:
      v = std::sqrt(a / loglog(T, mode));
      break;
    case Normalizer::WindowLiminfShort:
      v = std::sqrt(a * std::log(T / a));
      break;
    case Normalizer::InfSupLiminf:
      v = a / std::sqrt(T * loglog(T, mode));
      break;
    case Normalizer::InfSupLimsupShort:
      v = a * std::sqrt(loglog(T, mode)) / std::sqrt(T);
      break;
    case Normalizer::IteratedLog:
      v = std::sqrt(T * loglog(T, mode));
      break;
    case Normalizer::LagIncrement:
      v = std::sqrt(a * (std::log(T / a) + 2.0 * loglog(a, mode)));
      break;
    case Normalizer::BrownianWindow:
      v = std::sqrt(a * (std::log(T / a) + loglog(T, mode)));
      break;
    case Normalizer::Chung:
      v = std::sqrt(T / loglog(T, mode));
      break;
  }
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError("normalizer is zero or non-finite at this (T, a)");
  }
  return v;
}

double sup_sup_increment(GridSeries y, double T, double a) {
  const Window win = resolve(y, T, a);
  double best = 0.0;
  sliding_extremes(y.y, win, [&](std::size_t t, double mx, double mn) {
    best = std::max(best, std::max(mx - y.y[t], y.y[t] - mn));
  });
  return best;
}

double one_sided_sup_increment(GridSeries y, double T, double a) {
  const Window win = resolve(y, T, a);
  double best = 0.0;
  sliding_extremes(y.y, win, [&](std::size_t t, double mx, double) {
    best = std::max(best, mx - y.y[t]);
  });
  return best;
}

double one_sided_inf_increment(GridSeries y, double T, double a) {
  const Window win = resolve(y, T, a);
  double best = 0.0;
  sliding_extremes(y.y, win, [&](std::size_t t, double, double mn) {
    best = std::min(best, mn - y.y[t]);
  });
  return best;
}

double inf_sup_increment(GridSeries y, double T, double a) {
  const Window win = resolve(y, T, a);
  double best = std::numeric_limits<double>::infinity();
  sliding_extremes(y.y, win, [&](std::size_t t, double mx, double mn) {
    best = std::min(best, std::max(mx - y.y[t], y.y[t] - mn));
  });
  return best;
}

double lag_inner_sup(GridSeries y, double T, double lag) {
  const Window win = resolve(y, T, lag);
  double best = 0.0;
  for (std::size_t k = win.w; k <= win.n; ++k) {
    best = std::max(best, std::fabs(y.y[k] - y.y[k - win.w]));
  }
  return best;
}

LagProfile lag_sup_increment(GridSeries y, double T, int per_decade) {
  if (!(T >= 3.0)) throw ArgumentError("lag statistic needs T >= 3");
  if (per_decade < 1) throw ArgumentError("per_decade must be >= 1");
  const Window win = resolve(y, T, T);
  std::vector<std::size_t> steps;
  for (int i = 0;; ++i) {
    const auto L = static_cast<std::size_t>(
        std::llround(std::pow(10.0, static_cast<double>(i) / per_decade)));
    if (L >= win.n) break;
    if (steps.empty() || steps.back() != L) steps.push_back(L);
  }
  steps.push_back(win.n);

  const double T_grid = static_cast<double>(win.n) * y.dt;
  LagProfile p;
  for (std::size_t L : steps) {
    const double lag = static_cast<double>(L) * y.dt;
    double inner = 0.0;
    for (std::size_t k = L; k <= win.n; ++k) {
      inner = std::max(inner, std::fabs(y.y[k] - y.y[k - L]));
    }
    const double norm = normalizer(Normalizer::LagIncrement, T_grid, lag, LogLogMode::Clipped);
    p.lags.push_back(lag);
    p.inner_sup.push_back(inner);
    p.normalized.push_back(inner / norm);
    p.max_normalized = std::max(p.max_normalized, inner / norm);
  }
  return p;
}

IncrementStat increment_stat(GridSeries y, double T, double a) {
  IncrementStat s;
  s.T = T;
  s.a = a;
  s.sup_sup = sup_sup_increment(y, T, a);
  s.one_sided_sup = one_sided_sup_increment(y, T, a);
  s.inf_sup = inf_sup_increment(y, T, a);
  s.lag_sup = lag_inner_sup(y, T, a);
  const auto clip = LogLogMode::Clipped;
  s.normalizers.window_limsup = normalizer(Normalizer::WindowLimsup, T, a, clip);
  s.normalizers.window_liminf = a < T
      ? normalizer(Normalizer::WindowLiminfShort, T, a, clip)
      : std::numeric_limits<double>::quiet_NaN();
  s.normalizers.inf_sup_liminf = normalizer(Normalizer::InfSupLiminf, T, a, clip);
  s.normalizers.lag = normalizer(Normalizer::LagIncrement, T, a, clip);
  s.normalizers.brownian_window = normalizer(Normalizer::BrownianWindow, T, a, clip);
  return s;
}

StrassenCheck strassen_partition_check(std::span<const Breakpoint> f) {
  if (f.size() < 2) throw ArgumentError("need at least two breakpoints");
  if (f.front().x != 0.0 || f.back().x != 1.0) {
    throw ArgumentError("breakpoints must run from x = 0 to x = 1");
  }
  if (f.front().f != 0.0) throw ArgumentError("f(0) must be 0");
  StrassenCheck c;
  for (std::size_t i = 1; i < f.size(); ++i) {
    const double dx = f[i].x - f[i - 1].x;
    if (!(dx > 0.0)) throw ArgumentError("breakpoints must be strictly increasing");
    const double df = f[i].f - f[i - 1].f;
    c.sum += df * df / dx;
  }
  c.admissible = c.sum <= 1.0 + 1e-12;
  return c;
}

double strassen_partition_bound(double rho) {
  if (!(rho > 0.0 && rho < 1.0)) throw ArgumentError("rho must lie in (0, 1)");
  std::size_t k = 0;
  while (static_cast<double>(k + 1) * rho < 1.0) ++k;
  const double kr = static_cast<double>(k) * rho;
  return kr + rho * rho / (1.0 - kr);
}

std::vector<Breakpoint> equal_rise_profile(double rho) {
  if (!(rho > 0.0 && rho < 1.0)) throw ArgumentError("rho must lie in (0, 1)");
  std::vector<Breakpoint> f{{0.0, 0.0}};
  std::size_t i = 1;
  for (; static_cast<double>(i) * rho < 1.0; ++i) {
    f.push_back({static_cast<double>(i) * rho, static_cast<double>(i) * rho});
  }
  f.push_back({1.0, static_cast<double>(i) * rho});
  return f;
}

}  // namespace pvlt
