#include "scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "pvlt/errors.hpp"
#include "pvlt/exactdist.hpp"
#include "pvlt/increments.hpp"
#include "pvlt/paths.hpp"
#include "pvlt/pv.hpp"

namespace pvsim {
namespace {

using pvlt::TestResult;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_budget(std::size_t n_paths, std::size_t steps_per_path) {
  if (n_paths == 0 || steps_per_path == 0) throw pvlt::ArgumentError("paths and steps must be positive");
  if (steps_per_path > pvlt::kMaxPathSteps) throw pvlt::CapacityError("too many steps per path");
  if (n_paths > pvlt::kDefaultStepBudget / steps_per_path) {
    throw pvlt::CapacityError("paths * steps exceeds the step budget");
  }
}

double y1_law(double x) { return pvlt::y1_cdf(x); }
double arcsine(double u) { return pvlt::arcsine_cdf(std::clamp(u, 0.0, 1.0)); }
double rayleigh(double x) { return 1.0 - pvlt::meander_endpoint_tail(std::max(x, 0.0)); }
double sup_abs_bridge_cdf(double x) { return x <= 0.0 ? 0.0 : 1.0 - pvlt::kolmogorov_sf(x); }

TestResult ks_check(const std::string& name, const std::vector<double>& x,
                    double (*cdf)(double), double threshold) {
  return pvlt::check_below(name, pvlt::ks_test(x, cdf).D, threshold);
}

/// sup_x (F(x) - F_n(x)): how far the empirical CDF falls below F.
double lower_deviation(std::vector<double> x, double (*cdf)(double)) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    d = std::max(d, cdf(x[i]) - static_cast<double>(i) / n);
  }
  return d;
}

double meander_integral(double z) { return pvlt::meander_integral_cdf(z); }

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

nlohmann::ordered_json base_config(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["command"] = std::string(command_name(c.command));
  j["n_paths"] = c.n_paths;
  j["n_steps"] = c.n_steps;
  j["master_seed"] = c.master_seed;
  if (c.window) {
    j["window"] = c.window_text;
  } else {
    j["window"] = nullptr;
  }
  j["format"] = c.format == Format::Json ? "json" : "csv";
  return j;
}

// ---------------------------------------------------------------- density

Report run_density() {
  Report r;
  std::vector<double> x, dens, cdf, tail;
  for (int k = -160; k <= 160; ++k) {
    const double v = k / 20.0;
    x.push_back(v);
    dens.push_back(pvlt::y1_density(v));
    cdf.push_back(pvlt::y1_cdf(v));
    tail.push_back(v >= 1.0 ? pvlt::y1_tail_upper(v) : kNaN);
  }

  r.tests.push_back(pvlt::check_below("cdf_at_zero_error", std::fabs(pvlt::y1_cdf(0.0) - 0.5), 1e-12));

  using Quad = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double half = Quad::integrate([](double v) { return pvlt::y1_density(v); }, 0.0, kInf, 15, 1e-13);
  r.tests.push_back(pvlt::check_below("density_integral_error", std::fabs(2.0 * half - 1.0), 1e-8));

  double dual_gap = 0.0;
  for (double z : {0.5, 1.0, 2.0, 5.0, 10.0}) {
    const double a = pvlt::meander_integral_cdf(z, pvlt::MeanderForm::PolynomialGaussian);
    const double b = pvlt::meander_integral_cdf(z, pvlt::MeanderForm::DualTheta);
    dual_gap = std::max(dual_gap, std::fabs(a - b));
  }
  r.tests.push_back(pvlt::check_below("meander_forms_max_gap", dual_gap, 1e-10));

  double min_margin = kInf;
  for (double z = 1.0; z <= 8.0; z += 0.05) {
    min_margin = std::min(min_margin, pvlt::y1_tail_upper(z) - pvlt::y1_sf(z));
  }
  r.tests.push_back(pvlt::check_above("tail_bound_min_margin", min_margin, 0.0));

  r.columns = {{"x", std::move(x)}, {"density", std::move(dens)}, {"cdf", std::move(cdf)},
               {"tail_upper", std::move(tail)}};
  return r;
}

// ---------------------------------------------------------------- fact 2.1

void add_tail_checks(Report& r, const std::vector<double>& y, const std::string& prefix) {
  for (double z : {1.0, 1.5, 2.0, 2.5}) {
    const double bound = std::exp(-z * z / 8.0);
    const auto bc = pvlt::bound_check(y, z, bound, pvlt::Tail::AtLeast, pvlt::BoundSide::Upper, 0.99);
    TestResult t = pvlt::check_below(prefix + "_tail_z" + label(z), bc.ci_low, bound);
    t.pass = bc.pass;
    r.tests.push_back(t);
  }
}

Report run_fact21(const RunConfig& c) {
  const auto s = sample_fact21(c.n_paths, c.n_steps, c.master_seed, c.workers);
  Report r;
  const double n = static_cast<double>(c.n_paths);

  r.tests.push_back(ks_check("y1_ks", s.y1, y1_law, 0.015));
  r.tests.push_back(pvlt::note("y1_eps0_ks", pvlt::ks_test(s.y1_eps0, y1_law).D));
  r.tests.push_back(ks_check("last_zero_arcsine_ks", s.g, arcsine, 0.01));
  r.tests.push_back(ks_check("meander_end_rayleigh_ks", s.m1, rayleigh, 0.01));
  r.tests.push_back(pvlt::check_below("meander_integral_ks_lower",
                                      lower_deviation(s.meander_integral, meander_integral),
                                      std::sqrt(std::log(1000.0) / 2.0) / std::sqrt(n)));
  r.tests.push_back(pvlt::note("meander_integral_ks_two_sided",
                               pvlt::ks_test(s.meander_integral, meander_integral).D));
  r.tests.push_back(ks_check("bridge_sup_kolmogorov_ks", s.bridge_sup, sup_abs_bridge_cdf, 0.01));
  add_tail_checks(r, s.y1, "y1");
  r.tests.push_back(pvlt::check_below("abs_corr_last_zero_meander_end", std::fabs(pvlt::pearson(s.g, s.m1)), 0.01));
  r.tests.push_back(pvlt::check_below("abs_corr_last_zero_bridge_sup",
                                      std::fabs(pvlt::pearson(s.g, s.bridge_sup)), 0.01));

  r.columns = {{"y1", s.y1},
               {"y1_eps0", s.y1_eps0},
               {"g", s.g},
               {"m1", s.m1},
               {"meander_integral", s.meander_integral},
               {"bridge_sup", s.bridge_sup}};
  return r;
}

// ---------------------------------------------------------------- eta skeleton

Report run_eta(const RunConfig& c) {
  const auto s = sample_eta(c.n_paths, c.n_steps, c.master_seed, c.workers);
  Report r;
  r.tests.push_back(pvlt::check_above("record_count", static_cast<double>(s.z_value.size()), 5e4 - 0.5));
  r.tests.back().relation = ">=";
  r.tests.back().threshold = 5e4;
  r.tests.push_back(pvlt::check_below(
      "eta_gap_ks", pvlt::ks_test(s.eta_gap, pvlt::eta_gap_cdf, s.censor_at).D, 0.01));
  r.tests.push_back(ks_check("z_value_ks", s.z_value, y1_law, 0.015));
  const auto perm = pvlt::successive_pair_independence(s.z_value, s.eta_gap, 1999, c.master_seed);
  r.tests.push_back(pvlt::check_above("successive_pairs_permutation_p", perm.p, 0.001));
  r.tests.push_back(pvlt::note("successive_pairs_max_abs_spearman", perm.statistic));
  r.extra["censoring"] = {{"horizon", s.horizon}, {"censor_at", s.censor_at}};
  r.columns = {{"z_value", s.z_value}, {"eta_gap", s.eta_gap}};
  return r;
}

// ---------------------------------------------------------------- estimators

Report run_pv_study(const RunConfig& c) {
  const auto s = sample_pv_study(c.n_paths, c.n_steps, c.master_seed, c.workers);
  Report r;
  r.tests.push_back(pvlt::check_below("riemann_vs_local_time_ks", pvlt::ks_two_sample(s.riemann, s.local_time).D, 0.01));
  r.tests.push_back(ks_check("riemann_ks", s.riemann, y1_law, 0.015));
  r.tests.push_back(ks_check("local_time_ks", s.local_time, y1_law, 0.015));
  r.tests.push_back(pvlt::note("riemann_eps0_ks", pvlt::ks_test(s.riemann_eps0, y1_law).D));
  r.tests.push_back(pvlt::note("riemann_coarse4_ks", pvlt::ks_test(s.riemann_coarse4, y1_law).D));
  r.tests.push_back(pvlt::note("riemann_coarse16_ks", pvlt::ks_test(s.riemann_coarse16, y1_law).D));
  r.columns = {{"riemann_eps0", s.riemann_eps0},
               {"riemann", s.riemann},
               {"local_time", s.local_time},
               {"riemann_coarse4", s.riemann_coarse4},
               {"riemann_coarse16", s.riemann_coarse16}};
  return r;
}

// ---------------------------------------------------------------- increments

Report run_increments(const RunConfig& c) {
  check_budget(c.n_paths, c.n_steps);
  const double T = static_cast<double>(c.n_steps);
  const pvlt::WindowSpec& window = *c.window;
  const double a = window.window(T);
  if (!(a >= 1.0 && a <= T)) throw pvlt::ArgumentError("window must cover at least one step and at most the horizon");
  if (T < 16.0) throw pvlt::ArgumentError("increments needs at least 16 steps");

  struct Row {
    double sup_sup, large, liminf_long, inf_sup, lag, bm;
  };
  const double sqrt8 = std::sqrt(8.0);
  const auto rows = pvlt::map_paths<Row>(c.n_paths, c.master_seed, c.workers,
                                         [&](std::size_t, std::uint64_t seed) {
    const auto w = pvlt::sample_brownian(c.n_steps, T, seed);
    const auto y = pvlt::PvEstimator::riemann().evaluate(w);
    const auto st = pvlt::increment_stat(y, T, a);
    const double long_norm = pvlt::normalizer(pvlt::Normalizer::WindowLiminfLong, T, a, pvlt::LogLogMode::Clipped);
    const double short_norm = a < T ? st.normalizers.window_liminf : kNaN;
    const auto lag = pvlt::lag_sup_increment(y, T);
    const double bm = pvlt::sup_sup_increment(w, T, a) / st.normalizers.brownian_window;
    return Row{st.sup_sup / (sqrt8 * st.normalizers.window_limsup),
               st.sup_sup / (2.0 * short_norm),
               st.sup_sup / long_norm,
               st.inf_sup / (st.normalizers.inf_sup_liminf / std::numbers::sqrt2),
               lag.max_normalized / 2.0,
               bm / std::numbers::sqrt2};
  });

  Report r;
  std::vector<double> cols[6];
  for (const auto& row : rows) {
    cols[0].push_back(row.sup_sup);
    cols[1].push_back(row.large);
    cols[2].push_back(row.liminf_long);
    cols[3].push_back(row.inf_sup);
    cols[4].push_back(row.lag);
    cols[5].push_back(row.bm);
  }

  std::vector<double> grid;
  for (double t = 16.0; t <= T; t *= 2.0) grid.push_back(t);
  const auto flags = window.check(grid);
  r.tests.push_back(pvlt::check_above("window_within_horizon", flags.within_horizon, 0.5));
  r.tests.push_back(pvlt::check_above("window_nondecreasing", flags.window_nondecreasing, 0.5));
  r.tests.push_back(pvlt::check_above("window_ratio_nondecreasing", flags.ratio_nondecreasing, 0.5));

  const pvlt::Breakpoint identity[] = {{0.0, 0.0}, {1.0, 1.0}};
  const pvlt::Breakpoint doubled[] = {{0.0, 0.0}, {1.0, 2.0}};
  const auto s1 = pvlt::strassen_partition_check(identity);
  const auto s2 = pvlt::strassen_partition_check(doubled);
  r.tests.push_back(pvlt::check_within("strassen_identity_sum", s1.sum, 1.0, 1.0));
  r.tests.push_back(pvlt::check_above("strassen_identity_admissible", s1.admissible, 0.5));
  r.tests.push_back(pvlt::check_within("strassen_doubled_sum", s2.sum, 4.0, 4.0));
  r.tests.push_back(pvlt::check_below("strassen_doubled_admissible", s2.admissible, 0.5));
  for (double rho : {0.1, 0.3, 0.5}) {
    r.tests.push_back(pvlt::check_above("strassen_partition_bound_rho" + label(rho),
                                        pvlt::strassen_partition_bound(rho), 1.0 - 1e-12));
    r.tests.back().threshold = 1.0;
    r.tests.back().relation = ">=";
  }

  const char* names[6] = {"sup_sup_ratio", "large_increment_ratio", "liminf_long_ratio",
                          "inf_sup_ratio", "lag_ratio", "bm_ratio"};
  for (int k = 0; k < 6; ++k) {
    if (k == 1 && !(a < T)) continue;
    r.tests.push_back(pvlt::note(std::string(names[k]) + "_median", pvlt::median(cols[k])));
  }
  r.extra["window_at_horizon"] = a;
  for (int k = 0; k < 6; ++k) r.columns.push_back({names[k], std::move(cols[k])});
  return r;
}

// ---------------------------------------------------------------- trend

Report run_trend(const RunConfig& c) {
  const auto s = sample_trend(c.n_paths, c.n_steps, *c.window, c.master_seed, c.workers);
  const auto scan = pvlt::summarize_trend(s.iterated_log, s.T_grid, std::sqrt(8.0));
  Report r;
  r.tests.push_back(pvlt::check_within("iterated_log_running_max_q95", scan.running_max_q95, 0.4, 1.3));
  r.tests.push_back(pvlt::check_within("bm_window_median", pvlt::median(s.bm_window), 1.0, 2.0));
  r.tests.push_back(pvlt::check_within("inf_sup_window_q95", pvlt::quantile(s.inf_sup_window, 0.95), 0.2, 1.0));
  r.tests.push_back(pvlt::note("iterated_log_running_max_median", scan.running_max_median));
  r.tests.push_back(pvlt::note("inf_sup_window_median", pvlt::median(s.inf_sup_window)));
  r.tests.push_back(pvlt::note("chung_bm_running_min_median", pvlt::median(s.chung_bm)));
  r.tests.push_back(pvlt::note("chung_y_running_min_median", pvlt::median(s.chung_y)));

  auto points = nlohmann::ordered_json::array();
  for (const auto& p : scan.points) {
    points.push_back({{"T", p.T}, {"q05", p.q05}, {"median", p.median}, {"q95", p.q95}});
  }
  r.extra["trend"] = {{"statistic", "Y(T) / sqrt(8 T loglog T)"}, {"points", std::move(points)}};

  r.columns = {{"iterated_log_running_max", scan.running_max},
               {"bm_window", s.bm_window},
               {"inf_sup_window", s.inf_sup_window},
               {"chung_bm_running_min", s.chung_bm},
               {"chung_y_running_min", s.chung_y}};
  return r;
}

// ---------------------------------------------------------------- small deviations

Report run_smalldev(const RunConfig& c) {
  const auto sup = sample_sup_abs_y(c.n_paths, c.n_steps, c.master_seed, c.workers);
  const std::vector<double> z_grid{0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  const auto p = pvlt::empirical_below(sup, z_grid);
  Report r;
  const auto fit = pvlt::small_deviation_shape(p);
  r.tests.push_back(pvlt::check_above("shape_slope", fit.slope, 0.0));
  r.tests.push_back(pvlt::check_above("shape_r_squared", fit.r_squared, 0.9));
  r.tests.push_back(pvlt::note("shape_slope_low", fit.slope_low));
  r.tests.push_back(pvlt::note("shape_slope_high", fit.slope_high));
  r.tests.push_back(pvlt::note("shape_points", static_cast<double>(fit.n_points)));
  auto probs = nlohmann::ordered_json::object();
  for (const auto& [z, v] : p) probs[label(z)] = v;
  r.extra["p_below"] = std::move(probs);
  r.extra["fit"] = {{"slope", fit.slope}, {"intercept", fit.intercept}, {"r_squared", fit.r_squared}};
  r.columns = {{"sup_abs_y", sup}};
  return r;
}

}  // namespace

Fact21Samples sample_fact21(std::size_t n_paths, std::size_t n_steps, std::uint64_t seed,
                            unsigned workers, Fact21Parts parts) {
  check_budget(n_paths, n_steps);
  struct Row {
    double y1 = 0, y1_eps0 = 0, g = 0, m1 = 0, mi = 0, bs = 0;
  };
  const auto rows = pvlt::map_paths<Row>(n_paths, seed, workers, [&](std::size_t, std::uint64_t s) {
    for (std::uint64_t attempt = 0;; ++attempt) {
      const auto w = pvlt::sample_brownian(n_steps, 1.0, attempt == 0 ? s : pvlt::mix64(s + attempt));
      Row row;
      try {
        if (parts.decomposition) {
          const auto d = pvlt::decompose_at_last_zero(w);
          row.g = d.g;
          row.m1 = d.meander.back();
          row.mi = pvlt::meander_reciprocal_integral(d.meander);
          row.bs = pvlt::bridge_sup_abs(w, d.g);
        }
      } catch (const pvlt::NoZeroCrossing&) {
        continue;
      }
      if (parts.y1) row.y1 = pvlt::PvEstimator::riemann().evaluate(w).final_value();
      if (parts.y1_eps0) row.y1_eps0 = pvlt::pv_riemann(w, 0.0).final_value();
      return row;
    }
  });
  Fact21Samples out;
  auto take = [&](bool on, std::vector<double>& dst, double Row::*field) {
    if (!on) return;
    dst.reserve(rows.size());
    for (const auto& row : rows) dst.push_back(row.*field);
  };
  take(parts.y1, out.y1, &Row::y1);
  take(parts.y1_eps0, out.y1_eps0, &Row::y1_eps0);
  take(parts.decomposition, out.g, &Row::g);
  take(parts.decomposition, out.m1, &Row::m1);
  take(parts.decomposition, out.meander_integral, &Row::mi);
  take(parts.decomposition, out.bridge_sup, &Row::bs);
  return out;
}

EtaSamples sample_eta(std::size_t n_paths, std::size_t steps_per_unit, std::uint64_t seed,
                      unsigned workers, double horizon, double censor_at) {
  if (!(censor_at > 1.0 && censor_at + 1.0 <= horizon)) {
    throw pvlt::ArgumentError("need 1 < censor_at <= horizon - 1");
  }
  const auto n_steps = static_cast<std::size_t>(std::llround(horizon * static_cast<double>(steps_per_unit)));
  check_budget(n_paths, n_steps);
  const double last_start = horizon - censor_at;
  struct Pair {
    double z, gap;
  };
  const auto per_path = pvlt::map_paths<std::vector<Pair>>(
      n_paths, seed, workers, [&](std::size_t, std::uint64_t s) {
        const auto w = pvlt::sample_brownian(n_steps, horizon, s);
        const auto scan = pvlt::scan_eta(w, pvlt::PvEstimator::riemann());
        std::vector<Pair> out;
        for (const auto& rec : scan.records) {
          const double start = rec.eta_time - rec.eta_gap;
          if (start > last_start) break;
          out.push_back({rec.z_value, rec.eta_gap > censor_at ? kInf : rec.eta_gap});
        }
        if (scan.open_z && scan.open_start <= last_start) out.push_back({*scan.open_z, kInf});
        return out;
      });
  EtaSamples s;
  s.horizon = horizon;
  s.censor_at = censor_at;
  for (const auto& v : per_path) {
    for (const auto& p : v) {
      s.z_value.push_back(p.z);
      s.eta_gap.push_back(p.gap);
    }
  }
  return s;
}

PvStudySamples sample_pv_study(std::size_t n_paths, std::size_t n_steps, std::uint64_t seed,
                               unsigned workers) {
  check_budget(n_paths, n_steps);
  if (n_steps % 16 != 0) throw pvlt::ArgumentError("pv-study needs a step count divisible by 16");
  struct Row {
    double eps0, riemann, local, c4, c16;
  };
  const auto rows = pvlt::map_paths<Row>(n_paths, seed, workers, [&](std::size_t, std::uint64_t s) {
    const auto w = pvlt::sample_brownian(n_steps, 1.0, s);
    const auto est = pvlt::PvEstimator::riemann();
    return Row{pvlt::pv_riemann(w, 0.0).final_value(), est.evaluate(w).final_value(),
               pvlt::pv_localtime(w, 1.0, pvlt::default_bin_width(w.dt())),
               est.evaluate(pvlt::coarsen(w, 4)).final_value(),
               est.evaluate(pvlt::coarsen(w, 16)).final_value()};
  });
  PvStudySamples out;
  for (const auto& r : rows) {
    out.riemann_eps0.push_back(r.eps0);
    out.riemann.push_back(r.riemann);
    out.local_time.push_back(r.local);
    out.riemann_coarse4.push_back(r.c4);
    out.riemann_coarse16.push_back(r.c16);
  }
  return out;
}

std::vector<double> sample_sup_abs_y(std::size_t n_paths, std::size_t n_steps, std::uint64_t seed,
                                     unsigned workers) {
  check_budget(n_paths, n_steps);
  return pvlt::map_paths<double>(n_paths, seed, workers, [&](std::size_t, std::uint64_t s) {
    const auto y = pvlt::PvEstimator::riemann().evaluate(pvlt::sample_brownian(n_steps, 1.0, s));
    double m = 0.0;
    for (double v : y.y_values) m = std::max(m, std::fabs(v));
    return m;
  });
}

std::vector<double> trend_grid(double horizon) {
  if (!(horizon >= 16.0)) throw pvlt::ArgumentError("trend needs a horizon of at least 16");
  const double first = std::max(16.0, horizon / 1024.0);
  std::vector<double> grid;
  double t = std::exp2(std::ceil(std::log2(first)));
  for (; t <= horizon; t *= 2.0) grid.push_back(t);
  if (grid.empty() || grid.back() < horizon) grid.push_back(horizon);
  return grid;
}

TrendSamples sample_trend(std::size_t n_paths, std::size_t n_steps, const pvlt::WindowSpec& window,
                          std::uint64_t seed, unsigned workers) {
  check_budget(n_paths, n_steps);
  const double T = static_cast<double>(n_steps);
  TrendSamples out;
  out.T_grid = trend_grid(T);
  const double a_bm = T / 256.0;
  const double a = window.window(T);
  if (!(a_bm >= 1.0)) throw pvlt::ArgumentError("trend needs at least 256 steps");
  if (!(a >= 1.0 && a <= T)) throw pvlt::ArgumentError("window must cover at least one step and at most the horizon");
  const auto clip = pvlt::LogLogMode::Clipped;
  const double chung_target = std::numbers::pi / std::sqrt(8.0);

  struct Row {
    std::vector<double> il;
    double bm, inf_sup, chung_bm, chung_y;
  };
  const auto rows = pvlt::map_paths<Row>(n_paths, seed, workers, [&](std::size_t, std::uint64_t s) {
    const auto w = pvlt::sample_brownian(n_steps, T, s);
    const auto y = pvlt::PvEstimator::riemann().evaluate(w);
    Row row;
    for (double t : out.T_grid) {
      row.il.push_back(y.at(t) / pvlt::normalizer(pvlt::Normalizer::IteratedLog, t, t, clip));
    }
    row.bm = pvlt::sup_sup_increment(w, T, a_bm) / pvlt::normalizer(pvlt::Normalizer::BrownianWindow, T, a_bm, clip);
    row.inf_sup = pvlt::inf_sup_increment(y, T, a) /
                  (pvlt::normalizer(pvlt::Normalizer::IteratedLog, T, T, clip) * (a / T) * std::sqrt(8.0));

    row.chung_bm = kInf;
    row.chung_y = kInf;
    double sw = 0.0, sy = 0.0;
    std::size_t k = 0;
    for (double t : out.T_grid) {
      const auto upto = static_cast<std::size_t>(std::llround(t));
      for (; k <= upto; ++k) {
        sw = std::max(sw, std::fabs(w[k]));
        sy = std::max(sy, std::fabs(y.y_values[k]));
      }
      const double norm = pvlt::normalizer(pvlt::Normalizer::Chung, t, t, clip);
      row.chung_bm = std::min(row.chung_bm, sw / norm / chung_target);
      row.chung_y = std::min(row.chung_y, sy / norm);
    }
    return row;
  });
  for (const auto& r : rows) {
    out.iterated_log.push_back(r.il);
    out.bm_window.push_back(r.bm);
    out.inf_sup_window.push_back(r.inf_sup);
    out.chung_bm.push_back(r.chung_bm);
    out.chung_y.push_back(r.chung_y);
  }
  return out;
}

Report run_scenario(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  Report r;
  switch (config.command) {
    case Command::Density: r = run_density(); break;
    case Command::VerifyFact21: r = run_fact21(config); break;
    case Command::VerifyEta: r = run_eta(config); break;
    case Command::PvStudy: r = run_pv_study(config); break;
    case Command::Increments: r = run_increments(config); break;
    case Command::Trend: r = run_trend(config); break;
    case Command::SmallDev: r = run_smalldev(config); break;
  }
  r.config = base_config(config);
  if (config.command == Command::Density) {
    r.config["n_paths"] = nullptr;
    r.config["n_steps"] = nullptr;
  }
  r.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace pvsim
