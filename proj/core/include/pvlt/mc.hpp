#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "pvlt/errors.hpp"
#include "pvlt/rng.hpp"

namespace pvlt {

/// Runs fn(i, stream_seed(master_seed, i)) for i in [0, n) on `workers`
/// threads. Results are stored by index, so the output never depends on
/// scheduling. The first exception thrown by any call is rethrown.
template <class T, class F>
std::vector<T> map_paths(std::size_t n, std::uint64_t master_seed, unsigned workers, F&& fn) {
  if (workers == 0) throw ArgumentError("workers must be >= 1");
  std::vector<T> out(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  constexpr std::size_t kChunk = 64;

  auto work = [&] {
    for (;;) {
      const std::size_t begin = next.fetch_add(kChunk);
      if (begin >= n) return;
      const std::size_t end = std::min(n, begin + kChunk);
      for (std::size_t i = begin; i < end; ++i) {
        try {
          out[i] = fn(i, stream_seed(master_seed, i));
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next.store(n);
          return;
        }
      }
    }
  };

  const auto threads = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

struct TestResult {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  double threshold_high = std::numeric_limits<double>::quiet_NaN();  ///< "in" only
  std::string relation;       ///< "<", ">", "in" or "info"
  bool pass = false;
  bool informational = false;  ///< reported, never counted as a failure
};

TestResult check_below(std::string name, double statistic, double threshold);
TestResult check_above(std::string name, double statistic, double threshold);
/// lo <= statistic <= hi
TestResult check_within(std::string name, double statistic, double lo, double hi);
TestResult note(std::string name, double statistic);

struct EnsembleReport {
  std::uint64_t master_seed = 0;
  std::size_t n_paths = 0;
  std::size_t n_steps = 0;
  std::string statistic_name;
  std::vector<double> samples;
  std::vector<TestResult> tests;
  double runtime_seconds = 0.0;

  bool all_pass() const noexcept {
    return std::all_of(tests.begin(), tests.end(),
                       [](const TestResult& t) { return t.pass || t.informational; });
  }
};

/// Total grid steps an ensemble may request.
inline constexpr std::size_t kDefaultStepBudget = std::size_t{1} << 36;

struct EnsembleSpec {
  std::string statistic_name;
  std::size_t n_paths = 0;
  std::size_t n_steps = 0;
  std::uint64_t master_seed = 0;
  unsigned workers = 1;
  std::size_t max_total_steps = kDefaultStepBudget;
};

/// samples[i] = statistic(stream_seed(master_seed, i)).
/// CapacityError when n_paths * n_steps exceeds max_total_steps.
EnsembleReport run_ensemble(const EnsembleSpec& spec,
                            const std::function<double(std::uint64_t seed)>& statistic);

struct KsResult {
  double D = 0.0;
  double p = 1.0;
};

/// P(K > lambda) for the Kolmogorov distribution, series cut at 1e-12.
double kolmogorov_sf(double lambda);

/// One-sample KS against a continuous CDF. With a finite `upper`, samples
/// >= upper are treated as censored and the sup runs over x < upper only.
KsResult ks_test(std::span<const double> samples, const std::function<double(double)>& cdf,
                 double upper = std::numeric_limits<double>::infinity());

/// Two-sample KS; p uses the effective size n m / (n + m).
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Which event the probability refers to.
enum class Tail { AtLeast, AtMost };  ///< P(X >= z) or P(X <= z)
/// Whether `bound` claims to be an upper or a lower bound for that probability.
enum class BoundSide { Upper, Lower };

struct BoundCheck {
  double p_hat = 0.0;
  double ci_low = 0.0;   ///< one-sided Wilson limit on the tested side
  double ci_high = 1.0;
  std::size_t hits = 0;
  std::size_t n = 0;
  bool pass = false;
};

/// One-sided Wilson score check at `confidence`. An upper bound passes iff
/// the lower confidence limit does not exceed it; a lower bound passes iff
/// the upper confidence limit reaches it.
BoundCheck bound_check(std::span<const double> samples, double z, double bound, Tail tail,
                       BoundSide side, double confidence);

/// Wilson interval for hits out of n at two-sided normal quantile `zq`.
std::pair<double, double> wilson_interval(std::size_t hits, std::size_t n, double zq);

struct ShapeFit {
  double slope = 0.0;      ///< of log P against -1/z^2
  double intercept = 0.0;
  double r_squared = 0.0;
  double slope_low = 0.0;  ///< slope -/+ 1.96 standard errors
  double slope_high = 0.0;
  std::size_t n_points = 0;
  std::vector<double> dropped_z;
  bool slope_positive() const noexcept { return slope > 0.0; }
};

/// Least-squares fit of log P(z) against -1/z^2. Zero probabilities are
/// dropped; fewer than 4 remaining points raise InsufficientData.
ShapeFit small_deviation_shape(const std::map<double, double>& p_by_z);

/// Empirical P(X < z) for each z of the grid.
std::map<double, double> empirical_below(std::span<const double> samples,
                                         std::span<const double> z_grid);

/// Type-7 (linear interpolation) sample quantile.
double quantile(std::span<const double> samples, double q);
double median(std::span<const double> samples);
double mean(std::span<const double> samples);

double pearson(std::span<const double> x, std::span<const double> y);
double spearman(std::span<const double> x, std::span<const double> y);
/// Average ranks (ties share the mean rank), 1-based.
std::vector<double> ranks(std::span<const double> x);

struct PermutationResult {
  double statistic = 0.0;
  double p = 1.0;
};

/// Serial independence of the pair sequence (a_i, b_i): the statistic is the
/// largest |Spearman| between a pair and its successor over all four
/// component combinations; p is from permuting the pair order.
PermutationResult successive_pair_independence(std::span<const double> a,
                                               std::span<const double> b,
                                               std::size_t n_permutations,
                                               std::uint64_t seed);

struct TrendPoint {
  double T = 0.0;
  double q05 = 0.0;
  double median = 0.0;
  double q95 = 0.0;
};

struct TrendScan {
  std::vector<TrendPoint> points;
  std::vector<double> running_max;  ///< per path: max over the grid
  double running_max_q05 = 0.0;
  double running_max_median = 0.0;
  double running_max_q95 = 0.0;
};

/// values[path][j] is already divided by the normalizer at T_grid[j]; each
/// entry is further divided by `target`.
TrendScan summarize_trend(const std::vector<std::vector<double>>& values,
                          std::span<const double> T_grid, double target);

struct TrendSpec {
  std::vector<double> T_grid;
  std::function<double(double T)> normalizer;
  double target = 1.0;
  std::size_t n_paths = 0;
  std::uint64_t master_seed = 0;
  unsigned workers = 1;
};

/// `recipe(seed, T_grid)` returns the raw statistic at every T of the grid
/// from one trajectory; each is divided by normalizer(T) and target.
TrendScan trend_scan(const TrendSpec& spec,
                     const std::function<std::vector<double>(std::uint64_t seed,
                                                             std::span<const double> T_grid)>& recipe);

}  // namespace pvlt
