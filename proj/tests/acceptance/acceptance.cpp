// Acceptance runner: one PASS/FAIL line per criterion, details indented below.
//   acceptance            run every criterion
//   acceptance --only N   run criterion N (1..12)
// Exit status is 0 iff every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <thread>
#include <unistd.h>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "oracles.hpp"
#include "pvlt/exactdist.hpp"
#include "pvlt/increments.hpp"
#include "pvlt/mc.hpp"
#include "pvlt/rng.hpp"
#include "scenarios.hpp"

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kSeed = 20240601;

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  void info(const std::string& what) { details.push_back("info " + what); }
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::string fmt(const char* f, double a, double b, double c) {
  char buf[192];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

const pvlt::TestResult& find_test(const pvsim::Report& r, const std::string& name) {
  for (const auto& t : r.tests)
    if (t.name == name) return t;
  throw std::runtime_error("report has no test " + name);
}

void require_test(Outcome& out, const pvsim::Report& r, const std::string& name) {
  const auto& t = find_test(r, name);
  std::string rel = t.relation == "in" ? fmt("in [%g, %g]", t.threshold, t.threshold_high)
                                       : t.relation + fmt(" %g", t.threshold);
  out.require(t.pass, name + fmt(" = %.6g ", t.statistic) + rel);
}

// Shared by criteria 1 to 3.
const pvsim::Fact21Samples& fact21_ensemble(double* runtime = nullptr) {
  static std::optional<pvsim::Fact21Samples> cached;
  static double took = 0.0;
  if (!cached) {
    const auto t0 = Clock::now();
    cached = pvsim::sample_fact21(100000, std::size_t{1} << 14, kSeed, workers());
    took = seconds_since(t0);
  }
  if (runtime) *runtime = took;
  return *cached;
}

Outcome y1_law() {
  Outcome out;
  double runtime = 0.0;
  const auto& s = fact21_ensemble(&runtime);
  const auto cdf = [](double x) { return pvlt::y1_cdf(x); };
  const double d_eps0 = pvlt::ks_test(s.y1_eps0, cdf).D;
  out.require(d_eps0 < 0.015, fmt("KS(riemann eps=0, y1_cdf) = %.5f < 0.015", d_eps0));
  out.info(fmt("KS(riemann default cutoff, y1_cdf) = %.5f", pvlt::ks_test(s.y1, cdf).D));
  out.info(fmt("ensemble runtime %.1f s on %g worker(s), budget 180 s on 4 cores", runtime, workers()));
  return out;
}

Outcome tail_bound() {
  Outcome out;
  const auto& s = fact21_ensemble();
  for (const auto* sample : {&s.y1_eps0, &s.y1}) {
    const char* which = sample == &s.y1_eps0 ? "eps=0" : "default cutoff";
    for (double z : {1.0, 1.5, 2.0, 2.5}) {
      const double bound = std::exp(-z * z / 8.0);
      const auto bc = pvlt::bound_check(*sample, z, bound, pvlt::Tail::AtLeast, pvlt::BoundSide::Upper, 0.99);
      const std::string line = std::string(which) +
                               fmt(" z=%g: P_hat=%.5f, lower 99%% limit %.5f", z, bc.p_hat, bc.ci_low) +
                               fmt(" <= bound %.5f", bound);
      out.require(bc.pass, line);
    }
  }
  return out;
}

Outcome decomposition() {
  Outcome out;
  const auto& s = fact21_ensemble();
  const double d_g = pvlt::ks_test(s.g, [](double u) { return pvlt::arcsine_cdf(std::clamp(u, 0.0, 1.0)); }).D;
  const double d_m = pvlt::ks_test(s.m1, [](double x) {
                       return 1.0 - pvlt::meander_endpoint_tail(std::max(x, 0.0));
                     }).D;
  out.require(d_g < 0.01, fmt("KS(last zero, arcsine) = %.5f < 0.01", d_g));
  out.require(d_m < 0.01, fmt("KS(meander end, Rayleigh) = %.5f < 0.01", d_m));
  const double c1 = std::fabs(pvlt::pearson(s.g, s.m1));
  const double c2 = std::fabs(pvlt::pearson(s.g, s.bridge_sup));
  out.require(c1 < 0.01, fmt("|corr(last zero, meander end)| = %.5f < 0.01", c1));
  out.require(c2 < 0.01, fmt("|corr(last zero, bridge sup)| = %.5f < 0.01", c2));
  return out;
}

Outcome meander_forms() {
  Outcome out;
  for (double z : {0.5, 1.0, 2.0, 5.0, 10.0}) {
    const double a = pvlt::meander_integral_cdf(z, pvlt::MeanderForm::PolynomialGaussian);
    const double b = pvlt::meander_integral_cdf(z, pvlt::MeanderForm::DualTheta);
    out.require(std::fabs(a - b) < 1e-10, fmt("z=%g: |difference| = %.3g < 1e-10", z, std::fabs(a - b)));
  }
  for (auto form : {pvlt::MeanderForm::PolynomialGaussian, pvlt::MeanderForm::DualTheta}) {
    volatile double sink = 0.0;
    const int reps = 2000;
    const auto t0 = Clock::now();
    for (int i = 0; i < reps; ++i) sink = sink + pvlt::meander_integral_cdf(0.5 + 9.5 * (i % 97) / 96.0, form);
    const double per = seconds_since(t0) / reps;
    const char* name = form == pvlt::MeanderForm::DualTheta ? "dual theta" : "polynomial gaussian";
    out.require(per < 1e-3, std::string(name) + fmt(" form: %.3g s per point < 1e-3", per));
  }
  return out;
}

Outcome normalization() {
  Outcome out;
  using Quad = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double half = Quad::integrate([](double x) { return pvlt::y1_density(x); }, 0.0,
                                      std::numeric_limits<double>::infinity(), 20, 1e-14);
  const double e1 = std::fabs(2.0 * half - 1.0);
  const double e2 = std::fabs(pvlt::y1_cdf(0.0) - 0.5);
  out.require(e1 < 1e-8, fmt("|integral of density - 1| = %.3g < 1e-8", e1));
  out.require(e2 < 1e-12, fmt("|y1_cdf(0) - 1/2| = %.3g < 1e-12", e2));
  return out;
}

pvsim::Report scenario(pvsim::Command cmd, std::size_t paths, std::size_t steps) {
  pvsim::RunConfig c;
  c.command = cmd;
  c.n_paths = paths;
  c.n_steps = steps;
  c.master_seed = kSeed;
  c.workers = workers();
  return pvsim::run_scenario(pvsim::with_defaults(c));
}

Outcome eta_skeleton() {
  Outcome out;
  const auto r = scenario(pvsim::Command::VerifyEta, 20000, 4096);
  require_test(out, r, "record_count");
  require_test(out, r, "eta_gap_ks");
  require_test(out, r, "z_value_ks");
  require_test(out, r, "successive_pairs_permutation_p");
  return out;
}

Outcome estimator_agreement() {
  Outcome out;
  const auto r = scenario(pvsim::Command::PvStudy, 10000, std::size_t{1} << 14);
  require_test(out, r, "riemann_vs_local_time_ks");
  out.info(fmt("KS(riemann, y1_cdf) = %.5f", find_test(r, "riemann_ks").statistic));
  out.info(fmt("KS(local time, y1_cdf) = %.5f", find_test(r, "local_time_ks").statistic));
  return out;
}

Outcome small_deviation() {
  Outcome out;
  const auto r = scenario(pvsim::Command::SmallDev, 200000, 4096);
  require_test(out, r, "shape_slope");
  require_test(out, r, "shape_r_squared");
  return out;
}

Outcome brute_force() {
  Outcome out;
  std::uint64_t state = kSeed;
  pvlt::NormalSource src(kSeed);
  std::size_t mismatches = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t len = 2 + oracle::splitmix64_next(state) % 63;
    std::vector<double> y(len);
    for (double& v : y) v = src();
    const std::size_t n = len - 1;
    const std::size_t w = 1 + oracle::splitmix64_next(state) % n;
    const pvlt::GridSeries s(y, 1.0);
    const double T = static_cast<double>(n), a = static_cast<double>(w);
    mismatches += pvlt::sup_sup_increment(s, T, a) != oracle::sup_sup(y, n, w);
    mismatches += pvlt::inf_sup_increment(s, T, a) != oracle::inf_sup(y, n, w);
    mismatches += pvlt::one_sided_sup_increment(s, T, a) != oracle::one_sided_sup(y, n, w);
    mismatches += pvlt::one_sided_inf_increment(s, T, a) != oracle::one_sided_inf(y, n, w);
    mismatches += pvlt::lag_inner_sup(s, T, a) != oracle::lag_sup(y, n, w);
  }
  out.require(mismatches == 0, fmt("%g mismatches over 1000 arrays x 5 statistics", static_cast<double>(mismatches)));
  return out;
}

Outcome strassen() {
  Outcome out;
  const pvlt::Breakpoint identity[] = {{0.0, 0.0}, {1.0, 1.0}};
  const pvlt::Breakpoint doubled[] = {{0.0, 0.0}, {0.5, 1.0}, {1.0, 2.0}};
  const auto a = pvlt::strassen_partition_check(identity);
  const auto b = pvlt::strassen_partition_check(doubled);
  out.require(std::fabs(a.sum - 1.0) < 1e-12 && a.admissible, fmt("f(x)=x: sum %.15g, admissible", a.sum));
  out.require(std::fabs(b.sum - 4.0) < 1e-12 && !b.admissible, fmt("f(x)=2x: sum %.15g, not admissible", b.sum));
  for (double rho : {0.1, 0.3, 0.5}) {
    const double k = std::ceil(1.0 / rho - 1e-12) - 1.0;
    const double direct = k * rho + rho * rho / (1.0 - k * rho);
    const double bound = pvlt::strassen_partition_bound(rho);
    out.require(bound >= 1.0 - 1e-12 && std::fabs(bound - direct) < 1e-12,
                fmt("rho=%g: k rho + rho^2/(1 - k rho) = %.15g >= 1", rho, bound));
  }
  return out;
}

Outcome trend() {
  Outcome out;
  const auto r = scenario(pvsim::Command::Trend, 1000, std::size_t{1} << 20);
  require_test(out, r, "iterated_log_running_max_q95");
  require_test(out, r, "bm_window_median");
  require_test(out, r, "inf_sup_window_q95");
  out.info("bands are calibration choices, not limit theorems");
  return out;
}

std::string run_to_file(const std::string& args, unsigned threads, const std::filesystem::path& out) {
  const std::string cmd = "PVSIM_THREADS=" + std::to_string(threads) + " " + PVSIM_BINARY + " " + args +
                          " --out " + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  if (!WIFEXITED(status) || WEXITSTATUS(status) > 1) return {};
  std::ifstream is(out, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

Outcome reproducibility() {
  Outcome out;
  const auto dir = std::filesystem::temp_directory_path() / ("pvsim_accept_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const std::vector<std::string> runs{
      "density",
      "verify-fact21 --paths 2000 --steps 1024",
      "verify-eta --paths 500 --steps 256",
      "pv-study --paths 2000 --steps 1024",
      "increments --paths 20 --steps 8192",
      "trend --paths 20 --steps 65536",
      "smalldev --paths 5000 --steps 512",
  };
  for (const auto& args : runs) {
    std::string first;
    bool same = true;
    for (unsigned threads : {1u, 2u, 8u}) {
      const auto bytes = run_to_file(args, threads, dir / ("t" + std::to_string(threads) + ".csv"));
      if (bytes.empty()) same = false;
      if (threads == 1) first = bytes;
      else same = same && bytes == first;
    }
    out.require(same, "pvsim " + args + fmt(": identical CSV for PVSIM_THREADS 1, 2, 8 (%g bytes)",
                                            static_cast<double>(first.size())));
  }
  std::filesystem::remove_all(dir);
  return out;
}

struct Criterion {
  const char* title;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {"law of Y(1), riemann eps=0, 1e5 paths x 2^14 steps", y1_law},
    {"gaussian tail bound, one-sided Wilson 99%", tail_bound},
    {"last zero / meander end laws and independence", decomposition},
    {"meander integral forms agree, under 1 ms", meander_forms},
    {"density normalization", normalization},
    {"skeleton gaps, values and serial independence", eta_skeleton},
    {"riemann vs local time estimators, 1e4 paths", estimator_agreement},
    {"small deviation shape, 2e5 paths", small_deviation},
    {"sliding window statistics vs brute force", brute_force},
    {"Strassen partition utility", strassen},
    {"trend scans at 2^20 steps", trend},
    {"byte-identical CSV across thread counts", reproducibility},
};

}  // namespace

int main(int argc, char** argv) {
  std::optional<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--only N]\n";
      return 2;
    }
  }
  const int n = static_cast<int>(std::size(kCriteria));
  if (only && (*only < 1 || *only > n)) {
    std::cerr << "criterion must be in 1.." << n << "\n";
    return 2;
  }
  bool all = true;
  for (int k = 1; k <= n; ++k) {
    if (only && *only != k) continue;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = kCriteria[k - 1].run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::printf("[%s] criterion %02d: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", k, kCriteria[k - 1].title,
                seconds_since(t0));
    for (const auto& d : o.details) std::printf("       %s\n", d.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
