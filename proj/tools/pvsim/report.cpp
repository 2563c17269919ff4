#include "report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <system_error>
#include <unistd.h>

#include "config.hpp"

namespace pvsim {
namespace {

nlohmann::ordered_json real_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

}  // namespace

bool Report::all_pass() const noexcept {
  return std::all_of(tests.begin(), tests.end(),
                     [](const pvlt::TestResult& t) { return t.pass || t.informational; });
}

std::string format_real(double v) {
  if (std::isnan(v)) return {};
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_csv(const Report& report, std::ostream& os) {
  std::size_t rows = 0;
  for (std::size_t c = 0; c < report.columns.size(); ++c) {
    if (c) os << ',';
    os << report.columns[c].name;
    rows = std::max(rows, report.columns[c].values.size());
  }
  os << '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < report.columns.size(); ++c) {
      if (c) os << ',';
      const auto& col = report.columns[c].values;
      if (r < col.size()) os << format_real(col[r]);
    }
    os << '\n';
  }
}

nlohmann::ordered_json to_json(const Report& report) {
  nlohmann::ordered_json j;
  j["config"] = report.config;

  auto tests = nlohmann::ordered_json::array();
  for (const auto& t : report.tests) {
    tests.push_back({
        {"name", t.name},
        {"statistic", real_or_null(t.statistic)},
        {"threshold", real_or_null(t.threshold)},
        {"threshold_high", real_or_null(t.threshold_high)},
        {"relation", t.relation},
        {"pass", t.pass},
        {"informational", t.informational},
    });
  }
  j["tests"] = std::move(tests);

  auto digest = nlohmann::ordered_json::object();
  for (const auto& col : report.columns) {
    std::vector<double> finite;
    finite.reserve(col.values.size());
    for (double v : col.values) {
      if (!std::isnan(v)) finite.push_back(v);
    }
    const std::size_t k = std::min<std::size_t>(8, finite.size());
    std::partial_sort(finite.begin(), finite.begin() + static_cast<std::ptrdiff_t>(k), finite.end());
    auto order = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < k; ++i) order.push_back(real_or_null(finite[i]));
    double sum = 0.0;
    for (double v : finite) sum += v;
    digest[col.name] = {
        {"first_order_statistics", std::move(order)},
        {"count", finite.size()},
        {"mean", finite.empty() ? nlohmann::ordered_json(nullptr)
                                : real_or_null(sum / static_cast<double>(finite.size()))},
    };
  }
  j["samples_digest"] = std::move(digest);
  for (const auto& [key, value] : report.extra.items()) j[key] = value;
  j["runtime_seconds"] = report.runtime_seconds;
  return j;
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
  const auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  const auto tmp = dir / ("." + path.filename().string() + ".tmp." + std::to_string(::getpid()));
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot write " + path.string());
    os << content;
    os.flush();
    if (!os) {
      os.close();
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw IoError("write failed for " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw IoError("cannot rename into " + path.string() + ": " + ec.message());
  }
}

void print_summary(const Report& report, std::ostream& os) {
  for (const auto& t : report.tests) {
    const char* tag = t.informational ? "info" : (t.pass ? "PASS" : "FAIL");
    char line[256];
    if (t.relation == "in") {
      std::snprintf(line, sizeof line, "[%s] %s: %.6g in [%.6g, %.6g]", tag, t.name.c_str(),
                    t.statistic, t.threshold, t.threshold_high);
    } else if (t.relation == "info") {
      std::snprintf(line, sizeof line, "[%s] %s: %.6g", tag, t.name.c_str(), t.statistic);
    } else {
      std::snprintf(line, sizeof line, "[%s] %s: %.6g %s %.6g", tag, t.name.c_str(), t.statistic,
                    t.relation.c_str(), t.threshold);
    }
    os << line << '\n';
  }
  char tail[64];
  std::snprintf(tail, sizeof tail, "runtime %.2f s", report.runtime_seconds);
  os << tail << '\n';
}

}  // namespace pvsim
