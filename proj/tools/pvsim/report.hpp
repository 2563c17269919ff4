#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "pvlt/mc.hpp"

namespace pvsim {

/// A named column of samples; every column of a report has its own length.
struct Column {
  std::string name;
  std::vector<double> values;
};

struct Report {
  nlohmann::ordered_json config;
  std::vector<pvlt::TestResult> tests;
  std::vector<Column> columns;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();
  double runtime_seconds = 0.0;

  bool all_pass() const noexcept;
};

/// Shortest text that reads back to the same double, at most 17 significant
/// digits. NaN becomes the empty string.
std::string format_real(double v);

/// Header row, then one row per index up to the longest column; shorter
/// columns leave their field empty.
void write_csv(const Report& report, std::ostream& os);

nlohmann::ordered_json to_json(const Report& report);

/// Writes to a temporary file next to `path` and renames it into place.
/// Throws IoError.
void write_atomically(const std::filesystem::path& path, const std::string& content);

/// One line per test on `os`.
void print_summary(const Report& report, std::ostream& os);

}  // namespace pvsim
