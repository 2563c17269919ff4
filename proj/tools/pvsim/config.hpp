#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "pvlt/increments.hpp"

namespace pvsim {

enum class Command { Density, VerifyFact21, VerifyEta, PvStudy, Increments, Trend, SmallDev };
enum class Format { Csv, Json };

/// Bad flags, bad config file or bad values; exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Output could not be written; exit code 2.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Command command = Command::Density;
  std::size_t n_paths = 0;  ///< 0 selects the command default
  std::size_t n_steps = 0;  ///< 0 selects the command default
  std::uint64_t master_seed = 42;
  unsigned workers = 1;
  std::optional<pvlt::WindowSpec> window;  ///< unset selects the command default
  std::string window_text;
  std::filesystem::path out_path;  ///< empty writes to stdout
  Format format = Format::Csv;
};

std::string_view command_name(Command c);
std::optional<Command> parse_command(std::string_view name);

/// "fraction:RHO", "powerlog:ALPHA" or "fixed:A".
pvlt::WindowSpec parse_window(std::string_view text);

/// Parses argv (and an optional --config file of `key = value` lines; flags
/// win over the file, PVSIM_THREADS wins over both for the worker count).
/// Returns nullopt after printing help. Throws UsageError.
std::optional<RunConfig> parse_command_line(int argc, const char* const* argv);

/// Fills the command defaults for paths, steps and window.
RunConfig with_defaults(RunConfig config);

}  // namespace pvsim
