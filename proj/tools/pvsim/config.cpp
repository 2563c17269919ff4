#include "config.hpp"

#include <array>
#include <charconv>
#include <cstdlib>
#include <iostream>
#include <thread>
#include <utility>

#include <CLI11.hpp>

#include "pvlt/errors.hpp"

namespace pvsim {
namespace {

constexpr std::array<std::pair<std::string_view, Command>, 7> kCommands{{
    {"density", Command::Density},
    {"verify-fact21", Command::VerifyFact21},
    {"verify-eta", Command::VerifyEta},
    {"pv-study", Command::PvStudy},
    {"increments", Command::Increments},
    {"trend", Command::Trend},
    {"smalldev", Command::SmallDev},
}};

double parse_number(std::string_view text, std::string_view what) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw UsageError("bad " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return v;
}

unsigned threads_from_env(unsigned fallback) {
  const char* raw = std::getenv("PVSIM_THREADS");
  if (raw == nullptr || *raw == '\0') return fallback;
  std::string_view text(raw);
  unsigned v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || v == 0) {
    throw UsageError("PVSIM_THREADS must be a positive integer, got '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

std::string_view command_name(Command c) {
  for (const auto& [name, cmd] : kCommands) {
    if (cmd == c) return name;
  }
  return "unknown";
}

std::optional<Command> parse_command(std::string_view name) {
  for (const auto& [n, cmd] : kCommands) {
    if (n == name) return cmd;
  }
  return std::nullopt;
}

pvlt::WindowSpec parse_window(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw UsageError("window must look like fraction:R, powerlog:A or fixed:A");
  }
  const auto kind = text.substr(0, colon);
  const double v = parse_number(text.substr(colon + 1), "window parameter");
  try {
    if (kind == "fraction") return pvlt::WindowSpec::constant_fraction(v);
    if (kind == "powerlog") return pvlt::WindowSpec::power_log(v);
    if (kind == "fixed") return pvlt::WindowSpec::fixed(v);
  } catch (const std::logic_error& e) {
    throw UsageError(std::string("bad window: ") + e.what());
  }
  throw UsageError("unknown window rule '" + std::string(kind) + "'");
}

std::optional<RunConfig> parse_command_line(int argc, const char* const* argv) {
  CLI::App app{"Principal value of Brownian local time: simulation and checks", "pvsim"};
  app.set_config("--config", "", "Read key = value options from a file");

  std::string command;
  std::size_t paths = 0;
  std::size_t steps = 0;
  std::uint64_t seed = 42;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::string window;
  std::string out;
  std::string format;

  std::vector<std::string> names;
  for (const auto& [name, cmd] : kCommands) names.emplace_back(name);

  app.add_option("command", command, "Scenario to run")->required()->check(CLI::IsMember(names));
  app.add_option("--paths", paths, "Number of sample paths (0: command default)");
  app.add_option("--steps", steps, "Grid steps per path or per unit time (0: command default)");
  app.add_option("--seed", seed, "Master seed")->capture_default_str();
  app.add_option("--workers", workers, "Worker threads (PVSIM_THREADS overrides)")
      ->check(CLI::PositiveNumber);
  app.add_option("--window", window, "Window rule: fraction:R, powerlog:A or fixed:A");
  app.add_option("--out", out, "Output file (stdout when omitted)");
  app.add_option("--format", format, "csv or json (default: from the --out extension)")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return std::nullopt;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  RunConfig config;
  config.command = *parse_command(command);
  config.n_paths = paths;
  config.n_steps = steps;
  config.master_seed = seed;
  config.workers = threads_from_env(workers);
  if (!window.empty()) {
    config.window = parse_window(window);
    config.window_text = window;
  }
  config.out_path = out;
  if (!format.empty()) {
    config.format = format == "json" ? Format::Json : Format::Csv;
  } else {
    config.format = config.out_path.extension() == ".json" ? Format::Json : Format::Csv;
  }
  return config;
}

RunConfig with_defaults(RunConfig config) {
  struct Defaults {
    std::size_t paths;
    std::size_t steps;
  };
  Defaults d{0, 0};
  switch (config.command) {
    case Command::Density: d = {0, 0}; break;
    case Command::VerifyFact21: d = {100'000, 16'384}; break;
    case Command::VerifyEta: d = {20'000, 4'096}; break;
    case Command::PvStudy: d = {10'000, 16'384}; break;
    case Command::Increments: d = {200, 65'536}; break;
    case Command::Trend: d = {1'000, std::size_t{1} << 20}; break;
    case Command::SmallDev: d = {200'000, 4'096}; break;
  }
  if (config.n_paths == 0) config.n_paths = d.paths;
  if (config.n_steps == 0) config.n_steps = d.steps;
  if (!config.window) {
    if (config.command == Command::Increments) {
      config.window = pvlt::WindowSpec::constant_fraction(1.0 / 256.0);
      config.window_text = "fraction:0.00390625";
    } else if (config.command == Command::Trend) {
      config.window = pvlt::WindowSpec::constant_fraction(0.5);
      config.window_text = "fraction:0.5";
    }
  }
  return config;
}

}  // namespace pvsim
