#include <exception>
#include <iostream>
#include <sstream>

#include "config.hpp"
#include "report.hpp"
#include "scenarios.hpp"

#include "pvlt/errors.hpp"

int main(int argc, char** argv) {
  try {
    const auto parsed = pvsim::parse_command_line(argc, argv);
    if (!parsed) return 0;
    const auto config = pvsim::with_defaults(*parsed);

    const auto report = pvsim::run_scenario(config);

    std::ostringstream body;
    if (config.format == pvsim::Format::Json) {
      body << pvsim::to_json(report).dump(2) << '\n';
    } else {
      pvsim::write_csv(report, body);
    }
    if (config.out_path.empty()) {
      std::cout << body.str();
      std::cout.flush();
      if (!std::cout) throw pvsim::IoError("cannot write to stdout");
    } else {
      pvsim::write_atomically(config.out_path, body.str());
    }
    pvsim::print_summary(report, std::cerr);
    return report.all_pass() ? 0 : 1;
  } catch (const pvsim::UsageError& e) {
    std::cerr << "pvsim: " << e.what() << "\nRun with --help for usage.\n";
    return 2;
  } catch (const pvsim::IoError& e) {
    std::cerr << "pvsim: " << e.what() << '\n';
    return 2;
  } catch (const pvlt::ArgumentError& e) {
    std::cerr << "pvsim: invalid arguments: " << e.what() << '\n';
    return 2;
  } catch (const pvlt::DomainError& e) {
    std::cerr << "pvsim: invalid arguments: " << e.what() << '\n';
    return 2;
  } catch (const pvlt::CapacityError& e) {
    std::cerr << "pvsim: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "pvsim: error: " << e.what() << '\n';
    return 2;
  }
}
