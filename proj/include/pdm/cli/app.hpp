#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "pdm/cli/config.hpp"
#include "pdm/cli/table.hpp"

namespace pdm::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int verification_failed = 1;
inline constexpr int bad_config = 2;
inline constexpr int state_out_of_range = 3;
inline constexpr int numerical_failure = 4;
inline constexpr int phase_failure = 5;
}  // namespace exit_code

/// Environment variable that redirects relative output paths.
inline constexpr const char* kOutputDirVariable = "PDMPCT_OUTPUT_DIR";

/// Raised for a requested state outside the bound-state range.
class StateRangeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Bound-state indices to process: the configured list, or all of them.
std::vector<int> resolve_states(const RunConfig& cfg);

Table cmd_spectrum(const RunConfig& cfg);
Table cmd_map(const RunConfig& cfg);
Table cmd_potential(const RunConfig& cfg);
Table cmd_wavefunction(const RunConfig& cfg);
oracle::VerificationReport cmd_verify(const RunConfig& cfg);

struct ExampleEntry {
  std::string name;
  std::filesystem::path path;
  std::string description;
};

/// Shipped configurations, sorted by name.
std::vector<ExampleEntry> list_examples();
std::filesystem::path examples_dir();

/// Full command line entry point. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pdm::cli
