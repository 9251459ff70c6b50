#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pdm/massprofile.hpp"
#include "pdm/oracle.hpp"
#include "pdm/refpot.hpp"

namespace pdm::cli {

/// Invalid run configuration. field() is the dotted path of the offending key.
class ConfigError : public std::runtime_error {
public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}

  const std::string& field() const { return field_; }

private:
  std::string field_;
};

enum class OutputFormat { csv, json };

struct OutputSpec {
  OutputFormat format = OutputFormat::csv;
  std::string path;  // empty: standard output
};

struct RunConfig {
  std::string name;
  std::string description;
  refpot::ReferencePotential reference;
  mass::MassProfile profile;
  double alpha = 0.0;
  double kappa = 1.0;
  oracle::Grid grid;
  std::optional<std::vector<int>> states;  // unset: every bound state
  double tolerance = 1e-3;
  bool allow_experimental = false;
  OutputSpec output;
};

/// Default window: [-12, 12] for constant mass, [-15, 15] otherwise, 4000 points.
oracle::Grid default_grid(const mass::MassProfile& profile);

RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_text(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Canonical document; parse_config(to_json(c)) reproduces c.
nlohmann::ordered_json to_json(const RunConfig& cfg);

OutputFormat parse_format(std::string_view text);
std::string to_string(OutputFormat f);

}  // namespace pdm::cli
