#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "pdm/oracle.hpp"

namespace pdm::cli {

using Cell = std::variant<std::int64_t, double, std::string>;

/// Column-oriented artifact: ordered metadata, header, rows.
struct Table {
  std::string command;
  std::vector<std::pair<std::string, Cell>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  bool operator==(const Table&) const = default;
};

/// 12 significant digits, shortest form, no locale.
std::string format_number(double v);

void write_csv(const Table& t, std::ostream& out);
nlohmann::ordered_json to_json(const Table& t);
Table table_from_json(const nlohmann::ordered_json& doc);

/// Structured verification report and its inverse.
nlohmann::ordered_json to_json(const oracle::VerificationReport& r);
oracle::VerificationReport report_from_json(const nlohmann::ordered_json& doc);

/// One row per state, for CSV output of a report.
Table report_table(const oracle::VerificationReport& r);

}  // namespace pdm::cli
