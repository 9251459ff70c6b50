#include "pdm/cli/table.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace pdm::cli {

using nlohmann::ordered_json;

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  out += '"';
  return out;
}

std::string cell_text(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) {
    return std::to_string(*i);
  }
  if (const auto* d = std::get_if<double>(&c)) {
    return format_number(*d);
  }
  return csv_escape(std::get<std::string>(c));
}

ordered_json cell_json(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) {
    return *i;
  }
  if (const auto* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) {
      return format_number(*d);  // JSON has no inf/nan literal
    }
    return *d;
  }
  return std::get<std::string>(c);
}

Cell json_cell(const ordered_json& v) {
  if (v.is_number_integer()) {
    return v.get<std::int64_t>();
  }
  if (v.is_number_float()) {
    return v.get<double>();
  }
  if (v.is_string()) {
    return v.get<std::string>();
  }
  throw std::invalid_argument("table cell must be a number or a string");
}

ordered_json grid_json(const oracle::Grid& g) {
  return {{"x_min", g.x_min}, {"x_max", g.x_max}, {"n_points", g.n_points}};
}

oracle::Grid grid_from(const ordered_json& j) {
  return {j.at("x_min").get<double>(), j.at("x_max").get<double>(), j.at("n_points").get<int>()};
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) {
    return "nan";
  }
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  if (v == 0.0) {
    return "0";  // folds -0
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

void write_csv(const Table& t, std::ostream& out) {
  out << "# command: " << t.command << '\n';
  for (const auto& [key, value] : t.metadata) {
    std::string text = std::holds_alternative<std::string>(value) ? std::get<std::string>(value)
                                                                  : cell_text(value);
    out << "# " << key << ": " << text << '\n';
  }
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    out << (i ? "," : "") << csv_escape(t.columns[i]);
  }
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << cell_text(row[i]);
    }
    out << '\n';
  }
}

ordered_json to_json(const Table& t) {
  ordered_json doc;
  doc["command"] = t.command;
  ordered_json meta = ordered_json::object();
  for (const auto& [key, value] : t.metadata) {
    meta[key] = cell_json(value);
  }
  doc["metadata"] = meta;
  doc["columns"] = t.columns;
  ordered_json rows = ordered_json::array();
  for (const auto& row : t.rows) {
    ordered_json r = ordered_json::array();
    for (const auto& c : row) {
      r.push_back(cell_json(c));
    }
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  return doc;
}

Table table_from_json(const ordered_json& doc) {
  Table t;
  t.command = doc.at("command").get<std::string>();
  for (const auto& [key, value] : doc.at("metadata").items()) {
    t.metadata.emplace_back(key, json_cell(value));
  }
  t.columns = doc.at("columns").get<std::vector<std::string>>();
  for (const auto& row : doc.at("rows")) {
    std::vector<Cell> r;
    for (const auto& c : row) {
      r.push_back(json_cell(c));
    }
    t.rows.push_back(std::move(r));
  }
  return t;
}

ordered_json to_json(const oracle::VerificationReport& r) {
  ordered_json doc;
  doc["profile"] = r.profile;
  doc["reference"] = r.reference;
  doc["alpha"] = r.alpha;
  doc["kappa"] = r.kappa;
  doc["tolerance"] = r.tolerance;
  doc["mapping"] = r.mapping_source;
  doc["grid"] = grid_json(r.grid);
  doc["refined_grid"] = grid_json(r.refined_grid);
  doc["passed"] = r.passed();
  ordered_json states = ordered_json::array();
  for (const auto& s : r.states) {
    ordered_json j;
    j["n"] = s.n;
    j["energy_analytic"] = s.energy_analytic;
    j["energy_numeric"] = s.energy_numeric;
    j["abs_error"] = s.abs_error;
    j["residual"] = s.residual;
    j["nodes_expected"] = s.nodes_expected;
    j["nodes_analytic"] = s.nodes_analytic;
    j["nodes_numeric"] = s.nodes_numeric;
    j["energy_numeric_refined"] = s.energy_numeric_refined;
    j["abs_error_refined"] = s.abs_error_refined;
    j["convergence_ratio"] = s.convergence_ratio();
    j["passed"] = s.ok(r.tolerance);
    j["error"] = s.error;
    states.push_back(std::move(j));
  }
  doc["states"] = std::move(states);
  return doc;
}

oracle::VerificationReport report_from_json(const ordered_json& doc) {
  oracle::VerificationReport r;
  r.profile = doc.at("profile").get<std::string>();
  r.reference = doc.at("reference").get<std::string>();
  r.alpha = doc.at("alpha").get<double>();
  r.kappa = doc.at("kappa").get<double>();
  r.tolerance = doc.at("tolerance").get<double>();
  r.mapping_source = doc.at("mapping").get<std::string>();
  r.grid = grid_from(doc.at("grid"));
  r.refined_grid = grid_from(doc.at("refined_grid"));
  for (const auto& j : doc.at("states")) {
    oracle::StateRecord s;
    s.n = j.at("n").get<int>();
    s.energy_analytic = j.at("energy_analytic").get<double>();
    s.energy_numeric = j.at("energy_numeric").get<double>();
    s.abs_error = j.at("abs_error").get<double>();
    s.residual = j.at("residual").get<double>();
    s.nodes_expected = j.at("nodes_expected").get<int>();
    s.nodes_analytic = j.at("nodes_analytic").get<int>();
    s.nodes_numeric = j.at("nodes_numeric").get<int>();
    s.energy_numeric_refined = j.at("energy_numeric_refined").get<double>();
    s.abs_error_refined = j.at("abs_error_refined").get<double>();
    s.error = j.at("error").get<std::string>();
    r.states.push_back(std::move(s));
  }
  return r;
}

Table report_table(const oracle::VerificationReport& r) {
  Table t;
  t.command = "verify";
  t.metadata = {
      {"profile", r.profile},
      {"reference", r.reference},
      {"alpha", r.alpha},
      {"kappa", r.kappa},
      {"mapping", r.mapping_source},
      {"grid", format_number(r.grid.x_min) + " .. " + format_number(r.grid.x_max) + ", " +
                   std::to_string(r.grid.n_points) + " points"},
      {"refined_grid", std::to_string(r.refined_grid.n_points) + " points"},
      {"tolerance", r.tolerance},
      {"result", std::string(r.passed() ? "PASS" : "FAIL")},
  };
  t.columns = {"n",         "E_analytic",     "E_numeric",          "abs_error",
               "residual",  "nodes_expected", "nodes_analytic",     "nodes_numeric",
               "E_refined", "abs_error_refined", "convergence_ratio", "status",
               "error"};
  for (const auto& s : r.states) {
    t.rows.push_back({std::int64_t{s.n}, s.energy_analytic, s.energy_numeric, s.abs_error,
                      s.residual, std::int64_t{s.nodes_expected}, std::int64_t{s.nodes_analytic},
                      std::int64_t{s.nodes_numeric}, s.energy_numeric_refined, s.abs_error_refined,
                      s.convergence_ratio(), std::string(s.ok(r.tolerance) ? "pass" : "fail"),
                      s.error});
  }
  return t;
}

}  // namespace pdm::cli
