#include "pdm/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace pdm::cli {

namespace {

using nlohmann::json;

// Reads the members of one JSON object and rejects keys that were never asked for.
class ObjectReader {
public:
  ObjectReader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) {
      throw ConfigError(path_, "expected an object");
    }
  }

  std::string field(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return node_.contains(key);
  }

  const json& at(const std::string& key) {
    if (!has(key)) {
      throw ConfigError(field(key), "required key is missing");
    }
    return node_.at(key);
  }

  double number(const std::string& key) {
    const json& v = at(key);
    if (!v.is_number()) {
      throw ConfigError(field(key), "expected a number");
    }
    const double d = v.get<double>();
    if (!std::isfinite(d)) {
      throw ConfigError(field(key), "must be finite");
    }
    return d;
  }

  double number(const std::string& key, double fallback) {
    return has(key) ? number(key) : fallback;
  }

  double positive(const std::string& key) {
    const double d = number(key);
    if (!(d > 0.0)) {
      std::ostringstream msg;
      msg << "must be > 0, got " << d;
      throw ConfigError(field(key), msg.str());
    }
    return d;
  }

  double positive(const std::string& key, double fallback) {
    return has(key) ? positive(key) : fallback;
  }

  long long integer(const std::string& key) { return as_integer(at(key), field(key)); }

  std::string text(const std::string& key) {
    const json& v = at(key);
    if (!v.is_string()) {
      throw ConfigError(field(key), "expected a string");
    }
    return v.get<std::string>();
  }

  std::string text(const std::string& key, const std::string& fallback) {
    return has(key) ? text(key) : fallback;
  }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) {
      return fallback;
    }
    const json& v = node_.at(key);
    if (!v.is_boolean()) {
      throw ConfigError(field(key), "expected true or false");
    }
    return v.get<bool>();
  }

  void finish() const {
    for (const auto& [key, value] : node_.items()) {
      if (!seen_.contains(key)) {
        throw ConfigError(field(key), "unknown key");
      }
    }
  }

  static long long as_integer(const json& v, const std::string& where) {
    if (v.is_number_integer()) {
      return v.get<long long>();
    }
    if (v.is_number_float()) {
      const double d = v.get<double>();
      if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 1e15) {
        return static_cast<long long>(d);
      }
    }
    throw ConfigError(where, "expected an integer");
  }

private:
  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

int branch_sign(ObjectReader& r, const std::string& key) {
  if (!r.has(key)) {
    return 1;
  }
  const long long v = r.integer(key);
  if (v != 1 && v != -1) {
    throw ConfigError(r.field(key), "must be +1 or -1");
  }
  return static_cast<int>(v);
}

refpot::ReferencePotential parse_reference(const json& node) {
  ObjectReader r(node, "reference");
  const std::string kind = r.text("kind");
  refpot::ReferencePotential ref;
  if (kind == "rosen-morse") {
    refpot::RosenMorseParams p;
    p.V1 = r.number("V1");
    if (p.V1 < 0.0) {
      throw ConfigError("reference.V1", "must be >= 0 for rosen-morse");
    }
    p.V2 = r.number("V2", 0.0);
    p.beta = r.positive("beta", 1.0);
    p.q = r.positive("q", 1.0);
    ref = p;
  } else if (kind == "scarf") {
    refpot::ScarfParams p;
    p.V1 = r.number("V1");
    p.V2 = r.number("V2", 0.0);
    p.beta = r.positive("beta", 1.0);
    p.q = r.positive("q", 1.0);
    p.sigma = branch_sign(r, "sigma");
    p.tau = branch_sign(r, "tau");
    ref = p;
  } else {
    throw ConfigError("reference.kind", "expected \"rosen-morse\" or \"scarf\", got \"" + kind + "\"");
  }
  r.finish();
  return ref;
}

mass::MassProfile parse_profile(const json& node) {
  ObjectReader r(node, "profile");
  const std::string kind = r.text("kind");
  mass::MassProfile p;
  if (kind == "rational-single") {
    p = mass::RationalSingle{r.positive("a", 1.0), r.positive("q", 1.0)};
  } else if (kind == "rational-squared") {
    p = mass::RationalSquared{r.positive("a", 1.0), r.positive("b", 1.0)};
  } else if (kind == "exponential") {
    const double a = r.number("a");
    if (a == 0.0) {
      throw ConfigError("profile.a", "must be nonzero (use kind \"constant\")");
    }
    p = mass::Exponential{a};
  } else if (kind == "constant") {
    p = mass::ConstantMass{};
  } else {
    throw ConfigError("profile.kind",
                      "expected \"rational-single\", \"rational-squared\", \"exponential\" or "
                      "\"constant\", got \"" + kind + "\"");
  }
  r.finish();
  return p;
}

oracle::Grid parse_grid(const json& node, oracle::Grid g) {
  ObjectReader r(node, "grid");
  g.x_min = r.number("x_min", g.x_min);
  g.x_max = r.number("x_max", g.x_max);
  if (r.has("n_points")) {
    const long long n = r.integer("n_points");
    if (n < 3 || n > 10'000'000) {
      throw ConfigError("grid.n_points", "must be an integer in [3, 10000000]");
    }
    g.n_points = static_cast<int>(n);
  }
  r.finish();
  if (!(g.x_min < g.x_max)) {
    throw ConfigError("grid.x_max", "must exceed grid.x_min");
  }
  return g;
}

std::vector<int> parse_states(const json& node) {
  if (!node.is_array()) {
    throw ConfigError("states", "expected an array of nonnegative integers");
  }
  std::vector<int> out;
  for (std::size_t i = 0; i < node.size(); ++i) {
    const std::string where = "states[" + std::to_string(i) + "]";
    const long long n = ObjectReader::as_integer(node[i], where);
    if (n < 0 || n > 100000) {
      throw ConfigError(where, "must be a nonnegative integer");
    }
    out.push_back(static_cast<int>(n));
  }
  return out;
}

OutputSpec parse_output(const json& node) {
  ObjectReader r(node, "output");
  OutputSpec out;
  if (r.has("format")) {
    try {
      out.format = parse_format(r.text("format"));
    } catch (const ConfigError& e) {
      throw ConfigError("output.format", e.what());
    }
  }
  out.path = r.text("path", "");
  r.finish();
  return out;
}

}  // namespace

OutputFormat parse_format(std::string_view text) {
  if (text == "csv") {
    return OutputFormat::csv;
  }
  if (text == "json") {
    return OutputFormat::json;
  }
  throw ConfigError("", "format must be \"csv\" or \"json\"");
}

std::string to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

oracle::Grid default_grid(const mass::MassProfile& profile) {
  if (std::holds_alternative<mass::ConstantMass>(profile)) {
    return {-12.0, 12.0, 4000};
  }
  return {-15.0, 15.0, 4000};
}

RunConfig parse_config(const json& doc) {
  ObjectReader r(doc, "");
  RunConfig cfg;
  cfg.name = r.text("name", "");
  cfg.description = r.text("description", "");
  cfg.reference = parse_reference(r.at("reference"));
  cfg.profile = r.has("profile") ? parse_profile(r.at("profile")) : mass::ConstantMass{};
  cfg.alpha = r.number("alpha", 0.0);
  cfg.kappa = r.positive("kappa", 1.0);
  cfg.grid = default_grid(cfg.profile);
  if (r.has("grid")) {
    cfg.grid = parse_grid(r.at("grid"), cfg.grid);
  }
  if (r.has("states")) {
    cfg.states = parse_states(r.at("states"));
  }
  cfg.tolerance = r.positive("tolerance", 1e-3);
  cfg.allow_experimental = r.boolean("allow_experimental", false);
  if (r.has("output")) {
    cfg.output = parse_output(r.at("output"));
  }
  r.finish();
  return cfg;
}

RunConfig parse_config_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("", "cannot open config file " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

nlohmann::ordered_json to_json(const RunConfig& cfg) {
  nlohmann::ordered_json doc;
  if (!cfg.name.empty()) {
    doc["name"] = cfg.name;
  }
  if (!cfg.description.empty()) {
    doc["description"] = cfg.description;
  }
  std::visit(
      [&doc](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        nlohmann::ordered_json ref;
        if constexpr (std::is_same_v<T, refpot::RosenMorseParams>) {
          ref["kind"] = "rosen-morse";
          ref["V1"] = p.V1;
          ref["V2"] = p.V2;
          ref["beta"] = p.beta;
          ref["q"] = p.q;
        } else {
          ref["kind"] = "scarf";
          ref["V1"] = p.V1;
          ref["V2"] = p.V2;
          ref["beta"] = p.beta;
          ref["q"] = p.q;
          ref["sigma"] = p.sigma;
          ref["tau"] = p.tau;
        }
        doc["reference"] = ref;
      },
      cfg.reference);
  std::visit(
      [&doc](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        nlohmann::ordered_json prof;
        if constexpr (std::is_same_v<T, mass::RationalSingle>) {
          prof = {{"kind", "rational-single"}, {"a", p.a}, {"q", p.q}};
        } else if constexpr (std::is_same_v<T, mass::RationalSquared>) {
          prof = {{"kind", "rational-squared"}, {"a", p.a}, {"b", p.b}};
        } else if constexpr (std::is_same_v<T, mass::Exponential>) {
          prof = {{"kind", "exponential"}, {"a", p.a}};
        } else {
          prof = {{"kind", "constant"}};
        }
        doc["profile"] = prof;
      },
      cfg.profile);
  doc["alpha"] = cfg.alpha;
  doc["kappa"] = cfg.kappa;
  doc["grid"] = {{"x_min", cfg.grid.x_min}, {"x_max", cfg.grid.x_max}, {"n_points", cfg.grid.n_points}};
  if (cfg.states) {
    doc["states"] = *cfg.states;
  }
  doc["tolerance"] = cfg.tolerance;
  doc["allow_experimental"] = cfg.allow_experimental;
  nlohmann::ordered_json out{{"format", to_string(cfg.output.format)}};
  if (!cfg.output.path.empty()) {
    out["path"] = cfg.output.path;
  }
  doc["output"] = out;
  return doc;
}

}  // namespace pdm::cli
