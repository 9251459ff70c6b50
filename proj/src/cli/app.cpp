#include "pdm/cli/app.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "pdm/errors.hpp"
#include "pdm/pct.hpp"

namespace pdm::cli {

namespace {

std::string grid_text(const oracle::Grid& g) {
  return format_number(g.x_min) + " .. " + format_number(g.x_max) + ", " +
         std::to_string(g.n_points) + " points";
}

void common_metadata(Table& t, const RunConfig& cfg) {
  if (!cfg.name.empty()) {
    t.metadata.emplace_back("config", cfg.name);
  }
  t.metadata.emplace_back("reference", refpot::describe(cfg.reference));
  t.metadata.emplace_back("profile", mass::describe(cfg.profile));
  t.metadata.emplace_back("alpha", cfg.alpha);
  t.metadata.emplace_back("kappa", cfg.kappa);
  t.metadata.emplace_back("grid", grid_text(cfg.grid));
}

pct::PctContext context(const RunConfig& cfg) {
  return pct::build_context(cfg.profile, cfg.alpha, cfg.kappa);
}

std::vector<int> parse_state_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty()) {
      continue;
    }
    int n = -1;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), n);
    if (res.ec != std::errc() || res.ptr != item.data() + item.size() || n < 0) {
      throw ConfigError("--states", "expected a comma-separated list of nonnegative integers");
    }
    out.push_back(n);
  }
  return out;
}

std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirVariable); dir != nullptr && *dir != '\0') {
      return std::filesystem::path(dir) / p;
    }
  }
  return p;
}

std::string render(const Table& t, OutputFormat f) {
  std::ostringstream out;
  if (f == OutputFormat::csv) {
    write_csv(t, out);
  } else {
    out << to_json(t).dump(2) << '\n';
  }
  return out.str();
}

std::string render(const oracle::VerificationReport& r, const RunConfig& cfg, OutputFormat f) {
  if (f == OutputFormat::csv) {
    Table t = report_table(r);
    if (!cfg.name.empty()) {
      t.metadata.insert(t.metadata.begin(), {"config", cfg.name});
    }
    return render(t, f);
  }
  nlohmann::ordered_json doc;
  doc["command"] = "verify";
  doc["config"] = to_json(cfg);
  doc["report"] = to_json(r);
  return doc.dump(2) + "\n";
}

}  // namespace

std::vector<int> resolve_states(const RunConfig& cfg) {
  const int count = refpot::num_bound_states(cfg.reference);
  if (!cfg.states) {
    std::vector<int> all(count);
    for (int n = 0; n < count; ++n) {
      all[n] = n;
    }
    return all;
  }
  for (int n : *cfg.states) {
    if (n >= count) {
      std::ostringstream msg;
      msg << "state n = " << n << " is not a bound state of " << refpot::describe(cfg.reference)
          << ": valid range 0 <= n < " << count;
      throw StateRangeError(msg.str());
    }
  }
  return *cfg.states;
}

Table cmd_spectrum(const RunConfig& cfg) {
  const std::vector<int> states = resolve_states(cfg);
  const int count = refpot::num_bound_states(cfg.reference);
  Table t;
  t.command = "spectrum";
  if (!cfg.name.empty()) {
    t.metadata.emplace_back("config", cfg.name);
  }
  t.metadata.emplace_back("reference", refpot::describe(cfg.reference));
  t.metadata.emplace_back("num_bound_states", std::int64_t{count});
  t.columns = {"n", "E_analytic", "num_bound_states"};
  for (int n : states) {
    t.rows.push_back({std::int64_t{n}, refpot::energy(cfg.reference, n), std::int64_t{count}});
  }
  return t;
}

Table cmd_map(const RunConfig& cfg) {
  const pct::PctContext ctx = context(cfg);
  Table t;
  t.command = "map";
  if (!cfg.name.empty()) {
    t.metadata.emplace_back("config", cfg.name);
  }
  t.metadata.emplace_back("profile", mass::describe(cfg.profile));
  t.metadata.emplace_back("alpha", cfg.alpha);
  t.metadata.emplace_back("grid", grid_text(cfg.grid));
  t.metadata.emplace_back("mapping", mass::to_string(ctx.mapping.source()));
  t.metadata.emplace_back("formula", ctx.mapping.formula());
  t.metadata.emplace_back("y_lower", format_number(ctx.mapping.lower_limit()));
  t.metadata.emplace_back("y_upper", format_number(ctx.mapping.upper_limit()));
  t.columns = {"x", "y", "m"};
  for (int i = 0; i < cfg.grid.n_points; ++i) {
    const double x = cfg.grid.node(i);
    t.rows.push_back({x, ctx.mapping(x), mass::mass_value(cfg.profile, x)});
  }
  return t;
}

Table cmd_potential(const RunConfig& cfg) {
  const std::vector<int> states = resolve_states(cfg);
  const pct::PctContext ctx = context(cfg);
  Table t;
  t.command = "potential";
  common_metadata(t, cfg);
  t.metadata.emplace_back("mapping", mass::to_string(ctx.mapping.source()));
  std::vector<pct::TargetPotential> targets;
  t.columns = {"x"};
  for (int n : states) {
    targets.push_back(pct::target_potential(ctx, cfg.reference, n));
    t.metadata.emplace_back("E_" + std::to_string(n), targets.back().energy());
    t.columns.push_back("V_" + std::to_string(n));
  }
  for (int i = 0; i < cfg.grid.n_points; ++i) {
    const double x = cfg.grid.node(i);
    std::vector<Cell> row{x};
    for (const auto& vt : targets) {
      row.emplace_back(vt(x));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table cmd_wavefunction(const RunConfig& cfg) {
  const std::vector<int> states = resolve_states(cfg);
  const pct::PctContext ctx = context(cfg);
  Table t;
  t.command = "wavefunction";
  common_metadata(t, cfg);
  t.metadata.emplace_back("mapping", mass::to_string(ctx.mapping.source()));
  t.metadata.emplace_back("normalization", "sum psi^2 h = 1");
  t.columns = {"x"};
  std::vector<std::vector<double>> columns;
  for (int n : states) {
    const double e = pct::transform_energy(ctx, cfg.reference, n);
    auto psi = oracle::sample(
        pct::transform_wavefunction(ctx, refpot::wavefunction(cfg.reference, n)), cfg.grid);
    oracle::normalize(psi, cfg.grid.spacing());
    t.metadata.emplace_back("E_" + std::to_string(n), e);
    t.metadata.emplace_back("nodes_" + std::to_string(n), std::int64_t{oracle::count_nodes(psi)});
    t.columns.push_back("psi_" + std::to_string(n));
    columns.push_back(std::move(psi));
  }
  for (int i = 0; i < cfg.grid.n_points; ++i) {
    std::vector<Cell> row{cfg.grid.node(i)};
    for (const auto& c : columns) {
      row.emplace_back(c[i]);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

oracle::VerificationReport cmd_verify(const RunConfig& cfg) {
  const std::vector<int> states = resolve_states(cfg);
  oracle::VerifyOptions opts;
  opts.tolerance = cfg.tolerance;
  opts.allow_experimental = cfg.allow_experimental;
  return oracle::verify_isospectrality(cfg.profile, cfg.alpha, cfg.reference, states, cfg.grid,
                                       cfg.kappa, opts);
}

std::filesystem::path examples_dir() {
#ifdef PDM_EXAMPLES_DIR
  const std::filesystem::path built_in(PDM_EXAMPLES_DIR);
  if (std::filesystem::is_directory(built_in)) {
    return built_in;
  }
#endif
  return std::filesystem::path("configs") / "examples";
}

std::vector<ExampleEntry> list_examples() {
  std::vector<ExampleEntry> out;
  const auto dir = examples_dir();
  if (!std::filesystem::is_directory(dir)) {
    return out;
  }
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".json" || entry.path().stem() == "schema") {
      continue;
    }
    const RunConfig cfg = load_config(entry.path());
    out.push_back({cfg.name.empty() ? entry.path().stem().string() : cfg.name, entry.path(),
                   cfg.description});
  }
  std::sort(out.begin(), out.end(),
            [](const ExampleEntry& a, const ExampleEntry& b) { return a.name < b.name; });
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Position-dependent-mass spectra by point canonical transformation", "pdmpct"};
  app.fallthrough();
  app.require_subcommand(0, 1);

  std::string config_path;
  std::string output_path;
  std::string format_text;
  std::string states_text;
  double tolerance = 0.0;
  bool all_states = false;
  bool allow_experimental = false;
  bool list = false;
  app.add_option("--config", config_path, "Run configuration (JSON)");
  app.add_option("--output", output_path, "Write the artifact here instead of stdout");
  app.add_option("--format", format_text, "csv or json");
  app.add_option("--tolerance", tolerance, "Energy tolerance for verify");
  app.add_option("--states", states_text, "Comma-separated state indices");
  app.add_flag("--all-states", all_states, "Use every bound state");
  app.add_flag("--allow-experimental", allow_experimental,
               "Permit Scarf branches other than sigma = tau = +1");
  app.add_flag("--list-examples", list, "List the shipped example configurations");

  auto* spectrum = app.add_subcommand("spectrum", "Analytic energies of the reference potential");
  auto* map = app.add_subcommand("map", "Sample the coordinate map y = f(x) and the mass");
  auto* potential = app.add_subcommand("potential", "Sample the target potential of each state");
  auto* wavefunction = app.add_subcommand("wavefunction", "Sample normalized wavefunctions");
  auto* verify = app.add_subcommand("verify", "Check isospectrality with the finite-difference oracle");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::ok;
  } catch (const CLI::ParseError& e) {
    err << "pdmpct: " << e.what() << '\n';
    return exit_code::bad_config;
  }

  if (list) {
    try {
      for (const auto& ex : list_examples()) {
        out << ex.name << "\tpdmpct verify --config " << ex.path.string() << '\t' << ex.description
            << '\n';
      }
    } catch (const ConfigError& e) {
      err << "pdmpct: shipped example is invalid: " << e.what() << '\n';
      return exit_code::bad_config;
    }
    return exit_code::ok;
  }

  const auto subs = app.get_subcommands();
  if (subs.empty()) {
    err << "pdmpct: a subcommand is required (spectrum, map, potential, wavefunction, verify)\n";
    return exit_code::bad_config;
  }
  CLI::App* sub = subs.front();

  RunConfig cfg;
  try {
    if (config_path.empty()) {
      throw ConfigError("--config", "a configuration file is required");
    }
    cfg = load_config(config_path);
    if (!format_text.empty()) {
      try {
        cfg.output.format = parse_format(format_text);
      } catch (const ConfigError& e) {
        throw ConfigError("--format", e.what());
      }
    }
    if (!output_path.empty()) {
      cfg.output.path = output_path;
    }
    if (app.count("--tolerance") > 0) {
      if (!(tolerance > 0.0) || !std::isfinite(tolerance)) {
        throw ConfigError("--tolerance", "must be finite and > 0");
      }
      cfg.tolerance = tolerance;
    }
    if (!states_text.empty()) {
      cfg.states = parse_state_list(states_text);
    }
    if (all_states) {
      cfg.states.reset();
    }
    if (allow_experimental) {
      cfg.allow_experimental = true;
    }
  } catch (const ConfigError& e) {
    err << "pdmpct: config error: " << e.what() << '\n';
    return exit_code::bad_config;
  }

  std::string artifact;
  int status = exit_code::ok;
  try {
    if (sub == spectrum) {
      artifact = render(cmd_spectrum(cfg), cfg.output.format);
    } else if (sub == map) {
      artifact = render(cmd_map(cfg), cfg.output.format);
    } else if (sub == potential) {
      artifact = render(cmd_potential(cfg), cfg.output.format);
    } else if (sub == wavefunction) {
      artifact = render(cmd_wavefunction(cfg), cfg.output.format);
    } else if (sub == verify) {
      if (const auto* scarf = std::get_if<refpot::ScarfParams>(&cfg.reference);
          scarf != nullptr && refpot::is_experimental_branch(*scarf) && !cfg.allow_experimental) {
        throw ConfigError("reference.sigma",
                          "branches other than sigma = tau = +1 need --allow-experimental");
      }
      const oracle::VerificationReport report = cmd_verify(cfg);
      artifact = render(report, cfg, cfg.output.format);
      if (!report.passed()) {
        status = exit_code::verification_failed;
        err << "pdmpct: verification failed";
        for (const auto& s : report.states) {
          if (!s.ok(report.tolerance)) {
            err << "; n=" << s.n << " abs_error=" << format_number(s.abs_error);
            if (!s.error.empty()) {
              err << " (" << s.error << ")";
            }
          }
        }
        err << '\n';
      }
    }
  } catch (const ConfigError& e) {
    err << "pdmpct: config error: " << e.what() << '\n';
    return exit_code::bad_config;
  } catch (const StateRangeError& e) {
    err << "pdmpct: " << e.what() << '\n';
    return exit_code::state_out_of_range;
  } catch (const IndexError& e) {
    err << "pdmpct: " << e.what() << '\n';
    return exit_code::state_out_of_range;
  } catch (const PhaseError& e) {
    err << "pdmpct: phase removal failed: " << e.what() << '\n';
    return exit_code::phase_failure;
  } catch (const std::exception& e) {
    err << "pdmpct: numerical failure: " << e.what() << '\n';
    return exit_code::numerical_failure;
  }

  if (cfg.output.path.empty()) {
    out << artifact;
  } else {
    const auto path = resolve_output(cfg.output.path);
    std::ofstream file(path, std::ios::binary);
    if (!file || !(file << artifact)) {
      err << "pdmpct: cannot write " << path.string() << '\n';
      return exit_code::bad_config;
    }
  }
  return status;
}

}  // namespace pdm::cli
