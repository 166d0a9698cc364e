#include "cli.hpp"

#include <ycoo/design_data.hpp>
#include <ycoo/metrics.hpp>
#include <ycoo/report.hpp>
#include <ycoo/trace_io.hpp>
#include <ycoo/youla_design.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace ycoo::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

template <class T>
T get(const json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config: wrong type for '" + key + "'");
  }
}

template <class F>
auto as_config_error(F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

DesignData design_data_of(const RunConfig& cfg) {
  if (!cfg.design_data) return embedded_design_data();
  return as_config_error([&] { return load_design_data(*cfg.design_data); });
}

ObserverSetup setup_of(const RunConfig& cfg, const DesignData& data) {
  ObserverSetup s = ObserverSetup::from(data, cfg.source);
  s.luenberger_input = cfg.luenberger_input;
  s.init = cfg.init;
  return s;
}

std::uint64_t parse_seed(const std::string& text, const char* what) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (text.empty() || used != text.size() || text.front() == '-')
    throw ConfigError(std::string(what) + ": not a seed: '" + text + "'");
  return v;
}

}  // namespace

ObserverSelection parse_observer_selection(std::string_view name) {
  if (name == "ycoo") return {true, false};
  if (name == "luenberger") return {false, true};
  if (name == "both") return {true, true};
  throw ConfigError("unknown observer selection: " + std::string(name));
}

RunConfig parse_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (j.is_null()) j = json::object();
  if (!j.is_object()) throw ConfigError("config: top level must be an object");

  RunConfig c;
  auto& o = c.overrides;
  for (const auto& [key, v] : j.items()) {
    if (key == "scenarios") {
      c.scenarios.clear();
      for (const auto& s : get<std::vector<std::string>>(v, key))
        c.scenarios.push_back(as_config_error([&] { return parse_scenario_kind(s); }));
      if (c.scenarios.empty()) throw ConfigError("config: 'scenarios' is empty");
    } else if (key == "observer") {
      c.observers = parse_observer_selection(get<std::string>(v, key));
    } else if (key == "runs") {
      const auto n = get<long long>(v, key);
      if (n < 1) throw ConfigError("config: 'runs' must be at least 1");
      c.runs = static_cast<std::size_t>(n);
    } else if (key == "seed") {
      c.seed = get<std::uint64_t>(v, key);
    } else if (key == "out") {
      c.out_dir = get<std::string>(v, key);
    } else if (key == "factors") {
      c.lt_factors = get<std::vector<double>>(v, key);
    } else if (key == "robustness_scenario") {
      c.robustness_scenario = as_config_error([&] { return parse_scenario_kind(get<std::string>(v, key)); });
    } else if (key == "plots") {
      c.plots = get<bool>(v, key);
    } else if (key == "threads") {
      c.threads = get<unsigned>(v, key);
    } else if (key == "luenberger_input") {
      const auto s = get<std::string>(v, key);
      if (s == "truth") c.luenberger_input = LuenbergerInput::truth;
      else if (s == "zero") c.luenberger_input = LuenbergerInput::zero;
      else throw ConfigError("config: unknown luenberger_input '" + s + "'");
    } else if (key == "init") {
      c.init = as_config_error([&] { return parse_init_mode(get<std::string>(v, key)); });
    } else if (key == "observer_source") {
      const auto s = get<std::string>(v, key);
      if (s == "pipeline") c.source = ObserverSource::pipeline;
      else if (s == "frozen") c.source = ObserverSource::frozen;
      else throw ConfigError("config: unknown observer_source '" + s + "'");
    } else if (key == "design_data") {
      c.design_data = get<std::string>(v, key);
    } else if (key == "noise_mode") {
      o.noise_mode = as_config_error([&] { return parse_noise_mode(get<std::string>(v, key)); });
    } else if (key == "noise_power") {
      o.noise_power = get<double>(v, key);
    } else if (key == "duration") {
      o.duration = get<double>(v, key);
    } else if (key == "speed") {
      o.speed = get<double>(v, key);
    } else if (key == "heading_deg") {
      o.heading_deg = get<double>(v, key);
    } else if (key == "steer_amplitude_deg") {
      o.steer_amplitude_deg = get<double>(v, key);
    } else if (key == "accel_amplitude") {
      o.accel_amplitude = get<double>(v, key);
    } else if (key == "wheelbase_factor") {
      o.wheelbase_factor = get<double>(v, key);
    } else if (key == "wheelbase_scaling") {
      o.wheelbase_scaling = as_config_error([&] { return parse_wheelbase_scaling(get<std::string>(v, key)); });
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }
  return c;
}

RunConfig load_config(const fs::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  RunConfig c = parse_config(ss.str());
  // data paths in a config file are relative to that file
  if (c.design_data && c.design_data->is_relative()) c.design_data = path.parent_path() / *c.design_data;
  return c;
}

ScenarioSpec scenario_for(const RunConfig& cfg, ScenarioKind kind, std::uint64_t seed) {
  ScenarioOverrides o = cfg.overrides;
  o.seed = seed;
  return as_config_error([&] {
    ScenarioSpec s = build_scenario(kind, o);
    s.validate();
    return s;
  });
}

int cmd_design(const RunConfig& cfg, const std::vector<int>& ids, std::ostream& out, std::ostream& err) {
  const DesignData data = design_data_of(cfg);
  std::vector<int> which = ids;
  if (which.empty())
    for (std::size_t i = 0; i < data.observers.size(); ++i) which.push_back(static_cast<int>(i) + 1);
  for (int id : which)
    if (id < 1 || id > static_cast<int>(data.observers.size()))
      throw ConfigError("design: no operating point " + std::to_string(id));

  const auto checks = self_check(data);
  const std::string check_text = self_check_text(checks);
  out << check_text;
  write_file(cfg.out_dir / "self_check.txt", check_text);

  for (int id : which) {
    const ObserverSpec& spec = data.observers[static_cast<std::size_t>(id - 1)];
    const YoulaDesignResult res = design_observer(spec.op, spec.params, data.vehicle);
    const std::string stem = "design_" + std::to_string(id);
    const std::string text = design_text(res, spec.name);
    write_file(cfg.out_dir / (stem + ".txt"), text);
    write_file(cfg.out_dir / (stem + ".json"), design_json(res, spec.name));
    write_file(cfg.out_dir / ("frequency_response_" + std::to_string(id) + ".csv"), frequency_response_csv(res));
    out << "\n" << text;
  }
  for (const auto& c : checks)
    if (!c.pass) {
      err << "design: pipeline disagrees with the shipped data for " << c.observer << "\n";
      return kExitFailure;
    }
  return kExitOk;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const DesignData data = design_data_of(cfg);
  const ObserverSetup setup = setup_of(cfg, data);
  for (ScenarioKind kind : cfg.scenarios) {
    const ScenarioSpec spec = scenario_for(cfg, kind, cfg.seed);
    const RunResult r = simulate(spec, setup, cfg.observers);
    for (const auto* t : {r.ycoo ? &*r.ycoo : nullptr, r.luenberger ? &*r.luenberger : nullptr}) {
      if (!t) continue;
      const std::string stem = std::string(to_string(kind)) + "_" + std::string(to_string(t->observer));
      std::ostringstream csv;
      write_trace_csv(csv, *t);
      const fs::path file = cfg.out_dir / ("trace_" + stem + ".csv");
      write_file(file, csv.str());
      if (cfg.plots)
        for (const auto& [name, svg] : trace_plots(*t)) write_file(cfg.out_dir / "plots" / (stem + "_" + name), svg);
      out << stem << ": rows " << t->rows.size();
      for (Quantity q : kQuantities)
        out << ", rms " << to_string(q) << " " << rms(residual_series(*t, q)) << " " << unit(q);
      out << " -> " << file.string() << "\n";
    }
  }
  return kExitOk;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.observers.ycoo || !cfg.observers.luenberger) throw ConfigError("compare needs both observers");
  const DesignData data = design_data_of(cfg);
  const ObserverSetup setup = setup_of(cfg, data);
  std::vector<MetricsReport> reports;
  for (ScenarioKind kind : cfg.scenarios) {
    err << "compare: " << to_string(kind) << ", " << cfg.runs << " runs\n";
    const ScenarioSpec spec = scenario_for(cfg, kind, cfg.seed);
    const auto runs = monte_carlo(spec, setup, {true, true}, cfg.runs, cfg.seed, cfg.threads);
    std::vector<SimTrace> y, l;
    for (const auto& r : runs) {
      y.push_back(*r.ycoo);
      l.push_back(*r.luenberger);
    }
    reports.push_back(build_report(y, l));
  }
  const std::string text = report_text(reports);
  write_file(cfg.out_dir / "compare.json", report_json(reports));
  write_file(cfg.out_dir / "compare.txt", text);
  out << text;
  return kExitOk;
}

int cmd_robustness(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  if (cfg.lt_factors.empty()) throw ConfigError("robustness: empty factor list");
  for (double f : cfg.lt_factors)
    if (!(f > 0.0)) throw ConfigError("robustness: factors must be positive");
  const DesignData data = design_data_of(cfg);
  const ObserverSetup setup = setup_of(cfg, data);
  const ScenarioSpec base = scenario_for(cfg, cfg.robustness_scenario, cfg.seed);
  const auto sweep =
      robustness_sweep(base, cfg.lt_factors, setup, cfg.observers, cfg.overrides.wheelbase_scaling);
  const auto rows = robustness_rows(sweep);
  const std::string text = robustness_text(rows);
  write_file(cfg.out_dir / "robustness.json", robustness_json(rows));
  write_file(cfg.out_dir / "robustness.txt", text);
  out << text;
  return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"YCOO and baseline observer suite for vehicle tracking", "ycoo"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_dir, seed_text, observer, scenario, noise_mode;
  std::optional<std::size_t> runs;
  bool plots = false;
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory (env YCOO_OUT_DIR)");
  app.add_option("--seed", seed_text, "base RNG seed (env YCOO_SEED)");
  app.add_option("--runs", runs, "Monte-Carlo runs per scenario")->check(CLI::PositiveNumber);
  app.add_option("--observer", observer, "ycoo, luenberger or both")
      ->check(CLI::IsMember({"ycoo", "luenberger", "both"}));
  app.add_option("--scenario", scenario, "restrict to one scenario");
  app.add_option("--noise-mode", noise_mode, "per-sample or psd")->check(CLI::IsMember({"per-sample", "psd"}));
  app.add_flag("--plots", plots, "also write SVG plots");

  auto* design = app.add_subcommand("design", "run the design pipeline and dump every matrix");
  std::vector<int> ids;
  design->add_option("id", ids, "operating point 1, 2 or 3 (default all)")->check(CLI::Range(1, 3));
  auto* simulate_cmd = app.add_subcommand("simulate", "one closed-loop run per scenario, traces as CSV");
  auto* compare = app.add_subcommand("compare", "Monte-Carlo comparison of both observers");
  auto* robustness = app.add_subcommand("robustness", "wheelbase mismatch sweep");
  std::optional<std::vector<double>> factors;
  robustness->add_option("--factors", factors, "wheelbase factors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
    if (const char* env = std::getenv("YCOO_OUT_DIR"); env && *env) cfg.out_dir = env;
    if (const char* env = std::getenv("YCOO_SEED"); env && *env) cfg.seed = parse_seed(env, "YCOO_SEED");
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (!seed_text.empty()) cfg.seed = parse_seed(seed_text, "--seed");
    if (runs) cfg.runs = *runs;
    if (!observer.empty()) cfg.observers = parse_observer_selection(observer);
    if (!scenario.empty()) cfg.scenarios = {as_config_error([&] { return parse_scenario_kind(scenario); })};
    if (!noise_mode.empty()) cfg.overrides.noise_mode = parse_noise_mode(noise_mode);
    if (plots) cfg.plots = true;
    if (factors) cfg.lt_factors = *factors;

    if (design->parsed()) return cmd_design(cfg, ids, out, err);
    if (simulate_cmd->parsed()) return cmd_simulate(cfg, out, err);
    if (compare->parsed()) return cmd_compare(cfg, out, err);
    if (robustness->parsed()) return cmd_robustness(cfg, out, err);
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "ycoo: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SimulationDiverged& e) {
    err << "ycoo: simulation diverged: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "ycoo: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace ycoo::cli
