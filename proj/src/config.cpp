#include "isac/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace isac {
namespace {

namespace pt = boost::property_tree;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Line of `key` inside `[section]`, 0 when not found.
int line_of(const std::string& text, const std::string& section,
            const std::string& key) {
  std::istringstream in(text);
  std::string line, current;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    const std::string t = trim(line);
    if (t.empty() || t[0] == ';' || t[0] == '#') continue;
    if (t.front() == '[' && t.back() == ']') {
      current = trim(t.substr(1, t.size() - 2));
      continue;
    }
    const auto eq = t.find('=');
    if (eq != std::string::npos && current == section &&
        trim(t.substr(0, eq)) == key) {
      return n;
    }
  }
  return 0;
}

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  const std::string t = trim(s);
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError("expected a number, got '" + t + "'");
  }
  return v;
}

template <class I>
I parse_integer(const std::string& s) {
  const std::string t = trim(s);
  I v{};
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError("expected an integer, got '" + t + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void read(const std::string& s, double& v) { v = parse_double(s); }
void read(const std::string& s, int& v) { v = parse_integer<int>(s); }
void read(const std::string& s, std::uint64_t& v) {
  v = parse_integer<std::uint64_t>(s);
}
void read(const std::string& s, std::string& v) { v = trim(s); }
void read(const std::string& s, std::vector<double>& v) {
  v.clear();
  for (const auto& item : split(s)) v.push_back(parse_double(item));
}
void read(const std::string& s, std::vector<std::string>& v) { v = split(s); }

std::string write(double v) { return fmt(v); }
std::string write(int v) { return std::to_string(v); }
std::string write(std::uint64_t v) { return std::to_string(v); }
std::string write(const std::string& v) { return v; }
std::string write(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt(v[i]);
  }
  return out;
}
std::string write(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i];
  }
  return out;
}

struct Field {
  std::string section;
  std::string key;
  std::function<void(ExperimentConfig&, const std::string&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

template <class S, class T>
Field field(const char* section, const char* key, S ExperimentConfig::*sec,
            T S::*mem) {
  return Field{section, key,
               [=](ExperimentConfig& c, const std::string& s) {
                 read(s, c.*sec.*mem);
               },
               [=](const ExperimentConfig& c) { return write(c.*sec.*mem); }};
}

const std::vector<Field>& fields() {
  using C = ExperimentConfig;
  using Sc = ScenarioSection;
  using So = SolverSection;
  using Ex = ExperimentSection;
  static const std::vector<Field> all = {
      field("scenario", "num_tx", &C::scenario, &Sc::num_tx),
      field("scenario", "num_rx", &C::scenario, &Sc::num_rx),
      field("scenario", "spacing", &C::scenario, &Sc::spacing),
      field("scenario", "target_angles_deg", &C::scenario,
            &Sc::target_angles_deg),
      field("scenario", "target_ranges_m", &C::scenario, &Sc::target_ranges_m),
      field("scenario", "num_users", &C::scenario, &Sc::num_users),
      field("scenario", "user_min_angle_deg", &C::scenario,
            &Sc::user_min_angle_deg),
      field("scenario", "user_max_angle_deg", &C::scenario,
            &Sc::user_max_angle_deg),
      field("scenario", "user_min_range_m", &C::scenario,
            &Sc::user_min_range_m),
      field("scenario", "user_max_range_m", &C::scenario,
            &Sc::user_max_range_m),
      field("scenario", "rician_k", &C::scenario, &Sc::rician_k),
      field("scenario", "c0_db", &C::scenario, &Sc::c0_db),
      field("scenario", "d0_m", &C::scenario, &Sc::d0_m),
      field("scenario", "user_pathloss_exponent", &C::scenario,
            &Sc::user_pathloss_exponent),
      field("scenario", "target_pathloss_exponent", &C::scenario,
            &Sc::target_pathloss_exponent),
      field("scenario", "noise_dbm", &C::scenario, &Sc::noise_dbm),
      field("scenario", "p_max_dbm", &C::scenario, &Sc::p_max_dbm),
      field("scenario", "snapshots", &C::scenario, &Sc::snapshots),
      field("scenario", "overload", &C::scenario, &Sc::overload),
      field("solver", "c1", &C::solver, &So::c1),
      field("solver", "c2", &C::solver, &So::c2),
      field("solver", "obj_tol", &C::solver, &So::obj_tol),
      field("solver", "grad_tol", &C::solver, &So::grad_tol),
      field("solver", "max_iters", &C::solver, &So::max_iters),
      field("solver", "max_linesearch_evals", &C::solver,
            &So::max_linesearch_evals),
      field("solver", "restart_period", &C::solver, &So::restart_period),
      field("solver", "sp2_max_iters", &C::solver, &So::sp2_max_iters),
      field("solver", "rate_slack", &C::solver, &So::rate_slack),
      field("solver", "rate_margin", &C::solver, &So::rate_margin),
      field("experiment", "seed", &C::experiment, &Ex::seed),
      field("experiment", "mode", &C::experiment, &Ex::mode),
      field("experiment", "modes", &C::experiment, &Ex::modes),
      field("experiment", "power_grid_dbm", &C::experiment,
            &Ex::power_grid_dbm),
      field("experiment", "delta_grid", &C::experiment, &Ex::delta_grid),
      field("experiment", "trials", &C::experiment, &Ex::trials),
      field("experiment", "music_grid_deg", &C::experiment,
            &Ex::music_grid_deg),
      field("experiment", "beampattern_step_deg", &C::experiment,
            &Ex::beampattern_step_deg),
      field("experiment", "timing_trials", &C::experiment,
            &Ex::timing_trials),
      field("experiment", "output", &C::experiment, &Ex::output),
  };
  return all;
}

void check(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

}  // namespace

const std::vector<std::string>& required_keys() {
  static const std::vector<std::string> keys = {
      "scenario.num_tx",    "scenario.num_rx",   "scenario.target_angles_deg",
      "scenario.num_users", "scenario.noise_dbm", "scenario.p_max_dbm",
  };
  return keys;
}

void ExperimentConfig::validate() const {
  try {
    scenario_config().validate();
    solver_options().sp1.validate();
    solver_options().sp2.validate();
    design_modes();
    design_mode();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  check(solver.rate_slack >= 0.0, "solver.rate_slack must be >= 0");
  check(solver.rate_margin >= 0.0, "solver.rate_margin must be >= 0");
  check(!experiment.modes.empty(), "experiment.modes must not be empty");
  check(!experiment.power_grid_dbm.empty(),
        "experiment.power_grid_dbm must not be empty");
  check(!experiment.delta_grid.empty(),
        "experiment.delta_grid must not be empty");
  for (double d : experiment.delta_grid) {
    check(d >= 0.0 && d <= 1.0, "experiment.delta_grid values must be in [0, 1]");
  }
  check(experiment.trials >= 1, "experiment.trials must be >= 1");
  check(experiment.music_grid_deg > 0.0,
        "experiment.music_grid_deg must be > 0");
  check(experiment.beampattern_step_deg > 0.0,
        "experiment.beampattern_step_deg must be > 0");
  check(experiment.timing_trials >= 3, "experiment.timing_trials must be >= 3");
}

ScenarioConfig ExperimentConfig::scenario_config() const {
  ScenarioConfig c;
  c.array.num_tx = scenario.num_tx;
  c.array.num_rx = scenario.num_rx;
  c.array.spacing = scenario.spacing;
  c.target_angles.clear();
  for (double a : scenario.target_angles_deg) c.target_angles.push_back(deg2rad(a));
  c.target_ranges = scenario.target_ranges_m;
  c.num_users = scenario.num_users;
  c.user_min_angle = deg2rad(scenario.user_min_angle_deg);
  c.user_max_angle = deg2rad(scenario.user_max_angle_deg);
  c.user_min_range = scenario.user_min_range_m;
  c.user_max_range = scenario.user_max_range_m;
  c.rician_k = scenario.rician_k;
  c.c0_db = scenario.c0_db;
  c.d0 = scenario.d0_m;
  c.user_exponent = scenario.user_pathloss_exponent;
  c.target_exponent = scenario.target_pathloss_exponent;
  c.noise_power = dbm_to_watts(scenario.noise_dbm);
  c.power_budget = dbm_to_watts(scenario.p_max_dbm);
  c.snapshots = scenario.snapshots;
  c.overload = scenario.overload;
  c.seed = experiment.seed;
  return c;
}

SgcdfOptions ExperimentConfig::solver_options() const {
  SgcdfOptions o;
  for (RcgOptions* r : {&o.sp1, &o.sp2}) {
    r->c1 = solver.c1;
    r->c2 = solver.c2;
    r->max_linesearch_evals = solver.max_linesearch_evals;
    r->restart_period = solver.restart_period;
  }
  o.sp1.obj_tol = solver.obj_tol;
  o.sp1.grad_tol = solver.grad_tol;
  o.sp1.max_iters = solver.max_iters;
  o.sp2.max_iters = solver.sp2_max_iters;
  o.rate_slack = solver.rate_slack;
  o.sp2_rate_margin = solver.rate_margin;
  return o;
}

DesignMode ExperimentConfig::design_mode() const {
  return parse_mode(experiment.mode);
}

std::vector<DesignMode> ExperimentConfig::design_modes() const {
  std::vector<DesignMode> out;
  for (const auto& m : experiment.modes) out.push_back(parse_mode(m));
  return out;
}

ExperimentConfig parse_config(const std::string& text,
                              const std::string& source) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(source + ":" + std::to_string(e.line()) + ": " +
                      e.message());
  }

  ExperimentConfig cfg;
  std::set<std::string> seen;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw ConfigError(source + ": key '" + section +
                        "' outside of any section");
    }
    for (const auto& [key, value] : body) {
      const std::string where =
          source + ":" + std::to_string(line_of(text, section, key));
      const auto& all = fields();
      const auto it = std::find_if(all.begin(), all.end(), [&](const Field& f) {
        return f.section == section && f.key == key;
      });
      if (it == all.end()) {
        throw ConfigError(where + ": unknown key '" + key + "' in [" +
                          section + "]");
      }
      try {
        it->set(cfg, value.data());
      } catch (const ConfigError& e) {
        throw ConfigError(where + ": " + section + "." + key + ": " +
                          e.what());
      }
      seen.insert(section + "." + key);
    }
    if (section != "scenario" && section != "solver" &&
        section != "experiment") {
      throw ConfigError(source + ": unknown section [" + section + "]");
    }
  }
  for (const auto& key : required_keys()) {
    if (!seen.count(key)) {
      throw ConfigError(source + ": missing required key '" + key + "'");
    }
  }
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

std::string dump_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  std::string section;
  for (const auto& f : fields()) {
    if (f.section != section) {
      if (!section.empty()) out << '\n';
      section = f.section;
      out << '[' << section << "]\n";
    }
    out << f.key << " = " << f.get(cfg) << '\n';
  }
  return out.str();
}

}  // namespace isac
