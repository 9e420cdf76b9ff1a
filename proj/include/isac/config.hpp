#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "isac/scenario.hpp"
#include "isac/sgcdf.hpp"

namespace isac {

/// [scenario] section, in file units: degrees, dBm, metres.
struct ScenarioSection {
  int num_tx = 32;
  int num_rx = 32;
  double spacing = 0.5;
  std::vector<double> target_angles_deg{-45.0, 30.0, 60.0};
  std::vector<double> target_ranges_m{50.0, 60.0, 70.0};
  int num_users = 6;
  double user_min_angle_deg = -25.0;
  double user_max_angle_deg = 25.0;
  double user_min_range_m = 50.0;
  double user_max_range_m = 55.0;
  double rician_k = 0.1;
  double c0_db = -30.0;
  double d0_m = 1.0;
  double user_pathloss_exponent = 2.2;
  double target_pathloss_exponent = 2.2;
  double noise_dbm = -96.0;
  double p_max_dbm = 20.0;
  int snapshots = 1024;
  double overload = 0.7;

  bool operator==(const ScenarioSection&) const = default;
};

/// [solver] section. c1, c2, line-search cap and restart period are shared
/// by both stages.
struct SolverSection {
  double c1 = 1e-4;
  double c2 = 0.4;
  double obj_tol = 1e-6;
  double grad_tol = 0.0;
  int max_iters = 2000;
  int max_linesearch_evals = 40;
  int restart_period = -1;
  int sp2_max_iters = 5000;
  double rate_slack = 1e-6;
  double rate_margin = 1e-4;

  bool operator==(const SolverSection&) const = default;
};

/// [experiment] section.
struct ExperimentSection {
  std::uint64_t seed = 1;
  std::string mode = "sgcdf";
  std::vector<std::string> modes{"sgcdf", "sensing_only",
                                 "no_dedicated_stream", "omnidirectional"};
  std::vector<double> power_grid_dbm{10.0, 15.0, 20.0};
  std::vector<double> delta_grid{0.0, 0.3, 0.5, 0.7};
  int trials = 30;
  double music_grid_deg = 0.02;
  double beampattern_step_deg = 0.1;
  int timing_trials = 3;
  std::string output;  // empty: stdout

  bool operator==(const ExperimentSection&) const = default;
};

struct ExperimentConfig {
  ScenarioSection scenario;
  SolverSection solver;
  ExperimentSection experiment;

  bool operator==(const ExperimentConfig&) const = default;

  /// Throws ConfigError on out-of-range values.
  void validate() const;
  ScenarioConfig scenario_config() const;
  SgcdfOptions solver_options() const;
  DesignMode design_mode() const;
  std::vector<DesignMode> design_modes() const;
};

/// Keys that must appear in every config file.
const std::vector<std::string>& required_keys();

/// Parse INI text. `source` names the input in error messages. Unknown
/// sections/keys, missing required keys and malformed values throw
/// ConfigError carrying "source:line".
ExperimentConfig parse_config(const std::string& text,
                              const std::string& source = "<config>");
ExperimentConfig load_config(const std::string& path);

/// INI text that parses back to an identical ExperimentConfig.
std::string dump_config(const ExperimentConfig& cfg);

}  // namespace isac
