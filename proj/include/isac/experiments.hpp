#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "isac/config.hpp"
#include "isac/radar_eval.hpp"
#include "isac/sgcdf.hpp"

namespace isac {

/// 10 log10 of the linear gain, floored at -300 dB.
double to_db(double linear);

/// 10 log10(sum_t B(theta_t)) over the scenario's target angles.
double sum_beampattern_gain_db(const Scenario& scenario, const CMatrix& r_x);

struct DesignRecord {
  DesignResult result;
  int sp1_iterations = 0;
  int sp2_iterations = 0;
};

DesignRecord cmd_design(const ExperimentConfig& cfg);
/// Header: mode,sum_crlb,rcrlb_deg,min_rate,r_min,rates,wall_time,
/// sp1_iterations,sp2_iterations. `rates` is ';'-separated per user.
void write_design(const DesignRecord& rec, std::ostream& os);

struct PowerSweepRow {
  double p_max_dbm = 0.0;
  DesignMode mode = DesignMode::kSgcdf;
  double sum_beampattern_gain_db = 0.0;
  double sum_crlb = 0.0;
  double rcrlb_deg = 0.0;
  double rmse_deg = 0.0;
  double min_rate = 0.0;
};

/// Rows ordered by (power index, mode index).
std::vector<PowerSweepRow> cmd_sweep_power(const ExperimentConfig& cfg);
void write_power_sweep(const std::vector<PowerSweepRow>& rows,
                       std::ostream& os);

struct DeltaSweepRow {
  double delta = 0.0;
  DesignMode mode = DesignMode::kSgcdf;
  double sum_crlb = 0.0;
  double rmse_deg = 0.0;
  double min_rate = 0.0;
  double r_min = 0.0;
};

/// Rows ordered by (delta index, mode index), at the configured power.
std::vector<DeltaSweepRow> cmd_sweep_delta(const ExperimentConfig& cfg);
void write_delta_sweep(const std::vector<DeltaSweepRow>& rows,
                       std::ostream& os);

struct BeampatternPoint {
  double theta_deg = 0.0;
  DesignMode mode = DesignMode::kSgcdf;
  double gain_db = 0.0;
};

struct BeampatternTrace {
  std::vector<BeampatternPoint> points;  // by (mode index, angle index)
  std::vector<double> target_angles_deg;
  std::vector<double> user_angles_deg;
  double p_max_dbm = 0.0;
};

/// Uniform grid over [-90, 90] deg with both endpoints included exactly.
std::vector<double> angle_grid_deg(double step_deg);

BeampatternTrace cmd_beampattern(const ExperimentConfig& cfg);
/// Target/user markers go into leading '#' metadata lines.
void write_beampattern(const BeampatternTrace& trace, std::ostream& os);

struct TimingRow {
  DesignMode mode = DesignMode::kSgcdf;
  std::string stage;  // sp1 | sp2 | total
  double mean_s = 0.0;
  double stddev_s = 0.0;  // sample standard deviation
  int iterations = 0;     // of the first repetition
};

/// Rows ordered by (mode index, stage).
std::vector<TimingRow> cmd_timing(const ExperimentConfig& cfg);
void write_timing(const std::vector<TimingRow>& rows, std::ostream& os);

MonteCarloOptions monte_carlo_options(const ExperimentConfig& cfg);

}  // namespace isac
