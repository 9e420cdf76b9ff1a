#include "isac/experiments.hpp"

#include <cmath>
#include <ostream>

#include "isac/csv.hpp"

namespace isac {

double to_db(double linear) {
  return 10.0 * std::log10(std::max(linear, 1e-30));
}

double sum_beampattern_gain_db(const Scenario& scenario, const CMatrix& r_x) {
  double total = 0.0;
  for (const auto& t : scenario.targets) {
    total += beampattern_gain(r_x, t.angle, scenario.array.spacing);
  }
  return to_db(total);
}

MonteCarloOptions monte_carlo_options(const ExperimentConfig& cfg) {
  MonteCarloOptions o;
  o.trials = cfg.experiment.trials;
  o.grid_deg = cfg.experiment.music_grid_deg;
  o.seed = cfg.experiment.seed;
  return o;
}

DesignRecord cmd_design(const ExperimentConfig& cfg) {
  const Scenario scenario = build_scenario(cfg.scenario_config());
  DesignRecord rec;
  rec.result = run(scenario, cfg.design_mode(), cfg.solver_options());
  rec.sp1_iterations = rec.result.sp1.trace.iterations();
  rec.sp2_iterations = rec.result.sp2.trace.iterations();
  return rec;
}

void write_design(const DesignRecord& rec, std::ostream& os) {
  const DesignResult& r = rec.result;
  std::string rates;
  for (Eigen::Index k = 0; k < r.rates.rate.size(); ++k) {
    if (k) rates += ';';
    rates += format_number(r.rates.rate(k));
  }
  CsvWriter w(os, {"mode", "sum_crlb", "rcrlb_deg", "min_rate", "r_min",
                   "rates", "wall_time", "sp1_iterations", "sp2_iterations"});
  w.row({to_string(r.mode), r.sum_crlb, rad2deg(r.rcrlb), r.rates.min_rate,
         r.r_min, rates, r.wall_time,
         static_cast<long long>(rec.sp1_iterations),
         static_cast<long long>(rec.sp2_iterations)});
}

std::vector<PowerSweepRow> cmd_sweep_power(const ExperimentConfig& cfg) {
  const Scenario base = build_scenario(cfg.scenario_config());
  const SgcdfOptions opts = cfg.solver_options();
  const MonteCarloOptions mc = monte_carlo_options(cfg);
  std::vector<PowerSweepRow> rows;
  for (double p_dbm : cfg.experiment.power_grid_dbm) {
    const Scenario s = base.with_power(dbm_to_watts(p_dbm));
    for (DesignMode mode : cfg.design_modes()) {
      const DesignResult d = run(s, mode, opts);
      const MonteCarloReport rep = monte_carlo(s, d, mc);
      rows.push_back({p_dbm, mode, sum_beampattern_gain_db(s, d.r_x),
                      d.sum_crlb, rad2deg(d.rcrlb), rad2deg(rep.rmse),
                      d.rates.min_rate});
    }
  }
  return rows;
}

void write_power_sweep(const std::vector<PowerSweepRow>& rows,
                       std::ostream& os) {
  CsvWriter w(os, {"p_max_dbm", "mode", "sum_beampattern_gain_db", "sum_crlb",
                   "rcrlb_deg", "rmse_deg", "min_rate"});
  for (const auto& r : rows) {
    w.row({r.p_max_dbm, to_string(r.mode), r.sum_beampattern_gain_db,
           r.sum_crlb, r.rcrlb_deg, r.rmse_deg, r.min_rate});
  }
}

std::vector<DeltaSweepRow> cmd_sweep_delta(const ExperimentConfig& cfg) {
  const Scenario base = build_scenario(cfg.scenario_config());
  const SgcdfOptions opts = cfg.solver_options();
  const MonteCarloOptions mc = monte_carlo_options(cfg);
  std::vector<DeltaSweepRow> rows;
  for (double delta : cfg.experiment.delta_grid) {
    Scenario s = base;
    s.overload = delta;
    for (DesignMode mode : cfg.design_modes()) {
      const DesignResult d = run(s, mode, opts);
      const MonteCarloReport rep = monte_carlo(s, d, mc);
      rows.push_back({delta, mode, d.sum_crlb, rad2deg(rep.rmse),
                      d.rates.min_rate, d.r_min});
    }
  }
  return rows;
}

void write_delta_sweep(const std::vector<DeltaSweepRow>& rows,
                       std::ostream& os) {
  CsvWriter w(os,
              {"delta", "mode", "sum_crlb", "rmse_deg", "min_rate", "r_min"});
  for (const auto& r : rows) {
    w.row({r.delta, to_string(r.mode), r.sum_crlb, r.rmse_deg, r.min_rate,
           r.r_min});
  }
}

std::vector<double> angle_grid_deg(double step_deg) {
  if (!(step_deg > 0.0)) throw DomainError("grid resolution must be > 0");
  const int n = static_cast<int>(std::ceil(180.0 / step_deg - 1e-9));
  std::vector<double> grid(n + 1);
  for (int i = 0; i < n; ++i) grid[i] = -90.0 + i * step_deg;
  grid[n] = 90.0;
  return grid;
}

BeampatternTrace cmd_beampattern(const ExperimentConfig& cfg) {
  const Scenario s = build_scenario(cfg.scenario_config());
  const SgcdfOptions opts = cfg.solver_options();
  const std::vector<double> grid =
      angle_grid_deg(cfg.experiment.beampattern_step_deg);
  BeampatternTrace trace;
  trace.p_max_dbm = cfg.scenario.p_max_dbm;
  trace.target_angles_deg = cfg.scenario.target_angles_deg;
  for (const auto& u : s.users) trace.user_angles_deg.push_back(rad2deg(u.angle));
  for (DesignMode mode : cfg.design_modes()) {
    const DesignResult d = run(s, mode, opts);
    for (double deg : grid) {
      trace.points.push_back(
          {deg, mode,
           to_db(beampattern_gain(d.r_x, deg2rad(deg), s.array.spacing))});
    }
  }
  return trace;
}

void write_beampattern(const BeampatternTrace& trace, std::ostream& os) {
  auto join = [](const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ';';
      out += format_number(v[i]);
    }
    return out;
  };
  CsvWriter w(os, {"theta_deg", "mode", "gain_db"});
  w.comment("target_angles_deg=" + join(trace.target_angles_deg));
  w.comment("user_angles_deg=" + join(trace.user_angles_deg));
  w.comment("p_max_dbm=" + format_number(trace.p_max_dbm));
  for (const auto& p : trace.points) {
    w.row({p.theta_deg, to_string(p.mode), p.gain_db});
  }
}

namespace {

std::pair<double, double> mean_stddev(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double sd =
      v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
  return {mean, sd};
}

}  // namespace

std::vector<TimingRow> cmd_timing(const ExperimentConfig& cfg) {
  const Scenario s = build_scenario(cfg.scenario_config());
  const SgcdfOptions opts = cfg.solver_options();
  const int reps = cfg.experiment.timing_trials;
  if (reps < 3) throw DomainError("timing needs at least 3 repetitions");
  std::vector<TimingRow> rows;
  for (DesignMode mode : cfg.design_modes()) {
    std::vector<double> sp1, sp2, total;
    int it1 = 0, it2 = 0;
    for (int r = 0; r < reps; ++r) {
      const DesignResult d = run(s, mode, opts);
      sp1.push_back(d.sp1.seconds);
      sp2.push_back(d.sp2.seconds);
      total.push_back(d.wall_time);
      if (r == 0) {
        it1 = d.sp1.trace.iterations();
        it2 = d.sp2.trace.iterations();
      }
    }
    const auto [m1, s1] = mean_stddev(sp1);
    const auto [m2, s2] = mean_stddev(sp2);
    const auto [mt, st] = mean_stddev(total);
    rows.push_back({mode, "sp1", m1, s1, it1});
    rows.push_back({mode, "sp2", m2, s2, it2});
    rows.push_back({mode, "total", mt, st, it1 + it2});
  }
  return rows;
}

void write_timing(const std::vector<TimingRow>& rows, std::ostream& os) {
  CsvWriter w(os, {"mode", "stage", "mean_s", "stddev_s", "iterations"});
  for (const auto& r : rows) {
    w.row({to_string(r.mode), r.stage, r.mean_s, r.stddev_s,
           static_cast<long long>(r.iterations)});
  }
}

}  // namespace isac
