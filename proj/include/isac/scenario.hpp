#pragma once

#include <cstdint>
#include <vector>

#include "isac/geometry.hpp"
#include "isac/random.hpp"
#include "isac/types.hpp"

namespace isac {

struct Target {
  double angle = 0.0;  // rad
  double range = 1.0;  // m
  cdouble rcs{1.0, 0.0};  // includes round-trip path loss
};

struct UserChannel {
  CVector vector;        // h_k, length M_T
  double angle = 0.0;    // rad
  double range = 1.0;    // m
  double pathloss = 1.0; // linear
};

/// Everything needed to draw a problem instance. Angles in radians, powers in
/// watts; unit conversion happens at the config-file boundary.
struct ScenarioConfig {
  ArrayConfig array;
  std::vector<double> target_angles{deg2rad(-45.0), deg2rad(30.0),
                                    deg2rad(60.0)};
  std::vector<double> target_ranges{50.0, 60.0, 70.0};
  int num_users = 6;
  double user_min_angle = deg2rad(-25.0);
  double user_max_angle = deg2rad(25.0);
  double user_min_range = 50.0;
  double user_max_range = 55.0;
  double rician_k = 0.1;
  double c0_db = -30.0;
  double d0 = 1.0;
  double user_exponent = 2.2;
  double target_exponent = 2.2;
  double noise_power = 0.0;   // W; 0 means "derive from -96 dBm"
  double power_budget = 0.0;  // W; 0 means "derive from 20 dBm"
  int snapshots = 1024;
  double overload = 0.7;
  std::uint64_t seed = 1;

  ScenarioConfig();
  void validate() const;
};

/// Immutable problem instance.
struct Scenario {
  ArrayConfig array;
  std::vector<Target> targets;
  std::vector<UserChannel> users;
  double noise_power = 1.0;
  double power_budget = 1.0;
  int snapshots = 1;
  double rician_k = 0.0;
  double overload = 0.0;
  std::uint64_t seed = 0;

  int num_targets() const { return static_cast<int>(targets.size()); }
  int num_users() const { return static_cast<int>(users.size()); }
  /// Columns of W: K communication streams followed by M_T sensing streams.
  int num_streams() const { return num_users() + array.num_tx; }
  /// H = [h_1, ..., h_K], M_T x K.
  CMatrix channel_matrix() const;
  /// Same instance with a different power budget (sweeps).
  Scenario with_power(double watts) const;
  void validate() const;
};

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

/// C0 * (d0 / distance)^exponent with C0 = 10^(c0_db/10).
double pathloss(double distance, double exponent, double c0_db, double d0);

/// Rician users inside the configured sector/annulus.
std::vector<UserChannel> make_user_channels(const ScenarioConfig& cfg,
                                            Rng& rng);

/// |rcs|^2 = C0 (d0/range)^(2*exponent), phase uniform on [0, 2pi).
std::vector<Target> make_targets(const std::vector<double>& angles,
                                 const std::vector<double>& ranges,
                                 const ScenarioConfig& cfg, Rng& rng);

/// Deterministic in cfg.seed.
Scenario build_scenario(const ScenarioConfig& cfg);

}  // namespace isac
