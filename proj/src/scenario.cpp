#include "isac/scenario.hpp"

#include <cmath>
#include <string>

namespace isac {

ScenarioConfig::ScenarioConfig()
    : noise_power(dbm_to_watts(-96.0)), power_budget(dbm_to_watts(20.0)) {}

void ScenarioConfig::validate() const {
  array.validate();
  if (target_angles.empty()) throw DomainError("at least one target required");
  if (target_angles.size() != target_ranges.size()) {
    throw DomainError("target angle/range lists differ in length");
  }
  if (num_users < 0) throw DomainError("num_users must be >= 0");
  if (num_users > array.num_tx) {
    throw DomainError("num_users exceeds num_tx (zero-forcing infeasible)");
  }
  if (user_min_angle > user_max_angle || user_min_range > user_max_range) {
    throw DomainError("user sector bounds inverted");
  }
  if (user_min_range < d0) throw DomainError("user range below d0");
  if (rician_k < 0.0) throw DomainError("rician_k must be >= 0");
  if (!(noise_power > 0.0)) throw DomainError("noise power must be > 0");
  if (!(power_budget > 0.0)) throw DomainError("power budget must be > 0");
  if (snapshots < 1) throw DomainError("snapshots must be >= 1");
  if (overload < 0.0 || overload > 1.0) {
    throw DomainError("overload factor must lie in [0, 1]");
  }
}

CMatrix Scenario::channel_matrix() const {
  CMatrix h(array.num_tx, num_users());
  for (int k = 0; k < num_users(); ++k) h.col(k) = users[k].vector;
  return h;
}

Scenario Scenario::with_power(double watts) const {
  Scenario s = *this;
  s.power_budget = watts;
  s.validate();
  return s;
}

void Scenario::validate() const {
  array.validate();
  if (targets.empty()) throw DomainError("scenario has no targets");
  for (const auto& t : targets) {
    if (!(t.range > 0.0)) throw DomainError("target range must be > 0");
    if (!(std::abs(t.rcs) > 0.0)) throw DomainError("target rcs must be != 0");
  }
  for (const auto& u : users) {
    if (u.vector.size() != array.num_tx) {
      throw DimensionError("user channel length differs from num_tx");
    }
    if (!u.vector.allFinite()) throw DomainError("non-finite user channel");
    if (!(u.pathloss > 0.0)) throw DomainError("user pathloss must be > 0");
  }
  if (!(noise_power > 0.0)) throw DomainError("noise power must be > 0");
  if (!(power_budget > 0.0)) throw DomainError("power budget must be > 0");
  if (snapshots < 1) throw DomainError("snapshots must be >= 1");
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

double pathloss(double distance, double exponent, double c0_db, double d0) {
  if (!(d0 > 0.0)) throw DomainError("reference distance must be > 0");
  if (!(distance >= d0)) {
    throw DomainError("distance " + std::to_string(distance) +
                      " m below reference distance");
  }
  return std::pow(10.0, c0_db / 10.0) * std::pow(d0 / distance, exponent);
}

std::vector<UserChannel> make_user_channels(const ScenarioConfig& cfg,
                                            Rng& rng) {
  const int m = cfg.array.num_tx;
  const double k = cfg.rician_k;
  std::vector<UserChannel> users;
  users.reserve(cfg.num_users);
  for (int u = 0; u < cfg.num_users; ++u) {
    UserChannel ch;
    ch.angle = rng.uniform(cfg.user_min_angle, cfg.user_max_angle);
    ch.range = rng.uniform(cfg.user_min_range, cfg.user_max_range);
    ch.pathloss = pathloss(ch.range, cfg.user_exponent, cfg.c0_db, cfg.d0);
    const CVector los = steering(ch.angle, m, cfg.array.spacing);
    const CVector nlos = rng.complex_normal(m);
    ch.vector = std::sqrt(ch.pathloss * k / (k + 1.0)) * los +
                std::sqrt(ch.pathloss / (k + 1.0)) * nlos;
    users.push_back(std::move(ch));
  }
  return users;
}

std::vector<Target> make_targets(const std::vector<double>& angles,
                                 const std::vector<double>& ranges,
                                 const ScenarioConfig& cfg, Rng& rng) {
  if (angles.size() != ranges.size()) {
    throw DomainError("target angle/range lists differ in length");
  }
  std::vector<Target> targets;
  targets.reserve(angles.size());
  for (std::size_t t = 0; t < angles.size(); ++t) {
    Target tg;
    tg.angle = angles[t];
    tg.range = ranges[t];
    // Validate the angle with the steering domain check.
    (void)steering(tg.angle, 1);
    const double gain =
        pathloss(tg.range, 2.0 * cfg.target_exponent, cfg.c0_db, cfg.d0);
    const double phase = rng.uniform(0.0, 2.0 * kPi);
    tg.rcs = std::polar(std::sqrt(gain), phase);
    targets.push_back(tg);
  }
  return targets;
}

Scenario build_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  Scenario s;
  s.array = cfg.array;
  Rng channel_rng = Rng::substream(cfg.seed, Stream::kChannels);
  Rng rcs_rng = Rng::substream(cfg.seed, Stream::kRcsPhases);
  s.users = make_user_channels(cfg, channel_rng);
  s.targets = make_targets(cfg.target_angles, cfg.target_ranges, cfg, rcs_rng);
  s.noise_power = cfg.noise_power;
  s.power_budget = cfg.power_budget;
  s.snapshots = cfg.snapshots;
  s.rician_k = cfg.rician_k;
  s.overload = cfg.overload;
  s.seed = cfg.seed;
  s.validate();
  return s;
}

}  // namespace isac
