#include <gtest/gtest.h>

#include "isac/sgcdf.hpp"
#include "oracles.hpp"

using namespace isac;

namespace {

ScenarioConfig desk(int m, int k) {
  ScenarioConfig cfg;
  cfg.array.num_tx = m;
  cfg.array.num_rx = m;
  cfg.num_users = k;
  cfg.snapshots = 256;
  return cfg;
}

double omni_crlb(const Scenario& s) {
  const int m = s.array.num_tx;
  CMatrix w = CMatrix::Zero(m, s.num_streams());
  w.rightCols(m) = std::sqrt(s.power_budget / m) * CMatrix::Identity(m, m);
  return fisher_matrix(w, coupling_matrices(s)).objective;
}

}  // namespace

TEST(Mode, NamesRoundTrip) {
  for (DesignMode m : {DesignMode::kSgcdf, DesignMode::kSensingOnly,
                       DesignMode::kNoDedicatedStream,
                       DesignMode::kOmnidirectional}) {
    EXPECT_EQ(parse_mode(to_string(m)), m);
  }
  EXPECT_THROW(parse_mode("sdr"), ConfigError);
}

TEST(InitialPoint, NoUsersIsOmnidirectional) {
  ScenarioConfig cfg = desk(8, 0);
  const Scenario s = build_scenario(cfg);
  const InitialPoint init = initial_point(s, 0.0);
  const CMatrix want = std::sqrt(s.power_budget / 8) * CMatrix::Identity(8, 8);
  EXPECT_LT((init.w - want).norm(), 1e-15);
}

TEST(InitialPoint, EqualRateSplit) {
  const Scenario s = build_scenario(desk(16, 4));
  const double r_min = minimum_rate(s);
  ASSERT_GT(r_min, 0.0);
  const InitialPoint init = initial_point(s, r_min);
  ASSERT_FALSE(init.comm_fallback);
  ASSERT_FALSE(init.power_scaled);
  // Rebuild the split before the per-antenna retraction.
  const CMatrix h = s.channel_matrix();
  const CMatrix v = zf_precoder(h);
  CMatrix w = CMatrix::Zero(16, 4 + 16);
  for (int k = 0; k < 4; ++k) w.col(k) = std::sqrt(init.comm_power(k)) * v.col(k);
  w.rightCols(16) =
      std::sqrt(init.sensing_power / 16) * CMatrix::Identity(16, 16);
  EXPECT_NEAR(w.squaredNorm(), s.power_budget, 1e-12 * s.power_budget);
  const RateReport r = rates(w, h, s.noise_power);
  EXPECT_GE(r.min_rate, r_min - 1e-8);
  EXPECT_LT((r.rate.array() - r_min).abs().maxCoeff(), 1e-8);
  const auto man = ObliqueManifold::for_power(16, 20, s.power_budget);
  EXPECT_TRUE(man.contains(init.w));
}

TEST(InitialPoint, NoDedicatedStreamZeroSensingColumns) {
  const Scenario s = build_scenario(desk(16, 4));
  const InitialPoint init = initial_point(s, minimum_rate(s), false);
  EXPECT_EQ(init.sensing_power, 0.0);
  EXPECT_EQ(init.w.rightCols(16).norm(), 0.0);
  const auto man = ObliqueManifold::for_power(16, 20, s.power_budget);
  EXPECT_TRUE(man.contains(init.w));
}

TEST(Sp1, SingleTargetBeamPeak) {
  ScenarioConfig cfg = desk(8, 0);
  cfg.target_angles = {deg2rad(30.0)};
  cfg.target_ranges = {50.0};
  const Scenario s = build_scenario(cfg);
  const StageResult r =
      solve_sp1(s, initial_point(s, 0.0).w, SgcdfOptions().sp1);
  const CMatrix rx = r.w * r.w.adjoint();
  double best = -1.0, best_deg = 0.0;
  for (int i = 0; i <= 1800; ++i) {
    const double deg = -90.0 + 0.1 * i;
    const double g = oracle::beampattern(rx, deg2rad(deg));
    if (g > best) {
      best = g;
      best_deg = deg;
    }
  }
  EXPECT_NEAR(best_deg, 30.0, 1.0);
}

TEST(Sp1, BeatsOmnidirectionalAndScalesWithPower) {
  const Scenario s = build_scenario(desk(16, 4));
  const SgcdfOptions opts;
  const StageResult a = solve_sp1(s, initial_point(s, 0.0).w, opts.sp1);
  const double fa = a.trace.final_objective();
  EXPECT_LE(fa, omni_crlb(s));

  const Scenario s2 = s.with_power(2.0 * s.power_budget);
  const StageResult b = solve_sp1(s2, initial_point(s2, 0.0).w, opts.sp1);
  EXPECT_NEAR(b.trace.final_objective() / fa, 0.5, 0.01);
  const auto man = ObliqueManifold::for_power(16, 20, s.power_budget);
  EXPECT_TRUE(man.contains(a.w));
}

TEST(Sp2, VacuousConstraintLeavesInputUnchanged) {
  const Scenario s = build_scenario(desk(16, 4));
  const SgcdfOptions opts;
  const StageResult a = solve_sp1(s, initial_point(s, 0.0).w, opts.sp1);
  const StageResult b = solve_sp2(s, a.w, 0.0, opts);
  EXPECT_TRUE(b.skipped);
  EXPECT_TRUE(b.w == a.w);
}

TEST(Sp2, ReachesRatesAndCostsSensing) {
  const Scenario s = build_scenario(desk(16, 4));
  const SgcdfOptions opts;
  const double r_min = minimum_rate(s);
  const StageResult a = solve_sp1(s, initial_point(s, r_min).w, opts.sp1);
  const StageResult b = solve_sp2(s, a.w, r_min, opts);
  const RateReport rep = rates(b.w, s.channel_matrix(), s.noise_power);
  EXPECT_GE(rep.min_rate, r_min - opts.rate_slack);
  // Noise-normalized cones at R_min: the distance is zero at the result.
  CMatrix hn = s.channel_matrix() / std::sqrt(s.noise_power);
  const auto socs = soc_assemble(hn, RVector::Constant(4, r_min - 2e-6), 1.0,
                                 s.num_streams());
  EXPECT_EQ(f2_and_grad(b.w, socs).value, 0.0);
  const CouplingGrid c = coupling_matrices(s);
  EXPECT_GE(fisher_matrix(b.w, c).objective, fisher_matrix(a.w, c).objective);
}

TEST(Run, Omnidirectional) {
  const Scenario s = build_scenario(desk(8, 2));
  const DesignResult d = run(s, DesignMode::kOmnidirectional);
  const CMatrix want = s.power_budget / 8 * CMatrix::Identity(8, 8);
  EXPECT_LT((d.r_x - want).norm(), 1e-15);
  EXPECT_EQ(d.sp1.trace.iterations(), 0);
  EXPECT_NEAR(d.sum_crlb, omni_crlb(s), 1e-12 * d.sum_crlb);
  EXPECT_NEAR(d.rcrlb, std::sqrt(d.sum_crlb), 1e-18);
}

TEST(Run, SensingOnlySkipsSecondStage) {
  const Scenario s = build_scenario(desk(8, 2));
  const DesignResult d = run(s, DesignMode::kSensingOnly);
  EXPECT_TRUE(d.sp2.skipped);
  EXPECT_FALSE(d.sp1.skipped);
  EXPECT_GT(d.sp1.trace.iterations(), 0);
}

TEST(Run, SgcdfEndToEnd) {
  const Scenario s = build_scenario(desk(16, 4));
  const DesignResult d = run(s, DesignMode::kSgcdf);
  EXPECT_GT(d.r_min, 0.0);
  EXPECT_NEAR(d.r_min, 0.7 * d.r_max_zf, 1e-12);
  EXPECT_GE(d.rates.min_rate, d.r_min - 1e-6);
  EXPECT_LE(d.sum_crlb, omni_crlb(s));
  const auto man = ObliqueManifold::for_power(16, 20, s.power_budget);
  EXPECT_TRUE(man.contains(d.w_star));
}

TEST(Run, NoDedicatedStreamMeetsRates) {
  const Scenario s = build_scenario(desk(16, 4));
  const DesignResult d = run(s, DesignMode::kNoDedicatedStream);
  EXPECT_GE(d.rates.min_rate, d.r_min - 1e-6);
  EXPECT_EQ(d.w_star.rightCols(16).norm(), 0.0);
}

TEST(Run, Deterministic) {
  const Scenario s = build_scenario(desk(8, 2));
  const DesignResult a = run(s, DesignMode::kSgcdf);
  const DesignResult b = run(s, DesignMode::kSgcdf);
  EXPECT_TRUE(a.w_star == b.w_star);
  EXPECT_EQ(a.sp1.trace.iterations(), b.sp1.trace.iterations());
}
