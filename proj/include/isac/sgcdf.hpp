#pragma once

#include <string>

#include "isac/comm.hpp"
#include "isac/fisher.hpp"
#include "isac/rcg.hpp"
#include "isac/scenario.hpp"

namespace isac {

enum class DesignMode {
  kSgcdf,              // sensing-optimal beamformer, then rate projection
  kSensingOnly,        // first stage only, rates unconstrained
  kNoDedicatedStream,  // sensing carried by the communication streams alone
  kOmnidirectional,    // R_X = (P/M_T) I, no optimization
};

std::string to_string(DesignMode mode);
/// Accepts sgcdf | sensing_only | no_dedicated_stream | omnidirectional.
DesignMode parse_mode(const std::string& name);

struct SgcdfOptions {
  RcgOptions sp1;
  RcgOptions sp2;
  /// A rate counts as met when it is >= R_min - rate_slack.
  double rate_slack = 1e-6;
  /// The cones of the second stage are built for R_min + sp2_rate_margin so
  /// that iterates cross the true threshold after finitely many steps.
  double sp2_rate_margin = 1e-4;

  SgcdfOptions();
};

struct InitialPoint {
  CMatrix w;                 // on the manifold
  RVector comm_power;        // p_k before retraction
  double sensing_power = 0;  // p_S before retraction
  bool comm_fallback = false;  // ZF/equal-rate infeasible, W_C = 0
  bool power_scaled = false;   // sum p_k > P_max, scaled to 0.9 P_max
};

/// Omnidirectional sensing block plus ZF communication columns at the
/// equal-rate powers for `r_min`; the sensing power takes the rest of the
/// budget (solved exactly, since p depends linearly on p_S). With
/// `dedicated_sensing == false` the sensing block is zero.
InitialPoint initial_point(const Scenario& scenario, double r_min,
                           bool dedicated_sensing = true);

struct StageResult {
  CMatrix w;
  SolverTrace trace;
  double seconds = 0.0;
  bool skipped = false;
};

/// Minimize the sum-CRLB over the oblique manifold from `w0`. If the Fisher
/// matrix is singular at `w0`, the sensing block is re-drawn with random
/// phases once before giving up.
StageResult solve_sp1(const Scenario& scenario, const CMatrix& w0,
                      const RcgOptions& opts);

/// Pull `w_sp1` into the rate-feasible set by minimizing the distance to the
/// SOC set, stopping as soon as every rate reaches r_min (within the slack).
/// Returns the input unchanged when it is already feasible. Throws
/// InfeasibleError (with the remaining gap) when the iteration cap is hit.
StageResult solve_sp2(const Scenario& scenario, const CMatrix& w_sp1,
                      double r_min, const SgcdfOptions& opts);

struct DesignResult {
  DesignMode mode = DesignMode::kSgcdf;
  CMatrix w_star;
  CMatrix r_x;
  double sum_crlb = 0.0;
  double rcrlb = 0.0;  // sqrt(sum_crlb), rad
  RateReport rates;
  double r_min = 0.0;
  double r_max_zf = 0.0;
  StageResult sp1;
  StageResult sp2;
  InitialPoint init;
  double wall_time = 0.0;  // s
};

/// R_min = overload * R_max^ZF (0 without users).
double minimum_rate(const Scenario& scenario);

DesignResult run(const Scenario& scenario, DesignMode mode,
                 const SgcdfOptions& opts = SgcdfOptions());

}  // namespace isac
