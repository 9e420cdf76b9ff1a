#include "isac/sgcdf.hpp"

#include <chrono>
#include <cmath>

#include "isac/random.hpp"

namespace isac {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

ObliqueManifold manifold_for(const Scenario& s) {
  return ObliqueManifold::for_power(s.array.num_tx, s.num_streams(),
                                    s.power_budget);
}

// Zero rows cannot be retracted; give them a tiny uniform-phase vector.
void guard_zero_rows(CMatrix& w) {
  const double n = std::sqrt(static_cast<double>(w.cols()));
  for (Eigen::Index m = 0; m < w.rows(); ++m) {
    if (w.row(m).norm() == 0.0) w.row(m).setConstant(cdouble(1e-12 / n, 0.0));
  }
}

}  // namespace

std::string to_string(DesignMode mode) {
  switch (mode) {
    case DesignMode::kSgcdf:
      return "sgcdf";
    case DesignMode::kSensingOnly:
      return "sensing_only";
    case DesignMode::kNoDedicatedStream:
      return "no_dedicated_stream";
    case DesignMode::kOmnidirectional:
      return "omnidirectional";
  }
  return "unknown";
}

DesignMode parse_mode(const std::string& name) {
  for (auto m : {DesignMode::kSgcdf, DesignMode::kSensingOnly,
                 DesignMode::kNoDedicatedStream,
                 DesignMode::kOmnidirectional}) {
    if (to_string(m) == name) return m;
  }
  throw ConfigError("unknown mode '" + name + "'");
}

SgcdfOptions::SgcdfOptions() {
  sp1.obj_tol = 1e-6;
  sp2.obj_tol = 0.0;
  sp2.max_iters = 5000;
  sp2.zero_residual_step = true;
}

double minimum_rate(const Scenario& scenario) {
  if (scenario.num_users() == 0 || scenario.overload == 0.0) return 0.0;
  return scenario.overload *
         max_min_zf_rate(scenario.channel_matrix(), scenario.noise_power,
                         scenario.power_budget);
}

InitialPoint initial_point(const Scenario& scenario, double r_min,
                           bool dedicated_sensing) {
  const int m = scenario.array.num_tx;
  const int k = scenario.num_users();
  const double p_max = scenario.power_budget;
  const ObliqueManifold manifold = manifold_for(scenario);

  InitialPoint init;
  init.comm_power = RVector::Zero(k);
  CMatrix directions = CMatrix::Zero(m, k);
  if (k > 0) {
    const CMatrix h = scenario.channel_matrix();
    try {
      directions = zf_precoder(h);
      if (r_min > 0.0) {
        const RMatrix delta = equal_rate_system(h, directions, r_min);
        const auto lu = delta.fullPivLu();
        const RVector base =
            lu.solve(RVector::Constant(k, scenario.noise_power));
        // Per unit of p_S: W_S W_S^H = (p_S / M) I adds ||h_j||^2 / M.
        const RVector per_ps = lu.solve(
            h.colwise().squaredNorm().transpose() / static_cast<double>(m));
        for (int i = 0; i < k; ++i) {
          if (!std::isfinite(base(i)) || base(i) < 0.0 ||
              !std::isfinite(per_ps(i)) || per_ps(i) < 0.0) {
            throw InfeasibleError("equal-rate power infeasible", i);
          }
        }
        if (dedicated_sensing) {
          const double ps = (p_max - base.sum()) / (1.0 + per_ps.sum());
          if (ps >= 0.0) {
            init.sensing_power = ps;
            init.comm_power = base + ps * per_ps;
          } else {
            init.comm_power = base * (0.9 * p_max / base.sum());
            init.sensing_power = 0.1 * p_max;
            init.power_scaled = true;
          }
        } else {
          init.comm_power = base;
        }
      } else {
        // No rate requirement: the communication streams carry no power.
        init.sensing_power = dedicated_sensing ? p_max : 0.0;
        if (!dedicated_sensing) {
          init.comm_power = RVector::Constant(k, p_max / k);
        }
      }
    } catch (const Error&) {
      init.comm_fallback = true;
      init.comm_power = RVector::Zero(k);
      init.sensing_power = p_max;
    }
  } else {
    init.sensing_power = p_max;
  }
  if (!dedicated_sensing && !init.comm_fallback) init.sensing_power = 0.0;

  CMatrix w = CMatrix::Zero(m, k + m);
  for (int i = 0; i < k; ++i) {
    w.col(i) = std::sqrt(init.comm_power(i)) * directions.col(i);
  }
  w.rightCols(m) = std::sqrt(init.sensing_power / m) * CMatrix::Identity(m, m);
  guard_zero_rows(w);
  init.w = manifold.retract(w);
  return init;
}

StageResult solve_sp1(const Scenario& scenario, const CMatrix& w0,
                      const RcgOptions& opts) {
  const auto t0 = Clock::now();
  const ObliqueManifold manifold = manifold_for(scenario);
  const CouplingGrid coupling = coupling_matrices(scenario);
  CMatrix start = w0;
  try {
    (void)fisher_matrix(start, coupling);
  } catch (const DegenerateGeometryError&) {
    const int m = scenario.array.num_tx;
    Rng rng = Rng::substream(scenario.seed, Stream::kInitialization);
    CMatrix phases(m, m);
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < m; ++i)
        phases(i, j) = std::polar(1.0, rng.uniform(0.0, 2.0 * kPi));
    start.rightCols(m) = manifold.radius() / std::sqrt(m) * phases;
    start = manifold.retract(start);
    (void)fisher_matrix(start, coupling);  // second failure propagates
  }
  const CostFunction cost = [&coupling](const CMatrix& w, CMatrix* g) {
    return f1_and_grad(w, coupling, g);
  };
  RcgResult res = minimize(manifold, cost, start, opts);
  StageResult out;
  out.w = std::move(res.w);
  out.trace = std::move(res.trace);
  out.seconds = seconds_since(t0);
  return out;
}

StageResult solve_sp2(const Scenario& scenario, const CMatrix& w_sp1,
                      double r_min, const SgcdfOptions& opts) {
  const auto t0 = Clock::now();
  const ObliqueManifold manifold = manifold_for(scenario);
  const int k = scenario.num_users();
  const CMatrix h = scenario.channel_matrix();
  const double sigma2 = scenario.noise_power;

  const auto feasible = [&](const CMatrix& w) {
    return k == 0 || rates(w, h, sigma2).min_rate >= r_min - opts.rate_slack;
  };

  StageResult out;
  if (!(r_min > 0.0) || feasible(w_sp1)) {
    out.w = w_sp1;
    out.skipped = true;
    out.trace.termination = Termination::kTargetReached;
    out.seconds = seconds_since(t0);
    return out;
  }

  // Cones on noise-normalized channels (h / sigma, unit noise): the SINR and
  // hence cone membership are unchanged, and f2 stays O(1) in magnitude.
  const CMatrix h_norm = h / std::sqrt(sigma2);
  const RVector targets = RVector::Constant(k, r_min + opts.sp2_rate_margin);
  const auto socs = soc_assemble(h_norm, targets, 1.0, scenario.num_streams());
  const CostFunction cost = [&socs](const CMatrix& w, CMatrix* g) {
    F2Value v = f2_and_grad(w, socs);
    if (g != nullptr) *g = std::move(v.grad);
    return v.value;
  };

  RcgResult res = minimize(manifold, cost, w_sp1, opts.sp2, feasible);
  if (!feasible(res.w)) {
    const double gap = r_min - rates(res.w, h, sigma2).min_rate;
    throw InfeasibleError("rate projection stopped (" +
                              to_string(res.trace.termination) +
                              ") with min-rate gap " + std::to_string(gap),
                          -1, gap);
  }
  out.w = std::move(res.w);
  out.trace = std::move(res.trace);
  out.seconds = seconds_since(t0);
  return out;
}

DesignResult run(const Scenario& scenario, DesignMode mode,
                 const SgcdfOptions& opts) {
  scenario.validate();
  const auto t0 = Clock::now();
  const int m = scenario.array.num_tx;
  const int k = scenario.num_users();

  DesignResult res;
  res.mode = mode;
  if (k > 0) {
    res.r_max_zf = max_min_zf_rate(scenario.channel_matrix(),
                                   scenario.noise_power, scenario.power_budget);
    res.r_min = scenario.overload * res.r_max_zf;
  }

  switch (mode) {
    case DesignMode::kOmnidirectional: {
      res.w_star = CMatrix::Zero(m, k + m);
      res.w_star.rightCols(m) =
          std::sqrt(scenario.power_budget / m) * CMatrix::Identity(m, m);
      res.sp1.skipped = res.sp2.skipped = true;
      break;
    }
    case DesignMode::kSensingOnly: {
      res.init = initial_point(scenario, res.r_min, true);
      res.sp1 = solve_sp1(scenario, res.init.w, opts.sp1);
      res.sp2.skipped = true;
      res.w_star = res.sp1.w;
      break;
    }
    case DesignMode::kSgcdf:
    case DesignMode::kNoDedicatedStream: {
      const bool dedicated = mode == DesignMode::kSgcdf;
      res.init = initial_point(scenario, res.r_min, dedicated);
      res.sp1 = solve_sp1(scenario, res.init.w, opts.sp1);
      res.sp2 = solve_sp2(scenario, res.sp1.w, res.r_min, opts);
      res.w_star = res.sp2.w;
      break;
    }
  }

  res.r_x = res.w_star * res.w_star.adjoint();
  const CouplingGrid coupling = coupling_matrices(scenario);
  res.sum_crlb = fisher_matrix(res.w_star, coupling).objective;
  res.rcrlb = std::sqrt(res.sum_crlb);
  res.rates = rates(res.w_star, scenario.channel_matrix(), scenario.noise_power);
  res.wall_time = seconds_since(t0);
  return res;
}

}  // namespace isac
