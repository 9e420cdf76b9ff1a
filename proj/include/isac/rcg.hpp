#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "isac/oblique_manifold.hpp"
#include "isac/types.hpp"

namespace isac {

/// Objective callback: returns f(W) and, when `egrad` is non-null, writes
/// the Euclidean gradient (convention f(W+D) ~ f(W) + Re tr(egrad^H D)).
using CostFunction = std::function<double(const CMatrix& w, CMatrix* egrad)>;

/// Optional early-exit test evaluated on every accepted iterate.
using StopPredicate = std::function<bool(const CMatrix& w)>;

struct RcgOptions {
  double c1 = 1e-4;  // sufficient decrease
  double c2 = 0.4;   // curvature; must stay below 1/2 for Fletcher-Reeves
  /// Stop when |f_{l+1} - f_l| <= obj_tol * |f_l|. Relative, so the test is
  /// independent of the physical units of the objective. 0 disables.
  double obj_tol = 1e-3;
  /// Stop when ||grad f|| <= grad_tol (Riemannian gradient, absolute).
  double grad_tol = 0.0;
  int max_iters = 2000;
  int max_linesearch_evals = 40;
  /// Reset beta to zero every `restart_period` iterations. Negative selects
  /// the number of manifold columns (K + M_T); zero never restarts.
  int restart_period = -1;
  /// Trial step -2 f / slope, exact for a quadratic whose minimum value is
  /// zero. Suits least-squares objectives that should stop at the first
  /// zero-residual point instead of overshooting into its interior.
  bool zero_residual_step = false;

  void validate() const;
};

enum class Termination {
  kGradTol,
  kObjTol,
  kMaxIters,
  kLineSearchFail,
  kTargetReached,
};

std::string to_string(Termination t);

/// One accepted iterate. Entry 0 describes the starting point.
struct IterationRecord {
  int iter = 0;
  double objective = 0.0;
  double grad_norm = 0.0;
  double step = 0.0;   // step that produced this iterate
  double beta = 0.0;   // FR weight used for the direction of that step
  double slope = 0.0;  // <grad f(W_prev), D_prev>
  double curvature = 0.0;  // <grad f(W), Pi_W(D_prev)>
  double cos_phi = 0.0;    // -slope / (||grad(W_prev)|| ||D_prev||)
  bool wolfe_satisfied = true;
  int evals = 0;
};

struct SolverTrace {
  std::vector<IterationRecord> records;
  Termination termination = Termination::kMaxIters;
  /// Running sum of cos^2(phi_l) ||grad f(W_l)||^2 over accepted steps.
  double zoutendijk_sum = 0.0;
  int evaluations = 0;
  int restarts = 0;

  int iterations() const {
    return records.empty() ? 0 : static_cast<int>(records.size()) - 1;
  }
  double final_objective() const {
    return records.empty() ? 0.0 : records.back().objective;
  }
  /// CSV with header iter,f,gnorm,step,beta.
  void write_csv(std::ostream& os) const;
};

struct RcgResult {
  CMatrix w;
  SolverTrace trace;
};

struct LineSearchResult {
  double step = 0.0;
  int evals = 0;
  bool wolfe_satisfied = false;   // both strong-Wolfe inequalities hold
  bool armijo_satisfied = false;  // at least sufficient decrease holds
  CMatrix w;        // retracted point
  double f = 0.0;
  CMatrix egrad;    // Euclidean gradient at w
  CMatrix rgrad;    // Riemannian gradient at w
  double curvature = 0.0;  // <rgrad, Pi_w(d)>
};

/// Fletcher-Reeves weight ||g_new||^2 / ||g_old||^2; nullopt when the old
/// gradient is zero (already converged).
std::optional<double> fletcher_reeves_beta(const CMatrix& grad_new,
                                           const CMatrix& grad_old);

/// Strong-Wolfe step along the retraction curve W(a) = R(W + a d):
///   f(W(a)) <= f0 + c1 a g0
///   |<grad f(W(a)), Pi_{W(a)}(d)>| <= c2 |g0|
/// Bracketing by doubling, then bisection. When the evaluation budget runs
/// out the best sufficient-decrease point is returned with
/// wolfe_satisfied = false. Throws DomainError if g0 >= 0.
LineSearchResult wolfe_linesearch(const ObliqueManifold& manifold,
                                  const CostFunction& cost, const CMatrix& w,
                                  const CMatrix& d, double f0, double g0,
                                  const RcgOptions& opts, double initial_step);

/// Riemannian conjugate gradient with Fletcher-Reeves directions. Throws
/// NumericalError if the callback returns non-finite values.
RcgResult minimize(const ObliqueManifold& manifold, const CostFunction& cost,
                   const CMatrix& w0, const RcgOptions& opts,
                   const StopPredicate& stop = {});

}  // namespace isac
