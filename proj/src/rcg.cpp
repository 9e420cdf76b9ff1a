#include "isac/rcg.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace isac {

void RcgOptions::validate() const {
  if (!(c1 > 0.0 && c1 < c2 && c2 < 0.5)) {
    throw DomainError("line-search constants must satisfy 0 < c1 < c2 < 1/2");
  }
  if (obj_tol < 0.0 || grad_tol < 0.0) {
    throw DomainError("tolerances must be >= 0");
  }
  if (max_iters < 0) throw DomainError("max_iters must be >= 0");
  if (max_linesearch_evals < 1) {
    throw DomainError("max_linesearch_evals must be >= 1");
  }
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::kGradTol:
      return "grad_tol";
    case Termination::kObjTol:
      return "obj_tol";
    case Termination::kMaxIters:
      return "max_iters";
    case Termination::kLineSearchFail:
      return "linesearch_fail";
    case Termination::kTargetReached:
      return "target_reached";
  }
  return "unknown";
}

void SolverTrace::write_csv(std::ostream& os) const {
  os << "iter,f,gnorm,step,beta\n";
  const auto old = os.precision(17);
  for (const auto& r : records) {
    os << r.iter << ',' << r.objective << ',' << r.grad_norm << ',' << r.step
       << ',' << r.beta << '\n';
  }
  os.precision(old);
}

std::optional<double> fletcher_reeves_beta(const CMatrix& grad_new,
                                           const CMatrix& grad_old) {
  const double old_sq = grad_old.squaredNorm();
  if (!(old_sq > 0.0)) return std::nullopt;
  return grad_new.squaredNorm() / old_sq;
}

namespace {

struct Probe {
  double step = 0.0;
  double f = 0.0;
  double curvature = 0.0;
  CMatrix w;
  CMatrix egrad;
  CMatrix rgrad;
};

double checked(double f) {
  if (!std::isfinite(f)) throw NumericalError("objective returned non-finite value");
  return f;
}

Probe evaluate(const ObliqueManifold& manifold, const CostFunction& cost,
               const CMatrix& w, const CMatrix& d, double step) {
  Probe p;
  p.step = step;
  p.w = manifold.retract(w + step * d);
  p.f = checked(cost(p.w, &p.egrad));
  if (!p.egrad.allFinite()) {
    throw NumericalError("gradient callback returned non-finite entries");
  }
  p.rgrad = manifold.project_tangent(p.w, p.egrad);
  p.curvature = inner(p.rgrad, manifold.transport(p.w, d));
  return p;
}

LineSearchResult to_result(Probe p, int evals, bool wolfe) {
  LineSearchResult r;
  r.step = p.step;
  r.evals = evals;
  r.wolfe_satisfied = wolfe;
  r.armijo_satisfied = true;
  r.w = std::move(p.w);
  r.f = p.f;
  r.egrad = std::move(p.egrad);
  r.rgrad = std::move(p.rgrad);
  r.curvature = p.curvature;
  return r;
}

}  // namespace

LineSearchResult wolfe_linesearch(const ObliqueManifold& manifold,
                                  const CostFunction& cost, const CMatrix& w,
                                  const CMatrix& d, double f0, double g0,
                                  const RcgOptions& opts,
                                  double initial_step) {
  if (!(g0 < 0.0)) {
    throw DomainError("wolfe_linesearch: direction is not a descent direction");
  }
  if (!(initial_step > 0.0)) initial_step = 1.0;

  const auto armijo = [&](const Probe& p) {
    return p.f <= f0 + opts.c1 * p.step * g0;
  };
  const auto curvature_ok = [&](const Probe& p) {
    return std::abs(p.curvature) <= opts.c2 * std::abs(g0);
  };

  int evals = 0;
  std::optional<Probe> best;  // lowest f among sufficient-decrease probes
  const auto remember = [&](const Probe& p) {
    if (armijo(p) && (!best || p.f < best->f)) best = p;
  };

  // Bracketing phase: find an interval [lo, hi] containing a Wolfe step.
  double lo_step = 0.0;
  double lo_f = f0;
  double hi_step = 0.0;
  bool bracketed = false;
  double step = initial_step;
  while (evals < opts.max_linesearch_evals) {
    Probe p = evaluate(manifold, cost, w, d, step);
    ++evals;
    remember(p);
    if (!armijo(p) || (evals > 1 && p.f >= lo_f)) {
      hi_step = step;
      bracketed = true;
      break;
    }
    if (curvature_ok(p)) return to_result(std::move(p), evals, true);
    if (p.curvature >= 0.0) {
      hi_step = lo_step;
      lo_step = step;
      lo_f = p.f;
      bracketed = true;
      break;
    }
    lo_step = step;
    lo_f = p.f;
    step *= 2.0;
  }

  // Zoom phase by bisection; lo always satisfies sufficient decrease.
  if (bracketed) {
    while (evals < opts.max_linesearch_evals) {
      const double mid = 0.5 * (lo_step + hi_step);
      Probe p = evaluate(manifold, cost, w, d, mid);
      ++evals;
      remember(p);
      if (!armijo(p) || p.f >= lo_f) {
        hi_step = mid;
        continue;
      }
      if (curvature_ok(p)) return to_result(std::move(p), evals, true);
      if (p.curvature * (hi_step - lo_step) >= 0.0) hi_step = lo_step;
      lo_step = mid;
      lo_f = p.f;
    }
  }
  if (best) return to_result(std::move(*best), evals, false);
  LineSearchResult fail;
  fail.evals = evals;
  return fail;
}

RcgResult minimize(const ObliqueManifold& manifold, const CostFunction& cost,
                   const CMatrix& w0, const RcgOptions& opts,
                   const StopPredicate& stop) {
  opts.validate();
  if (!manifold.contains(w0, 1e-8)) {
    throw DomainError("minimize: starting point off the manifold");
  }
  const int period =
      opts.restart_period < 0 ? manifold.cols() : opts.restart_period;

  RcgResult out;
  SolverTrace& trace = out.trace;
  CMatrix w = manifold.retract(w0);
  CMatrix egrad;
  double f = checked(cost(w, &egrad));
  ++trace.evaluations;
  if (!egrad.allFinite()) {
    throw NumericalError("gradient callback returned non-finite entries");
  }
  CMatrix grad = manifold.project_tangent(w, egrad);

  IterationRecord first;
  first.objective = f;
  first.grad_norm = grad.norm();
  trace.records.push_back(first);

  const auto finish = [&](Termination t) {
    trace.termination = t;
    out.w = w;
    return out;
  };
  if (first.grad_norm <= opts.grad_tol || first.grad_norm == 0.0) {
    return finish(Termination::kGradTol);
  }
  if (stop && stop(w)) return finish(Termination::kTargetReached);

  CMatrix dir = -grad;
  double beta = 0.0;
  double prev_step = 0.0;
  double prev_slope = 0.0;

  for (int it = 1; it <= opts.max_iters; ++it) {
    double slope = inner(grad, dir);
    if (!(slope < 0.0)) {
      // Not a descent direction: restart along the negative gradient.
      dir = -grad;
      beta = 0.0;
      slope = -grad.squaredNorm();
      ++trace.restarts;
    }
    const double dnorm = dir.norm();
    double a0;
    if (opts.zero_residual_step && f > 0.0) {
      a0 = -2.0 * f / slope;
    } else if (prev_step > 0.0 && prev_slope < 0.0) {
      a0 = prev_step * prev_slope / slope;
      a0 = std::clamp(a0, 1e-3 * prev_step, 1e3 * prev_step);
    } else {
      a0 = w.norm() / dnorm;
    }

    LineSearchResult ls =
        wolfe_linesearch(manifold, cost, w, dir, f, slope, opts, a0);
    trace.evaluations += ls.evals;
    if (!ls.armijo_satisfied) return finish(Termination::kLineSearchFail);

    const double gnorm_old = grad.norm();
    IterationRecord rec;
    rec.iter = it;
    rec.objective = ls.f;
    rec.grad_norm = ls.rgrad.norm();
    rec.step = ls.step;
    rec.beta = beta;
    rec.slope = slope;
    rec.curvature = ls.curvature;
    rec.cos_phi = -slope / (gnorm_old * dnorm);
    rec.wolfe_satisfied = ls.wolfe_satisfied;
    rec.evals = ls.evals;
    trace.records.push_back(rec);
    trace.zoutendijk_sum += rec.cos_phi * rec.cos_phi * gnorm_old * gnorm_old;

    const double f_old = f;
    prev_step = ls.step;
    prev_slope = slope;
    w = std::move(ls.w);
    f = ls.f;
    const CMatrix grad_old = grad;
    grad = std::move(ls.rgrad);

    if (stop && stop(w)) return finish(Termination::kTargetReached);
    if (rec.grad_norm <= opts.grad_tol || rec.grad_norm == 0.0) {
      return finish(Termination::kGradTol);
    }
    if (opts.obj_tol > 0.0 &&
        std::abs(f - f_old) <= opts.obj_tol * std::abs(f_old)) {
      return finish(Termination::kObjTol);
    }

    const auto fr = fletcher_reeves_beta(grad, grad_old);
    beta = fr.value_or(0.0);
    if (period > 0 && it % period == 0) beta = 0.0;
    dir = -grad + beta * manifold.transport(w, dir);
  }
  return finish(Termination::kMaxIters);
}

}  // namespace isac
