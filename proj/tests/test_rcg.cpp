#include <gtest/gtest.h>

#include <sstream>

#include "isac/fisher.hpp"
#include "isac/rcg.hpp"
#include "oracles.hpp"

using namespace isac;

namespace {

// f(W) = ||W - Z||_F^2.
CostFunction distance_cost(const CMatrix& z) {
  return [z](const CMatrix& w, CMatrix* g) {
    if (g) *g = 2.0 * (w - z);
    return (w - z).squaredNorm();
  };
}

CostFunction f1_cost(const CouplingGrid& grid) {
  return [&grid](const CMatrix& w, CMatrix* g) {
    return f1_and_grad(w, grid, g);
  };
}

CouplingGrid random_coupling(Rng& rng, int m, std::vector<double> angles) {
  std::vector<Target> targets;
  for (double a : angles) {
    Target t;
    t.angle = a;
    t.rcs = std::polar(1.0, rng.uniform(0, 2 * kPi));
    targets.push_back(t);
  }
  return coupling_matrices(targets, ArrayConfig{m, m, 0.5}, 32, 1.0);
}

}  // namespace

TEST(FletcherReeves, Examples) {
  CMatrix a(1, 2), b(1, 2);
  a << 3.0, cdouble(0, 4);
  b << cdouble(0, 5), 0.0;
  EXPECT_DOUBLE_EQ(*fletcher_reeves_beta(a, b), 1.0);
  EXPECT_DOUBLE_EQ(*fletcher_reeves_beta(CMatrix::Zero(1, 2), b), 0.0);
  CMatrix g3(1, 1), g2(1, 1);
  g3 << 3.0;
  g2 << 2.0;
  EXPECT_DOUBLE_EQ(*fletcher_reeves_beta(g3, g2), 2.25);
  EXPECT_FALSE(fletcher_reeves_beta(g3, CMatrix::Zero(1, 1)).has_value());
}

TEST(Options, Validation) {
  RcgOptions o;
  o.c2 = 0.6;
  EXPECT_THROW(o.validate(), DomainError);
  o.c2 = 0.4;
  o.c1 = 0.5;
  EXPECT_THROW(o.validate(), DomainError);
}

TEST(Minimize, RowwiseProjectionOracle) {
  Rng rng(1);
  const double rho = 0.7;
  const ObliqueManifold man(4, 6, rho);
  const CMatrix z = 2.0 * rng.complex_normal(4, 6);
  // Minimizer: each row of Z scaled to norm rho; value sum (||z_m|| - rho)^2.
  double best = 0.0;
  for (int m = 0; m < 4; ++m) {
    best += std::pow(z.row(m).norm() - rho, 2);
  }
  RcgOptions o;
  o.obj_tol = 0.0;
  o.grad_tol = 1e-6;
  const CMatrix w0 = oracle::random_oblique(4, 6, rho, rng);
  const RcgResult r = minimize(man, distance_cost(z), w0, o);
  EXPECT_EQ(r.trace.termination, Termination::kGradTol);
  EXPECT_LT(r.trace.records.back().grad_norm, 1e-6);
  EXPECT_LT(r.trace.iterations(), 200);
  EXPECT_NEAR(r.trace.final_objective(), best, 1e-8);
}

TEST(Minimize, CriticalPointReturnsImmediately) {
  Rng rng(2);
  const ObliqueManifold man(3, 4, 1.0);
  const CMatrix w = oracle::random_oblique(3, 4, 1.0, rng);
  const RcgResult r = minimize(man, distance_cost(w), w, RcgOptions());
  EXPECT_EQ(r.trace.iterations(), 0);
  EXPECT_TRUE(r.w == w);
}

TEST(Minimize, RejectsOffManifoldStart) {
  const ObliqueManifold man(2, 2, 1.0);
  EXPECT_THROW(minimize(man, distance_cost(CMatrix::Ones(2, 2)),
                        3.0 * CMatrix::Identity(2, 2), RcgOptions()),
               DomainError);
}

TEST(Minimize, F1TraceMonotoneAndWolfe) {
  Rng rng(3);
  const CouplingGrid grid = random_coupling(rng, 6, {-0.6, 0.2, 0.9});
  const ObliqueManifold man(6, 8, std::sqrt(1.0 / 6));
  RcgOptions o;
  o.obj_tol = 1e-8;
  o.max_iters = 300;
  const CMatrix w0 = oracle::random_oblique(6, 8, man.radius(), rng);
  const RcgResult r = minimize(man, f1_cost(grid), w0, o);
  const auto& rec = r.trace.records;
  ASSERT_GT(rec.size(), 2u);
  for (std::size_t i = 1; i < rec.size(); ++i) {
    EXPECT_LE(rec[i].objective, rec[i - 1].objective);
    if (!rec[i].wolfe_satisfied) continue;
    EXPECT_LE(rec[i].objective,
              rec[i - 1].objective + o.c1 * rec[i].step * rec[i].slope);
    EXPECT_LE(std::abs(rec[i].curvature), o.c2 * std::abs(rec[i].slope));
  }
  EXPECT_TRUE(man.contains(r.w));
  EXPECT_TRUE(std::isfinite(r.trace.zoutendijk_sum));
  EXPECT_GE(r.trace.zoutendijk_sum, 0.0);
}

TEST(Minimize, StopPredicate) {
  Rng rng(4);
  const ObliqueManifold man(3, 3, 1.0);
  const CMatrix z = rng.complex_normal(3, 3);
  int calls = 0;
  const RcgResult r =
      minimize(man, distance_cost(z), oracle::random_oblique(3, 3, 1.0, rng),
               RcgOptions(), [&](const CMatrix&) { return ++calls >= 3; });
  EXPECT_EQ(r.trace.termination, Termination::kTargetReached);
  EXPECT_EQ(r.trace.iterations(), 2);
}

TEST(LineSearch, BracketsDenseMinimizer) {
  Rng rng(5);
  const ObliqueManifold man(3, 4, 1.0);
  const CMatrix w = oracle::random_oblique(3, 4, 1.0, rng);
  // Z close to W along the manifold keeps the minimizer inside the scan.
  const CMatrix z =
      man.retract(w + 0.5 * man.project_tangent(w, rng.complex_normal(3, 4)));
  const CostFunction cost = distance_cost(z);
  CMatrix eg;
  const double f0 = cost(w, &eg);
  const CMatrix d = -man.project_tangent(w, eg);
  const double g0 = inner(man.project_tangent(w, eg), d);
  // Dense scan of phi(a) = f(R(W + a d)).
  double a_best = 0.0, f_best = f0;
  for (int i = 1; i <= 200000; ++i) {
    const double a = i * 1e-5;
    const double fa = cost(man.retract(w + a * d), nullptr);
    if (fa < f_best) {
      f_best = fa;
      a_best = a;
    }
  }
  ASSERT_GT(a_best, 0.0);
  ASSERT_LT(a_best, 1.99);
  RcgOptions o;
  o.c2 = 0.1;
  const LineSearchResult ls =
      wolfe_linesearch(man, cost, w, d, f0, g0, o, 1e-3);
  EXPECT_TRUE(ls.wolfe_satisfied);
  EXPECT_NEAR(ls.step, a_best, 0.25 * a_best);
  EXPECT_LE(ls.f, f0 + o.c1 * ls.step * g0);
  EXPECT_LE(std::abs(ls.curvature), o.c2 * std::abs(g0));
}

TEST(LineSearch, WeakConditionsAcceptFirstTrial) {
  Rng rng(6);
  const ObliqueManifold man(2, 3, 1.0);
  const CMatrix z = rng.complex_normal(2, 3);
  const CostFunction cost = distance_cost(z);
  const CMatrix w = oracle::random_oblique(2, 3, 1.0, rng);
  CMatrix eg;
  const double f0 = cost(w, &eg);
  const CMatrix g = man.project_tangent(w, eg);
  RcgOptions o;
  o.c1 = 1e-12;
  o.c2 = 0.4999;
  // Starting at the scanned minimizer of the slice, the first trial meets
  // both weak conditions.
  double a_best = 0.0, f_best = f0;
  for (int i = 1; i <= 30000; ++i) {
    const double a = i * 1e-4;
    const double fa = cost(man.retract(w - a * g), nullptr);
    if (fa < f_best) {
      f_best = fa;
      a_best = a;
    }
  }
  ASSERT_GT(a_best, 0.0);
  const LineSearchResult ls = wolfe_linesearch(man, cost, w, -g, f0,
                                               -g.squaredNorm(), o, a_best);
  EXPECT_EQ(ls.evals, 1);
  EXPECT_DOUBLE_EQ(ls.step, a_best);
  EXPECT_TRUE(ls.wolfe_satisfied);
}

TEST(LineSearch, NonDescentRejected) {
  const ObliqueManifold man(1, 2, 1.0);
  CMatrix w(1, 2);
  w << 1.0, 0.0;
  EXPECT_THROW(wolfe_linesearch(man, distance_cost(w), w, w, 0.0, 0.0,
                                RcgOptions(), 1.0),
               DomainError);
}

TEST(SolverTrace, CsvHeader) {
  SolverTrace t;
  t.records.push_back(IterationRecord{});
  std::ostringstream os;
  t.write_csv(os);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "iter,f,gnorm,step,beta");
}
