#pragma once

#include <vector>

#include "isac/scenario.hpp"
#include "isac/types.hpp"

namespace isac {

/// T x T grid of M_T x M_T matrices
///   A_{i,j} = (2L / sigma^2) conj(alpha_i) alpha_j dG(theta_i)^H dG(theta_j)
/// so that [F]_{i,j} = Re tr(W^H A_{i,j} W). Built once per scenario.
class CouplingGrid {
 public:
  CouplingGrid() = default;
  CouplingGrid(int num_targets, int num_tx);

  const CMatrix& operator()(int i, int j) const { return blocks_[i * t_ + j]; }
  CMatrix& operator()(int i, int j) { return blocks_[i * t_ + j]; }

  int num_targets() const { return t_; }
  int num_tx() const { return m_; }

 private:
  int t_ = 0;
  int m_ = 0;
  std::vector<CMatrix> blocks_;
};

/// Throws DomainError when two targets share an angle.
CouplingGrid coupling_matrices(const std::vector<Target>& targets,
                               const ArrayConfig& array, int snapshots,
                               double noise_power);
CouplingGrid coupling_matrices(const Scenario& scenario);

struct FisherState {
  RMatrix f;          // Fisher information, real symmetric T x T
  RMatrix f_inverse;  // CRLB matrix
  double objective = 0.0;  // tr(F^-1), the sum-CRLB
  double condition = 0.0;  // lambda_max / lambda_min of F
};

/// Condition numbers above this are reported as unresolvable targets.
inline constexpr double kMaxFisherCondition = 1e12;

/// F for R_X = W W^H. Throws DegenerateGeometryError if F is singular to
/// working precision.
FisherState fisher_matrix(const CMatrix& w, const CouplingGrid& coupling);

/// Hermitian auxiliary Omega of the sum-CRLB gradient, assembled from the
/// cofactor ratios [F^-1]_tt = det(F_t)/det(F). F_t replaces column t of F by
/// e_t; its inverse restricted to indices != t is the inverse of F with row
/// and column t deleted, which is what gets factorized here.
CMatrix omega_matrix(const FisherState& state, const CouplingGrid& coupling);

/// Euclidean gradient 2 * Omega * W of tr(F^-1), in the convention
/// f(W + D) ~ f(W) + Re tr(grad^H D).
CMatrix grad_f1(const CMatrix& w, const CouplingGrid& coupling);

/// Objective and (optionally) gradient in one pass, for the optimizer.
double f1_and_grad(const CMatrix& w, const CouplingGrid& coupling,
                   CMatrix* grad);

}  // namespace isac
