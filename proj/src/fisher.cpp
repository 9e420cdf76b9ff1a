#include "isac/fisher.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace isac {

CouplingGrid::CouplingGrid(int num_targets, int num_tx)
    : t_(num_targets),
      m_(num_tx),
      blocks_(static_cast<std::size_t>(num_targets) * num_targets,
              CMatrix::Zero(num_tx, num_tx)) {}

CouplingGrid coupling_matrices(const std::vector<Target>& targets,
                               const ArrayConfig& array, int snapshots,
                               double noise_power) {
  array.validate();
  const int t = static_cast<int>(targets.size());
  if (t < 1) throw DomainError("at least one target required");
  if (snapshots < 1) throw DomainError("snapshots must be >= 1");
  if (!(noise_power > 0.0)) throw DomainError("noise power must be > 0");
  for (int i = 0; i < t; ++i) {
    for (int j = i + 1; j < t; ++j) {
      if (std::abs(targets[i].angle - targets[j].angle) < 1e-12) {
        throw DomainError("targets " + std::to_string(i) + " and " +
                          std::to_string(j) + " share an angle");
      }
    }
  }

  std::vector<CMatrix> dg(t);
  for (int i = 0; i < t; ++i) {
    dg[i] = target_channel_derivative(targets[i].angle, array);
  }
  const double scale = 2.0 * snapshots / noise_power;
  CouplingGrid grid(t, array.num_tx);
  for (int i = 0; i < t; ++i) {
    for (int j = 0; j < t; ++j) {
      const cdouble c = scale * std::conj(targets[i].rcs) * targets[j].rcs;
      grid(i, j) = c * (dg[i].adjoint() * dg[j]);
    }
  }
  return grid;
}

CouplingGrid coupling_matrices(const Scenario& scenario) {
  return coupling_matrices(scenario.targets, scenario.array,
                           scenario.snapshots, scenario.noise_power);
}

FisherState fisher_matrix(const CMatrix& w, const CouplingGrid& coupling) {
  const int t = coupling.num_targets();
  if (w.rows() != coupling.num_tx()) {
    throw DimensionError("beamformer rows differ from num_tx");
  }
  FisherState st;
  st.f.resize(t, t);
  for (int i = 0; i < t; ++i) {
    for (int j = i; j < t; ++j) {
      // Re tr(W^H A W) = Re sum(conj(W) .* (A W))
      const double v =
          (w.conjugate().array() * (coupling(i, j) * w).array()).sum().real();
      st.f(i, j) = v;
      st.f(j, i) = v;
    }
  }
  if (!st.f.allFinite()) throw NumericalError("non-finite Fisher matrix");

  Eigen::SelfAdjointEigenSolver<RMatrix> eig(st.f);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  st.condition = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  if (!(hi > 0.0) || !(st.condition <= kMaxFisherCondition)) {
    throw DegenerateGeometryError(
        "Fisher matrix singular (condition " + std::to_string(st.condition) +
        "); targets cannot be resolved");
  }
  st.f_inverse = eig.eigenvectors() *
                 eig.eigenvalues().cwiseInverse().asDiagonal() *
                 eig.eigenvectors().transpose();
  st.f_inverse = 0.5 * (st.f_inverse + st.f_inverse.transpose()).eval();
  st.objective = st.f_inverse.trace();
  return st;
}

CMatrix omega_matrix(const FisherState& state, const CouplingGrid& coupling) {
  const int t = coupling.num_targets();
  const int m = coupling.num_tx();

  // sum_{i,j} [F^-1]_{ij} A_{ji}; shared by every t.
  CMatrix full = CMatrix::Zero(m, m);
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j) full += state.f_inverse(i, j) * coupling(j, i);

  CMatrix omega = -state.objective * full;
  for (int k = 0; k < t; ++k) {
    if (t == 1) break;
    // Indices other than k, and the inverse of F restricted to them.
    std::vector<int> idx;
    idx.reserve(t - 1);
    for (int i = 0; i < t; ++i)
      if (i != k) idx.push_back(i);
    RMatrix sub(t - 1, t - 1);
    for (int a = 0; a < t - 1; ++a)
      for (int b = 0; b < t - 1; ++b) sub(a, b) = state.f(idx[a], idx[b]);
    const Eigen::LDLT<RMatrix> ldlt(sub);
    if (ldlt.info() != Eigen::Success) {
      throw DegenerateGeometryError("reduced Fisher matrix not factorizable");
    }
    const RMatrix sub_inv = ldlt.solve(RMatrix::Identity(t - 1, t - 1));

    CMatrix reduced = CMatrix::Zero(m, m);
    for (int a = 0; a < t - 1; ++a)
      for (int b = 0; b < t - 1; ++b)
        reduced += sub_inv(a, b) * coupling(idx[b], idx[a]);
    omega += state.f_inverse(k, k) * reduced;
  }
  return omega;
}

CMatrix grad_f1(const CMatrix& w, const CouplingGrid& coupling) {
  CMatrix g;
  f1_and_grad(w, coupling, &g);
  return g;
}

double f1_and_grad(const CMatrix& w, const CouplingGrid& coupling,
                   CMatrix* grad) {
  const FisherState st = fisher_matrix(w, coupling);
  if (grad != nullptr) *grad = 2.0 * omega_matrix(st, coupling) * w;
  return st.objective;
}

}  // namespace isac
