#pragma once

#include <vector>

#include "isac/types.hpp"

namespace isac {

struct RateReport {
  RVector sinr;  // linear, per user
  RVector rate;  // log2(1 + sinr), bits/s/Hz
  double min_rate = 0.0;
};

/// SINR and rate of every user. `w` holds the K communication columns first
/// and any number of sensing columns after them; `channels` is M_T x K.
RateReport rates(const CMatrix& w, const CMatrix& channels,
                 double noise_power);

/// Zero-forcing directions V = H (H^H H)^{-1}, columns normalized to unit
/// norm, so h_j^H v_k = 0 for j != k. Throws DomainError when H is rank
/// deficient or K > M_T.
CMatrix zf_precoder(const CMatrix& channels);

/// Equal-rate system matrix Delta (K x K) for unit-norm directions:
///   Delta_jj = |h_j^H u_j|^2 / (2^r - 1),  Delta_ji = -|h_j^H u_i|^2.
RMatrix equal_rate_system(const CMatrix& channels, const CMatrix& directions,
                          double r_min);

/// Powers p (one per unit-norm direction) that put every user exactly at
/// rate r_min given the sensing block `w_sensing` (M_T x any, may be empty):
///   p = Delta^{-1} (sigma^2 1 + diag(H^H W_s W_s^H H)).
/// Throws InfeasibleError carrying the first user with p_k < 0.
RVector equal_rate_power(const CMatrix& channels, const CMatrix& directions,
                         const CMatrix& w_sensing, double noise_power,
                         double r_min);

/// Largest common rate reachable by zero-forcing with total power p_max and
/// no sensing streams, found by bisection on [0, 40] bits/s/Hz to an
/// interval of 1e-12.
double max_min_zf_rate(const CMatrix& channels, double noise_power,
                       double p_max);

/// Per-user cone encoding of the SINR constraint. With N streams,
///   x_k(W) = stacked * vec(W) + offset, length N + 2:
///   entries 0..N-1  : h_k^H w_j
///   entry N         : sigma (offset only)
///   entry N + 1     : sqrt(Gamma_k) h_k^H w_k
/// and SINR_k >= gamma_k iff |x_k[N+1]| >= ||x_k[0..N]||.
struct SocInstance {
  int user = 0;
  CMatrix stacked;  // (N + 2) x (M_T N)
  CVector offset;   // (N + 2)
  double gamma = 0.0;        // 2^{R_min} - 1
  double cone_factor = 0.0;  // Gamma = 1 + 1/gamma

  /// x_k(W) for a beamformer with N columns.
  CVector point(const CMatrix& w) const;
};

/// Throws DomainError for r_min <= 0 (Gamma would be infinite).
std::vector<SocInstance> soc_assemble(const CMatrix& channels,
                                      const RVector& r_min,
                                      double noise_power, int streams);

/// |x_last| >= ||x_head|| (up to `tol`, absolute).
bool in_cone(const CVector& x, double tol = 0.0);

/// Nearest point of {|x_last| >= ||x_head||}. The phase of the last entry is
/// kept; a zero last entry is treated as phase 0.
CVector soc_project(const CVector& x);

struct F2Value {
  double value = 0.0;
  CMatrix grad;  // Euclidean, 2 unvec(sum_k H_k^H v_k)
};

/// Sum of squared distances of every x_k(W) to its cone, and the gradient.
F2Value f2_and_grad(const CMatrix& w, const std::vector<SocInstance>& socs);

}  // namespace isac
