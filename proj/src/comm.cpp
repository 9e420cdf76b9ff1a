#include "isac/comm.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace isac {

RateReport rates(const CMatrix& w, const CMatrix& channels,
                 double noise_power) {
  const int k_users = static_cast<int>(channels.cols());
  if (channels.rows() != w.rows()) {
    throw DimensionError("rates: channel length differs from beamformer rows");
  }
  if (w.cols() < k_users) {
    throw DimensionError("rates: fewer beamformer columns than users");
  }
  RateReport r;
  r.sinr.resize(k_users);
  r.rate.resize(k_users);
  // gains(k, j) = |h_k^H w_j|^2
  const RMatrix gains = (channels.adjoint() * w).cwiseAbs2();
  for (int k = 0; k < k_users; ++k) {
    const double signal = gains(k, k);
    const double interference = gains.row(k).sum() - signal;
    r.sinr(k) = signal / (interference + noise_power);
    r.rate(k) = std::log2(1.0 + r.sinr(k));
  }
  r.min_rate = k_users > 0 ? r.rate.minCoeff() : 0.0;
  return r;
}

CMatrix zf_precoder(const CMatrix& channels) {
  const auto m = channels.rows();
  const auto k = channels.cols();
  if (k > m) throw DomainError("zero-forcing needs K <= M_T");
  const CMatrix gram = channels.adjoint() * channels;
  Eigen::FullPivLU<CMatrix> lu(gram);
  lu.setThreshold(1e-12);
  if (lu.rank() < k) throw DomainError("channel matrix is rank deficient");
  CMatrix v = channels * lu.inverse();
  for (Eigen::Index j = 0; j < k; ++j) v.col(j).normalize();
  return v;
}

RMatrix equal_rate_system(const CMatrix& channels, const CMatrix& directions,
                          double r_min) {
  const int k = static_cast<int>(channels.cols());
  if (directions.rows() != channels.rows() || directions.cols() != k) {
    throw DimensionError("equal_rate_system: direction shape mismatch");
  }
  const double gamma = std::exp2(r_min) - 1.0;
  // g(j, i) = |h_j^H u_i|^2
  const RMatrix g = (channels.adjoint() * directions).cwiseAbs2();
  RMatrix delta = -g;
  for (int j = 0; j < k; ++j) delta(j, j) = g(j, j) / gamma;
  return delta;
}

RVector equal_rate_power(const CMatrix& channels, const CMatrix& directions,
                         const CMatrix& w_sensing, double noise_power,
                         double r_min) {
  const int k = static_cast<int>(channels.cols());
  if (r_min < 0.0) throw DomainError("r_min must be >= 0");
  if (!(noise_power > 0.0)) throw DomainError("noise power must be > 0");
  if (r_min == 0.0) return RVector::Zero(k);

  RVector rhs = RVector::Constant(k, noise_power);
  if (w_sensing.size() > 0) {
    if (w_sensing.rows() != channels.rows()) {
      throw DimensionError("equal_rate_power: sensing block row mismatch");
    }
    rhs += (channels.adjoint() * w_sensing).cwiseAbs2().rowwise().sum();
  }
  const RMatrix delta = equal_rate_system(channels, directions, r_min);
  const RVector p = delta.fullPivLu().solve(rhs);
  for (int i = 0; i < k; ++i) {
    if (!std::isfinite(p(i)) || p(i) < 0.0) {
      throw InfeasibleError("equal-rate power infeasible for user " +
                                std::to_string(i),
                            i);
    }
  }
  return p;
}

double max_min_zf_rate(const CMatrix& channels, double noise_power,
                       double p_max) {
  if (!(p_max > 0.0)) throw DomainError("p_max must be > 0");
  const CMatrix dirs = zf_precoder(channels);
  const CMatrix no_sensing(channels.rows(), 0);

  // Total power needed for a common rate r, or +inf when infeasible.
  const auto power_for = [&](double r) {
    try {
      return equal_rate_power(channels, dirs, no_sensing, noise_power, r).sum();
    } catch (const InfeasibleError&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  double lo = 0.0;
  double hi = 40.0;
  if (power_for(hi) <= p_max) return hi;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double used = power_for(mid);
    if (used <= p_max) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-12) break;
  }
  return lo;
}

CVector SocInstance::point(const CMatrix& w) const {
  if (w.size() != stacked.cols()) {
    throw DimensionError("SocInstance::point: beamformer size mismatch");
  }
  const Eigen::Map<const CVector> vec_w(w.data(), w.size());
  return stacked * vec_w + offset;
}

std::vector<SocInstance> soc_assemble(const CMatrix& channels,
                                      const RVector& r_min,
                                      double noise_power, int streams) {
  const int m = static_cast<int>(channels.rows());
  const int k = static_cast<int>(channels.cols());
  if (k < 1) throw DomainError("soc_assemble: no users");
  if (r_min.size() != k) throw DimensionError("soc_assemble: one r_min per user");
  if (streams < k) throw DimensionError("soc_assemble: fewer streams than users");
  if (!(noise_power > 0.0)) throw DomainError("noise power must be > 0");

  std::vector<SocInstance> out;
  out.reserve(k);
  for (int u = 0; u < k; ++u) {
    if (!(r_min(u) > 0.0)) {
      throw DomainError("soc_assemble: r_min must be > 0 (user " +
                        std::to_string(u) + ")");
    }
    SocInstance s;
    s.user = u;
    s.gamma = std::exp2(r_min(u)) - 1.0;
    s.cone_factor = 1.0 + 1.0 / s.gamma;
    s.stacked = CMatrix::Zero(streams + 2, static_cast<Eigen::Index>(m) * streams);
    const auto h_adj = channels.col(u).adjoint();
    for (int j = 0; j < streams; ++j) {
      s.stacked.block(j, static_cast<Eigen::Index>(j) * m, 1, m) = h_adj;
    }
    s.stacked.block(streams + 1, static_cast<Eigen::Index>(u) * m, 1, m) =
        std::sqrt(s.cone_factor) * h_adj;
    s.offset = CVector::Zero(streams + 2);
    s.offset(streams) = std::sqrt(noise_power);
    out.push_back(std::move(s));
  }
  return out;
}

bool in_cone(const CVector& x, double tol) {
  const auto n = x.size();
  if (n < 2) throw DimensionError("cone vectors need length >= 2");
  return x.head(n - 1).norm() <= std::abs(x(n - 1)) + tol;
}

CVector soc_project(const CVector& x) {
  const auto n = x.size();
  if (n < 2) throw DimensionError("cone vectors need length >= 2");
  const double head = x.head(n - 1).norm();
  const double tail = std::abs(x(n - 1));
  if (head <= tail) return x;
  // head > tail >= 0 here, so head > 0.
  const double scale = 0.5 * (head + tail);
  CVector y(n);
  y.head(n - 1) = (scale / head) * x.head(n - 1);
  const cdouble phase = tail > 0.0 ? x(n - 1) / tail : cdouble(1.0, 0.0);
  y(n - 1) = scale * phase;
  return y;
}

F2Value f2_and_grad(const CMatrix& w, const std::vector<SocInstance>& socs) {
  F2Value out;
  CVector acc = CVector::Zero(w.size());
  for (const auto& s : socs) {
    const CVector x = s.point(w);
    const CVector v = x - soc_project(x);
    out.value += v.squaredNorm();
    acc.noalias() += s.stacked.adjoint() * v;
  }
  out.grad = 2.0 * Eigen::Map<const CMatrix>(acc.data(), w.rows(), w.cols());
  return out;
}

}  // namespace isac
