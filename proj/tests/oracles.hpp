#pragma once

// Independent reference computations for the unit and acceptance tests.
// Everything here is written with explicit loops or finite differences and
// shares no code with the library beyond the scalar/matrix typedefs.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "isac/random.hpp"
#include "isac/types.hpp"

namespace oracle {

using isac::cdouble;
using isac::CMatrix;
using isac::CVector;
using isac::RMatrix;
using isac::RVector;

inline constexpr double kPi = 3.14159265358979323846;

inline CVector steering(double theta, int n, double d = 0.5) {
  CVector a(n);
  for (int i = 0; i < n; ++i) {
    a(i) = std::polar(1.0, 2.0 * kPi * d * i * std::sin(theta));
  }
  return a;
}

inline CVector steering_derivative(double theta, int n, double d = 0.5) {
  CVector a(n);
  for (int i = 0; i < n; ++i) {
    const double c = 2.0 * kPi * d * i;
    a(i) = cdouble(0.0, c * std::cos(theta)) *
           std::polar(1.0, c * std::sin(theta));
  }
  return a;
}

inline CMatrix channel_derivative(double theta, int m_r, int m_t,
                                  double d = 0.5) {
  const CVector ar = steering(theta, m_r, d);
  const CVector at = steering(theta, m_t, d);
  const CVector dr = steering_derivative(theta, m_r, d);
  const CVector dt = steering_derivative(theta, m_t, d);
  CMatrix g(m_r, m_t);
  for (int p = 0; p < m_r; ++p) {
    for (int q = 0; q < m_t; ++q) {
      g(p, q) = dr(p) * std::conj(at(q)) + ar(p) * std::conj(dt(q));
    }
  }
  return g;
}

/// Central difference of a scalar-argument matrix function.
template <class F>
CMatrix central_difference(F f, double x, double h) {
  return (CMatrix(f(x + h)) - CMatrix(f(x - h))) / (2.0 * h);
}

inline double max_rel_error(const CMatrix& a, const CMatrix& b) {
  return (a - b).norm() / std::max(b.norm(), 1e-300);
}

/// sum_{m,n} conj(a_m) R_mn a_n.
inline double beampattern(const CMatrix& r, double theta, double d = 0.5) {
  const CVector a = steering(theta, static_cast<int>(r.rows()), d);
  cdouble s = 0.0;
  for (int m = 0; m < r.rows(); ++m) {
    for (int n = 0; n < r.cols(); ++n) s += std::conj(a(m)) * r(m, n) * a(n);
  }
  return s.real();
}

struct ToyTarget {
  double angle;
  cdouble alpha;
};

/// A_ij = (2L/sigma^2) conj(alpha_i) alpha_j dG_i^H dG_j, entry by entry.
inline CMatrix coupling_entry(const std::vector<ToyTarget>& t, int i, int j,
                              int m_r, int m_t, int snapshots, double noise) {
  const CMatrix gi = channel_derivative(t[i].angle, m_r, m_t);
  const CMatrix gj = channel_derivative(t[j].angle, m_r, m_t);
  const cdouble scale = 2.0 * snapshots / noise * std::conj(t[i].alpha) *
                        t[j].alpha;
  CMatrix a = CMatrix::Zero(m_t, m_t);
  for (int m = 0; m < m_t; ++m) {
    for (int n = 0; n < m_t; ++n) {
      cdouble s = 0.0;
      for (int p = 0; p < m_r; ++p) s += std::conj(gi(p, m)) * gj(p, n);
      a(m, n) = scale * s;
    }
  }
  return a;
}

/// F_ij = (2L/sigma^2) Re[conj(alpha_i) alpha_j sum_{p,m,n}
///        conj(dG_i[p,m]) dG_j[p,n] R[n,m]].
inline RMatrix fisher_brute(const CMatrix& w, const std::vector<ToyTarget>& t,
                            int m_r, int snapshots, double noise) {
  const int m_t = static_cast<int>(w.rows());
  const int nt = static_cast<int>(t.size());
  CMatrix r = CMatrix::Zero(m_t, m_t);
  for (int m = 0; m < m_t; ++m) {
    for (int n = 0; n < m_t; ++n) {
      for (int c = 0; c < w.cols(); ++c) r(m, n) += w(m, c) * std::conj(w(n, c));
    }
  }
  RMatrix f(nt, nt);
  for (int i = 0; i < nt; ++i) {
    const CMatrix gi = channel_derivative(t[i].angle, m_r, m_t);
    for (int j = 0; j < nt; ++j) {
      const CMatrix gj = channel_derivative(t[j].angle, m_r, m_t);
      cdouble s = 0.0;
      for (int p = 0; p < m_r; ++p) {
        for (int m = 0; m < m_t; ++m) {
          for (int n = 0; n < m_t; ++n) {
            s += std::conj(gi(p, m)) * gj(p, n) * r(n, m);
          }
        }
      }
      f(i, j) = (2.0 * snapshots / noise *
                 (std::conj(t[i].alpha) * t[j].alpha * s))
                    .real();
    }
  }
  return f;
}

/// Closed-form sum-CRLB gradient -2 sum_ij [F^-2]_ij A_ij W, which equals
/// the cofactor form because F^-2 is symmetric.
inline CMatrix f1_gradient_closed_form(const CMatrix& w, const RMatrix& f,
                                       const std::vector<CMatrix>& a) {
  const int nt = static_cast<int>(f.rows());
  const RMatrix finv = f.inverse();
  const RMatrix f2 = finv * finv;
  CMatrix omega = CMatrix::Zero(w.rows(), w.rows());
  for (int i = 0; i < nt; ++i) {
    for (int j = 0; j < nt; ++j) omega -= f2(i, j) * a[i * nt + j];
  }
  return 2.0 * omega * w;
}

/// Central-difference directional derivative of f at w along d.
inline double directional(const std::function<double(const CMatrix&)>& f,
                          const CMatrix& w, const CMatrix& d, double h) {
  return (f(w + h * d) - f(w - h * d)) / (2.0 * h);
}

/// Re tr(a^H b), written as a double loop.
inline double real_inner(const CMatrix& a, const CMatrix& b) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      s += (std::conj(a(i, j)) * b(i, j)).real();
    }
  }
  return s;
}

/// SINR_k = |h_k^H w_k|^2 / (sum_{j != k} |h_k^H w_j|^2 + sigma^2), one
/// term at a time.
inline RVector sinr(const CMatrix& w, const CMatrix& h, double noise) {
  const int k = static_cast<int>(h.cols());
  RVector out(k);
  for (int u = 0; u < k; ++u) {
    double signal = 0.0, interference = noise;
    for (int c = 0; c < w.cols(); ++c) {
      cdouble s = 0.0;
      for (int m = 0; m < h.rows(); ++m) s += std::conj(h(m, u)) * w(m, c);
      if (c == u) {
        signal = std::norm(s);
      } else {
        interference += std::norm(s);
      }
    }
    out(u) = signal / interference;
  }
  return out;
}

/// Max-min ZF rate without sensing: with g_k = |h_k^H u_k|^2 for unit ZF
/// directions, every user at SINR gamma needs p_k = gamma sigma^2 / g_k, so
/// gamma = P / sum_k (sigma^2 / g_k).
inline double max_min_zf_rate(const CMatrix& h, double noise, double p_max) {
  const CMatrix v = h * (h.adjoint() * h).inverse();
  double denom = 0.0;
  for (int k = 0; k < h.cols(); ++k) {
    const CVector u = v.col(k) / v.col(k).norm();
    denom += noise / std::norm(h.col(k).dot(u));
  }
  return std::log2(1.0 + p_max / denom);
}

/// Random point with every row of norm `radius`.
inline CMatrix random_oblique(int rows, int cols, double radius,
                              isac::Rng& rng) {
  CMatrix w = rng.complex_normal(rows, cols);
  for (int m = 0; m < rows; ++m) w.row(m) *= radius / w.row(m).norm();
  return w;
}

}  // namespace oracle
