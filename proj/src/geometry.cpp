#include "isac/geometry.hpp"

#include <cmath>
#include <string>

namespace isac {

namespace {

void check_angle(double theta) {
  // Small slack so that +-pi/2 computed from degrees is accepted.
  constexpr double kSlack = 1e-12;
  if (!std::isfinite(theta) || theta < -kPi / 2 - kSlack ||
      theta > kPi / 2 + kSlack) {
    throw DomainError("angle " + std::to_string(theta) +
                      " rad outside [-pi/2, pi/2]");
  }
}

void check_length(int n) {
  if (n < 1) throw DomainError("array length must be >= 1");
}

}  // namespace

void ArrayConfig::validate() const {
  if (num_tx < 1) throw DomainError("num_tx must be >= 1");
  if (num_rx < 1) throw DomainError("num_rx must be >= 1");
  if (!(spacing > 0.0)) throw DomainError("element spacing must be > 0");
}

CVector steering(double theta, int n, double spacing) {
  check_angle(theta);
  check_length(n);
  const double phase = 2.0 * kPi * spacing * std::sin(theta);
  CVector a(n);
  a(0) = cdouble(1.0, 0.0);
  for (int k = 1; k < n; ++k) a(k) = std::polar(1.0, phase * k);
  return a;
}

CVector steering_derivative(double theta, int n, double spacing) {
  const CVector a = steering(theta, n, spacing);
  const cdouble scale(0.0, 2.0 * kPi * spacing * std::cos(theta));
  CVector da(n);
  for (int k = 0; k < n; ++k) da(k) = scale * static_cast<double>(k) * a(k);
  return da;
}

CMatrix target_channel(double theta, const ArrayConfig& cfg) {
  cfg.validate();
  const CVector a_r = steering(theta, cfg.num_rx, cfg.spacing);
  const CVector a_t = steering(theta, cfg.num_tx, cfg.spacing);
  return a_r * a_t.adjoint();
}

CMatrix target_channel_derivative(double theta, const ArrayConfig& cfg) {
  cfg.validate();
  const CVector a_r = steering(theta, cfg.num_rx, cfg.spacing);
  const CVector a_t = steering(theta, cfg.num_tx, cfg.spacing);
  const CVector da_r = steering_derivative(theta, cfg.num_rx, cfg.spacing);
  const CVector da_t = steering_derivative(theta, cfg.num_tx, cfg.spacing);
  return da_r * a_t.adjoint() + a_r * da_t.adjoint();
}

double beampattern_gain(const CMatrix& r_x, double theta, double spacing) {
  if (r_x.rows() != r_x.cols()) {
    throw DimensionError("covariance must be square");
  }
  const double scale = std::max(1.0, r_x.cwiseAbs().maxCoeff());
  if ((r_x - r_x.adjoint()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw DomainError("covariance is not Hermitian");
  }
  const CVector a = steering(theta, static_cast<int>(r_x.rows()), spacing);
  const cdouble g = a.dot(r_x * a);  // a^H R a
  // Imaginary part is rounding residue for Hermitian input.
  return std::max(0.0, g.real());
}

}  // namespace isac
