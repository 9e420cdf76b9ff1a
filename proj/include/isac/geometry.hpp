#pragma once

#include "isac/types.hpp"

namespace isac {

/// Co-located uniform linear arrays at the base station.
struct ArrayConfig {
  int num_tx = 32;
  int num_rx = 32;
  double spacing = 0.5;  // in wavelengths

  void validate() const;
};

/// ULA response e^{j 2 pi d n sin(theta)}, n = 0..n-1. Phase reference at
/// element 0. Angles outside [-pi/2, pi/2] throw DomainError.
CVector steering(double theta, int n, double spacing = 0.5);

/// d/dtheta of steering(); entry 0 is exactly zero.
CVector steering_derivative(double theta, int n, double spacing = 0.5);

/// Round-trip channel G(theta) = a_R(theta) a_T(theta)^H, M_R x M_T.
CMatrix target_channel(double theta, const ArrayConfig& cfg);

/// dG/dtheta = a_R' a_T^H + a_R a_T'^H.
CMatrix target_channel_derivative(double theta, const ArrayConfig& cfg);

/// Transmit beampattern a_T^H(theta) R a_T(theta) in linear power units.
/// Throws DomainError if `r_x` is not Hermitian.
double beampattern_gain(const CMatrix& r_x, double theta,
                        double spacing = 0.5);

}  // namespace isac
