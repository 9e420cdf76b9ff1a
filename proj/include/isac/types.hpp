#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace isac {

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the model's domain (bad angle, distance below d0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Shapes of matrices/vectors do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Fisher matrix numerically singular: the targets cannot be resolved.
class DegenerateGeometryError : public Error {
 public:
  using Error::Error;
};

/// Numerical breakdown inside an algorithm (non-finite values, zero rows).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A communication requirement cannot be met. `index` names the offending
/// user when one is known, otherwise -1.
class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& what, int index = -1, double gap = 0.0)
      : Error(what), index_(index), gap_(gap) {}
  int index() const { return index_; }
  /// Remaining shortfall (bits/s/Hz) for rate-feasibility failures.
  double gap() const { return gap_; }

 private:
  int index_;
  double gap_;
};

/// Invalid or incomplete experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace isac
