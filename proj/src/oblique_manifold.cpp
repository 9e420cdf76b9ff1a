#include "isac/oblique_manifold.hpp"

#include <cmath>
#include <string>

namespace isac {

double inner(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("inner: shape mismatch");
  }
  // Re tr(A B^H) = Re sum(A .* conj(B))
  return (a.array() * b.array().conjugate()).sum().real();
}

ObliqueManifold::ObliqueManifold(int rows, int cols, double radius)
    : rows_(rows), cols_(cols), radius_(radius) {
  if (rows < 1 || cols < 1) throw DomainError("manifold dimensions must be >= 1");
  if (!(radius > 0.0)) throw DomainError("manifold radius must be > 0");
}

ObliqueManifold ObliqueManifold::for_power(int num_tx, int streams,
                                           double power) {
  return ObliqueManifold(num_tx, streams, std::sqrt(power / num_tx));
}

void ObliqueManifold::check_shape(const CMatrix& m, const char* what) const {
  if (m.rows() != rows_ || m.cols() != cols_) {
    throw DimensionError(std::string(what) + ": expected " +
                         std::to_string(rows_) + "x" + std::to_string(cols_) +
                         ", got " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
}

bool ObliqueManifold::contains(const CMatrix& w, double rtol) const {
  if (w.rows() != rows_ || w.cols() != cols_) return false;
  for (int m = 0; m < rows_; ++m) {
    if (std::abs(w.row(m).norm() - radius_) > rtol * radius_) return false;
  }
  return true;
}

CMatrix ObliqueManifold::project_tangent(const CMatrix& w,
                                         const CMatrix& x) const {
  check_shape(w, "project_tangent(w)");
  check_shape(x, "project_tangent(x)");
  if (!contains(w, 1e-8)) {
    throw DomainError("project_tangent: base point off the manifold");
  }
  // diag(W X^H) row-wise: sum_n W(m,n) conj(X(m,n))
  const RVector coeff =
      (w.array() * x.array().conjugate()).rowwise().sum().real() /
      (radius_ * radius_);
  return x - coeff.asDiagonal() * w;
}

CMatrix ObliqueManifold::retract(const CMatrix& y) const {
  check_shape(y, "retract");
  CMatrix out = y;
  for (int m = 0; m < rows_; ++m) {
    const double n = y.row(m).norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
      throw NumericalError("retract: row " + std::to_string(m) +
                           " is zero or non-finite");
    }
    out.row(m) *= radius_ / n;
  }
  return out;
}

double ObliqueManifold::tangent_residual(const CMatrix& w,
                                         const CMatrix& x) const {
  check_shape(w, "tangent_residual(w)");
  check_shape(x, "tangent_residual(x)");
  return (w.array() * x.array().conjugate())
      .rowwise()
      .sum()
      .real()
      .cwiseAbs()
      .maxCoeff();
}

}  // namespace isac
