#pragma once

#include "isac/types.hpp"

namespace isac {

/// Real inner product <A, B> = Re tr(A B^H). Throws DimensionError on shape
/// mismatch.
double inner(const CMatrix& a, const CMatrix& b);

/// Complex oblique manifold OB(rows, cols): every row of W has Euclidean norm
/// `radius`. For a beamformer with per-antenna power P/M_T the radius is
/// sqrt(P/M_T). Points and tangent vectors are plain CMatrix values.
class ObliqueManifold {
 public:
  ObliqueManifold(int rows, int cols, double radius);

  /// Manifold for M_T antennas, `streams` columns and total power budget.
  static ObliqueManifold for_power(int num_tx, int streams, double power);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double radius() const { return radius_; }

  /// Row norms equal to the radius within `rtol` (relative).
  bool contains(const CMatrix& w, double rtol = 1e-10) const;

  /// Pi_W(X) = X - (1/rho^2) Re{(W X^H) .* I} W. Throws DomainError when W
  /// is off the manifold.
  CMatrix project_tangent(const CMatrix& w, const CMatrix& x) const;

  /// Row renormalization rho (Y Y^H .* I)^{-1/2} Y. Throws NumericalError on a
  /// zero row.
  CMatrix retract(const CMatrix& y) const;

  /// Vector transport by projection onto the tangent space at `w_new`.
  CMatrix transport(const CMatrix& w_new, const CMatrix& d) const {
    return project_tangent(w_new, d);
  }

  /// Largest |Re <row_m W, row_m X>| over rows; zero for tangent X.
  double tangent_residual(const CMatrix& w, const CMatrix& x) const;

 private:
  void check_shape(const CMatrix& m, const char* what) const;

  int rows_;
  int cols_;
  double radius_;
};

}  // namespace isac
