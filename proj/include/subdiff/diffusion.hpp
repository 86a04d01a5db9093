#pragma once

#include <string>

#include "subdiff/point.hpp"

namespace subdiff {

enum class CoefficientKind { identity, smooth_anisotropic };

/// Coefficient field a(x) of the divergence-form operator (1/2) div(a grad).
///
/// smooth_anisotropic is diagonal with a_ii(x) = m + A sin(2 pi sum_k x_k + i pi / 3),
/// m = (lambda0 + 1/lambda0) / 2 and A = (lambda0 - 1/lambda0) / 2, so its spectrum
/// fills [1/lambda0, lambda0]. The equivalent Ito form has drift b_i = (1/2) d_i a_ii.
class DiffusionSpec {
 public:
  static DiffusionSpec identity(int dim);
  static DiffusionSpec smooth_anisotropic(int dim, double lambda0);

  CoefficientKind kind() const { return kind_; }
  bool is_identity() const { return kind_ == CoefficientKind::identity; }
  int dim() const { return dim_; }
  double lambda0() const { return lambda0_; }
  std::string name() const;

  /// Diagonal entry a_ii(x) (off-diagonal entries vanish for every catalog field).
  double a(const Point& x, int i) const;
  /// Ito drift (1/2) d_i a_ii(x).
  Point drift(const Point& x) const;
  /// n^T a(x) n.
  double quadratic_form(const Point& x, const Point& n) const;
  /// Dini modulus l(r) bounding sum_ij |a_ij(x) - a_ij(y)| for |x - y| <= r.
  double dini_modulus(double r) const;

 private:
  DiffusionSpec(CoefficientKind k, int dim, double lambda0) : kind_(k), dim_(dim), lambda0_(lambda0) {}

  CoefficientKind kind_;
  int dim_;
  double lambda0_;
};

}  // namespace subdiff
