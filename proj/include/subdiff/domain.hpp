#pragma once

#include <memory>
#include <string>

#include "subdiff/point.hpp"

namespace subdiff {

enum class ShapeKind { ball, interval, half_space, power_cusp, complement_of_ball, localized };

/// A C^{1,alpha} open set from a small catalog, with exact or certified
/// boundary distance.
///
/// power_cusp is the region above the graph x_d = c |x~|^p, p in (1, 2], whose
/// gradient is (p - 1)-Hoelder but not Lipschitz at the origin when p < 2.
/// localized(z0, r) is D intersected with the ball B(z0, r).
class Domain {
 public:
  static Domain ball(const Point& center, double radius);
  static Domain interval(double a, double b);
  /// {x : <normal, x> > offset}; normal is normalized on construction.
  static Domain half_space(const Point& normal, double offset);
  static Domain power_cusp(int dim, double c, double p);
  static Domain complement_of_ball(const Point& center, double radius);

  Domain localized(const Point& z0, double r) const;

  ShapeKind kind() const { return kind_; }
  int dim() const { return dim_; }
  std::string name() const;
  bool bounded() const;

  bool contains(const Point& x) const;
  /// delta_D(x): distance to the boundary for x in D, 0 outside.
  double delta(const Point& x) const;
  /// Unsigned distance to the boundary for any x.
  double boundary_distance(const Point& x) const;
  /// Closest boundary point.
  Point project(const Point& x) const;
  /// Unit normal pointing into D at a boundary point.
  Point inward_normal(const Point& z) const;

  /// z + r n(z); satisfies kappa() r <= delta_D(z_r) <= r for z on the boundary and r < R0().
  /// Throws NumericError reporting delta/r when the kappa bound cannot be certified.
  Point corkscrew(const Point& z, double r) const;
  double kappa() const;

  /// y in Delta(x, a, r): 0 < rho(y) < a and |y - z_x| < r, with rho(y) = y_d - Gamma(y~)
  /// in the graph chart and z_x the boundary projection of x. Half-spaces and power cusps only.
  bool box_member(const Point& x, double a, double r, const Point& y) const;

  // C^{1,alpha} characteristics
  double R0() const;
  double Lambda0() const;
  double alpha() const;
  double chi1() const;

  // shape parameters
  const Point& center() const { return center_; }
  double radius() const { return radius_; }
  double lo() const { return a_; }
  double hi() const { return b_; }
  const Point& normal() const { return normal_; }
  double offset() const { return offset_; }
  double cusp_c() const { return c_; }
  double cusp_p() const { return p_; }
  const Domain& base() const { return *base_; }

  /// Graph function and gradient of the power cusp in chart coordinates (last entry ignored).
  double graph(const Point& x) const;
  Point graph_gradient(const Point& x) const;

 private:
  Domain(ShapeKind k, int dim) : kind_(k), dim_(dim) {}

  double cusp_distance(const Point& x, Point* nearest) const;

  ShapeKind kind_;
  int dim_;
  Point center_;
  double radius_ = 0.0;
  double a_ = 0.0, b_ = 0.0;
  Point normal_;
  double offset_ = 0.0;
  double c_ = 0.0, p_ = 0.0;
  double kappa_ = 1.0;
  std::shared_ptr<const Domain> base_;
};

}  // namespace subdiff
