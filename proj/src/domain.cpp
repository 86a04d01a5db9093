#include "subdiff/domain.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "subdiff/errors.hpp"

namespace subdiff {
namespace {

constexpr int kCuspScan = 256;

double chart_radius(const Point& x) {
  double s = 0.0;
  for (int i = 0; i + 1 < x.dim(); ++i) s += x[i] * x[i];
  return std::sqrt(s);
}

// Unit vector of the chart coordinates x~ (axis 0 when x~ = 0).
Point chart_direction(const Point& x) {
  Point u(x.dim());
  const double rho = chart_radius(x);
  if (rho == 0.0) {
    u[0] = 1.0;
    return u;
  }
  for (int i = 0; i + 1 < x.dim(); ++i) u[i] = x[i] / rho;
  return u;
}

// Smallest delta(z + r n) / r over a scan of boundary points and radii.
double scan_cusp_kappa(const Domain& d) {
  double worst = 1.0;
  for (int i = 0; i <= 40; ++i) {
    const double s = -2.0 + 0.1 * i;
    Point z(d.dim());
    z[0] = s;
    z[d.dim() - 1] = d.graph(z);
    const Point n = d.inward_normal(z);
    for (int k = 0; k <= 24; ++k) {
      const double r = 1e-3 * std::pow(0.999e3, k / 24.0);
      worst = std::min(worst, d.boundary_distance(z + r * n) / r);
    }
  }
  return worst;
}

}  // namespace

Domain Domain::ball(const Point& center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("ball: radius must be positive");
  Domain d(ShapeKind::ball, center.dim());
  d.center_ = center;
  d.radius_ = radius;
  return d;
}

Domain Domain::interval(double a, double b) {
  if (!(b > a)) throw std::invalid_argument("interval: need a < b");
  Domain d(ShapeKind::interval, 1);
  d.a_ = a;
  d.b_ = b;
  return d;
}

Domain Domain::half_space(const Point& normal, double offset) {
  const double n = norm(normal);
  if (!(n > 0.0)) throw std::invalid_argument("half_space: normal must be nonzero");
  Domain d(ShapeKind::half_space, normal.dim());
  d.normal_ = (1.0 / n) * normal;
  d.offset_ = offset;
  return d;
}

Domain Domain::power_cusp(int dim, double c, double p) {
  if (dim < 2 || dim > kMaxDim) throw std::invalid_argument("power_cusp: dimension must be 2 or 3");
  if (!(c > 0.0) || !(p > 1.0 && p <= 2.0)) throw std::invalid_argument("power_cusp: need c > 0 and p in (1, 2]");
  Domain d(ShapeKind::power_cusp, dim);
  d.c_ = c;
  d.p_ = p;
  d.kappa_ = scan_cusp_kappa(d);
  return d;
}

Domain Domain::complement_of_ball(const Point& center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("complement_of_ball: radius must be positive");
  Domain d(ShapeKind::complement_of_ball, center.dim());
  d.center_ = center;
  d.radius_ = radius;
  return d;
}

Domain Domain::localized(const Point& z0, double r) const {
  if (z0.dim() != dim_) throw std::invalid_argument("localized: dimension mismatch");
  if (!(r > 0.0)) throw std::invalid_argument("localized: radius must be positive");
  Domain d(ShapeKind::localized, dim_);
  d.center_ = z0;
  d.radius_ = r;
  d.base_ = std::make_shared<const Domain>(*this);
  return d;
}

std::string Domain::name() const {
  switch (kind_) {
    case ShapeKind::ball: return "ball(center=" + center_.to_string() + ", radius=" + std::to_string(radius_) + ")";
    case ShapeKind::interval: return "interval(" + std::to_string(a_) + ", " + std::to_string(b_) + ")";
    case ShapeKind::half_space:
      return "half_space(normal=" + normal_.to_string() + ", offset=" + std::to_string(offset_) + ")";
    case ShapeKind::power_cusp:
      return "power_cusp(d=" + std::to_string(dim_) + ", c=" + std::to_string(c_) + ", p=" + std::to_string(p_) + ")";
    case ShapeKind::complement_of_ball:
      return "complement_of_ball(center=" + center_.to_string() + ", radius=" + std::to_string(radius_) + ")";
    case ShapeKind::localized:
      return base_->name() + " & ball(center=" + center_.to_string() + ", radius=" + std::to_string(radius_) + ")";
  }
  return "unknown";
}

bool Domain::bounded() const {
  return kind_ == ShapeKind::ball || kind_ == ShapeKind::interval || kind_ == ShapeKind::localized;
}

double Domain::graph(const Point& x) const { return c_ * std::pow(chart_radius(x), p_); }

Point Domain::graph_gradient(const Point& x) const {
  Point g(dim_);
  const double rho = chart_radius(x);
  if (rho == 0.0) return g;
  const double f = c_ * p_ * std::pow(rho, p_ - 2.0);
  for (int i = 0; i + 1 < dim_; ++i) g[i] = f * x[i];
  return g;
}

bool Domain::contains(const Point& x) const {
  switch (kind_) {
    case ShapeKind::ball: return distance(x, center_) < radius_;
    case ShapeKind::interval: return x[0] > a_ && x[0] < b_;
    case ShapeKind::half_space: return dot(normal_, x) > offset_;
    case ShapeKind::power_cusp: return x.last() > graph(x);
    case ShapeKind::complement_of_ball: return distance(x, center_) > radius_;
    case ShapeKind::localized: return distance(x, center_) < radius_ && base_->contains(x);
  }
  return false;
}

double Domain::delta(const Point& x) const { return contains(x) ? boundary_distance(x) : 0.0; }

double Domain::cusp_distance(const Point& x, Point* nearest) const {
  const double rho = chart_radius(x);
  const double h = x.last();
  auto f = [&](double s) {
    const double dx = s - rho;
    const double dy = c_ * std::pow(s, p_) - h;
    return dx * dx + dy * dy;
  };
  // the origin is a boundary point, so the minimizer lies in [0, rho + |x|]
  const double smax = rho + std::hypot(rho, h);
  double best_s = 0.0, best_f = f(0.0);
  int best_i = 0;
  for (int i = 1; i <= kCuspScan; ++i) {
    const double s = smax * i / kCuspScan;
    const double v = f(s);
    if (v < best_f) {
      best_f = v;
      best_s = s;
      best_i = i;
    }
  }
  if (smax > 0.0) {
    const double lo = smax * std::max(0, best_i - 1) / kCuspScan;
    const double hi = smax * std::min(kCuspScan, best_i + 1) / kCuspScan;
    std::uintmax_t iters = 200;
    const auto [s, v] = boost::math::tools::brent_find_minima(f, lo, hi, 52, iters);
    if (v < best_f) {
      best_f = v;
      best_s = s;
    }
    if (iters >= 200) throw NumericError("power_cusp distance: minimization did not converge in [" +
                                         std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  if (nearest) {
    const Point u = chart_direction(x);
    Point z = best_s * u;
    z[dim_ - 1] = c_ * std::pow(best_s, p_);
    *nearest = z;
  }
  return std::sqrt(best_f);
}

double Domain::boundary_distance(const Point& x) const {
  switch (kind_) {
    case ShapeKind::ball:
    case ShapeKind::complement_of_ball: return std::abs(distance(x, center_) - radius_);
    case ShapeKind::interval: return std::min(std::abs(x[0] - a_), std::abs(x[0] - b_));
    case ShapeKind::half_space: return std::abs(dot(normal_, x) - offset_);
    case ShapeKind::power_cusp: return cusp_distance(x, nullptr);
    case ShapeKind::localized: {
      const double to_sphere = std::abs(distance(x, center_) - radius_);
      if (contains(x)) return std::min(to_sphere, base_->boundary_distance(x));
      // outside: distance to the closest point of the intersection's boundary
      const Point z = project(x);
      return distance(x, z);
    }
  }
  return 0.0;
}

Point Domain::project(const Point& x) const {
  switch (kind_) {
    case ShapeKind::ball:
    case ShapeKind::complement_of_ball: {
      Point u = x - center_;
      const double n = norm(u);
      if (n == 0.0) u = Point::unit(dim_, 0);
      else u *= 1.0 / n;
      return center_ + radius_ * u;
    }
    case ShapeKind::interval: {
      Point z(1);
      z[0] = std::abs(x[0] - a_) <= std::abs(x[0] - b_) ? a_ : b_;
      return z;
    }
    case ShapeKind::half_space: return x - (dot(normal_, x) - offset_) * normal_;
    case ShapeKind::power_cusp: {
      Point z(dim_);
      cusp_distance(x, &z);
      return z;
    }
    case ShapeKind::localized: {
      Point u = x - center_;
      const double n = norm(u);
      if (n == 0.0) u = Point::unit(dim_, 0);
      else u *= 1.0 / n;
      const Point on_sphere = center_ + radius_ * u;
      const Point on_base = base_->project(x);
      const bool sphere_ok = base_->contains(on_sphere) || base_->boundary_distance(on_sphere) < 1e-12;
      const bool base_ok = distance(on_base, center_) <= radius_;
      if (sphere_ok && (!base_ok || distance(x, on_sphere) <= distance(x, on_base))) return on_sphere;
      if (base_ok) return on_base;
      // both candidates miss the intersection: fall back to the closer one
      return distance(x, on_sphere) <= distance(x, on_base) ? on_sphere : on_base;
    }
  }
  return x;
}

Point Domain::inward_normal(const Point& z) const {
  switch (kind_) {
    case ShapeKind::ball: {
      Point u = center_ - z;
      const double n = norm(u);
      return n > 0.0 ? (1.0 / n) * u : Point::unit(dim_, 0);
    }
    case ShapeKind::complement_of_ball: {
      Point u = z - center_;
      const double n = norm(u);
      return n > 0.0 ? (1.0 / n) * u : Point::unit(dim_, 0);
    }
    case ShapeKind::interval: {
      Point n(1);
      n[0] = std::abs(z[0] - a_) <= std::abs(z[0] - b_) ? 1.0 : -1.0;
      return n;
    }
    case ShapeKind::half_space: return normal_;
    case ShapeKind::power_cusp: {
      Point n = -1.0 * graph_gradient(z);
      n[dim_ - 1] = 1.0;
      return (1.0 / norm(n)) * n;
    }
    case ShapeKind::localized: {
      const double to_sphere = std::abs(distance(z, center_) - radius_);
      if (to_sphere <= base_->boundary_distance(z)) {
        Point u = center_ - z;
        const double n = norm(u);
        return n > 0.0 ? (1.0 / n) * u : Point::unit(dim_, 0);
      }
      return base_->inward_normal(z);
    }
  }
  return Point(dim_);
}

double Domain::kappa() const {
  switch (kind_) {
    case ShapeKind::power_cusp: return kappa_;
    case ShapeKind::localized: throw std::domain_error("kappa: not defined for localized domains");
    default: return 1.0;
  }
}

Point Domain::corkscrew(const Point& z, double r) const {
  if (kind_ == ShapeKind::localized) throw std::domain_error("corkscrew: not defined for localized domains");
  if (!(r > 0.0 && r < R0())) throw std::invalid_argument("corkscrew: r must lie in (0, R0)");
  if (boundary_distance(z) > 1e-9) throw std::invalid_argument("corkscrew: z is not a boundary point");
  const Point zr = z + r * inward_normal(z);
  const double dz = delta(zr);
  const double k = kappa();
  if (dz < k * r * (1.0 - 1e-9) || dz > r * (1.0 + 1e-12))
    throw NumericError("corkscrew: achieved delta/r = " + std::to_string(dz / r) + " outside [" +
                       std::to_string(k) + ", 1]");
  return zr;
}

bool Domain::box_member(const Point& x, double a, double r, const Point& y) const {
  if (!(a > 0.0 && a < R0()) || !(r > 0.0 && r < R0()))
    throw std::invalid_argument("box_member: a and r must lie in (0, R0)");
  double rho = 0.0;
  switch (kind_) {
    case ShapeKind::half_space: rho = dot(normal_, y) - offset_; break;
    case ShapeKind::power_cusp: rho = y.last() - graph(y); break;
    default: throw std::domain_error("box_member: " + name() + " has no graph chart");
  }
  const Point zx = project(x);
  return rho > 0.0 && rho < a && distance(y, zx) < r;
}

double Domain::R0() const {
  switch (kind_) {
    case ShapeKind::ball:
    case ShapeKind::complement_of_ball: return std::min(1.0, radius_);
    case ShapeKind::interval: return std::min(1.0, 0.5 * (b_ - a_));
    default: return 1.0;
  }
}

double Domain::Lambda0() const {
  switch (kind_) {
    case ShapeKind::ball:
    case ShapeKind::complement_of_ball: return std::max(1.0, 1.0 / radius_);
    case ShapeKind::power_cusp: return std::max(1.0, c_ * p_ * std::pow(2.0, 2.0 - p_));
    default: return 1.0;
  }
}

double Domain::alpha() const { return kind_ == ShapeKind::power_cusp ? p_ - 1.0 : 1.0; }

double Domain::chi1() const {
  switch (kind_) {
    case ShapeKind::complement_of_ball: return std::numbers::pi / 2.0;
    case ShapeKind::localized: return std::numeric_limits<double>::quiet_NaN();
    default: return 1.0;  // convex shapes: path distance equals Euclidean distance
  }
}

}  // namespace subdiff
