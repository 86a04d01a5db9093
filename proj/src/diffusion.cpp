#include "subdiff/diffusion.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace subdiff {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double phase(const Point& x, int i) {
  double s = 0.0;
  for (int k = 0; k < x.dim(); ++k) s += x[k];
  return kTwoPi * s + i * std::numbers::pi / 3.0;
}

}  // namespace

DiffusionSpec DiffusionSpec::identity(int dim) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("identity: unsupported dimension");
  return {CoefficientKind::identity, dim, 1.0};
}

DiffusionSpec DiffusionSpec::smooth_anisotropic(int dim, double lambda0) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("smooth_anisotropic: unsupported dimension");
  if (!(lambda0 >= 1.0)) throw std::invalid_argument("smooth_anisotropic: lambda0 must be >= 1");
  return {CoefficientKind::smooth_anisotropic, dim, lambda0};
}

std::string DiffusionSpec::name() const {
  if (is_identity()) return "identity";
  return "smooth_anisotropic(lambda0=" + std::to_string(lambda0_) + ")";
}

double DiffusionSpec::a(const Point& x, int i) const {
  if (is_identity()) return 1.0;
  const double m = 0.5 * (lambda0_ + 1.0 / lambda0_);
  const double amp = 0.5 * (lambda0_ - 1.0 / lambda0_);
  return m + amp * std::sin(phase(x, i));
}

Point DiffusionSpec::drift(const Point& x) const {
  Point b(dim_);
  if (is_identity()) return b;
  const double amp = 0.5 * (lambda0_ - 1.0 / lambda0_);
  for (int i = 0; i < dim_; ++i) b[i] = 0.5 * amp * kTwoPi * std::cos(phase(x, i));
  return b;
}

double DiffusionSpec::quadratic_form(const Point& x, const Point& n) const {
  double s = 0.0;
  for (int i = 0; i < dim_; ++i) s += a(x, i) * n[i] * n[i];
  return s;
}

double DiffusionSpec::dini_modulus(double r) const {
  const double amp = 0.5 * (lambda0_ - 1.0 / lambda0_);
  return std::pow(dim_, 1.5) * amp * kTwoPi * r;
}

}  // namespace subdiff
