#include "subdiff/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <cstdio>

#include "subdiff/errors.hpp"

namespace subdiff::quad {

Result gauss_kronrod(const Integrand& f, double a, double b, double rel_tol, unsigned max_depth) {
  Result r;
  if (a == b) return r;
  r.value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, max_depth, rel_tol, &r.error);
  return r;
}

Result tanh_sinh(const Integrand& f, double a, double b, double rel_tol) {
  thread_local boost::math::quadrature::tanh_sinh<double> integrator;
  Result r;
  if (a == b) return r;
  double l1 = 0.0;
  std::size_t levels = 0;
  r.value = integrator.integrate(f, a, b, rel_tol, &r.error, &l1, &levels);
  return r;
}

Result exp_sinh(const Integrand& f, double a, double rel_tol) {
  thread_local boost::math::quadrature::exp_sinh<double> integrator;
  Result r;
  double l1 = 0.0;
  std::size_t levels = 0;
  r.value = integrator.integrate(f, a, std::numeric_limits<double>::infinity(), rel_tol, &r.error, &l1, &levels);
  return r;
}

Result checked(Result r, double rel_tol, double abs_floor, const std::string& what) {
  const double allowed = std::max(rel_tol * std::abs(r.value), abs_floor);
  if (!std::isfinite(r.value) || r.error > allowed) {
    char buf[96];
    std::snprintf(buf, sizeof buf, " (value %.6g, error %.3g)", r.value, r.error);
    throw NumericError(what + ": quadrature did not converge" + buf);
  }
  return r;
}

}  // namespace subdiff::quad
