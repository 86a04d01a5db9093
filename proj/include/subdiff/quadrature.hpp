#pragma once

#include <functional>
#include <string>

namespace subdiff::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;
};

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (61-point) on a finite interval.
Result gauss_kronrod(const Integrand& f, double a, double b, double rel_tol = 1e-10, unsigned max_depth = 18);

/// Double-exponential rule for integrable endpoint singularities on [a, b].
Result tanh_sinh(const Integrand& f, double a, double b, double rel_tol = 1e-10);

/// Double-exponential rule on [a, +inf).
Result exp_sinh(const Integrand& f, double a, double rel_tol = 1e-10);

/// Throws NumericError when err exceeds rel_tol * |value| (or abs_floor, whichever is larger).
Result checked(Result r, double rel_tol, double abs_floor, const std::string& what);

}  // namespace subdiff::quad
