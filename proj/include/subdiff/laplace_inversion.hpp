#pragma once

#include <complex>
#include <functional>

namespace subdiff::laplace {

/// Gaver-Stehfest inversion of a real-valued transform F at t > 0 (even order).
double gaver_stehfest(const std::function<double(double)>& F, double t, int order = 14);

/// Bromwich-integral inversion by the trapezoidal rule on the line Re s = A / (2t)
/// with Euler summation of the alternating tail (Abate-Whitt).
double euler_bromwich(const std::function<std::complex<double>(std::complex<double>)>& F, double t,
                      int terms = 15, int euler_order = 11, double A = 18.4);

}  // namespace subdiff::laplace
