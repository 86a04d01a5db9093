#include "subdiff/laplace_inversion.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace subdiff::laplace {
namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

std::vector<double> stehfest_weights(int order) {
  const int half = order / 2;
  std::vector<double> v(order + 1, 0.0);
  for (int k = 1; k <= order; ++k) {
    double s = 0.0;
    for (int j = (k + 1) / 2; j <= std::min(k, half); ++j) {
      s += std::pow(j, half) * factorial(2 * j) /
           (factorial(half - j) * factorial(j) * factorial(j - 1) * factorial(k - j) * factorial(2 * j - k));
    }
    v[k] = ((k + half) % 2 == 0 ? 1.0 : -1.0) * s;
  }
  return v;
}

}  // namespace

double gaver_stehfest(const std::function<double(double)>& F, double t, int order) {
  if (t <= 0.0) throw std::domain_error("gaver_stehfest: t must be positive");
  if (order <= 0 || order % 2 != 0 || order > 20) throw std::invalid_argument("gaver_stehfest: order must be even, <= 20");
  static thread_local int cached_order = 0;
  static thread_local std::vector<double> weights;
  if (cached_order != order) {
    weights = stehfest_weights(order);
    cached_order = order;
  }
  const double a = std::numbers::ln2 / t;
  double sum = 0.0;
  for (int k = 1; k <= order; ++k) sum += weights[k] * F(k * a);
  return sum * a;
}

double euler_bromwich(const std::function<std::complex<double>(std::complex<double>)>& F, double t, int terms,
                      int euler_order, double A) {
  if (t <= 0.0) throw std::domain_error("euler_bromwich: t must be positive");
  const double scale = std::exp(A / 2.0) / t;
  const int total = terms + euler_order;
  // partial sums S_n of the alternating series
  std::vector<double> partial(total + 1);
  double s = 0.5 * F(std::complex<double>(A / (2.0 * t), 0.0)).real();
  partial[0] = s;
  for (int k = 1; k <= total; ++k) {
    const std::complex<double> z(A / (2.0 * t), k * std::numbers::pi / t);
    s += ((k % 2) ? -1.0 : 1.0) * F(z).real();
    partial[k] = s;
  }
  // binomial average of S_terms .. S_{terms + euler_order}
  double avg = 0.0;
  double binom = 1.0;
  for (int m = 0; m <= euler_order; ++m) {
    avg += binom * partial[terms + m];
    binom = binom * (euler_order - m) / (m + 1);
  }
  avg /= std::pow(2.0, euler_order);
  return scale * avg;
}

}  // namespace subdiff::laplace
