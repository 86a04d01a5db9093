#include "subdiff/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "subdiff/errors.hpp"
#include "subdiff/quadrature.hpp"

namespace subdiff::oracle {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTailTarget = 1e-17;
constexpr double kSeamFraction = 0.1;

double g1(double t, double z) { return std::exp(-z * z / (2.0 * t)) / std::sqrt(2.0 * kPi * t); }

void require_interval(const Domain& dom, const char* who) {
  if (dom.kind() != ShapeKind::interval) throw std::invalid_argument(std::string(who) + ": needs an interval domain");
}

// Free minus killed kernel on (0, L) from the images, without cancellation.
double interval_excess_images(double L, double t, double x, double y) {
  double s = 0.0;
  for (int k = 0;; ++k) {
    double add = g1(t, x + y + 2.0 * k * L);
    if (k > 0) add += g1(t, x + y - 2.0 * k * L) - g1(t, x - y + 2.0 * k * L) - g1(t, x - y - 2.0 * k * L);
    s += add;
    if (k > 0 && 8.0 * g1(t, 2.0 * (k - 1) * L) < kTailTarget * std::max(s, 1e-300)) break;
    if (k > 10000) throw NumericError("interval image series did not converge");
  }
  return s;
}

}  // namespace

double gaussian_kernel(double t, const Point& x, const Point& y) {
  if (!(t > 0.0)) throw std::domain_error("gaussian_kernel: t must be positive");
  const double r = distance(x, y);
  return std::exp(-r * r / (2.0 * t)) * std::pow(2.0 * kPi * t, -0.5 * x.dim());
}

SeriesValue interval_kernel_images(double a, double b, double t, double x, double y) {
  if (!(t > 0.0)) throw std::domain_error("interval_kernel_images: t must be positive");
  const double L = b - a;
  x -= a;
  y -= a;
  SeriesValue out;
  out.value = g1(t, x - y) - g1(t, x + y);
  for (int k = 1;; ++k) {
    out.value += g1(t, x - y + 2.0 * k * L) + g1(t, x - y - 2.0 * k * L) - g1(t, x + y + 2.0 * k * L) -
                 g1(t, x + y - 2.0 * k * L);
    out.terms = 4 * k + 2;
    // remaining terms are bounded by a geometric series from |z| >= 2 k L
    const double next = g1(t, 2.0 * k * L);
    out.tail_bound = 8.0 * next;
    if (out.tail_bound < kTailTarget) break;
    if (k > 10000) throw NumericError("interval image series did not converge");
  }
  out.value = std::max(out.value, 0.0);
  return out;
}

SeriesValue interval_kernel_eigen(double a, double b, double t, double x, double y) {
  if (!(t > 0.0)) throw std::domain_error("interval_kernel_eigen: t must be positive");
  const double L = b - a;
  const double c = kPi * kPi * t / (2.0 * L * L);
  SeriesValue out;
  for (int k = 1;; ++k) {
    out.value += 2.0 / L * std::exp(-k * k * c) * std::sin(k * kPi * (x - a) / L) * std::sin(k * kPi * (y - a) / L);
    out.terms = k;
    const double q = std::exp(-(2.0 * k + 3.0) * c);
    out.tail_bound = 2.0 / L * std::exp(-(k + 1.0) * (k + 1.0) * c) / (1.0 - q);
    if (out.tail_bound < kTailTarget) break;
    if (k > 1000000) throw NumericError("interval eigenseries did not converge");
  }
  out.value = std::max(out.value, 0.0);
  return out;
}

double interval_seam_disagreement(double a, double b) {
  const double L = b - a;
  const double ts = kSeamFraction * L * L;
  double worst = 0.0;
  for (int i = 1; i < 24; ++i) {
    for (int j = 1; j < 24; ++j) {
      const double x = a + L * i / 24.0, y = a + L * j / 24.0;
      worst = std::max(worst, std::abs(interval_kernel_images(a, b, ts, x, y).value -
                                       interval_kernel_eigen(a, b, ts, x, y).value));
    }
  }
  return worst;
}

double killed_bm_kernel(const Domain& dom, double t, const Point& x, const Point& y) {
  if (!(t > 0.0)) throw std::domain_error("killed_bm_kernel: t must be positive");
  if (!dom.contains(x) || !dom.contains(y)) return 0.0;
  switch (dom.kind()) {
    case ShapeKind::interval: {
      const double L = dom.hi() - dom.lo();
      if (t < kSeamFraction * L * L) return interval_kernel_images(dom.lo(), dom.hi(), t, x[0], y[0]).value;
      return interval_kernel_eigen(dom.lo(), dom.hi(), t, x[0], y[0]).value;
    }
    case ShapeKind::half_space: {
      // reflect y across the boundary hyperplane
      const Point ystar = y - 2.0 * (dot(dom.normal(), y) - dom.offset()) * dom.normal();
      const double r2 = dot(x - y, x - y);
      const double r2s = dot(x - ystar, x - ystar);
      const double pre = std::pow(2.0 * kPi * t, -0.5 * x.dim());
      return pre * std::exp(-r2 / (2.0 * t)) * -std::expm1(-(r2s - r2) / (2.0 * t));
    }
    default: throw std::invalid_argument("killed_bm_kernel: needs an interval or a half-space");
  }
}

double interval_survival(double a, double b, double t, double x) {
  if (!(t > 0.0)) throw std::domain_error("interval_survival: t must be positive");
  if (!(x > a && x < b)) return 0.0;
  const double L = b - a;
  const double c = kPi * kPi * t / (2.0 * L * L);
  double s = 0.0;
  for (int k = 1;; k += 2) {
    s += 4.0 / (k * kPi) * std::exp(-k * k * c) * std::sin(k * kPi * (x - a) / L);
    if (4.0 / kPi * std::exp(-(k + 2.0) * (k + 2.0) * c) / (1.0 - std::exp(-4.0 * (k + 3.0) * c)) < kTailTarget) break;
    if (k > 2000000) throw NumericError("interval_survival: series did not converge");
  }
  return std::clamp(s, 0.0, 1.0);
}

double halfspace_survival(double t, double delta) {
  if (!(t > 0.0)) throw std::domain_error("halfspace_survival: t must be positive");
  if (delta <= 0.0) return 0.0;
  return std::erf(delta / std::sqrt(2.0 * t));
}

double interval_exit_time(double a, double b, double x) {
  if (!(x > a && x < b)) return 0.0;
  return (x - a) * (b - x);
}

double ball_exit_time(double radius, double r, int dim) {
  if (r >= radius) return 0.0;
  return (radius * radius - r * r) / dim;
}

double interval_green(double a, double b, double x, double y) {
  if (!(x > a && x < b && y > a && y < b)) return 0.0;
  const double lo = std::min(x, y) - a, hi = std::max(x, y) - a;
  return 2.0 * lo * (b - a - hi) / (b - a);
}

double half_disk_arc_measure(double r, double x1, double x2) {
  if (!(x2 > 0.0) || x1 * x1 + x2 * x2 >= r * r) throw std::domain_error("half_disk_arc_measure: point outside");
  const std::complex<double> z(x1 / r, x2 / r);
  return 2.0 / kPi * std::arg((1.0 + z) / (1.0 - z));
}

double jump_kernel(const LaplaceExponent& e, double r, int dim) {
  if (!(r > 0.0)) throw std::domain_error("jump_kernel: r must be positive");
  if (e.degenerate()) return 0.0;
  // t = r^2 v puts the Gaussian factor's peak at v = 1 / d for every r
  const double r2 = r * r;
  auto f = [&](double v) {
    if (v <= 0.0) return 0.0;
    const double g = std::exp(-0.5 / v) * std::pow(2.0 * kPi * r2 * v, -0.5 * dim);
    return g == 0.0 ? 0.0 : g * e.levy_density(r2 * v) * r2;
  };
  const double m = 1.0 / dim;
  const auto head = quad::tanh_sinh(f, 0.0, m, 1e-10);
  const auto tail = quad::exp_sinh(f, m, 1e-10);
  return quad::checked({head.value + tail.value, head.error + tail.error}, 1e-7, 0.0, "jump_kernel").value;
}

double potential_occupation(const Domain& dom, const LaplaceExponent& e, const Point& x, const Point& y,
                            bool unit_potential) {
  if (dom.kind() != ShapeKind::interval && dom.kind() != ShapeKind::half_space)
    throw std::invalid_argument("potential_occupation: needs an interval or a half-space");
  const double r = distance(x, y);
  if (r == 0.0) throw std::domain_error("potential_occupation: x == y");
  if (!dom.contains(x) || !dom.contains(y)) return 0.0;
  auto f = [&](double t) {
    if (t <= 0.0) return 0.0;
    const double p = killed_bm_kernel(dom, t, x, y);
    if (p == 0.0) return 0.0;
    return unit_potential ? p : p * potential_density(e, t);
  };
  // the killed kernel peaks near t = r^2 / d
  const double m = r * r / dom.dim();
  const auto head = quad::tanh_sinh(f, 0.0, m, 1e-10);
  const auto tail = quad::exp_sinh(f, m, 1e-10);
  return quad::checked({head.value + tail.value, head.error + tail.error}, 1e-6, 1e-14, "potential_occupation").value;
}

double resurrection_kernel(const Domain& dom, const LaplaceExponent& e, double y, double z) {
  require_interval(dom, "resurrection_kernel");
  if (!e.closed_form_levy_density()) throw std::invalid_argument("resurrection_kernel: needs a closed-form Levy density");
  if (y == z) throw std::domain_error("resurrection_kernel: y == z");
  const Point py{y}, pz{z};
  if (!dom.contains(py) || !dom.contains(pz)) throw std::domain_error("resurrection_kernel: points must lie in D");
  if (e.degenerate()) return 0.0;
  const double L = dom.hi() - dom.lo();
  const double y0 = y - dom.lo(), z0 = z - dom.lo();
  const double scale = g1(L * L, 0.0);
  auto excess = [&](double t) {
    double v;
    if (t < kSeamFraction * L * L) v = interval_excess_images(L, t, y0, z0);
    else v = g1(t, y - z) - interval_kernel_eigen(0.0, L, t, y0, z0).value;
    if (v < -1e-12 * std::max(scale, g1(t, y - z)))
      throw NumericError("resurrection_kernel: negative integrand " + std::to_string(v) + " at t=" + std::to_string(t));
    return std::max(v, 0.0);
  };
  // certified cutoff: below t_min the integrand is at most 4 g(t, a) mu(t), increasing in t, with a = dy + dz
  const double a = dom.delta(py) + dom.delta(pz);
  double t_min = 0.25 * a * a;
  while (t_min * 4.0 * g1(t_min, a) * e.levy_density(t_min) > 1e-12) t_min *= 0.5;
  auto f = [&](double t) { return excess(t) * e.levy_density(t); };
  const double split = std::max(t_min, a * a);
  const auto head = quad::gauss_kronrod(f, t_min, split, 1e-10);
  const auto tail = quad::exp_sinh(f, split, 1e-10);
  return quad::checked({head.value + tail.value, head.error + tail.error}, 1e-7, 1e-13, "resurrection_kernel").value;
}

double stable_subordinator_density(double beta, double t, double s) {
  if (!(beta > 0.0 && beta < 2.0)) throw std::invalid_argument("stable_subordinator_density: beta in (0, 2)");
  if (!(t > 0.0)) throw std::domain_error("stable_subordinator_density: t must be positive");
  if (s <= 0.0) return 0.0;
  if (beta == 1.0) return t / (2.0 * std::sqrt(kPi)) * std::pow(s, -1.5) * std::exp(-t * t / (4.0 * s));
  const double alpha = 0.5 * beta;
  const double scale = std::pow(t, 1.0 / alpha);
  const double x = s / scale;
  if (std::pow(x, -alpha) < 0.25) {
    // large-x series (1/pi) sum (-1)^{n+1} Gamma(n alpha + 1)/n! sin(n pi alpha) x^{-n alpha - 1}
    double sum = 0.0;
    for (int n = 1; n < 200; ++n) {
      const double mag = std::exp(std::lgamma(n * alpha + 1.0) - std::lgamma(n + 1.0) - n * alpha * std::log(x));
      const double term = (n % 2 ? 1.0 : -1.0) * mag * std::sin(n * kPi * alpha);
      sum += term;
      if (mag < 1e-17 * std::abs(sum)) break;
    }
    return sum / (kPi * x) / scale;
  }
  const double k = std::pow(x, -alpha / (1.0 - alpha));
  auto A = [&](double u) {
    return std::pow(std::pow(std::sin(alpha * u), alpha) * std::pow(std::sin((1.0 - alpha) * u), 1.0 - alpha) /
                        std::sin(u),
                    1.0 / (1.0 - alpha));
  };
  auto f = [&](double u) {
    if (u <= 0.0 || u >= kPi) return 0.0;
    const double au = A(u);
    return au * std::exp(-au * k);
  };
  const auto r = quad::checked(quad::gauss_kronrod(f, 0.0, kPi, 1e-11), 1e-8, 1e-300,
                               "stable_subordinator_density");
  return alpha / (1.0 - alpha) / kPi * std::pow(x, -1.0 / (1.0 - alpha)) * r.value / scale;
}

}  // namespace subdiff::oracle
