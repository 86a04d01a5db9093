#include "subdiff/bernstein.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "subdiff/errors.hpp"
#include "subdiff/laplace_inversion.hpp"
#include "subdiff/quadrature.hpp"

namespace subdiff {
namespace {

using cplx = std::complex<double>;

void require_beta(double beta, const char* who) {
  if (!(beta > 0.0 && beta < 2.0)) throw std::invalid_argument(std::string(who) + ": beta must lie in (0, 2)");
}

// Taylor coefficients of the conjugate gamma exponent phi(l) = l / log(1 + l) - 1
// and of its H function, about l = 0.
constexpr std::array<double, 13> kConjGammaPhi = {
    0.5,
    -1.0 / 12.0,
    1.0 / 24.0,
    -19.0 / 720.0,
    3.0 / 160.0,
    -863.0 / 60480.0,
    275.0 / 24192.0,
    -33953.0 / 3628800.0,
    8183.0 / 1036800.0,
    -3250433.0 / 479001600.0,
    4671.0 / 788480.0,
    -13695779093.0 / 2615348736000.0,
    2224234463.0 / 475517952000.0,
};
constexpr std::array<double, 12> kConjGammaH = {
    1.0 / 12.0,
    -1.0 / 12.0,
    19.0 / 240.0,
    -3.0 / 40.0,
    863.0 / 12096.0,
    -275.0 / 4032.0,
    33953.0 / 518400.0,
    -8183.0 / 129600.0,
    3250433.0 / 53222400.0,
    -4671.0 / 78848.0,
    13695779093.0 / 237758976000.0,
    -2224234463.0 / 39626496000.0,
};
constexpr double kConjGammaSeriesCut = 0.05;
// Below this time the Levy density may overflow; the integrands' mass there is negligible.
constexpr double kTinyTime = 1e-150;

double horner(const double* c, std::size_t n, double x) {
  double s = 0.0;
  for (std::size_t i = n; i-- > 0;) s = s * x + c[i];
  return s;
}

}  // namespace

LaplaceExponent LaplaceExponent::stable(double beta) {
  require_beta(beta, "stable");
  LaplaceExponent e(ExponentKind::stable);
  e.beta_ = beta;
  return e;
}

LaplaceExponent LaplaceExponent::conjugate_geometric_stable(double beta) {
  require_beta(beta, "conjugate_geometric_stable");
  LaplaceExponent e(ExponentKind::conjugate_geometric_stable);
  e.beta_ = beta;
  return e;
}

LaplaceExponent LaplaceExponent::conjugate_gamma() { return LaplaceExponent(ExponentKind::conjugate_gamma); }
LaplaceExponent LaplaceExponent::exponential_levy() { return LaplaceExponent(ExponentKind::exponential_levy); }
LaplaceExponent LaplaceExponent::drift_only() { return LaplaceExponent(ExponentKind::drift_only); }

LaplaceExponent LaplaceExponent::custom_tempered(double c, double alpha, double kappa) {
  if (!(c > 0.0) || !(alpha > 0.0 && alpha < 1.0) || !(kappa > 0.0))
    throw std::invalid_argument("custom_tempered: need c > 0, alpha in (0,1), kappa > 0");
  LaplaceExponent e(ExponentKind::custom_quadrature);
  e.c_ = c;
  e.alpha_ = alpha;
  e.kappa_ = kappa;
  return e;
}

std::string LaplaceExponent::name() const {
  switch (kind_) {
    case ExponentKind::stable: return "stable(beta=" + std::to_string(beta_) + ")";
    case ExponentKind::conjugate_geometric_stable:
      return "conjugate_geometric_stable(beta=" + std::to_string(beta_) + ")";
    case ExponentKind::conjugate_gamma: return "conjugate_gamma";
    case ExponentKind::exponential_levy: return "exponential_levy";
    case ExponentKind::drift_only: return "drift_only";
    case ExponentKind::custom_quadrature:
      return "custom_tempered(c=" + std::to_string(c_) + ", alpha=" + std::to_string(alpha_) +
             ", kappa=" + std::to_string(kappa_) + ")";
  }
  return "unknown";
}

bool LaplaceExponent::closed_form_levy_density() const {
  return kind_ == ExponentKind::stable || kind_ == ExponentKind::exponential_levy ||
         kind_ == ExponentKind::drift_only || kind_ == ExponentKind::custom_quadrature;
}

double LaplaceExponent::phi(double l) const {
  switch (kind_) {
    case ExponentKind::stable: return std::pow(l, 0.5 * beta_);
    case ExponentKind::conjugate_geometric_stable: return l / std::log1p(std::pow(l, 0.5 * beta_));
    case ExponentKind::conjugate_gamma:
      if (l < kConjGammaSeriesCut) return l * horner(kConjGammaPhi.data(), kConjGammaPhi.size(), l);
      return l / std::log1p(l) - 1.0;
    case ExponentKind::exponential_levy: return l / (1.0 + l);
    case ExponentKind::drift_only: return 0.0;
    case ExponentKind::custom_quadrature: return custom_phi(l);
  }
  return 0.0;
}

double LaplaceExponent::dphi(double l) const {
  switch (kind_) {
    case ExponentKind::stable: return 0.5 * beta_ * std::pow(l, 0.5 * beta_ - 1.0);
    case ExponentKind::conjugate_geometric_stable: {
      const double a = 0.5 * beta_;
      const double la = std::pow(l, a);
      const double L = std::log1p(la);
      return 1.0 / L - a * la / ((1.0 + la) * L * L);
    }
    case ExponentKind::conjugate_gamma: {
      if (l < kConjGammaSeriesCut) {
        double s = 0.0;
        for (std::size_t i = kConjGammaPhi.size(); i-- > 0;) s = s * l + (i + 1) * kConjGammaPhi[i];
        return s;
      }
      const double L = std::log1p(l);
      return 1.0 / L - l / ((1.0 + l) * L * L);
    }
    case ExponentKind::exponential_levy: return 1.0 / ((1.0 + l) * (1.0 + l));
    case ExponentKind::drift_only: return 0.0;
    case ExponentKind::custom_quadrature: {
      const double h = l * 1e-5;
      return (custom_phi(l + h) - custom_phi(l - h)) / (2.0 * h);
    }
  }
  return 0.0;
}

double LaplaceExponent::d2phi(double l) const {
  switch (kind_) {
    case ExponentKind::stable: {
      const double a = 0.5 * beta_;
      return a * (a - 1.0) * std::pow(l, a - 2.0);
    }
    case ExponentKind::exponential_levy: return -2.0 / std::pow(1.0 + l, 3);
    case ExponentKind::drift_only: return 0.0;
    default: {
      const double h = l * 1e-4;
      return (dphi(l + h) - dphi(l - h)) / (2.0 * h);
    }
  }
}

double LaplaceExponent::H(double l) const {
  switch (kind_) {
    case ExponentKind::stable: return (1.0 - 0.5 * beta_) * std::pow(l, 0.5 * beta_);
    case ExponentKind::conjugate_geometric_stable: {
      const double a = 0.5 * beta_;
      const double la = std::pow(l, a);
      const double L = std::log1p(la);
      // lambda^2 L'(lambda) / L^2 with L = log(1 + lambda^a)
      return a * l * (la / (1.0 + la)) / (L * L);
    }
    case ExponentKind::conjugate_gamma: {
      if (l < kConjGammaSeriesCut) return l * l * horner(kConjGammaH.data(), kConjGammaH.size(), l);
      const double L = std::log1p(l);
      return l * (l / (1.0 + l)) / (L * L) - 1.0;
    }
    case ExponentKind::exponential_levy: return l * l / ((1.0 + l) * (1.0 + l));
    case ExponentKind::drift_only: return 0.0;
    case ExponentKind::custom_quadrature: return custom_phi(l) - l * dphi(l);
  }
  return 0.0;
}

cplx LaplaceExponent::phi(cplx l) const {
  switch (kind_) {
    case ExponentKind::stable: return std::pow(l, 0.5 * beta_);
    case ExponentKind::conjugate_geometric_stable: return l / std::log(1.0 + std::pow(l, 0.5 * beta_));
    case ExponentKind::conjugate_gamma:
      if (std::abs(l) < kConjGammaSeriesCut) {
        cplx s = 0.0;
        for (std::size_t i = kConjGammaPhi.size(); i-- > 0;) s = s * l + kConjGammaPhi[i];
        return l * s;
      }
      return l / std::log(1.0 + l) - 1.0;
    case ExponentKind::exponential_levy: return l / (1.0 + l);
    case ExponentKind::drift_only: return 0.0;
    case ExponentKind::custom_quadrature: {
      if (!(l.real() > 0.0)) throw std::domain_error("custom exponent: complex argument needs Re > 0");
      const double a = l.real(), b = l.imag();
      auto re = [&](double t) {
        if (t < kTinyTime) return 0.0;
        const double half = std::sin(0.5 * b * t);
        return (-std::expm1(-a * t) + 2.0 * std::exp(-a * t) * half * half) * levy_density(t);
      };
      auto im = [&](double t) { return t < kTinyTime ? 0.0 : std::exp(-a * t) * std::sin(b * t) * levy_density(t); };
      const double split = 1.0 / std::max({a, std::abs(b), kappa_, 1.0});
      const double r = quad::tanh_sinh(re, 0.0, split, 1e-10).value + quad::exp_sinh(re, split, 1e-10).value;
      const double i = quad::tanh_sinh(im, 0.0, split, 1e-10).value + quad::exp_sinh(im, split, 1e-10).value;
      return {r, i};
    }
  }
  return 0.0;
}

double LaplaceExponent::custom_phi(double l) const {
  auto f = [&](double t) { return t < kTinyTime ? 0.0 : -std::expm1(-l * t) * levy_density(t); };
  const double split = 1.0 / std::max({l, kappa_, 1.0});
  const double far = 1.0 / std::min(kappa_, 1.0);
  // both pieces are smooth in log t
  auto g = [&](double v) {
    const double t = std::exp(v);
    return f(t) * t;
  };
  const auto head = quad::gauss_kronrod(g, std::log(kTinyTime), std::log(split), 1e-11);
  const auto mid = quad::gauss_kronrod(g, std::log(split), std::log(far), 1e-11);
  const auto tail = quad::exp_sinh(f, far, 1e-11);
  quad::Result r{head.value + mid.value + tail.value, head.error + mid.error + tail.error};
  return quad::checked(r, 1e-8, 0.0, "custom phi").value;
}

double LaplaceExponent::levy_density(double t) const {
  if (!(t > 0.0)) throw std::domain_error("levy_density: t must be positive");
  switch (kind_) {
    case ExponentKind::stable: {
      const double a = 0.5 * beta_;
      return a / std::tgamma(1.0 - a) * std::pow(t, -1.0 - a);
    }
    case ExponentKind::exponential_levy: return std::exp(-t);
    case ExponentKind::drift_only: return 0.0;
    case ExponentKind::custom_quadrature: return c_ * std::pow(t, -1.0 - alpha_) * std::exp(-kappa_ * t);
    case ExponentKind::conjugate_geometric_stable:
    case ExponentKind::conjugate_gamma: return stieltjes_levy_density(t);
  }
  return 0.0;
}

// For a complete Bernstein function without drift or killing,
//   mu(t) = (1/pi) int_0^inf e^{-t s} Im phi(-s + i0) ds.
double LaplaceExponent::stieltjes_levy_density(double t) const {
  const double support = kind_ == ExponentKind::conjugate_gamma ? 1.0 : 0.0;
  auto im_boundary = [&](double s) -> double {
    const cplx l(-s, 0.0);  // +0 imaginary part selects the upper boundary value
    switch (kind_) {
      case ExponentKind::conjugate_geometric_stable: return (l / std::log(1.0 + std::pow(l, 0.5 * beta_))).imag();
      case ExponentKind::conjugate_gamma: {
        const double lg = std::log(s - 1.0);
        return s * std::numbers::pi / (lg * lg + std::numbers::pi * std::numbers::pi);
      }
      default: return 0.0;
    }
  };
  if (support * t > 745.0) return 0.0;
  // substitute s = support + u / t
  auto f = [&](double u) {
    const double s = support + u / t;
    if (!std::isfinite(s)) return 0.0;
    return std::exp(-u) * im_boundary(s);
  };
  const auto r = quad::exp_sinh(f, 0.0, 1e-10);
  quad::checked(r, 1e-7, 0.0, "levy density");
  return std::exp(-support * t) * r.value / (std::numbers::pi * t);
}

double eval_phi(const LaplaceExponent& e, double lambda) {
  if (!(lambda > 0.0)) throw std::domain_error("eval_phi: lambda must be positive");
  return e.phi(lambda);
}

double eval_H(const LaplaceExponent& e, double lambda) {
  if (!(lambda > 0.0)) throw std::domain_error("eval_H: lambda must be positive");
  const double h = e.H(lambda);
  if (h < 0.0) {
    const double scale = std::max(1.0, std::abs(e.phi(lambda)));
    if (h < -1e-10 * scale) throw NumericError("eval_H: negative H indicates a broken exponent (" + e.name() + ")");
    return 0.0;
  }
  return h;
}

double inv_phi(const LaplaceExponent& e, double y, InverseMode mode) {
  if (!(y > 0.0)) throw std::domain_error("inv_phi: y must be positive");
  std::function<double(double)> f;
  double lo = 0.0, hi = 0.0;
  if (mode == InverseMode::full) {
    if (e.degenerate()) return y;
    f = [&](double l) { return e.full(l) - y; };
    hi = y;  // phi >= 0
    if (f(hi) == 0.0) return hi;
    lo = 0.5 * y;
    while (f(lo) > 0.0) lo *= 0.5;
  } else {
    if (e.bounded()) {
      // phi is bounded; only values below the supremum are attainable
      const double sup = e.kind() == ExponentKind::exponential_levy ? 1.0 : 0.0;
      if (y >= sup) throw std::domain_error("inv_phi: y outside the range of bounded phi (" + e.name() + ")");
    }
    f = [&](double l) { return e.phi(l) - y; };
    hi = 1.0;
    while (f(hi) < 0.0) {
      hi *= 2.0;
      if (hi > 1e300) throw NumericError("inv_phi: failed to bracket");
    }
    lo = 0.5 * hi;
    while (f(lo) > 0.0) lo *= 0.5;
  }
  std::uintmax_t iters = 200;
  auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-13 * std::abs(b); };
  const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, tol, iters);
  return 0.5 * (a + b);
}

namespace {

// s^2 H(s^-2) from log s, with the large-lambda forms where s^-2 overflows.
double psi0_from_log(const LaplaceExponent& e, double log_s) {
  if (log_s > -300.0) {
    const double s = std::exp(log_s);
    return s * s * e.H(1.0 / (s * s));
  }
  const double log_l = -2.0 * log_s;
  switch (e.kind()) {
    case ExponentKind::stable: return (1.0 - 0.5 * e.beta()) * std::exp((2.0 - e.beta()) * log_s);
    case ExponentKind::conjugate_geometric_stable: {
      const double a = 0.5 * e.beta();
      const double L = a * log_l;
      return a / (L * L);
    }
    case ExponentKind::conjugate_gamma: return 1.0 / (log_l * log_l);
    case ExponentKind::exponential_levy: return std::exp(2.0 * log_s);
    case ExponentKind::drift_only: return 0.0;
    case ExponentKind::custom_quadrature: {
      const double a = e.tempered_alpha();
      return (1.0 - a) * e.tempered_c() * std::tgamma(1.0 - a) / a * std::exp((2.0 - 2.0 * a) * log_s);
    }
  }
  return 0.0;
}

}  // namespace

PsiTriple psi_family(const LaplaceExponent& e, double r, double eps, double delta_upper) {
  if (!(r > 0.0)) throw std::domain_error("psi_family: r must be positive");
  const double eps_lo = std::max(1.0, 2.0 * delta_upper);
  if (!(eps > eps_lo && eps < 2.0))
    throw std::invalid_argument("psi_family: eps must lie in (" + std::to_string(eps_lo) + ", 2)");
  PsiTriple out;
  const double h = eval_H(e, 1.0 / (r * r));
  if (!(h > 0.0)) {
    out.degenerate = true;
    out.psi = std::numeric_limits<double>::infinity();
    out.psi0 = 0.0;
    out.Psi = std::pow(r, 2.0 - eps);
    return out;
  }
  out.psi = 1.0 / h;
  out.psi0 = r * r * h;
  // int_0^r psi0(s)/s ds with s = r e^{-v}, v = e^w - 1; psi0 decays only like 1/v^2
  // for the logarithmic kinds, so the outer substitution keeps the integrand short
  auto f = [&](double w) {
    const double v = std::expm1(w);
    if (!std::isfinite(v)) return 0.0;
    const double log_s = std::log(r) - v;
    return psi0_from_log(e, log_s) * (v + 1.0);
  };
  const auto integral = quad::checked(quad::exp_sinh(f, 0.0, 1e-9), 1e-6, 1e-300, "Psi integral");
  out.Psi = out.psi0 + integral.value + std::pow(r, 2.0 - eps);
  return out;
}

double psi_inverse_integral(const LaplaceExponent& e, double r, double upper) {
  if (!(r > 0.0 && upper > r)) throw std::domain_error("psi_inverse_integral: need 0 < r < upper");
  if (e.degenerate()) return 0.0;
  // substitute s = e^v
  auto f = [&](double v) { return e.H(std::exp(-2.0 * v)); };
  return quad::checked(quad::gauss_kronrod(f, std::log(r), std::log(upper), 1e-10), 1e-7, 1e-300,
                       "psi inverse integral")
      .value;
}

double potential_density(const LaplaceExponent& e, double t) {
  if (t < 0.0) throw std::domain_error("potential_density: t must be nonnegative");
  if (t == 0.0 || e.degenerate()) return 1.0;
  auto F = [&](double s) { return 1.0 / e.full(s); };
  auto Fc = [&](std::complex<double> s) { return 1.0 / (s + e.phi(s)); };
  const double gs = laplace::gaver_stehfest(F, t, 14);
  const double br = laplace::euler_bromwich(Fc, t);
  if (std::abs(gs - br) > 1e-4 * std::abs(br))
    throw NumericError("potential_density: Gaver-Stehfest (" + std::to_string(gs) + ") and Bromwich (" +
                       std::to_string(br) + ") disagree at t=" + std::to_string(t));
  return std::clamp(gs, std::numeric_limits<double>::min(), 1.0);
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0 && hi > lo) || n < 2) throw std::invalid_argument("log_grid: need 0 < lo < hi and n >= 2");
  std::vector<double> g(n);
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i) g[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

ScalingWitness estimate_scaling(const std::function<double(double)>& g, double a, std::span<const double> grid,
                                double unit_tol) {
  std::vector<double> xs, ys;
  for (double x : grid) {
    if (x > a) {
      const double v = g(x);
      if (!(v > 0.0) || !std::isfinite(v))
        throw std::domain_error("estimate_scaling: g must be positive (g(" + std::to_string(x) + ") = " +
                                std::to_string(v) + ")");
      xs.push_back(x);
      ys.push_back(v);
    }
  }
  if (xs.size() < 20) throw std::invalid_argument("estimate_scaling: need at least 20 grid points above a");
  std::vector<std::size_t> order(xs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return xs[i] < xs[j]; });

  ScalingWitness w;
  w.a = a;
  w.points = xs.size();
  w.lo = xs[order.front()];
  w.hi = xs[order.back()];
  w.gamma = std::numeric_limits<double>::infinity();
  w.delta = -std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < order.size(); ++p) {
    for (std::size_t q = p + 1; q < order.size(); ++q) {
      const std::size_t i = order[p], j = order[q];
      if (xs[j] == xs[i]) continue;
      const double slope = std::log(ys[j] / ys[i]) / std::log(xs[j] / xs[i]);
      w.gamma = std::min(w.gamma, slope);
      w.delta = std::max(w.delta, slope);
    }
  }
  const auto [cl, cu] = scaling_constants(g, xs, w.gamma, w.delta);
  w.c_L = std::min(cl, 1.0);
  w.C_U = std::max(cu, 1.0);

  // least-squares slope of log g against log x
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += std::log(xs[i]);
    my += std::log(ys[i]);
  }
  mx /= xs.size();
  my /= xs.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = std::log(xs[i]) - mx;
    sxy += dx * (std::log(ys[i]) - my);
    sxx += dx * dx;
  }
  w.fitted_exponent = sxy / sxx;
  w.a1_holds = w.delta < 1.0 || (w.delta <= 1.0 + unit_tol && w.gamma > 0.5);
  return w;
}

std::pair<double, double> scaling_constants(const std::function<double(double)>& g, std::span<const double> grid,
                                            double gamma, double delta) {
  std::vector<double> xs(grid.begin(), grid.end());
  std::sort(xs.begin(), xs.end());
  std::vector<double> ys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = g(xs[i]);
  double cl = std::numeric_limits<double>::infinity();
  double cu = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      const double ratio = ys[j] / ys[i];
      const double rr = xs[j] / xs[i];
      cl = std::min(cl, ratio / std::pow(rr, gamma));
      cu = std::max(cu, ratio / std::pow(rr, delta));
    }
  }
  return {cl, cu};
}

double smallest_certified_threshold(const std::function<double(double)>& g, std::span<const double> grid,
                                    std::size_t min_points, double unit_tol) {
  std::vector<double> xs(grid.begin(), grid.end());
  std::sort(xs.begin(), xs.end());
  for (std::size_t k = 0; k + min_points < xs.size(); ++k) {
    const double a = xs[k];
    const auto w = estimate_scaling(g, a, xs, unit_tol);
    if (w.a1_holds) return a;
  }
  return std::numeric_limits<double>::infinity();
}

double default_epsilon(const LaplaceExponent& e) {
  if (e.degenerate()) return 1.5;
  const auto grid = log_grid(10.0, 1e5, 25);
  const auto w = estimate_scaling([&](double l) { return eval_H(e, l); }, 0.0, grid);
  const double lo = std::max(1.0, 2.0 * w.delta);
  if (lo >= 2.0) throw std::domain_error("default_epsilon: upper scaling exponent of H is not below 1");
  return 0.5 * (lo + 2.0);
}

}  // namespace subdiff
