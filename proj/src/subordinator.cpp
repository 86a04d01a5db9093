#include "subdiff/subordinator.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "subdiff/errors.hpp"
#include "subdiff/quadrature.hpp"

namespace subdiff {
namespace {

constexpr double kVarianceBudget = 1e-6;
constexpr int kCellsPerDecade = 100;

double uniform_open(Rng& rng) {
  // (0, 1): 53 random bits, never exactly 0
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

// Upper bound for int_0^eps s^2 mu(s) ds.
double small_jump_variance(const LaplaceExponent& e, double eps) {
  if (e.closed_form_levy_density()) {
    auto f = [&](double s) { return s < 1e-150 ? 0.0 : s * (s * e.levy_density(s)); };
    return quad::tanh_sinh(f, 0.0, eps, 1e-8).value;
  }
  // e^{-s/eps} >= 1/e on [0, eps], and -phi''(lambda) = int s^2 e^{-lambda s} mu(s) ds
  return std::numbers::e * (-e.d2phi(1.0 / eps));
}

double table_upper_limit(const LaplaceExponent& e) {
  switch (e.kind()) {
    case ExponentKind::conjugate_gamma: return 80.0;
    case ExponentKind::custom_quadrature: return 80.0 / e.tempered_kappa();
    default: return 1e10;
  }
}

// Mass of the power-law cell m0 (s / e0)^{-k} on [e0, e1].
double cell_integral(double e0, double e1, double m0, double k) {
  const double r = e1 / e0;
  if (std::abs(k - 1.0) < 1e-12) return m0 * e0 * std::log(r);
  return m0 * e0 * (std::pow(r, 1.0 - k) - 1.0) / (1.0 - k);
}

}  // namespace

double standard_positive_stable(double alpha, Rng& rng) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("standard_positive_stable: alpha in (0,1)");
  if (alpha == 0.5) {
    // Levy distribution with scale 1/2
    std::normal_distribution<double> normal;
    const double z = normal(rng);
    return 1.0 / (2.0 * z * z);
  }
  const double u = std::numbers::pi * uniform_open(rng);
  const double w = -std::log(uniform_open(rng));
  const double a = std::pow(std::pow(std::sin(alpha * u), alpha) * std::pow(std::sin((1.0 - alpha) * u), 1.0 - alpha) /
                                std::sin(u),
                            1.0 / (1.0 - alpha));
  return std::pow(a / w, (1.0 - alpha) / alpha);
}

JumpSampler::JumpSampler(const LaplaceExponent& e, double h) : e_(e), h_(h) {
  if (!(h > 0.0)) throw std::invalid_argument("JumpSampler: step must be positive");
  switch (e.kind()) {
    case ExponentKind::stable:
    case ExponentKind::exponential_levy:
    case ExponentKind::drift_only: return;
    default: build_table();
  }
}

void JumpSampler::build_table() {
  eps_ = 1.0;
  while (small_jump_variance(e_, eps_) > kVarianceBudget * h_) {
    eps_ /= 1.25;
    if (eps_ < 1e-30) throw NumericError("JumpSampler: no truncation level meets the variance budget");
  }
  const double upper = table_upper_limit(e_);
  const int cells = static_cast<int>(std::ceil(kCellsPerDecade * std::log10(upper / eps_)));
  table_edges_ = log_grid(eps_, upper, static_cast<std::size_t>(cells) + 1);
  std::vector<double> dens(table_edges_.size());
  for (std::size_t i = 0; i < dens.size(); ++i) {
    dens[i] = e_.levy_density(table_edges_[i]);
    if (!(dens[i] > 0.0) || !std::isfinite(dens[i]))
      throw NumericError("JumpSampler: Levy density not positive at " + std::to_string(table_edges_[i]));
  }

  table_slopes_.resize(cells);
  table_cdf_.resize(cells + 1);
  double mass = 0.0, upper_part = 0.0;
  boost::math::quadrature::gauss<double, 15> gl;
  for (int i = 0; i < cells; ++i) {
    const double e0 = table_edges_[i], e1 = table_edges_[i + 1];
    const double k = -std::log(dens[i + 1] / dens[i]) / std::log(e1 / e0);
    table_slopes_[i] = k;
    mass += cell_integral(e0, e1, dens[i], k);
    table_cdf_[i] = mass;
    const double m0 = dens[i];
    upper_part += gl.integrate([&](double s) { return -std::expm1(-s) * m0 * std::pow(s / e0, -k); }, e0, e1);
  }
  // Pareto continuation of the last cell
  tail_start_ = upper;
  tail_index_ = table_slopes_.back();
  if (!(tail_index_ > 1.0)) throw NumericError("JumpSampler: Levy density tail is not integrable on the table");
  const double tail = dens.back() * upper / (tail_index_ - 1.0);
  mass += tail;
  upper_part += tail;  // 1 - e^{-s} = 1 to double precision beyond the table
  table_cdf_[cells] = mass;
  rate_ = mass;
  comp_rate_ = e_.phi(1.0) - upper_part;
  if (!(comp_rate_ >= -1e-9)) {
    throw NumericError("JumpSampler: negative small-jump compensator " + std::to_string(comp_rate_));
  }
  comp_rate_ = std::max(comp_rate_, 0.0);
}

double JumpSampler::draw_table_jump(Rng& rng) const {
  const double v = uniform_open(rng) * table_cdf_.back();
  const auto it = std::upper_bound(table_cdf_.begin(), table_cdf_.end(), v);
  const std::size_t i = static_cast<std::size_t>(it - table_cdf_.begin());
  const double w = uniform_open(rng);
  if (i + 1 >= table_cdf_.size()) return tail_start_ * std::pow(w, -1.0 / (tail_index_ - 1.0));
  const double e0 = table_edges_[i], e1 = table_edges_[i + 1];
  const double k = table_slopes_[i];
  if (std::abs(k - 1.0) < 1e-12) return e0 * std::pow(e1 / e0, w);
  const double a = std::pow(e0, 1.0 - k), b = std::pow(e1, 1.0 - k);
  return std::pow(a + w * (b - a), 1.0 / (1.0 - k));
}

double JumpSampler::draw(Rng& rng) const { return draw(rng, h_); }

double JumpSampler::draw(Rng& rng, double s) const {
  if (!(s >= 0.0)) throw std::invalid_argument("JumpSampler::draw: negative length");
  if (s == 0.0) return 0.0;
  switch (e_.kind()) {
    case ExponentKind::drift_only: return 0.0;
    case ExponentKind::stable: {
      const double alpha = 0.5 * e_.beta();
      return std::pow(s, 1.0 / alpha) * standard_positive_stable(alpha, rng);
    }
    case ExponentKind::exponential_levy: {
      std::poisson_distribution<long> pois(s);
      const long n = pois(rng);
      if (n == 0) return 0.0;
      std::gamma_distribution<double> gamma(static_cast<double>(n), 1.0);
      return gamma(rng);
    }
    default: {
      std::poisson_distribution<long> pois(rate_ * s);
      const long n = pois(rng);
      double j = comp_rate_ * s;
      for (long k = 0; k < n; ++k) j += draw_table_jump(rng);
      return j;
    }
  }
}

std::vector<double> sample_subordinator(const LaplaceExponent& e, double horizon, double dt, Rng& rng) {
  if (!(dt > 0.0) || !(horizon > 0.0)) throw std::invalid_argument("sample_subordinator: dt and horizon must be positive");
  const JumpSampler js(e, dt);
  std::vector<double> inc;
  double t = 0.0;
  while (t < horizon) {
    const double h = std::min(dt, horizon - t);
    inc.push_back(h + js.draw(rng, h));
    t += h;
    if (horizon - t < 1e-12 * horizon) break;
  }
  return inc;
}

}  // namespace subdiff
