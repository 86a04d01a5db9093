#include "subdiff/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace subdiff {

void EnvelopeParams::validate() const {
  if (!(C > 0.0 && std::isfinite(C)) || !(c1 > 0.0 && std::isfinite(c1)) || !(c2 > 0.0 && std::isfinite(c2)))
    throw std::invalid_argument("EnvelopeParams: C, c1, c2 must be positive and finite");
}

double q_interior(const LaplaceExponent& e, double t, const Point& x, const Point& y, InverseMode inverse) {
  if (!(t > 0.0)) throw std::domain_error("q_interior: t must be positive");
  const double r = distance(x, y);
  if (r == 0.0) throw std::domain_error("q_interior: x == y");
  const int d = x.dim();
  const double jump = e.degenerate() ? 0.0 : t * eval_H(e, 1.0 / (r * r)) / std::pow(r, d);
  const double lam = inv_phi(e, 1.0 / t, inverse);
  return jump + std::pow(lam, 0.5 * d) * std::exp(-r * r * lam);
}

double interior_bracket(const LaplaceExponent& e, const EnvelopeParams& p, double t, const Point& x, const Point& y) {
  if (!(t > 0.0)) throw std::domain_error("interior_bracket: t must be positive");
  p.validate();
  const int d = x.dim();
  const double diag = std::pow(t, -0.5 * d);
  const double r = distance(x, y);
  if (r == 0.0) return diag;
  const double gauss = diag * std::exp(-p.c1 * r * r / t);
  const double jump = e.degenerate() ? 0.0 : t * eval_H(e, 1.0 / (r * r)) / std::pow(r, d);
  const double lam = inv_phi(e, 1.0 / t, p.inverse);
  const double sub = std::pow(lam, 0.5 * d) * std::exp(-p.c2 * r * r * lam);
  return std::min(diag, gauss + jump + sub);
}

double h_envelope(const Domain& dom, const LaplaceExponent& e, const EnvelopeParams& p, double t, const Point& x,
                  const Point& y) {
  if (!(t > 0.0)) throw std::domain_error("h_envelope: t must be positive");
  if (e.degenerate()) throw std::invalid_argument("h_envelope: degenerate exponent (H identically 0)");
  const double st = std::sqrt(t);
  const double bx = std::min(1.0, dom.delta(x) / st);
  const double by = std::min(1.0, dom.delta(y) / st);
  if (bx == 0.0 || by == 0.0) return 0.0;
  return p.C * bx * by * interior_bracket(e, p, t, x, y);
}

double g_envelope(const Domain& dom, const Point& x, const Point& y) {
  const double r = distance(x, y);
  if (r == 0.0) throw std::domain_error("g_envelope: x == y");
  const double dd = dom.delta(x) * dom.delta(y);
  if (dd == 0.0) return 0.0;
  switch (dom.dim()) {
    case 1: return std::min(std::sqrt(dd), dd / r);
    case 2: return std::log1p(dd / (r * r));
    default: return std::min(1.0, dd / (r * r)) * std::pow(r, 2.0 - dom.dim());
  }
}

double j_envelope(const LaplaceExponent& e, double r, int dim) {
  if (!(r > 0.0)) throw std::domain_error("j_envelope: r must be positive");
  if (e.degenerate()) return 0.0;
  return eval_H(e, 1.0 / (r * r)) / std::pow(r, dim);
}

}  // namespace subdiff
