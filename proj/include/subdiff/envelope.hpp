#pragma once

#include "subdiff/bernstein.hpp"
#include "subdiff/domain.hpp"

namespace subdiff {

/// Constants (C, c1, c2) of h_{D,c1,c2}: c1 is the Gaussian rate, c2 the subordinated-Gaussian rate.
struct EnvelopeParams {
  double C = 1.0;
  double c1 = 1.0;
  double c2 = 1.0;
  InverseMode inverse = InverseMode::full;

  void validate() const;
};

/// Interior estimate tH(|x-y|^-2)/|x-y|^d + phi^{-1}(1/t)^{d/2} exp(-|x-y|^2 phi^{-1}(1/t)).
/// Throws for x == y.
double q_interior(const LaplaceExponent& e, double t, const Point& x, const Point& y,
                  InverseMode inverse = InverseMode::full);

/// t^{-d/2} ^ (t^{-d/2} e^{-c1|x-y|^2/t} + tH/|x-y|^d + phi^{-1}(1/t)^{d/2} e^{-c2|x-y|^2 phi^{-1}(1/t)}),
/// without constant or boundary factors; t^{-d/2} on the diagonal. Accepts the degenerate exponent.
double interior_bracket(const LaplaceExponent& e, const EnvelopeParams& p, double t, const Point& x, const Point& y);

/// C (1 ^ delta(x)/sqrt t)(1 ^ delta(y)/sqrt t) times interior_bracket.
double h_envelope(const Domain& dom, const LaplaceExponent& e, const EnvelopeParams& p, double t, const Point& x,
                  const Point& y);

/// Green envelope g_D (three dimension branches).
double g_envelope(const Domain& dom, const Point& x, const Point& y);

/// H(r^-2) / r^d.
double j_envelope(const LaplaceExponent& e, double r, int dim);

}  // namespace subdiff
