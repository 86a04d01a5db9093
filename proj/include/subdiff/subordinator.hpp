#pragma once

#include <vector>

#include "subdiff/bernstein.hpp"
#include "subdiff/rng.hpp"

namespace subdiff {

/// Pure-jump increments of a subordinator over a fixed step h.
///
/// stable(beta): exact one-sided (beta/2)-stable draws (Kanter / Chambers-Mallows-Stuck,
/// Levy distribution at beta = 1). exponential_levy: exact compound Poisson with Exp(1) jumps.
/// Other entries: compound Poisson over jumps above eps_trunc, drawn from a log-spaced
/// table of the Levy density with a Pareto tail, plus the compensating drift for the
/// jumps below eps_trunc. eps_trunc is chosen so that int_0^eps s^2 mu(s) ds <= 1e-6 h.
class JumpSampler {
 public:
  JumpSampler(const LaplaceExponent& e, double h);

  double step() const { return h_; }
  /// Pure-jump increment over one step (unit drift excluded).
  double draw(Rng& rng) const;
  /// Pure-jump increment over an arbitrary length s <= step (exact entries only use s directly).
  double draw(Rng& rng, double s) const;

  double truncation() const { return eps_; }
  double compensator_rate() const { return comp_rate_; }
  double jump_rate() const { return rate_; }
  bool exact() const { return table_edges_.empty(); }

 private:
  void build_table();
  double draw_table_jump(Rng& rng) const;

  LaplaceExponent e_;
  double h_;
  double eps_ = 0.0;
  double comp_rate_ = 0.0;  // drift replacing jumps below eps_, per unit time
  double rate_ = 0.0;       // intensity of jumps above eps_, per unit time
  std::vector<double> table_edges_;
  std::vector<double> table_slopes_;  // local power-law exponent per cell
  std::vector<double> table_cdf_;     // cumulative mass, last entry includes the tail
  double tail_start_ = 0.0;
  double tail_index_ = 0.0;
};

/// Sequence of clock increments dt + J over [0, horizon] (last step truncated).
std::vector<double> sample_subordinator(const LaplaceExponent& e, double horizon, double dt, Rng& rng);

/// One-sided alpha-stable variable with E exp(-lambda S) = exp(-lambda^alpha), alpha in (0, 1).
double standard_positive_stable(double alpha, Rng& rng);

}  // namespace subdiff
