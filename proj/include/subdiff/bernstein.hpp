#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace subdiff {

enum class ExponentKind {
  stable,
  conjugate_geometric_stable,
  conjugate_gamma,
  exponential_levy,
  drift_only,
  custom_quadrature,
};

/// Which map the envelope's phi^{-1}(1/t) inverts.
enum class InverseMode {
  full,       ///< lambda + phi(lambda), the whole exponent including unit drift
  pure_jump,  ///< phi(lambda) alone
};

/// Laplace exponent lambda + phi(lambda) of a subordinator with unit drift.
///
/// phi is the pure-jump part, a complete Bernstein function drawn from a small
/// catalog. The `custom_quadrature` entry is specified only through its Levy
/// density c t^{-1-alpha} e^{-kappa t}; phi is then obtained by quadrature.
class LaplaceExponent {
 public:
  static LaplaceExponent stable(double beta);
  static LaplaceExponent conjugate_geometric_stable(double beta);
  static LaplaceExponent conjugate_gamma();
  static LaplaceExponent exponential_levy();
  static LaplaceExponent drift_only();
  static LaplaceExponent custom_tempered(double c, double alpha, double kappa);

  ExponentKind kind() const { return kind_; }
  double beta() const { return beta_; }
  std::string name() const;

  /// H vanishes identically (no jump part).
  bool degenerate() const { return kind_ == ExponentKind::drift_only; }
  /// phi is bounded on (0, inf), so phi alone is not invertible.
  bool bounded() const { return kind_ == ExponentKind::drift_only || kind_ == ExponentKind::exponential_levy; }
  /// The Levy density has a cheap closed form (otherwise it is a Stieltjes-type integral).
  bool closed_form_levy_density() const;

  /// Pure-jump part phi(lambda), lambda > 0.
  double phi(double lambda) const;
  double dphi(double lambda) const;
  double d2phi(double lambda) const;
  /// H(lambda) = phi - lambda phi'.
  double H(double lambda) const;
  /// Analytic extension to Re(lambda) > 0 (used by the Bromwich inversion).
  std::complex<double> phi(std::complex<double> lambda) const;
  /// Levy density mu(t), t > 0.
  double levy_density(double t) const;

  double full(double lambda) const { return lambda + phi(lambda); }

  // custom_quadrature parameters
  double tempered_c() const { return c_; }
  double tempered_alpha() const { return alpha_; }
  double tempered_kappa() const { return kappa_; }

 private:
  explicit LaplaceExponent(ExponentKind k) : kind_(k) {}

  double custom_phi(double lambda) const;
  double stieltjes_levy_density(double t) const;

  ExponentKind kind_;
  double beta_ = 0.0;
  double c_ = 0.0, alpha_ = 0.0, kappa_ = 0.0;
};

// Operations

/// Pure-jump exponent; throws std::domain_error for lambda <= 0.
double eval_phi(const LaplaceExponent& e, double lambda);

/// H(lambda) = phi(lambda) - lambda phi'(lambda) >= 0.
double eval_H(const LaplaceExponent& e, double lambda);

/// Solves lambda + phi(lambda) = y (InverseMode::full) or phi(lambda) = y.
double inv_phi(const LaplaceExponent& e, double y, InverseMode mode = InverseMode::full);

struct PsiTriple {
  double psi = 0.0;   ///< 1 / H(r^-2)
  double psi0 = 0.0;  ///< r^2 H(r^-2)
  double Psi = 0.0;   ///< psi0(r) + int_0^r psi0(s)/s ds + r^(2-eps)
  bool degenerate = false;
};

/// The psi-family at radius r. `eps` must lie in (max(1, 2 delta), 2) where
/// delta is the upper scaling exponent of H; pass delta_upper to validate.
PsiTriple psi_family(const LaplaceExponent& e, double r, double eps, double delta_upper = 0.0);

/// int_r^upper ds / (s psi(s)) = int_r^upper H(s^-2) / s ds, 0 < r < upper.
double psi_inverse_integral(const LaplaceExponent& e, double r, double upper);

/// Potential density u(t) of the subordinator (inverse Laplace transform of
/// 1 / (lambda + phi(lambda))). Gaver-Stehfest primary, Bromwich (Euler)
/// cross-check; throws NumericError on relative disagreement above 1e-4.
double potential_density(const LaplaceExponent& e, double t);

struct ScalingWitness {
  double a = 0.0;
  double gamma = 0.0;  ///< lower exponent: min pairwise log-slope
  double c_L = 1.0;
  double delta = 0.0;  ///< upper exponent: max pairwise log-slope
  double C_U = 1.0;
  double fitted_exponent = 0.0;  ///< least-squares log-log slope over the window
  double lo = 0.0, hi = 0.0;     ///< grid window
  std::size_t points = 0;
  bool a1_holds = false;         ///< delta < 1, or delta ~ 1 with gamma > 1/2
};

/// Grid-based scaling witness for g on the points of `grid` above a.
/// `unit_tol` is how far delta may exceed 1 while still counting as delta = 1.
ScalingWitness estimate_scaling(const std::function<double(double)>& g, double a, std::span<const double> grid,
                                double unit_tol = 0.05);

/// Worst-case constants of Definition-style scaling bounds for fixed exponents:
/// c_L = min g(R)/g(r) (r/R)^gamma and C_U = max g(R)/g(r) (r/R)^delta over grid pairs.
std::pair<double, double> scaling_constants(const std::function<double(double)>& g, std::span<const double> grid,
                                            double gamma, double delta);

/// Smallest grid point a such that the witness on points above a satisfies (A1);
/// returns +inf when no candidate certifies.
double smallest_certified_threshold(const std::function<double(double)>& g, std::span<const double> grid,
                                    std::size_t min_points = 20, double unit_tol = 0.05);

/// Default eps for the Psi function: midpoint of (max(1, 2 delta), 2) with delta
/// taken from the scaling witness of H on [10, 1e5].
double default_epsilon(const LaplaceExponent& e);

std::vector<double> log_grid(double lo, double hi, std::size_t n);

}  // namespace subdiff
