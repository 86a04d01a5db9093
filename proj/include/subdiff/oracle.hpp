#pragma once

#include "subdiff/bernstein.hpp"
#include "subdiff/domain.hpp"

namespace subdiff::oracle {

/// Series evaluation with the number of terms used and a bound on the neglected tail.
struct SeriesValue {
  double value = 0.0;
  int terms = 0;
  double tail_bound = 0.0;
};

/// Free Gaussian kernel of (1/2) Laplacian: (2 pi t)^{-d/2} exp(-|x-y|^2 / (2t)).
double gaussian_kernel(double t, const Point& x, const Point& y);

/// Killed kernel on (a, b) by the method of images.
SeriesValue interval_kernel_images(double a, double b, double t, double x, double y);
/// Killed kernel on (a, b) by the sine eigenexpansion.
SeriesValue interval_kernel_eigen(double a, double b, double t, double x, double y);
/// Largest disagreement of the two interval series at the switch time on a grid of (x, y).
double interval_seam_disagreement(double a, double b);

/// Dirichlet heat kernel of (1/2) Laplacian on an interval (images below t = 0.1 (b-a)^2,
/// eigenfunctions above) or a half-space (single reflected image).
double killed_bm_kernel(const Domain& dom, double t, const Point& x, const Point& y);

/// P_x(tau_D > t) for Brownian motion (generator (1/2) Laplacian).
double interval_survival(double a, double b, double t, double x);
double halfspace_survival(double t, double delta);

double interval_exit_time(double a, double b, double x);
double ball_exit_time(double radius, double r, int dim);
/// Green function of (1/2) Laplacian on (a, b).
double interval_green(double a, double b, double x, double y);
/// Harmonic measure of the upper arc of the half-disk {|z| < r, z_2 > 0} seen from z.
double half_disk_arc_measure(double r, double x1, double x2);

/// Free-space jump kernel j(r) = int_0^inf (2 pi t)^{-d/2} e^{-r^2/(2t)} mu(t) dt.
double jump_kernel(const LaplaceExponent& e, double r, int dim);

/// Occupation density U^{Z^D}(x, y) = int_0^inf p^X_D(t, x, y) u(t) dt for identity
/// coefficients on an interval or a half-space. With unit_potential the weight u is
/// replaced by 1, which gives the Green function of the killed diffusion.
double potential_occupation(const Domain& dom, const LaplaceExponent& e, const Point& x, const Point& y,
                            bool unit_potential = false);

/// q_D(y, z) = int_0^inf (p^X(t, y, z) - p^X_D(t, y, z)) mu(t) dt on an interval.
/// Requires a closed-form Levy density. Throws NumericError on a negative integrand.
double resurrection_kernel(const Domain& dom, const LaplaceExponent& e, double y, double z);

/// Density of the pure-jump (beta/2)-stable subordinator at time t, evaluated at s > 0.
double stable_subordinator_density(double beta, double t, double s);

}  // namespace subdiff::oracle
