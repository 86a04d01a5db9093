#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "subdiff/parallel.hpp"
#include "subdiff/sampler.hpp"

namespace subdiff {

/// Monte Carlo result. std_error is the sample standard deviation over sqrt(n).
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string meta;

  /// |value - reference| in units of std_error (0 when both vanish).
  double z_score(double reference) const;
};

/// Number of paths, master seed and execution policy of one Monte Carlo run.
struct McRun {
  std::size_t n = 10000;
  std::uint64_t seed = 1;
  Exec exec = Exec::parallel();
};

/// Mean and standard error of per-path samples (requires n >= 100).
Estimate summarize(std::span<const double> samples, std::uint64_t seed, std::string meta);

struct ExitTimeEstimate {
  Estimate estimate;
  double censored_fraction = 0.0;
  bool censoring_bias = false;  ///< censored fraction above 0.1%: the mean is biased low
};

using Region = std::function<bool(const Point&)>;

/// P_x(tau_D > t) for Y^D; the sampler horizon must be >= t.
Estimate estimate_survival(const PathSampler& ps, const Point& x, double t, const McRun& run);
/// P_x(zeta > t) for Z^D on the same construction.
Estimate estimate_survival_Z(const PathSampler& ps, const Point& x, double t, const McRun& run);

/// E_x tau_D for Y^D; censored paths contribute the horizon.
ExitTimeEstimate estimate_mean_exit_time(const PathSampler& ps, const Point& x, const McRun& run);
/// E_x zeta for Z^D.
ExitTimeEstimate estimate_mean_lifetime_Z(const PathSampler& ps, const Point& x, const McRun& run);
/// E_x tau_D for the killed diffusion itself (clock = horizon).
ExitTimeEstimate estimate_mean_exit_time_X(const PathSampler& ps, const Point& x, const McRun& run);

/// P_x(Y_{tau_D} in region); censored paths count as outside the region.
Estimate estimate_exit_distribution(const PathSampler& ps, const Point& x, const Region& region, const McRun& run);
/// P_x(exit mode == mode).
Estimate estimate_exit_mode(const PathSampler& ps, const Point& x, ExitMode mode, const McRun& run);

/// E exp(-lambda S_t) for each lambda.
std::vector<Estimate> estimate_laplace_transform(const LaplaceExponent& e, double t, std::span<const double> lambdas,
                                                 double dt, const McRun& run);

struct DensityEstimate {
  Estimate estimate;
  double bandwidth = 0.0;    ///< kernel bandwidth (0 for conditional estimators)
  double sensitivity = 0.0;  ///< relative change when the bandwidth is halved
  bool reliable = true;      ///< sensitivity <= 20%
};

/// Free-space identity-coefficient density by the conditional-Gaussian estimator
/// mean over S_t of (2 pi S_t)^{-d/2} exp(-|x-y|^2 / (2 S_t)).
std::vector<DensityEstimate> estimate_density_free(const LaplaceExponent& e, double t, const Point& x,
                                                   std::span<const Point> ys, const McRun& run);
/// Density of Z^D_t: mean over S_t of the killed Brownian kernel (interval or half-space).
std::vector<DensityEstimate> estimate_density_Z(const LaplaceExponent& e, const Domain& dom, double t, const Point& x,
                                                std::span<const Point> ys, const McRun& run);
/// Density of Y^D_t: Gaussian kernel smoothing of surviving positions (Silverman bandwidth),
/// normalized by the total path count; the sampler horizon must be t.
std::vector<DensityEstimate> estimate_density_Y(const PathSampler& ps, const Point& x, std::span<const Point> ys,
                                                const McRun& run);

/// Expected occupation E_x int_0^{tau_D} 1_region(Y_s) ds (trapezoidal in time).
ExitTimeEstimate estimate_green(const PathSampler& ps, const Point& x, const Region& region, const McRun& run);

struct RadialGreen {
  double radius = 0.0;
  Estimate estimate;          ///< occupation of the shell |y - x| in (radius - h, radius + h) per unit volume
  double sensitivity = 0.0;   ///< relative change with half-width h / 2
};

/// Shell-averaged Green function G(x, y) for |y - x| = radius, one pass over the paths.
std::vector<RadialGreen> estimate_green_radial(const PathSampler& ps, const Point& x, std::span<const double> radii,
                                               double half_width, const McRun& run);

/// Ball-occupation point estimate of G(x, y) with radius h.
Estimate estimate_green_point(const PathSampler& ps, const Point& x, const Point& y, double h, const McRun& run);

struct ComparabilityReport {
  std::vector<double> ratios;  ///< value / envelope (NaN at excluded points)
  std::vector<bool> resolved;
  double C_low = 0.0;
  double C_high = 0.0;
  double band = 0.0;           ///< C_high / C_low
  std::size_t excluded = 0;
  double band_limit = 0.0;
  bool pass = false;
};

/// Fits the tightest constants C_low <= value / envelope <= C_high over statistically
/// resolved points (estimate more than 3 standard errors from 0).
ComparabilityReport fit_comparability(std::span<const Estimate> values, std::span<const double> envelope,
                                      double band_limit);

/// True when two band ratios agree within rel_tol.
bool band_stable(const ComparabilityReport& a, const ComparabilityReport& b, double rel_tol = 0.2);

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_error = 0.0;  ///< propagated from the estimates' standard errors
};

/// Weighted least-squares fit of log value against log x (weights from relative standard errors).
LogLogFit fit_loglog(std::span<const double> xs, std::span<const Estimate> values);

/// Path-wise checks on coupled samples.
struct CouplingCheck {
  std::size_t n = 0;
  std::size_t violations = 0;
};
/// zeta <= tau_Y on every coupled path.
CouplingCheck check_lifetime_ordering(const PathSampler& ps, const Point& x, const McRun& run);
/// Survival in the smaller domain never exceeds survival in the larger one on shared randomness.
CouplingCheck check_domain_monotonicity(const PathSampler& large, const PathSampler& small, const Point& x, double t,
                                        const McRun& run);

}  // namespace subdiff
