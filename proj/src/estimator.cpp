#include "subdiff/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "subdiff/oracle.hpp"

namespace subdiff {
namespace {

constexpr std::size_t kMinSamples = 100;
constexpr double kCensoringFlag = 1e-3;
constexpr double kBandwidthTolerance = 0.2;

std::string tag(const std::string& what, const Point& x) { return what + " x=" + x.to_string(); }

// Trapezoidal integral of f along a recorded path up to its exit (or horizon).
template <class F>
double occupation(const PathRealization& p, F&& f) {
  double s = 0.0;
  const std::size_t m = p.times.size();
  if (m == 0) return 0.0;
  double prev = f(p.states[0]);
  for (std::size_t k = 1; k < m; ++k) {
    const double cur = f(p.states[k]);
    s += 0.5 * (prev + cur) * (p.times[k] - p.times[k - 1]);
    prev = cur;
  }
  if (p.exited() && p.exit_time > p.times.back()) s += prev * (p.exit_time - p.times.back());
  return s;
}

double ball_volume(int d, double r) {
  switch (d) {
    case 1: return 2.0 * r;
    case 2: return std::numbers::pi * r * r;
    default: return 4.0 / 3.0 * std::numbers::pi * r * r * r;
  }
}

ExitTimeEstimate exit_times(std::span<const double> times, std::span<const char> censored, std::uint64_t seed,
                            std::string meta) {
  ExitTimeEstimate out;
  out.estimate = summarize(times, seed, std::move(meta));
  std::size_t c = 0;
  for (char v : censored) c += v ? 1 : 0;
  out.censored_fraction = static_cast<double>(c) / static_cast<double>(censored.size());
  out.censoring_bias = out.censored_fraction > kCensoringFlag;
  return out;
}

void check_horizon(const PathSampler& ps, double t) {
  if (!(t > 0.0) || t > ps.options().horizon * (1.0 + 1e-12))
    throw std::invalid_argument("estimator: t must lie in (0, horizon]");
}

}  // namespace

double Estimate::z_score(double reference) const {
  const double diff = std::abs(value - reference);
  if (std_error == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return diff / std_error;
}

Estimate summarize(std::span<const double> samples, std::uint64_t seed, std::string meta) {
  if (samples.size() < kMinSamples)
    throw std::invalid_argument("summarize: at least " + std::to_string(kMinSamples) + " samples are required");
  // two-pass mean and variance in index order (reproducible for any worker count)
  double mean = 0.0;
  for (double v : samples) mean += v;
  mean /= static_cast<double>(samples.size());
  if (std::all_of(samples.begin(), samples.end(), [&](double v) { return v == samples[0]; })) mean = samples[0];
  double ss = 0.0;
  for (double v : samples) ss += (v - mean) * (v - mean);
  const double n = static_cast<double>(samples.size());
  Estimate e;
  e.value = mean;
  e.std_error = std::sqrt(ss / (n - 1.0) / n);
  e.n = samples.size();
  e.seed = seed;
  e.meta = std::move(meta);
  return e;
}

Estimate estimate_survival(const PathSampler& ps, const Point& x, double t, const McRun& run) {
  check_horizon(ps, t);
  const auto alive = map_paths(run.n, run.exec, [&](std::size_t i) {
    Streams s = Streams::for_path(run.seed, i);
    return ps.subordinate(x, s).alive_at(t) ? 1.0 : 0.0;
  });
  return summarize(alive, run.seed, tag("survival Y t=" + std::to_string(t), x));
}

Estimate estimate_survival_Z(const PathSampler& ps, const Point& x, double t, const McRun& run) {
  check_horizon(ps, t);
  const auto alive = map_paths(run.n, run.exec, [&](std::size_t i) {
    Streams s = Streams::for_path(run.seed, i);
    return ps.coupled(x, s).z.alive_at(t) ? 1.0 : 0.0;
  });
  return summarize(alive, run.seed, tag("survival Z t=" + std::to_string(t), x));
}

ExitTimeEstimate estimate_mean_exit_time(const PathSampler& ps, const Point& x, const McRun& run) {
  const double horizon = ps.options().horizon;
  const auto paths = map_paths(run.n, run.exec, [&](std::size_t i) {
    Streams s = Streams::for_path(run.seed, i);
    const PathRealization p = ps.subordinate(x, s);
    return std::pair<double, char>(p.exited() ? p.exit_time : horizon, p.exited() ? 0 : 1);
  });
  std::vector<double> t(paths.size());
  std::vector<char> c(paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i) std::tie(t[i], c[i]) = paths[i];
  return exit_times(t, c, run.seed, tag("mean exit time Y", x));
}

ExitTimeEstimate estimate_mean_lifetime_Z(const PathSampler& ps, const Point& x, const McRun& run) {
  const double horizon = ps.options().horizon;
  const auto paths = map_paths(run.n, run.exec, [&](std::size_t i) {
    Streams s = Streams::for_path(run.seed, i);
    const PathRealization p = ps.coupled(x, s).z;
    return std::pair<double, char>(p.exited() ? p.exit_time : horizon, p.exited() ? 0 : 1);
  });
  std::vector<double> t(paths.size());
  std::vector<char> c(paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i) std::tie(t[i], c[i]) = paths[i];
  return exit_times(t, c, run.seed, tag("mean lifetime Z", x));
}

ExitTimeEstimate estimate_mean_exit_time_X(const PathSampler& ps, const Point& x, const McRun& run) {
  const double horizon = ps.options().horizon;
  const auto paths = map_paths(run.n, run.exec, [&](std::size_t i) {
    Streams s = Streams::for_path(run.seed, i);
    const PathRealization p = ps.killed_diffusion(x, horizon, s);
    return std::pair<double, char>(p.exited() ? p.exit_time : horizon, p.exited() ? 0 : 1);
  });
  std::vector<double> t(paths.size());
  std::vector<char> c(paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i) std::tie(t[i], c[i]) = paths[i];
  return exit_times(t, c, run.seed, tag("mean exit time X", x));
}

Estimate estimate_exit_distribution(const PathSampler& ps, const Point& x, const Region& region, const McRun& run) {
  const auto hit = map_paths(run.n, run.exec, [&](std::size_t i) {
    Streams s = Streams::for_path(run.seed, i);
    const PathRealization p = ps.subordinate(x, s);
    return p.exited() && region(p.exit_location) ? 1.0 : 0.0;
  });
  return summarize(hit, run.seed, tag("exit distribution", x));
}

Estimate estimate_exit_mode(const PathSampler& ps, const Point& x, ExitMode mode, const McRun& run) {
  const auto hit = map_paths(run.n, run.exec, [&](std::size_t i) {
    Streams s = Streams::for_path(run.seed, i);
    return ps.subordinate(x, s).mode == mode ? 1.0 : 0.0;
  });
  return summarize(hit, run.seed, tag(std::string("exit mode ") + to_string(mode), x));
}

std::vector<Estimate> estimate_laplace_transform(const LaplaceExponent& e, double t, std::span<const double> lambdas,
                                                 double dt, const McRun& run) {
  if (!(t > 0.0)) throw std::invalid_argument("estimate_laplace_transform: t must be positive");
  const double h = std::min(dt, t);
  const JumpSampler js(e, h);
  const std::vector<double> lam(lambdas.begin(), lambdas.end());
  const auto clocks = map_paths(run.n, run.exec, [&](std::size_t i) {
    Streams s = Streams::for_path(run.seed, i);
    double clock = 0.0, done = 0.0;
    while (t - done > 1e-12 * t) {
      const double step = std::min(h, t - done);
      clock += step + js.draw(s.subordinator, step);
      done += step;
    }
    return clock;
  });
  std::vector<Estimate> out;
  std::vector<double> v(clocks.size());
  for (double l : lam) {
    for (std::size_t i = 0; i < clocks.size(); ++i) v[i] = std::exp(-l * clocks[i]);
    out.push_back(summarize(v, run.seed, "laplace " + e.name() + " t=" + std::to_string(t) + " lambda=" +
                                             std::to_string(l)));
  }
  return out;
}

namespace {

std::vector<double> sample_clock(const LaplaceExponent& e, double t, const McRun& run) {
  const JumpSampler js(e, t);
  return map_paths(run.n, run.exec, [&](std::size_t i) {
    Streams s = Streams::for_path(run.seed, i);
    return t + js.draw(s.subordinator, t);
  });
}

template <class Kernel>
std::vector<DensityEstimate> conditional_density(const std::vector<double>& clocks, std::span<const Point> ys,
                                                 const McRun& run, const std::string& meta, Kernel&& kernel) {
  std::vector<DensityEstimate> out;
  std::vector<double> v(clocks.size());
  for (const Point& y : ys) {
    for (std::size_t i = 0; i < clocks.size(); ++i) v[i] = kernel(clocks[i], y);
    DensityEstimate d;
    d.estimate = summarize(v, run.seed, meta + " y=" + y.to_string());
    out.push_back(d);
  }
  return out;
}

}  // namespace

std::vector<DensityEstimate> estimate_density_free(const LaplaceExponent& e, double t, const Point& x,
                                                   std::span<const Point> ys, const McRun& run) {
  if (!(t > 0.0)) throw std::invalid_argument("estimate_density_free: t must be positive");
  const auto clocks = sample_clock(e, t, run);
  return conditional_density(clocks, ys, run, "density free t=" + std::to_string(t),
                             [&](double s, const Point& y) { return oracle::gaussian_kernel(s, x, y); });
}

std::vector<DensityEstimate> estimate_density_Z(const LaplaceExponent& e, const Domain& dom, double t, const Point& x,
                                                std::span<const Point> ys, const McRun& run) {
  if (!(t > 0.0)) throw std::invalid_argument("estimate_density_Z: t must be positive");
  const auto clocks = sample_clock(e, t, run);
  return conditional_density(clocks, ys, run, "density Z t=" + std::to_string(t),
                             [&](double s, const Point& y) { return oracle::killed_bm_kernel(dom, s, x, y); });
}

std::vector<DensityEstimate> estimate_density_Y(const PathSampler& ps, const Point& x, std::span<const Point> ys,
                                                const McRun& run) {
  const double t = ps.options().horizon;
  const auto finals = map_paths(run.n, run.exec, [&](std::size_t i) {
    Streams s = Streams::for_path(run.seed, i);
    const PathRealization p = ps.subordinate(x, s);
    return std::pair<Point, char>(p.final_state, p.exited() ? 0 : 1);
  });
  const int d = x.dim();
  std::size_t alive = 0;
  double sd_sum = 0.0;
  for (int k = 0; k < d; ++k) {
    double m = 0.0, m2 = 0.0;
    std::size_t c = 0;
    for (const auto& [p, a] : finals) {
      if (!a) continue;
      m += p[k];
      m2 += p[k] * p[k];
      ++c;
    }
    alive = c;
    if (c > 1) sd_sum += std::sqrt(std::max(0.0, (m2 - m * m / c) / (c - 1)));
  }
  if (alive < 2) throw std::runtime_error("estimate_density_Y: fewer than two surviving paths");
  const double sigma = sd_sum / d;
  const double h = sigma * std::pow(4.0 / ((d + 2.0) * static_cast<double>(alive)), 1.0 / (d + 4.0));
  auto kde = [&](const Point& y, double bw) {
    std::vector<double> v(finals.size(), 0.0);
    const double norm = std::pow(2.0 * std::numbers::pi * bw * bw, -0.5 * d);
    for (std::size_t i = 0; i < finals.size(); ++i) {
      if (!finals[i].second) continue;
      const double r = distance(finals[i].first, y);
      v[i] = norm * std::exp(-0.5 * r * r / (bw * bw));
    }
    return v;
  };
  std::vector<DensityEstimate> out;
  for (const Point& y : ys) {
    DensityEstimate de;
    de.bandwidth = h;
    de.estimate = summarize(kde(y, h), run.seed, "density Y (kde) t=" + std::to_string(t) + " y=" + y.to_string());
    const auto half = summarize(kde(y, 0.5 * h), run.seed, "");
    de.sensitivity = de.estimate.value > 0.0 ? std::abs(half.value - de.estimate.value) / de.estimate.value
                                             : std::numeric_limits<double>::infinity();
    de.reliable = de.sensitivity <= kBandwidthTolerance;
    out.push_back(de);
  }
  return out;
}

ExitTimeEstimate estimate_green(const PathSampler& ps, const Point& x, const Region& region, const McRun& run) {
  const PathSampler rec = ps.recording(true);
  const auto paths = map_paths(run.n, run.exec, [&](std::size_t i) {
    Streams s = Streams::for_path(run.seed, i);
    const PathRealization p = rec.subordinate(x, s);
    const double occ = occupation(p, [&](const Point& y) { return region(y) ? 1.0 : 0.0; });
    return std::pair<double, char>(occ, p.exited() ? 0 : 1);
  });
  std::vector<double> t(paths.size());
  std::vector<char> c(paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i) std::tie(t[i], c[i]) = paths[i];
  return exit_times(t, c, run.seed, tag("green occupation", x));
}

std::vector<RadialGreen> estimate_green_radial(const PathSampler& ps, const Point& x, std::span<const double> radii,
                                               double half_width, const McRun& run) {
  if (!(half_width > 0.0)) throw std::invalid_argument("estimate_green_radial: half width must be positive");
  for (double r : radii)
    if (!(r > half_width)) throw std::invalid_argument("estimate_green_radial: radii must exceed the half width");
  const PathSampler rec = ps.recording(true);
  const std::vector<double> rs(radii.begin(), radii.end());
  const std::size_t m = rs.size();
  const int d = x.dim();
  auto shell_volume = [&](double r, double h) { return ball_volume(d, r + h) - ball_volume(d, r - h); };
  const auto occ = map_paths(run.n, run.exec, [&](std::size_t i) {
    Streams s = Streams::for_path(run.seed, i);
    const PathRealization p = rec.subordinate(x, s);
    std::vector<double> v(2 * m);
    for (std::size_t k = 0; k < m; ++k) {
      for (int half = 0; half < 2; ++half) {
        const double h = half ? 0.5 * half_width : half_width;
        v[2 * k + half] = occupation(p, [&](const Point& y) {
                            const double r = distance(y, x);
                            return std::abs(r - rs[k]) < h ? 1.0 : 0.0;
                          }) /
                          shell_volume(rs[k], h);
      }
    }
    return v;
  });
  std::vector<RadialGreen> out;
  std::vector<double> v(occ.size());
  for (std::size_t k = 0; k < m; ++k) {
    RadialGreen g;
    g.radius = rs[k];
    for (std::size_t i = 0; i < occ.size(); ++i) v[i] = occ[i][2 * k];
    g.estimate = summarize(v, run.seed, tag("green shell r=" + std::to_string(rs[k]), x));
    for (std::size_t i = 0; i < occ.size(); ++i) v[i] = occ[i][2 * k + 1];
    const double fine = summarize(v, run.seed, "").value;
    g.sensitivity = g.estimate.value > 0.0 ? std::abs(fine - g.estimate.value) / g.estimate.value
                                           : std::numeric_limits<double>::infinity();
    out.push_back(g);
  }
  return out;
}

Estimate estimate_green_point(const PathSampler& ps, const Point& x, const Point& y, double h, const McRun& run) {
  if (!(h > 0.0)) throw std::invalid_argument("estimate_green_point: h must be positive");
  const double vol = ball_volume(x.dim(), h);
  const auto occ = estimate_green(ps, x, [&](const Point& p) { return distance(p, y) < h; }, run);
  Estimate e = occ.estimate;
  e.value /= vol;
  e.std_error /= vol;
  e.meta = tag("green point y=" + y.to_string() + " h=" + std::to_string(h), x);
  return e;
}

ComparabilityReport fit_comparability(std::span<const Estimate> values, std::span<const double> envelope,
                                      double band_limit) {
  if (values.size() != envelope.size() || values.empty())
    throw std::invalid_argument("fit_comparability: values and envelope must be non-empty and of equal length");
  ComparabilityReport r;
  r.band_limit = band_limit;
  r.ratios.assign(values.size(), std::numeric_limits<double>::quiet_NaN());
  r.resolved.assign(values.size(), false);
  r.C_low = std::numeric_limits<double>::infinity();
  r.C_high = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const Estimate& v = values[i];
    const bool resolved = v.value > 3.0 * v.std_error && v.value > 0.0;
    if (!resolved) {
      ++r.excluded;
      continue;
    }
    if (!(envelope[i] > 0.0))
      throw std::domain_error("fit_comparability: envelope vanishes at a resolved point " + std::to_string(i));
    r.resolved[i] = true;
    r.ratios[i] = v.value / envelope[i];
    r.C_low = std::min(r.C_low, r.ratios[i]);
    r.C_high = std::max(r.C_high, r.ratios[i]);
  }
  const double excluded_fraction = static_cast<double>(r.excluded) / static_cast<double>(values.size());
  if (r.excluded == values.size()) {
    r.C_low = r.C_high = r.band = std::numeric_limits<double>::quiet_NaN();
    r.pass = false;
    return r;
  }
  r.band = r.C_high / r.C_low;
  r.pass = r.band <= band_limit && excluded_fraction <= 0.25;
  return r;
}

bool band_stable(const ComparabilityReport& a, const ComparabilityReport& b, double rel_tol) {
  if (!std::isfinite(a.band) || !std::isfinite(b.band)) return false;
  return std::abs(a.band - b.band) <= rel_tol * std::min(a.band, b.band);
}

LogLogFit fit_loglog(std::span<const double> xs, std::span<const Estimate> values) {
  if (xs.size() != values.size() || xs.size() < 2) throw std::invalid_argument("fit_loglog: need >= 2 matched points");
  std::vector<double> lx, ly, w;
  bool weighted = true;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(values[i].value > 0.0)) throw std::domain_error("fit_loglog: nonpositive value");
    lx.push_back(std::log(xs[i]));
    ly.push_back(std::log(values[i].value));
    const double rel = values[i].std_error / values[i].value;
    if (!(rel > 0.0)) weighted = false;
    w.push_back(rel > 0.0 ? 1.0 / (rel * rel) : 1.0);
  }
  if (!weighted) std::fill(w.begin(), w.end(), 1.0);
  double sw = 0.0, mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sw += w[i];
    mx += w[i] * lx[i];
    my += w[i] * ly[i];
  }
  mx /= sw;
  my /= sw;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += w[i] * (lx[i] - mx) * (lx[i] - mx);
    sxy += w[i] * (lx[i] - mx) * (ly[i] - my);
  }
  LogLogFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.slope_error = weighted ? std::sqrt(1.0 / sxx) : 0.0;
  return f;
}

CouplingCheck check_lifetime_ordering(const PathSampler& ps, const Point& x, const McRun& run) {
  const auto bad = map_paths(run.n, run.exec, [&](std::size_t i) {
    Streams s = Streams::for_path(run.seed, i);
    const CoupledPaths c = ps.coupled(x, s);
    return c.z.exit_time <= c.y.exit_time ? 0 : 1;
  });
  CouplingCheck out;
  out.n = run.n;
  for (int b : bad) out.violations += b;
  return out;
}

CouplingCheck check_domain_monotonicity(const PathSampler& large, const PathSampler& small, const Point& x, double t,
                                        const McRun& run) {
  check_horizon(large, t);
  check_horizon(small, t);
  if (large.options().dt != small.options().dt)
    throw std::invalid_argument("check_domain_monotonicity: samplers must share dt");
  const auto bad = map_paths(run.n, run.exec, [&](std::size_t i) {
    Streams s1 = Streams::for_path(run.seed, i);
    Streams s2 = Streams::for_path(run.seed, i);
    const bool big_alive = large.subordinate(x, s1).alive_at(t);
    const bool small_alive = small.subordinate(x, s2).alive_at(t);
    return small_alive && !big_alive ? 1 : 0;
  });
  CouplingCheck out;
  out.n = run.n;
  for (int b : bad) out.violations += b;
  return out;
}

}  // namespace subdiff
