#include "subdiff/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>

#include <json.hpp>

#include "subdiff/errors.hpp"
#include "subdiff/estimator.hpp"
#include "subdiff/oracle.hpp"
#include "subdiff/quadrature.hpp"

#ifndef SUBDIFF_VERSION
#define SUBDIFF_VERSION "0.0.0"
#endif

namespace subdiff {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::set<std::string> kKnownKeys = {
    "kind",        "phi",          "beta",          "c",           "alpha",        "kappa",
    "inverse",     "epsilon",      "diffusion",     "lambda0",     "domain",       "dim",
    "a",           "b",            "center",        "radius",      "normal",       "offset",
    "cusp_c",      "cusp_p",       "n",             "dt",          "horizon",      "seed",
    "out",         "workers",      "x",             "delta",       "y_delta",      "t",
    "lambda",      "distance",     "y_offset",      "density",     "radii",        "half_width",
    "scale_radii", "region",       "r",             "region_lo",   "region_hi",    "green_mode",
    "window.lo",   "window.hi",    "envelope.C",    "envelope.c1", "envelope.c2",  "band.oracle_z",
    "band.ratio",  "band.slope_target", "band.slope_tol", "band.limit", "band.stability", "band.delta_max",
    "band.gamma_min", "band.fitted_target", "band.fitted_tol", "band.scaling_z", "band.censored_max",
    "band.reliable", "band.psi_ratio_lo", "band.psi_ratio_hi", "band.potential_ratio", "band.green_tol",
    "band.seam_tol"};

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string num(std::size_t v) { return std::to_string(v); }

// Short form for human-readable details.
std::string g6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Table {
  std::string file;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::vector<std::string> coord_header(const std::string& prefix, int dim) {
  std::vector<std::string> h;
  for (int i = 0; i < dim; ++i) h.push_back(prefix + std::to_string(i));
  return h;
}

void append_coords(std::vector<std::string>& row, const Point& p) {
  for (int i = 0; i < p.dim(); ++i) row.push_back(num(p[i]));
}

std::vector<double> coords(const Point& p) {
  std::vector<double> v;
  for (int i = 0; i < p.dim(); ++i) v.push_back(p[i]);
  return v;
}

json to_json(const Estimate& e) {
  return json{{"value", e.value}, {"stderr", e.std_error}, {"n", e.n}, {"seed", e.seed}, {"meta", e.meta}};
}

json to_json(const ComparabilityReport& r) {
  json ratios = json::array();
  for (std::size_t i = 0; i < r.ratios.size(); ++i)
    ratios.push_back(r.resolved[i] ? json(r.ratios[i]) : json(nullptr));
  return json{{"C_low", r.C_low}, {"C_high", r.C_high}, {"band", r.band},       {"band_limit", r.band_limit},
              {"excluded", r.excluded}, {"points", r.ratios.size()}, {"pass", r.pass}, {"ratios", ratios}};
}

json to_json(const ScalingWitness& w) {
  return json{{"gamma", w.gamma}, {"c_L", w.c_L},           {"delta", w.delta}, {"C_U", w.C_U},
              {"fitted_exponent", w.fitted_exponent}, {"lo", w.lo}, {"hi", w.hi}, {"points", w.points},
              {"a1_holds", w.a1_holds}};
}

struct Ctx {
  const Config& cfg;
  std::string kind;
  Exec exec;
  std::uint64_t seed = 1;
  std::size_t n = 10000;
  double dt = 1e-3;
  double horizon = kNaN;
  std::string hash;
  json report;
  std::vector<AcceptanceItem> items;
  std::vector<Table> tables;

  Ctx(const Config& cfg_, std::string kind_, Exec exec_) : cfg(cfg_), kind(std::move(kind_)), exec(exec_) {}

  McRun run(std::size_t paths) const { return McRun{paths, seed, exec}; }
  McRun run() const { return run(n); }
  void check(std::string name, bool pass, std::string detail) {
    items.push_back({std::move(name), pass, std::move(detail)});
  }
};

double default_horizon(const Domain& dom) {
  switch (dom.kind()) {
    case ShapeKind::interval: return 50.0 * 0.25 * (dom.hi() - dom.lo()) * (dom.hi() - dom.lo());
    case ShapeKind::ball: return 50.0 * dom.radius() * dom.radius();
    default: return 10.0;
  }
}

Point point_at_delta(const Domain& dom, double d) {
  switch (dom.kind()) {
    case ShapeKind::interval: return Point{dom.lo() + d};
    case ShapeKind::ball: {
      Point p = dom.center();
      p[0] += dom.radius() - d;
      return p;
    }
    case ShapeKind::complement_of_ball: {
      Point p = dom.center();
      p[0] += dom.radius() + d;
      return p;
    }
    case ShapeKind::half_space: return (dom.offset() + d) * dom.normal();
    case ShapeKind::localized: return point_at_delta(dom.base(), d);
    case ShapeKind::power_cusp: {
      // height on the axis whose boundary distance is d
      const Point e = Point::unit(dom.dim(), dom.dim() - 1);
      if (d == 0.0) return Point(dom.dim());
      double lo = d, hi = 2.0 * d;
      while (dom.delta(hi * e) < d) hi *= 2.0;
      for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (dom.delta(mid * e) < d ? lo : hi) = mid;
      }
      return hi * e;
    }
  }
  throw std::logic_error("point_at_delta: unhandled shape");
}

Point default_start(const Domain& dom) {
  switch (dom.kind()) {
    case ShapeKind::interval: return Point{0.5 * (dom.lo() + dom.hi())};
    case ShapeKind::ball: return dom.center();
    case ShapeKind::power_cusp: return point_at_delta(dom, 0.5);
    default: return point_at_delta(dom, 1.0);
  }
}

struct Start {
  double delta;
  Point x;
};

std::vector<Start> start_points(const Ctx& c, const Domain& dom, const std::string& key = "delta") {
  std::vector<Start> out;
  if (key == "delta" && c.cfg.has("x")) {
    const auto v = c.cfg.numbers("x");
    if (dom.dim() == 1) {
      for (double x : v) out.push_back({dom.delta(Point{x}), Point{x}});
    } else {
      if (static_cast<int>(v.size()) != dom.dim()) throw ConfigError(c.cfg.source() + ": 'x' needs one point");
      Point p(dom.dim());
      for (int i = 0; i < dom.dim(); ++i) p[i] = v[i];
      out.push_back({dom.delta(p), p});
    }
  } else if (c.cfg.has(key)) {
    for (double d : c.cfg.numbers(key)) {
      if (!(d > 0.0)) throw ConfigError(c.cfg.source() + ": '" + key + "' values must be positive");
      const Point p = point_at_delta(dom, d);
      out.push_back({dom.delta(p), p});
    }
  } else {
    const Point p = default_start(dom);
    out.push_back({dom.delta(p), p});
  }
  for (const auto& s : out)
    if (!dom.contains(s.x)) throw ConfigError(c.cfg.source() + ": start point " + s.x.to_string() + " is not in D");
  return out;
}

std::optional<double> bm_exit_time(const Domain& dom, const Point& x) {
  if (dom.kind() == ShapeKind::interval) return oracle::interval_exit_time(dom.lo(), dom.hi(), x[0]);
  if (dom.kind() == ShapeKind::ball) return oracle::ball_exit_time(dom.radius(), distance(x, dom.center()), dom.dim());
  return std::nullopt;
}

std::optional<double> bm_survival(const Domain& dom, double t, const Point& x) {
  if (dom.kind() == ShapeKind::interval) return oracle::interval_survival(dom.lo(), dom.hi(), t, x[0]);
  if (dom.kind() == ShapeKind::half_space) return oracle::halfspace_survival(t, dom.delta(x));
  return std::nullopt;
}

bool has_killed_kernel(const Domain& dom) {
  return dom.kind() == ShapeKind::interval || dom.kind() == ShapeKind::half_space;
}

void check_oracle_z(Ctx& c, const std::vector<double>& zs) {
  const auto band = c.cfg.optional_number("band.oracle_z");
  if (!band) return;
  double worst = 0.0;
  std::size_t count = 0;
  for (double z : zs)
    if (!std::isnan(z)) {
      worst = std::max(worst, z);
      ++count;
    }
  if (count == 0) {
    c.check("oracle agreement", false, "no oracle available for this configuration");
    return;
  }
  c.check("oracle agreement", worst <= *band,
          "max |z| = " + g6(worst) + " over " + std::to_string(count) + " points (limit " + g6(*band) + ")");
}

void check_slope(Ctx& c, const std::string& label, const std::vector<double>& xs, const std::vector<Estimate>& vs,
                 double default_target, std::optional<double> default_tol = std::nullopt) {
  const auto tol = c.cfg.has("band.slope_tol") ? c.cfg.optional_number("band.slope_tol") : default_tol;
  const double target = c.cfg.number("band.slope_target", default_target);
  const double lo = c.cfg.number("window.lo", 0.0), hi = c.cfg.number("window.hi", kInf);
  std::vector<double> wx;
  std::vector<Estimate> wv;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (xs[i] >= lo * (1 - 1e-12) && xs[i] <= hi * (1 + 1e-12)) {
      wx.push_back(xs[i]);
      wv.push_back(vs[i]);
    }
  json fit{{"label", label}, {"window", {lo, hi}}, {"points", wx.size()}};
  bool ok = wx.size() >= 2;
  std::string detail;
  for (const auto& v : wv) ok = ok && v.value > 0.0;
  if (ok) {
    const auto f = fit_loglog(wx, wv);
    fit["slope"] = f.slope;
    fit["slope_error"] = f.slope_error;
    fit["intercept"] = f.intercept;
    detail = "slope " + g6(f.slope) + " +- " + g6(f.slope_error) + " (target " + g6(target) + ")";
    if (tol) {
      ok = std::abs(f.slope - target) <= *tol;
      detail += " tolerance " + g6(*tol);
    }
  } else {
    detail = "regression needs >= 2 positive estimates inside the window";
  }
  c.report["fits"].push_back(fit);
  if (tol) c.check("log-log slope " + label, ok, detail);
}

// bf-diagnostics --------------------------------------------------------------

void run_bf(Ctx& c) {
  const auto e = make_exponent(c.cfg);
  std::vector<double> def;
  for (int k = -6; k <= 16; ++k) def.push_back(std::ldexp(1.0, k));
  const auto lam = c.cfg.numbers("lambda", def);
  Table t{"bf_grid.csv", {"lambda", "phi", "dphi", "d2phi", "H", "full", "inverse_full"}, {}};
  json grid{{"lambda", json::array()}, {"phi", json::array()}, {"H", json::array()}};
  for (double l : lam) {
    if (!(l > 0.0)) throw ConfigError(c.cfg.source() + ": 'lambda' values must be positive");
    const double f = e.full(l);
    t.rows.push_back({num(l), num(eval_phi(e, l)), num(e.dphi(l)), num(e.d2phi(l)), num(eval_H(e, l)), num(f),
                      num(inv_phi(e, f))});
    grid["lambda"].push_back(l);
    grid["phi"].push_back(eval_phi(e, l));
    grid["H"].push_back(eval_H(e, l));
  }
  c.tables.push_back(std::move(t));
  c.report["exponent"] = e.name();
  c.report["grid"] = grid;

  double eps = kNaN;
  try {
    eps = c.cfg.has("epsilon") ? c.cfg.number("epsilon") : default_epsilon(e);
  } catch (const std::domain_error& ex) {
    c.report["epsilon_note"] = ex.what();
  }
  c.report["epsilon"] = eps;
  if (!std::isnan(eps)) {
    Table p{"psi.csv", {"r", "psi", "psi0", "Psi"}, {}};
    for (double r : c.cfg.numbers("radii", log_grid(1e-3, 1.0, 7))) {
      const auto tr = psi_family(e, r, eps);
      p.rows.push_back({num(r), num(tr.psi), num(tr.psi0), num(tr.Psi)});
    }
    c.tables.push_back(std::move(p));
  }

  c.report["degenerate"] = e.degenerate();
  if (e.degenerate()) return;
  const double lo = c.cfg.positive("window.lo", 10.0), hi = c.cfg.positive("window.hi", 1e5);
  if (!(hi > lo)) throw ConfigError(c.cfg.source() + ": window.hi must exceed window.lo");
  const auto window = log_grid(lo, hi, 200);
  const auto wH = estimate_scaling([&](double l) { return eval_H(e, l); }, 0.0, window);
  const auto wphi = estimate_scaling([&](double l) { return eval_phi(e, l); }, 0.0, window);
  c.report["witness_H"] = to_json(wH);
  c.report["witness_phi"] = to_json(wphi);
  if (const auto b = c.cfg.optional_number("band.delta_max"))
    c.check("upper scaling exponent of H", wH.delta <= *b, "delta = " + g6(wH.delta) + " (limit " + g6(*b) + ")");
  if (const auto b = c.cfg.optional_number("band.gamma_min"))
    c.check("lower scaling exponent of H", wH.gamma >= *b, "gamma = " + g6(wH.gamma) + " (limit " + g6(*b) + ")");
  if (const auto b = c.cfg.optional_number("band.fitted_target")) {
    const double tol = c.cfg.positive("band.fitted_tol", 0.15);
    c.check("fitted exponent of H", std::abs(wH.fitted_exponent - *b) <= tol,
            "fitted = " + g6(wH.fitted_exponent) + " (target " + g6(*b) + " +- " + g6(tol) + ")");
  }
}

// simulate --------------------------------------------------------------------

PathSampler make_sampler(const Ctx& c, const Domain& dom, double horizon) {
  PathOptions opt;
  opt.dt = c.dt;
  opt.horizon = horizon;
  return PathSampler(make_diffusion(c.cfg, dom.dim()), make_exponent(c.cfg), dom, opt);
}

void run_simulate(Ctx& c) {
  const Domain dom = make_domain(c.cfg);
  c.horizon = c.cfg.positive("horizon", default_horizon(dom));
  const PathSampler ps = make_sampler(c, dom, c.horizon);
  const Point x0 = start_points(c, dom).front().x;
  const auto paths = map_paths(c.n, c.exec, [&](std::size_t i) {
    Streams s = Streams::for_path(c.seed, i);
    return ps.subordinate(x0, s);
  });
  auto header = std::vector<std::string>{"path", "exit_time", "mode", "final_clock", "coarse_start"};
  for (const auto& h : coord_header("final_x", dom.dim())) header.push_back(h);
  Table t{"paths.csv", header, {}};
  std::map<std::string, std::size_t> modes;
  std::vector<double> times;
  std::size_t coarse = 0;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto& p = paths[i];
    std::vector<std::string> row{num(i), num(p.exit_time), to_string(p.mode), num(p.final_clock),
                                 p.coarse_start ? "1" : "0"};
    append_coords(row, p.final_state);
    t.rows.push_back(std::move(row));
    ++modes[to_string(p.mode)];
    times.push_back(p.exited() ? p.exit_time : c.horizon);
    coarse += p.coarse_start ? 1 : 0;
  }
  c.tables.push_back(std::move(t));
  json m;
  for (const auto& [k, v] : modes) m[k] = static_cast<double>(v) / static_cast<double>(c.n);
  const double censored = modes.count("censored") ? m["censored"].get<double>() : 0.0;
  c.report["start"] = coords(x0);
  c.report["mode_fractions"] = m;
  c.report["coarse_start_fraction"] = static_cast<double>(coarse) / static_cast<double>(c.n);
  c.report["mean_exit_time"] = to_json(summarize(times, c.seed, "mean exit time (censored at horizon)"));
  if (const auto b = c.cfg.optional_number("band.censored_max"))
    c.check("censored fraction", censored <= *b, "censored = " + g6(censored) + " (limit " + g6(*b) + ")");
}

// survival --------------------------------------------------------------------

void run_survival(Ctx& c) {
  const Domain dom = make_domain(c.cfg);
  const auto e = make_exponent(c.cfg);
  const auto ts = c.cfg.numbers("t", {0.25});
  for (double t : ts)
    if (!(t > 0.0)) throw ConfigError(c.cfg.source() + ": 't' values must be positive");
  c.horizon = *std::max_element(ts.begin(), ts.end());
  const PathSampler ps = make_sampler(c, dom, c.horizon);
  const bool bm = e.degenerate() && ps.diffusion().is_identity();
  const auto starts = start_points(c, dom);

  auto header = std::vector<std::string>{"t", "delta"};
  for (const auto& h : coord_header("x", dom.dim())) header.push_back(h);
  for (const char* h : {"value", "stderr", "oracle", "z"}) header.push_back(h);
  Table tab{"survival.csv", header, {}};
  std::map<double, std::vector<Estimate>> by_t;
  std::vector<double> deltas, zs;
  for (const auto& st : starts) {
    deltas.push_back(st.delta);
    const auto exit = map_paths(c.n, c.exec, [&](std::size_t i) {
      Streams s = Streams::for_path(c.seed, i);
      const auto p = ps.subordinate(st.x, s);
      return p.exited() ? p.exit_time : kInf;
    });
    for (double t : ts) {
      std::vector<double> alive(exit.size());
      for (std::size_t i = 0; i < exit.size(); ++i) alive[i] = exit[i] > t ? 1.0 : 0.0;
      const Estimate est = summarize(alive, c.seed, "survival t=" + num(t) + " x=" + st.x.to_string());
      std::optional<double> ref;
      if (bm) ref = bm_survival(dom, t, st.x);
      const double z = ref ? est.z_score(*ref) : kNaN;
      zs.push_back(z);
      std::vector<std::string> row{num(t), num(st.delta)};
      append_coords(row, st.x);
      for (double v : {est.value, est.std_error, ref.value_or(kNaN), z}) row.push_back(num(v));
      tab.rows.push_back(std::move(row));
      by_t[t].push_back(est);
    }
  }
  c.tables.push_back(std::move(tab));
  check_oracle_z(c, zs);
  for (const auto& [t, v] : by_t) check_slope(c, "survival t=" + num(t), deltas, v, 1.0);
}

// exit-time -------------------------------------------------------------------

void run_exit_time(Ctx& c) {
  const Domain dom = make_domain(c.cfg);
  const auto e = make_exponent(c.cfg);
  c.horizon = c.cfg.positive("horizon", default_horizon(dom));
  const PathSampler ps = make_sampler(c, dom, c.horizon);
  const bool identity = ps.diffusion().is_identity();
  auto header = std::vector<std::string>{"delta"};
  for (const auto& h : coord_header("x", dom.dim())) header.push_back(h);
  for (const char* h : {"value", "stderr", "censored_fraction", "oracle_bm", "ratio", "z"}) header.push_back(h);
  Table tab{"exit_time.csv", header, {}};
  std::vector<double> ratios, zs, censored;
  for (const auto& st : start_points(c, dom)) {
    const auto est = estimate_mean_exit_time(ps, st.x, c.run());
    const auto ref = identity ? bm_exit_time(dom, st.x) : std::nullopt;
    const double ratio = ref ? est.estimate.value / *ref : kNaN;
    const double z = ref && e.degenerate() ? est.estimate.z_score(*ref) : kNaN;
    if (ref) ratios.push_back(ratio);
    zs.push_back(z);
    censored.push_back(est.censored_fraction);
    std::vector<std::string> row{num(st.delta)};
    append_coords(row, st.x);
    for (double v : {est.estimate.value, est.estimate.std_error, est.censored_fraction, ref.value_or(kNaN), ratio, z})
      row.push_back(num(v));
    tab.rows.push_back(std::move(row));
  }
  c.tables.push_back(std::move(tab));
  check_oracle_z(c, zs);
  if (const auto b = c.cfg.optional_number("band.ratio")) {
    if (ratios.empty()) {
      c.check("exit-time ratio band", false, "no Brownian reference for this domain");
    } else {
      const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
      c.check("exit-time ratio band", *hi / *lo <= *b,
              "ratios in [" + g6(*lo) + ", " + g6(*hi) + "], max/min " + g6(*hi / *lo) + " (limit " + g6(*b) + ")");
    }
  }
  if (const auto b = c.cfg.optional_number("band.censored_max")) {
    const double worst = *std::max_element(censored.begin(), censored.end());
    c.check("censored fraction", worst <= *b, "max censored = " + g6(worst) + " (limit " + g6(*b) + ")");
  }

  if (!c.cfg.has("scale_radii")) return;
  if (dom.kind() != ShapeKind::ball && dom.kind() != ShapeKind::interval)
    throw ConfigError(c.cfg.source() + ": 'scale_radii' needs a ball or an interval");
  const Point center = dom.kind() == ShapeKind::ball ? dom.center() : Point{0.5 * (dom.lo() + dom.hi())};
  Table sc{"exit_time_scaling.csv", {"r", "value", "stderr", "scaled", "scaled_stderr", "censored_fraction"}, {}};
  std::vector<double> scaled, scaled_se;
  for (double r : c.cfg.numbers("scale_radii")) {
    if (!(r > 0.0)) throw ConfigError(c.cfg.source() + ": 'scale_radii' values must be positive");
    const Domain d = dom.kind() == ShapeKind::ball ? Domain::ball(center, r)
                                                   : Domain::interval(center[0] - r, center[0] + r);
    const PathSampler pr = make_sampler(c, d, 50.0 * r * r);
    const auto est = estimate_mean_exit_time(pr, center, c.run());
    scaled.push_back(est.estimate.value / (r * r));
    scaled_se.push_back(est.estimate.std_error / (r * r));
    sc.rows.push_back({num(r), num(est.estimate.value), num(est.estimate.std_error), num(scaled.back()),
                       num(scaled_se.back()), num(est.censored_fraction)});
  }
  c.tables.push_back(std::move(sc));
  if (const auto b = c.cfg.optional_number("band.scaling_z")) {
    double worst = 0.0;
    for (std::size_t i = 0; i < scaled.size(); ++i)
      for (std::size_t j = i + 1; j < scaled.size(); ++j)
        worst = std::max(worst, std::abs(scaled[i] - scaled[j]) /
                                    std::sqrt(scaled_se[i] * scaled_se[i] + scaled_se[j] * scaled_se[j]));
    c.check("exit time / r^2 constant", worst <= *b,
            "max pairwise difference " + g6(worst) + " pooled stderr (limit " + g6(*b) + ")");
  }
}

// exit-dist -------------------------------------------------------------------

void run_exit_dist(Ctx& c) {
  const Domain dom = make_domain(c.cfg);
  const auto e = make_exponent(c.cfg);
  const double r = c.cfg.positive("r", 0.25);
  const Point z0 = point_at_delta(dom, 0.0);
  const Domain local = dom.localized(z0, r);
  c.horizon = c.cfg.positive("horizon", 50.0 * r * r);
  const PathSampler ps = make_sampler(c, local, c.horizon);
  const std::string region = c.cfg.str("region", "in_domain");
  if (region != "in_domain") throw ConfigError(c.cfg.source() + ": unknown region '" + region + "'; valid entries: in_domain");
  const Region in_domain = [&](const Point& y) { return dom.contains(y); };
  const bool arc_oracle = e.degenerate() && ps.diffusion().is_identity() && dom.kind() == ShapeKind::half_space &&
                          dom.dim() == 2;
  Table tab{"exit_dist.csv", {"delta", "delta_over_r", "value", "stderr", "oracle", "z"}, {}};
  std::vector<double> deltas, zs;
  std::vector<Estimate> vals;
  for (const auto& st : start_points(c, dom)) {
    if (!local.contains(st.x)) throw ConfigError(c.cfg.source() + ": start point outside D intersected with B(z0, r)");
    const Estimate est = estimate_exit_distribution(ps, st.x, in_domain, c.run());
    double ref = kNaN;
    if (arc_oracle) {
      const Point n = dom.normal();
      const Point v = st.x - z0;
      ref = oracle::half_disk_arc_measure(r, v[0] * n[1] - v[1] * n[0], dot(v, n));
    }
    const double z = std::isnan(ref) ? kNaN : est.z_score(ref);
    zs.push_back(z);
    deltas.push_back(st.delta);
    vals.push_back(est);
    tab.rows.push_back({num(st.delta), num(st.delta / r), num(est.value), num(est.std_error), num(ref), num(z)});
  }
  c.tables.push_back(std::move(tab));
  check_oracle_z(c, zs);
  check_slope(c, "exit to interior", deltas, vals, 1.0);
}

// density ---------------------------------------------------------------------

double stable1_free_density(double t, double r) {
  auto f = [&](double u) {
    return oracle::gaussian_kernel(t + u, Point{0.0}, Point{r}) * oracle::stable_subordinator_density(1.0, t, u);
  };
  return quad::checked(quad::exp_sinh(f, 0.0, 1e-10), 1e-7, 1e-300, "free density quadrature").value;
}

void run_density(Ctx& c) {
  const auto e = make_exponent(c.cfg);
  const std::string mode = c.cfg.str("density", "free");
  if (mode != "free" && mode != "Z" && mode != "Y")
    throw ConfigError(c.cfg.source() + ": unknown density '" + mode + "'; valid entries: free, Z, Y");
  const auto ts = c.cfg.numbers("t", {0.5});
  const auto offsets = c.cfg.numbers("y_offset", {0.0, 0.5, 1.0});
  const int dim = c.cfg.integer("dim", 1);
  std::optional<Domain> dom;
  Point x(dim);
  if (mode == "free") {
    if (c.cfg.has("x")) {
      const auto v = c.cfg.numbers("x");
      if (static_cast<int>(v.size()) != dim) throw ConfigError(c.cfg.source() + ": 'x' needs one point");
      for (int i = 0; i < dim; ++i) x[i] = v[i];
    }
  } else {
    dom = make_domain(c.cfg);
    x = start_points(c, *dom).front().x;
    if (mode == "Z" && !has_killed_kernel(*dom))
      throw ConfigError(c.cfg.source() + ": density Z needs an interval or a half-space");
  }
  std::vector<Point> ys;
  for (double o : offsets) {
    Point y = x;
    y[0] += o;
    if (dom && !dom->contains(y)) throw ConfigError(c.cfg.source() + ": y = " + y.to_string() + " is not in D");
    ys.push_back(y);
  }
  const bool identity = make_diffusion(c.cfg, dim).is_identity();
  auto header = std::vector<std::string>{"t"};
  for (const auto& h : coord_header("x", dim)) header.push_back(h);
  for (const auto& h : coord_header("y", dim)) header.push_back(h);
  for (const char* h : {"value", "stderr", "bandwidth", "sensitivity", "reliable", "oracle", "z"}) header.push_back(h);
  Table tab{"density.csv", header, {}};
  std::vector<double> zs;
  bool all_reliable = true;
  c.horizon = *std::max_element(ts.begin(), ts.end());
  for (double t : ts) {
    if (!(t > 0.0)) throw ConfigError(c.cfg.source() + ": 't' values must be positive");
    std::vector<DensityEstimate> est;
    if (mode == "free") est = estimate_density_free(e, t, x, ys, c.run());
    else if (mode == "Z") est = estimate_density_Z(e, *dom, t, x, ys, c.run());
    else est = estimate_density_Y(make_sampler(c, *dom, t), x, ys, c.run());
    for (std::size_t k = 0; k < ys.size(); ++k) {
      double ref = kNaN;
      if (identity && e.degenerate())
        ref = mode == "free" ? oracle::gaussian_kernel(t, x, ys[k]) : oracle::killed_bm_kernel(*dom, t, x, ys[k]);
      else if (identity && mode == "free" && dim == 1 && e.kind() == ExponentKind::stable && e.beta() == 1.0)
        ref = stable1_free_density(t, distance(x, ys[k]));
      const double z = std::isnan(ref) ? kNaN : est[k].estimate.z_score(ref);
      zs.push_back(z);
      all_reliable = all_reliable && est[k].reliable;
      std::vector<std::string> row{num(t)};
      append_coords(row, x);
      append_coords(row, ys[k]);
      for (double v : {est[k].estimate.value, est[k].estimate.std_error, est[k].bandwidth, est[k].sensitivity})
        row.push_back(num(v));
      row.push_back(est[k].reliable ? "1" : "0");
      row.push_back(num(ref));
      row.push_back(num(z));
      tab.rows.push_back(std::move(row));
    }
  }
  c.tables.push_back(std::move(tab));
  c.report["estimator"] = mode == "free" ? "conditional Gaussian" : mode == "Z" ? "conditional killed kernel"
                                                                                 : "Gaussian kernel smoothing";
  check_oracle_z(c, zs);
  if (c.cfg.has("band.reliable"))
    c.check("bandwidth sensitivity", all_reliable, all_reliable ? "all estimates within 20%" : "some estimates flagged");
}

// green / verify-C1 -------------------------------------------------------------

double integrate_over(const std::function<double(double)>& f, double lo, double hi, double split) {
  auto piece = [&](double a, double b) { return b > a ? quad::gauss_kronrod(f, a, b, 1e-10).value : 0.0; };
  if (split > lo && split < hi) return piece(lo, split) + piece(split, hi);
  return piece(lo, hi);
}

void run_green(Ctx& c, bool verify) {
  const Domain dom = make_domain(c.cfg);
  const auto e = make_exponent(c.cfg);
  c.horizon = c.cfg.positive("horizon", default_horizon(dom));
  const PathSampler ps = make_sampler(c, dom, c.horizon);
  const std::string mode = c.cfg.str("green_mode", dom.kind() == ShapeKind::interval ? "occupation" : "radial");

  if (mode == "occupation") {
    if (dom.kind() != ShapeKind::interval) throw ConfigError(c.cfg.source() + ": occupation mode needs an interval");
    std::vector<double> lo, hi;
    if (c.cfg.has("region_lo") || c.cfg.has("region_hi")) {
      lo = c.cfg.numbers("region_lo");
      hi = c.cfg.numbers("region_hi");
      if (lo.size() != hi.size()) throw ConfigError(c.cfg.source() + ": region_lo and region_hi differ in length");
    } else {
      const double w = (dom.hi() - dom.lo()) / 5.0;
      for (int k = 0; k < 5; ++k) {
        lo.push_back(dom.lo() + k * w);
        hi.push_back(dom.lo() + (k + 1) * w);
      }
    }
    const bool bm = e.degenerate() && ps.diffusion().is_identity();
    Table tab{"green.csv", {"x", "region_lo", "region_hi", "value", "stderr", "censored_fraction", "envelope_integral",
                            "ratio", "oracle", "z"}, {}};
    std::vector<Estimate> vals;
    std::vector<double> env, zs;
    for (const auto& st : start_points(c, dom)) {
      const double x = st.x[0];
      for (std::size_t k = 0; k < lo.size(); ++k) {
        const double a = lo[k], b = hi[k];
        const auto est = estimate_green(ps, st.x, [&](const Point& y) { return y[0] >= a && y[0] < b; }, c.run());
        const double g = integrate_over([&](double y) { return g_envelope(dom, st.x, Point{y}); }, a, b, x);
        const double ref =
            bm ? integrate_over([&](double y) { return oracle::interval_green(dom.lo(), dom.hi(), x, y); }, a, b, x)
               : kNaN;
        const double z = std::isnan(ref) ? kNaN : est.estimate.z_score(ref);
        zs.push_back(z);
        vals.push_back(est.estimate);
        env.push_back(g);
        tab.rows.push_back({num(x), num(a), num(b), num(est.estimate.value), num(est.estimate.std_error),
                            num(est.censored_fraction), num(g), num(est.estimate.value / g), num(ref), num(z)});
      }
    }
    c.tables.push_back(std::move(tab));
    check_oracle_z(c, zs);
    const auto limit = verify ? c.cfg.number("band.limit", 10.0) : c.cfg.optional_number("band.limit").value_or(kInf);
    const auto rep = fit_comparability(vals, env, limit);
    c.report["comparability"] = to_json(rep);
    if (verify || c.cfg.has("band.limit"))
      c.check("occupation vs Green envelope band", rep.pass,
              "C_high/C_low = " + g6(rep.band) + " (limit " + g6(limit) + "), excluded " +
                  std::to_string(rep.excluded));
    return;
  }
  if (mode != "radial")
    throw ConfigError(c.cfg.source() + ": unknown green_mode '" + mode + "'; valid entries: occupation, radial");
  const Point x = c.cfg.has("x") ? start_points(c, dom).front().x : default_start(dom);
  const auto radii = c.cfg.numbers("radii", {0.05, 0.075, 0.1, 0.15, 0.2, 0.3});
  const double hw = c.cfg.positive("half_width", 0.02);
  const auto est = estimate_green_radial(ps, x, radii, hw, c.run());
  Table tab{"green_radial.csv", {"radius", "value", "stderr", "sensitivity", "envelope", "ratio"}, {}};
  std::vector<Estimate> vals;
  std::vector<double> env;
  for (const auto& g : est) {
    Point y = x;
    y[0] += g.radius;
    const double gv = g_envelope(dom, x, y);
    vals.push_back(g.estimate);
    env.push_back(gv);
    tab.rows.push_back({num(g.radius), num(g.estimate.value), num(g.estimate.std_error), num(g.sensitivity), num(gv),
                        num(g.estimate.value / gv)});
  }
  c.tables.push_back(std::move(tab));
  c.report["center"] = coords(x);
  check_slope(c, "green radial", radii, vals, 2.0 - dom.dim(), verify ? std::optional<double>(0.15) : std::nullopt);
  if (c.cfg.has("band.limit")) {
    const auto rep = fit_comparability(vals, env, c.cfg.number("band.limit"));
    c.report["comparability"] = to_json(rep);
    c.check("radial Green vs envelope band", rep.pass, "C_high/C_low = " + g6(rep.band));
  }
}

// verify-T0 / verify-T1 -------------------------------------------------------

void add_band_items(Ctx& c, const ComparabilityReport& a, const ComparabilityReport& b, double stability) {
  c.report["comparability"] = to_json(a);
  c.report["comparability_2n"] = to_json(b);
  c.check("envelope band", a.pass,
          "C_high/C_low = " + g6(a.band) + " (limit " + g6(a.band_limit) + "), excluded " + std::to_string(a.excluded) +
              " of " + std::to_string(a.ratios.size()));
  const bool stable = band_stable(a, b, stability);
  c.check("band stable under doubling n", stable,
          "band " + g6(a.band) + " at n, " + g6(b.band) + " at 2n (tolerance " + g6(stability) + ")");
}

void run_verify_t0(Ctx& c) {
  const auto e = make_exponent(c.cfg);
  const auto p = make_envelope(c.cfg);
  const int dim = c.cfg.integer("dim", 1);
  const auto ts = c.cfg.numbers("t", {0.01, 0.05, 0.2, 1.0});
  const auto dists = c.cfg.numbers("distance", {0.0, 0.1, 0.5, 1.0, 2.0, 3.0});
  const Point x(dim);
  std::vector<Point> ys;
  for (double r : dists) {
    Point y(dim);
    y[0] = r;
    ys.push_back(y);
  }
  std::vector<Estimate> v1, v2;
  std::vector<double> env;
  for (double t : ts) {
    const auto a = estimate_density_free(e, t, x, ys, c.run());
    const auto b = estimate_density_free(e, t, x, ys, c.run(2 * c.n));
    for (std::size_t k = 0; k < ys.size(); ++k) {
      v1.push_back(a[k].estimate);
      v2.push_back(b[k].estimate);
      env.push_back(p.C * interior_bracket(e, p, t, x, ys[k]));
    }
  }
  const double limit = c.cfg.number("band.limit", 1e3);
  const auto r1 = fit_comparability(v1, env, limit);
  const auto r2 = fit_comparability(v2, env, limit);
  Table tab{"t0.csv", {"t", "distance", "value", "stderr", "value_2n", "stderr_2n", "envelope", "ratio"}, {}};
  for (std::size_t i = 0; i < v1.size(); ++i)
    tab.rows.push_back({num(ts[i / dists.size()]), num(dists[i % dists.size()]), num(v1[i].value),
                        num(v1[i].std_error), num(v2[i].value), num(v2[i].std_error), num(env[i]), num(r1.ratios[i])});
  c.tables.push_back(std::move(tab));
  c.horizon = *std::max_element(ts.begin(), ts.end());
  add_band_items(c, r1, r2, c.cfg.number("band.stability", 0.2));
}

void run_verify_t1(Ctx& c) {
  const Domain dom = make_domain(c.cfg);
  const auto e = make_exponent(c.cfg);
  const auto p = make_envelope(c.cfg);
  const std::string mode = c.cfg.str("density", "Y");
  if (mode != "Y" && mode != "Z") throw ConfigError(c.cfg.source() + ": unknown density '" + mode + "'; valid entries: Y, Z");
  if (mode == "Z" && !has_killed_kernel(dom)) throw ConfigError(c.cfg.source() + ": density Z needs an interval or a half-space");
  const auto ts = c.cfg.numbers("t", {0.05, 0.1, 0.2, 0.4});
  const auto xs = start_points(c, dom);
  std::vector<Point> ys;
  for (double d : c.cfg.numbers("y_delta", {0.02, 0.05, 0.1, 0.25, 0.5})) ys.push_back(point_at_delta(dom, d));
  std::vector<Estimate> v1, v2;
  std::vector<double> env;
  Table tab{"t1.csv", {"t", "x_delta", "y_delta", "value", "stderr", "value_2n", "stderr_2n", "sensitivity",
                       "envelope"}, {}};
  for (double t : ts) {
    const PathSampler ps = make_sampler(c, dom, t);
    for (const auto& st : xs) {
      const auto a = mode == "Y" ? estimate_density_Y(ps, st.x, ys, c.run())
                                 : estimate_density_Z(e, dom, t, st.x, ys, c.run());
      const auto b = mode == "Y" ? estimate_density_Y(ps, st.x, ys, c.run(2 * c.n))
                                 : estimate_density_Z(e, dom, t, st.x, ys, c.run(2 * c.n));
      for (std::size_t k = 0; k < ys.size(); ++k) {
        const double h = h_envelope(dom, e, p, t, st.x, ys[k]);
        v1.push_back(a[k].estimate);
        v2.push_back(b[k].estimate);
        env.push_back(h);
        tab.rows.push_back({num(t), num(st.delta), num(dom.delta(ys[k])), num(a[k].estimate.value),
                            num(a[k].estimate.std_error), num(b[k].estimate.value), num(b[k].estimate.std_error),
                            num(a[k].sensitivity), num(h)});
      }
    }
  }
  c.tables.push_back(std::move(tab));
  c.horizon = *std::max_element(ts.begin(), ts.end());
  const double limit = c.cfg.optional_number("band.limit").value_or(kInf);
  const auto r1 = fit_comparability(v1, env, limit);
  const auto r2 = fit_comparability(v2, env, limit);
  if (c.cfg.has("band.limit")) {
    add_band_items(c, r1, r2, c.cfg.number("band.stability", 0.2));
  } else {
    c.report["comparability"] = to_json(r1);
    c.report["comparability_2n"] = to_json(r2);
  }
}

// oracle-checks ---------------------------------------------------------------

void run_oracle_checks(Ctx& c) {
  const auto e = make_exponent(c.cfg);
  const Domain unit = Domain::interval(0.0, 1.0);
  c.report["exponent"] = e.name();

  const double seam = oracle::interval_seam_disagreement(0.0, 1.0);
  const double seam_tol = c.cfg.number("band.seam_tol", 1e-10);
  c.check("interval series seam", seam <= seam_tol, "disagreement " + g6(seam) + " (limit " + g6(seam_tol) + ")");

  const std::vector<double> g5 = {0.1, 0.3, 0.5, 0.7, 0.9};
  Table green{"oracle_green.csv", {"x", "y", "unit_potential_occupation", "interval_green", "relative_error"}, {}};
  double worst = 0.0;
  for (double x : g5)
    for (double y : g5) {
      if (x == y) continue;
      const double u = oracle::potential_occupation(unit, e, Point{x}, Point{y}, true);
      const double g = oracle::interval_green(0.0, 1.0, x, y);
      worst = std::max(worst, std::abs(u - g) / g);
      green.rows.push_back({num(x), num(y), num(u), num(g), num(std::abs(u - g) / g)});
    }
  c.tables.push_back(std::move(green));
  const double green_tol = c.cfg.number("band.green_tol", 1e-8);
  c.check("killed-kernel time integral reproduces the Green function", worst <= green_tol,
          "max relative error " + g6(worst) + " (limit " + g6(green_tol) + ")");

  bool dominated = true;
  for (double t : {0.01, 0.1, 1.0})
    for (double x : g5)
      for (double y : g5)
        dominated = dominated && oracle::killed_bm_kernel(unit, t, Point{x}, Point{y}) <=
                                     oracle::gaussian_kernel(t, Point{x}, Point{y}) * (1.0 + 1e-12);
  c.check("killed kernel below free kernel", dominated, "grid t in {0.01, 0.1, 1}, 5x5 points");

  if (e.degenerate()) {
    c.report["note"] = "jump-kernel checks skipped: the exponent has no jump part";
    return;
  }

  Table psi{"oracle_psi.csv", {"r", "psi", "psi0", "tail_integral", "ratio"}, {}};
  double rlo = kInf, rhi = 0.0;
  for (double r : log_grid(1e-3, 0.9, 25)) {
    const double ps = 1.0 / eval_H(e, 1.0 / (r * r));
    const double integral = psi_inverse_integral(e, r, 1.0);
    const double ratio = ps * integral;
    rlo = std::min(rlo, ratio);
    rhi = std::max(rhi, ratio);
    psi.rows.push_back({num(r), num(ps), num(r * r / ps), num(integral), num(ratio)});
  }
  c.tables.push_back(std::move(psi));
  const double plo = c.cfg.number("band.psi_ratio_lo", 0.05), phi_ = c.cfg.number("band.psi_ratio_hi", 20.0);
  c.check("psi(r) times int_r^1 ds/(s psi(s)) bounded", rlo >= plo && rhi <= phi_,
          "range [" + g6(rlo) + ", " + g6(rhi) + "] (allowed [" + g6(plo) + ", " + g6(phi_) + "])");
  const double p4 = 1e-8 * eval_H(e, 1e8), p2 = 1e-4 * eval_H(e, 1e4);
  c.check("psi0 vanishes at 0", p4 < p2 / 10.0, "psi0(1e-4) = " + g6(p4) + ", psi0(1e-2) = " + g6(p2));

  if (e.closed_form_levy_density()) {
    Table rk{"oracle_resurrection.csv", {"y", "z", "q", "j_min", "ratio", "J"}, {}};
    double cfit = 0.0;
    bool below_J = true;
    for (int i = 1; i <= 10; ++i)
      for (int k = 1; k <= 10; ++k) {
        if (i == k) continue;
        const double y = i / 11.0, z = k / 11.0;
        const double q = oracle::resurrection_kernel(unit, e, y, z);
        const double J = oracle::jump_kernel(e, std::abs(y - z), 1);
        const double jm = oracle::jump_kernel(e, std::max(std::abs(y - z), std::min(z, 1.0 - z)), 1);
        cfit = std::max(cfit, q / jm);
        below_J = below_J && q <= J * (1.0 + 1e-8);
        rk.rows.push_back({num(y), num(z), num(q), num(jm), num(q / jm), num(J)});
      }
    c.tables.push_back(std::move(rk));
    c.report["resurrection_constant"] = cfit;
    c.check("resurrection kernel bound", std::isfinite(cfit) && below_J,
            "fitted constant " + g6(cfit) + (below_J ? ", q <= J everywhere" : ", q > J somewhere"));
  }

  Table pot{"oracle_potential.csv", {"r", "x", "y", "occupation", "green", "ratio"}, {}};
  double ulo = kInf, uhi = 0.0;
  const std::vector<double> g4 = {0.2, 0.4, 0.6, 0.8};
  for (double r : {1.0, 0.5, 0.25}) {
    const Domain d = Domain::interval(0.0, r);
    for (double x : g4)
      for (double y : g4) {
        if (x == y) continue;
        const double u = oracle::potential_occupation(d, e, Point{r * x}, Point{r * y});
        const double g = oracle::interval_green(0.0, r, r * x, r * y);
        ulo = std::min(ulo, u / g);
        uhi = std::max(uhi, u / g);
        pot.rows.push_back({num(r), num(r * x), num(r * y), num(u), num(g), num(u / g)});
      }
  }
  c.tables.push_back(std::move(pot));
  const double ulim = c.cfg.number("band.potential_ratio", 10.0);
  c.check("occupation density vs Green function across scales", uhi / ulo <= ulim,
          "ratios in [" + g6(ulo) + ", " + g6(uhi) + "], max/min " + g6(uhi / ulo) + " (limit " + g6(ulim) + ")");
}

// output ----------------------------------------------------------------------

void write_text(const fs::path& p, const std::string& s) {
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << s;
}

}  // namespace

const char* artifact_version() { return SUBDIFF_VERSION; }

const std::vector<std::string>& experiment_kinds() {
  static const std::vector<std::string> kinds = {"bf-diagnostics", "simulate",  "survival",  "exit-time",
                                                 "exit-dist",      "density",   "green",     "verify-T0",
                                                 "verify-T1",      "verify-C1", "oracle-checks"};
  return kinds;
}

bool RunResult::ok() const {
  return std::all_of(items.begin(), items.end(), [](const AcceptanceItem& i) { return i.pass; });
}

RunResult run_experiment(Config cfg, const RunOptions& opt) {
  if (opt.seed) cfg.set("seed", std::to_string(*opt.seed));
  cfg.require_known(kKnownKeys);
  const std::string kind = cfg.str("kind");
  if (std::find(experiment_kinds().begin(), experiment_kinds().end(), kind) == experiment_kinds().end()) {
    std::string valid;
    for (const auto& k : experiment_kinds()) valid += (valid.empty() ? "" : ", ") + k;
    throw ConfigError(cfg.source() + ": unknown kind '" + kind + "'; valid entries: " + valid);
  }
  Ctx c(cfg, kind, Exec::parallel(opt.workers));
  c.seed = cfg.u64("seed", 1);
  const double n = cfg.positive("n", 10000);
  if (n < 100 || n != std::floor(n)) throw ConfigError(cfg.source() + ": 'n' must be an integer >= 100");
  c.n = static_cast<std::size_t>(n);
  c.dt = cfg.positive("dt", 1e-3);
  c.hash = cfg.hash_hex();
  c.report = json::object();
  c.report["kind"] = kind;
  c.report["version"] = artifact_version();
  c.report["config_hash"] = c.hash;
  c.report["seed"] = c.seed;
  c.report["n"] = c.n;
  c.report["dt"] = c.dt;

  static const std::map<std::string, std::function<void(Ctx&)>> dispatch = {
      {"bf-diagnostics", run_bf},
      {"simulate", run_simulate},
      {"survival", run_survival},
      {"exit-time", run_exit_time},
      {"exit-dist", run_exit_dist},
      {"density", run_density},
      {"green", [](Ctx& x) { run_green(x, false); }},
      {"verify-T0", run_verify_t0},
      {"verify-T1", run_verify_t1},
      {"verify-C1", [](Ctx& x) { run_green(x, true); }},
      {"oracle-checks", run_oracle_checks},
  };
  dispatch.at(kind)(c);

  c.report["horizon"] = c.horizon;
  json config = json::object();
  for (const auto& [k, v] : cfg.entries())
    if (k != "out" && k != "workers") config[k] = v.value;
  c.report["config"] = config;
  json items = json::array();
  for (const auto& i : c.items) items.push_back({{"name", i.name}, {"pass", i.pass}, {"detail", i.detail}});
  c.report["acceptance"] = items;

  fs::create_directories(opt.out);
  RunResult result;
  result.items = c.items;
  const std::vector<std::string> meta = {c.hash, std::to_string(c.seed), std::to_string(c.n), num(c.dt),
                                         artifact_version()};
  for (const auto& t : c.tables) {
    std::string s;
    auto line = [&](const std::vector<std::string>& cells, const std::vector<std::string>& tail) {
      std::string l;
      for (const auto& x : cells) l += (l.empty() ? "" : ",") + x;
      for (const auto& x : tail) l += "," + x;
      s += l + "\n";
    };
    line(t.header, {"config_hash", "seed", "n", "dt", "version"});
    for (const auto& r : t.rows) line(r, meta);
    write_text(opt.out / t.file, s);
    result.files.push_back(opt.out / t.file);
  }
  write_text(opt.out / "report.json", c.report.dump(2) + "\n");
  result.files.push_back(opt.out / "report.json");

  std::string summary = "kind: " + kind + "\nversion: " + artifact_version() + "\nconfig_hash: " + c.hash +
                        "\nseed: " + std::to_string(c.seed) + "\nn: " + std::to_string(c.n) + "\ndt: " + num(c.dt) +
                        "\n";
  if (!std::isnan(c.horizon)) summary += "horizon: " + num(c.horizon) + "\n";
  for (const auto& i : c.items) summary += std::string(i.pass ? "PASS " : "FAIL ") + i.name + ": " + i.detail + "\n";
  if (c.items.empty()) summary += "no acceptance bands configured\n";
  summary += std::string("result: ") + (result.ok() ? "PASS" : "FAIL") + "\n";
  write_text(opt.out / "summary.txt", summary);
  result.files.push_back(opt.out / "summary.txt");
  return result;
}

}  // namespace subdiff
