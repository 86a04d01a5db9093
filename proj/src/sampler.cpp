#include "subdiff/sampler.hpp"

#include <cmath>
#include <stdexcept>

namespace subdiff {
namespace {

std::size_t step_count(double horizon, double dt) {
  if (!(dt > 0.0) || !(horizon > 0.0)) throw std::invalid_argument("sampler: dt and horizon must be positive");
  return static_cast<std::size_t>(std::max(1.0, std::ceil(horizon / dt - 1e-9)));
}

double step_length(std::size_t k, std::size_t n, double horizon, double dt) {
  return k + 1 < n ? dt : horizon - dt * static_cast<double>(n - 1);
}

void record(PathRealization& p, bool on, double t, const Point& x, double clock) {
  if (!on) return;
  p.times.push_back(t);
  p.states.push_back(x);
  p.clock.push_back(clock);
}

}  // namespace

const char* to_string(ExitMode m) {
  switch (m) {
    case ExitMode::continuous: return "continuous";
    case ExitMode::jump: return "jump";
    case ExitMode::censored: return "censored";
    case ExitMode::clock_jump: return "clock_jump";
  }
  return "unknown";
}

Streams Streams::for_path(std::uint64_t master, std::uint64_t index) {
  return Streams{make_stream(master, StreamTag::diffusion, index), make_stream(master, StreamTag::subordinator, index),
                 std::normal_distribution<double>(0.0, 1.0), std::uniform_real_distribution<double>(0.0, 1.0)};
}

PathSampler::PathSampler(DiffusionSpec diffusion, LaplaceExponent e, Domain dom, PathOptions opt)
    : spec_(diffusion), e_(e), dom_(std::move(dom)), opt_(opt), jumps_(e, opt.dt) {
  if (spec_.dim() != dom_.dim()) throw std::invalid_argument("PathSampler: diffusion and domain dimensions differ");
  if (!(opt_.dt > 0.0) || !(opt_.horizon > 0.0)) throw std::invalid_argument("PathSampler: dt and horizon must be positive");
  if (opt_.max_jump_substeps < 1) throw std::invalid_argument("PathSampler: max_jump_substeps must be >= 1");
}

PathSampler PathSampler::recording(bool on) const {
  PathSampler c = *this;
  c.opt_.record = on;
  return c;
}

void PathSampler::check_start(const Point& x0) const {
  if (x0.dim() != dom_.dim()) throw std::invalid_argument("sampler: start point has the wrong dimension");
  if (!dom_.contains(x0)) throw std::invalid_argument("sampler: start point " + x0.to_string() + " is not in D");
}

Point PathSampler::displace(const Point& x, double h, Streams& s) const {
  Point y = x;
  const double sh = std::sqrt(h);
  if (spec_.is_identity()) {
    for (int i = 0; i < y.dim(); ++i) y[i] += sh * s.normal(s.diffusion);
    return y;
  }
  const Point b = spec_.drift(x);
  for (int i = 0; i < y.dim(); ++i) y[i] += b[i] * h + std::sqrt(spec_.a(x, i)) * sh * s.normal(s.diffusion);
  return y;
}

PathSampler::Step PathSampler::continuous_step(const Point& x, double h, Streams& s) const {
  Step st;
  st.x = displace(x, h, s);
  const double u = s.uniform(s.diffusion);  // drawn unconditionally so coupled runs stay aligned
  const double d1 = dom_.delta(x);
  if (!dom_.contains(st.x)) {
    const double d2 = dom_.boundary_distance(st.x);
    st.killed = true;
    st.fraction = d1 + d2 > 0.0 ? d1 / (d1 + d2) : 0.0;
    st.exit_location = dom_.project(x + st.fraction * (st.x - x));
    st.crossing_probability = 1.0;
    return st;
  }
  const double d2 = dom_.delta(st.x);
  double sigma2 = 1.0;
  if (!spec_.is_identity()) sigma2 = spec_.quadratic_form(x, dom_.inward_normal(dom_.project(x)));
  st.crossing_probability = std::exp(-2.0 * d1 * d2 / (sigma2 * h));
  if (u < st.crossing_probability) {
    st.killed = true;
    st.fraction = d1 / (d1 + d2);
    st.exit_location = dom_.project(x + st.fraction * (st.x - x));
  }
  return st;
}

PathRealization PathSampler::killed_diffusion(const Point& x0, double clock, Streams& s) const {
  check_start(x0);
  PathRealization p;
  const std::size_t n = step_count(clock, opt_.dt);
  Point x = x0;
  record(p, opt_.record, 0.0, x, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double t0 = opt_.dt * static_cast<double>(k);
    const double h = step_length(k, n, clock, opt_.dt);
    const Step st = continuous_step(x, h, s);
    if (k == 0 && st.crossing_probability > 0.5) p.coarse_start = true;
    if (st.killed) {
      p.exit_time = t0 + st.fraction * h;
      p.mode = ExitMode::continuous;
      p.exit_location = st.exit_location;
      p.final_state = st.exit_location;
      p.final_clock = p.exit_time;
      return p;
    }
    x = st.x;
    record(p, opt_.record, t0 + h, x, t0 + h);
  }
  p.final_state = x;
  p.final_clock = clock;
  return p;
}

PathRealization PathSampler::subordinate(const Point& x0, Streams& s) const {
  check_start(x0);
  PathRealization p;
  const std::size_t n = step_count(opt_.horizon, opt_.dt);
  Point x = x0;
  double clock = 0.0;
  record(p, opt_.record, 0.0, x, clock);
  for (std::size_t k = 0; k < n; ++k) {
    const double t0 = opt_.dt * static_cast<double>(k);
    const double h = step_length(k, n, opt_.horizon, opt_.dt);
    const Step st = continuous_step(x, h, s);
    if (k == 0 && st.crossing_probability > 0.5) p.coarse_start = true;
    if (st.killed) {
      p.exit_time = t0 + st.fraction * h;
      p.mode = ExitMode::continuous;
      p.exit_location = st.exit_location;
      p.final_state = st.exit_location;
      p.final_clock = clock + st.fraction * h;
      return p;
    }
    clock += h;
    x = st.x;
    const double j = jumps_.draw(s.subordinator, h);
    if (j > 0.0) {
      x = displace(x, j, s);
      clock += j;
      if (!dom_.contains(x)) {
        p.exit_time = t0 + h;
        p.mode = ExitMode::jump;
        p.exit_location = x;
        p.final_state = x;
        p.final_clock = clock;
        return p;
      }
    }
    record(p, opt_.record, t0 + h, x, clock);
  }
  p.final_state = x;
  p.final_clock = clock;
  return p;
}

CoupledPaths PathSampler::coupled(const Point& x0, Streams& s) const {
  check_start(x0);
  CoupledPaths out;
  PathRealization& y = out.y;
  PathRealization& z = out.z;
  const std::size_t n = step_count(opt_.horizon, opt_.dt);
  Point x = x0;
  double clock = 0.0;
  bool z_alive = true;
  record(y, opt_.record, 0.0, x, clock);

  auto kill_z = [&](double t, ExitMode mode, const Point& where, double at_clock) {
    z.exit_time = t;
    z.mode = mode;
    z.exit_location = where;
    z.final_state = where;
    z.final_clock = at_clock;
    z_alive = false;
    if (opt_.record) {
      z.times = y.times;
      z.states = y.states;
      z.clock = y.clock;
    }
  };

  for (std::size_t k = 0; k < n; ++k) {
    const double t0 = opt_.dt * static_cast<double>(k);
    const double h = step_length(k, n, opt_.horizon, opt_.dt);
    const Step st = continuous_step(x, h, s);
    if (k == 0 && st.crossing_probability > 0.5) y.coarse_start = z.coarse_start = true;
    if (st.killed) {
      y.exit_time = t0 + st.fraction * h;
      y.mode = ExitMode::continuous;
      y.exit_location = st.exit_location;
      y.final_state = st.exit_location;
      y.final_clock = clock + st.fraction * h;
      if (z_alive) kill_z(y.exit_time, ExitMode::continuous, st.exit_location, y.final_clock);
      return out;
    }
    clock += h;
    x = st.x;
    const double j = jumps_.draw(s.subordinator, h);
    if (j > 0.0) {
      if (z_alive) {
        // follow X through the clock interval [S_{t-}, S_t] until it first leaves D
        const double hs_min = std::max(opt_.dt, j / opt_.max_jump_substeps);
        const auto m = static_cast<std::size_t>(std::ceil(j / hs_min - 1e-12));
        const double hs = j / static_cast<double>(m);
        for (std::size_t i = 0; i < m; ++i) {
          const Step sub = continuous_step(x, hs, s);
          x = sub.x;
          if (sub.killed) {
            kill_z(t0 + h, ExitMode::clock_jump, sub.exit_location, clock + (i + sub.fraction) * hs);
            const double rest = hs * static_cast<double>(m - i - 1);
            if (rest > 0.0) x = displace(x, rest, s);
            break;
          }
        }
      } else {
        x = displace(x, j, s);
      }
      clock += j;
      if (!dom_.contains(x)) {
        y.exit_time = t0 + h;
        y.mode = ExitMode::jump;
        y.exit_location = x;
        y.final_state = x;
        y.final_clock = clock;
        if (z_alive) kill_z(y.exit_time, ExitMode::jump, x, clock);
        return out;
      }
    }
    record(y, opt_.record, t0 + h, x, clock);
  }
  y.final_state = x;
  y.final_clock = clock;
  if (z_alive) {
    z.final_state = x;
    z.final_clock = clock;
    if (opt_.record) {
      z.times = y.times;
      z.states = y.states;
      z.clock = y.clock;
    }
  }
  return out;
}

double PathSampler::clock_at(double t, Streams& s) const {
  const std::size_t n = step_count(t, opt_.dt);
  double clock = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double h = step_length(k, n, t, opt_.dt);
    clock += h + jumps_.draw(s.subordinator, h);
  }
  return clock;
}

PathRealization sample_killed_diffusion(const DiffusionSpec& diffusion, const Domain& dom, const Point& x0, double clock,
                                        double dt, Streams& s) {
  PathOptions opt;
  opt.dt = dt;
  opt.horizon = clock;
  return PathSampler(diffusion, LaplaceExponent::drift_only(), dom, opt).killed_diffusion(x0, clock, s);
}

PathRealization sample_Y(const DiffusionSpec& diffusion, const LaplaceExponent& e, const Domain& dom, const Point& x0,
                         double horizon, double dt, Streams& s) {
  PathOptions opt;
  opt.dt = dt;
  opt.horizon = horizon;
  return PathSampler(diffusion, e, dom, opt).subordinate(x0, s);
}

PathRealization sample_Z_D(const DiffusionSpec& diffusion, const LaplaceExponent& e, const Domain& dom, const Point& x0,
                           double horizon, double dt, Streams& s) {
  PathOptions opt;
  opt.dt = dt;
  opt.horizon = horizon;
  return PathSampler(diffusion, e, dom, opt).sample_Z_D(x0, s);
}

}  // namespace subdiff
