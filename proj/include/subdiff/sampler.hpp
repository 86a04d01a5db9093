#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "subdiff/bernstein.hpp"
#include "subdiff/diffusion.hpp"
#include "subdiff/domain.hpp"
#include "subdiff/rng.hpp"
#include "subdiff/subordinator.hpp"

namespace subdiff {

enum class ExitMode {
  continuous,  ///< left D along a continuous segment (bridge crossing or endpoint outside)
  jump,        ///< landed outside D after a clock jump
  censored,    ///< still alive at the horizon
  clock_jump,  ///< Z^D only: the diffusion left D inside a clock jump while Y may survive it
};

const char* to_string(ExitMode m);

struct PathRealization {
  std::vector<double> times;   ///< recorded step times (when recording)
  std::vector<Point> states;   ///< recorded states, states[k] at times[k]
  std::vector<double> clock;   ///< operational clock S at times[k] (subordinate paths)
  double exit_time = std::numeric_limits<double>::infinity();
  Point exit_location;
  ExitMode mode = ExitMode::censored;
  Point final_state;           ///< state at exit, or at the horizon when censored
  double final_clock = 0.0;
  bool coarse_start = false;   ///< bridge crossing probability above 1/2 on the first step

  bool exited() const { return mode != ExitMode::censored; }
  bool alive_at(double t) const { return exit_time > t; }
};

struct CoupledPaths {
  PathRealization y;  ///< killed subordinate process Y^D
  PathRealization z;  ///< subordinate killed process Z^D, a subprocess of y
};

/// Independent random sources of one path. Seeds follow stream_seed(master, tag, index).
struct Streams {
  Rng diffusion;
  Rng subordinator;
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform;

  static Streams for_path(std::uint64_t master, std::uint64_t index);
};

struct PathOptions {
  double dt = 1e-3;
  double horizon = 1.0;
  bool record = false;
  /// Substep cap for tracking the diffusion inside one clock jump (coupled mode).
  int max_jump_substeps = 4096;
};

/// Path sampler for X^D, Y^D = (X_S)^D and Z^D = X^D_S on one domain.
///
/// Each real-time step of length h advances the clock by h + J. The diffusion moves
/// continuously over the drift part h, with killing checked at the endpoint and by the
/// Brownian-bridge crossing probability exp(-2 d1 d2 / (sigma^2 h)) against the local
/// tangent plane; the jump part J is one displacement checked only at the landing point.
class PathSampler {
 public:
  PathSampler(DiffusionSpec diffusion, LaplaceExponent e, Domain dom, PathOptions opt);

  const PathOptions& options() const { return opt_; }
  const Domain& domain() const { return dom_; }
  const LaplaceExponent& exponent() const { return e_; }
  const DiffusionSpec& diffusion() const { return spec_; }
  const JumpSampler& jumps() const { return jumps_; }
  /// Copy with path recording switched on or off.
  PathSampler recording(bool on) const;

  /// X killed on leaving D, run for `clock` units of diffusion time.
  PathRealization killed_diffusion(const Point& x0, double clock, Streams& s) const;
  /// Y^D up to options().horizon.
  PathRealization subordinate(const Point& x0, Streams& s) const;
  /// Y^D and Z^D on one diffusion path: X is tracked through every clock jump until it
  /// first leaves D, so the lifetime of Z^D never exceeds that of Y^D.
  CoupledPaths coupled(const Point& x0, Streams& s) const;
  PathRealization sample_Z_D(const Point& x0, Streams& s) const { return coupled(x0, s).z; }

  /// Subordinator value S_t (single draw over [0, t] in steps of dt).
  double clock_at(double t, Streams& s) const;

 private:
  struct Step {
    Point x;
    bool killed = false;
    double fraction = 1.0;  // position of the crossing inside the step
    Point exit_location;
    double crossing_probability = 0.0;
  };

  Point displace(const Point& x, double h, Streams& s) const;
  Step continuous_step(const Point& x, double h, Streams& s) const;
  void check_start(const Point& x0) const;

  DiffusionSpec spec_;
  LaplaceExponent e_;
  Domain dom_;
  PathOptions opt_;
  JumpSampler jumps_;
};

// Single-path entry points with explicit generators.
PathRealization sample_killed_diffusion(const DiffusionSpec& diffusion, const Domain& dom, const Point& x0, double clock,
                                        double dt, Streams& s);
PathRealization sample_Y(const DiffusionSpec& diffusion, const LaplaceExponent& e, const Domain& dom, const Point& x0,
                         double horizon, double dt, Streams& s);
PathRealization sample_Z_D(const DiffusionSpec& diffusion, const LaplaceExponent& e, const Domain& dom, const Point& x0,
                           double horizon, double dt, Streams& s);

}  // namespace subdiff
