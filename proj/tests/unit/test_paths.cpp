#include <doctest.h>

#include <cmath>

#include "subdiff/parallel.hpp"
#include "subdiff/sampler.hpp"

using namespace subdiff;

namespace {

PathSampler sampler(const LaplaceExponent& e, const Domain& d, double dt, double horizon, bool record = false) {
  PathOptions o;
  o.dt = dt;
  o.horizon = horizon;
  o.record = record;
  return PathSampler(DiffusionSpec::identity(d.dim()), e, d, o);
}

}  // namespace

TEST_SUITE("sampler") {

TEST_CASE("serial and parallel batches are bitwise identical") {
  const auto ps = sampler(LaplaceExponent::stable(1.0), Domain::ball(Point{0.0, 0.0}, 1.0), 1e-3, 5.0);
  auto f = [&](std::size_t i) {
    Streams s = Streams::for_path(42, i);
    const auto p = ps.subordinate(Point{0.2, 0.1}, s);
    return std::pair<double, double>(p.exit_time, p.final_clock);
  };
  const auto a = map_paths(2000, Exec::serial(), f);
  const auto b = map_paths(2000, Exec::parallel(4), f);
  const auto c = map_paths(2000, Exec::parallel(3), f);
  CHECK(a == b);
  CHECK(a == c);
}

TEST_CASE("drift_only subordination reproduces the killed diffusion path by path") {
  const auto d = Domain::interval(0.0, 1.0);
  const auto ps = sampler(LaplaceExponent::drift_only(), d, 1e-3, 3.0);
  for (std::size_t i = 0; i < 500; ++i) {
    Streams s1 = Streams::for_path(9, i);
    Streams s2 = Streams::for_path(9, i);
    const auto y = ps.subordinate(Point{0.3}, s1);
    const auto x = ps.killed_diffusion(Point{0.3}, 3.0, s2);
    REQUIRE(y.exit_time == x.exit_time);
    REQUIRE(y.final_state == x.final_state);
    CHECK(y.mode != ExitMode::jump);
  }
}

TEST_CASE("Z dies no later than Y on coupled paths") {
  const auto ps = sampler(LaplaceExponent::stable(1.0), Domain::interval(0.0, 1.0), 1e-3, 5.0);
  for (std::size_t i = 0; i < 2000; ++i) {
    Streams s = Streams::for_path(1, i);
    const auto c = ps.coupled(Point{0.4}, s);
    REQUIRE(c.z.exit_time <= c.y.exit_time);
  }
}

TEST_CASE("recorded paths stay inside the domain on a monotone clock") {
  const auto d = Domain::ball(Point{0.0, 0.0}, 1.0);
  const auto ps = sampler(LaplaceExponent::conjugate_gamma(), d, 1e-3, 2.0, true);
  for (std::size_t i = 0; i < 50; ++i) {
    Streams s = Streams::for_path(3, i);
    const auto p = ps.subordinate(Point{0.0, 0.0}, s);
    for (std::size_t k = 0; k < p.times.size(); ++k) {
      REQUIRE(d.contains(p.states[k]));
      if (k) {
        REQUIRE(p.times[k] > p.times[k - 1]);
        REQUIRE(p.clock[k] - p.clock[k - 1] >= p.times[k] - p.times[k - 1] - 1e-12);
      }
    }
    if (p.exited()) CHECK(p.exit_time >= p.times.back());
  }
}

TEST_CASE("interval mean exit time of the diffusion") {
  // E_x tau = x (1 - x) for generator (1/2) d^2/dx^2
  const auto ps = sampler(LaplaceExponent::drift_only(), Domain::interval(0.0, 1.0), 1e-4, 5.0);
  const int n = 20000;
  const auto t = map_paths(n, Exec::parallel(), [&](std::size_t i) {
    Streams s = Streams::for_path(17, i);
    return ps.killed_diffusion(Point{0.3}, 5.0, s).exit_time;
  });
  double m = 0.0, m2 = 0.0;
  for (double v : t) {
    m += v;
    m2 += v * v;
  }
  m /= n;
  const double se = std::sqrt((m2 / n - m * m) / (n - 1));
  CHECK(std::abs(m - 0.21) <= 3.0 * se);
}

TEST_CASE("invalid starts and options") {
  const auto ps = sampler(LaplaceExponent::stable(1.0), Domain::interval(0.0, 1.0), 1e-3, 1.0);
  Streams s = Streams::for_path(1, 0);
  CHECK_THROWS(ps.subordinate(Point{1.5}, s));
  CHECK_THROWS(ps.subordinate(Point{0.2, 0.2}, s));
  CHECK_THROWS(sampler(LaplaceExponent::stable(1.0), Domain::interval(0.0, 1.0), 0.0, 1.0));
  CHECK_THROWS(PathSampler(DiffusionSpec::identity(2), LaplaceExponent::stable(1.0), Domain::interval(0.0, 1.0),
                           PathOptions{}));
}

TEST_CASE("censored paths report the horizon") {
  const auto ps = sampler(LaplaceExponent::drift_only(), Domain::half_space(Point{1.0}, 0.0), 1e-2, 0.05);
  Streams s = Streams::for_path(1, 0);
  const auto p = ps.subordinate(Point{10.0}, s);
  CHECK(p.mode == ExitMode::censored);
  CHECK_FALSE(p.exited());
  CHECK(p.alive_at(0.05));
}

}  // TEST_SUITE
