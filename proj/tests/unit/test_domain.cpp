#include <doctest.h>

#include <cmath>

#include "subdiff/diffusion.hpp"
#include "subdiff/domain.hpp"

using namespace subdiff;

TEST_SUITE("geometry") {

TEST_CASE("interval distance and membership") {
  const auto d = Domain::interval(0.0, 2.0);
  CHECK(d.delta(Point{0.3}) == doctest::Approx(0.3));
  CHECK(d.delta(Point{1.8}) == doctest::Approx(0.2));
  CHECK(d.contains(Point{1.0}));
  CHECK_FALSE(d.contains(Point{2.0}));
  CHECK_FALSE(d.contains(Point{-0.1}));
  CHECK(d.boundary_distance(Point{2.5}) == doctest::Approx(0.5));
}

TEST_CASE("ball distance, projection and normal") {
  const auto d = Domain::ball(Point{1.0, -1.0}, 2.0);
  const Point x{1.5, -0.5};
  CHECK(d.delta(x) == doctest::Approx(2.0 - std::sqrt(0.5)));
  const Point z = d.project(x);
  CHECK(distance(z, Point{1.0, -1.0}) == doctest::Approx(2.0));
  CHECK(distance(z, x) == doctest::Approx(d.delta(x)));
  const Point n = d.inward_normal(z);
  CHECK(norm(n) == doctest::Approx(1.0));
  CHECK(dot(n, x - z) > 0.0);
}

TEST_CASE("half-space uses the normalized normal") {
  const auto d = Domain::half_space(Point{0.0, 3.0}, 1.0);
  CHECK(d.delta(Point{5.0, 1.5}) == doctest::Approx(0.5));
  CHECK_FALSE(d.contains(Point{0.0, 0.5}));
}

TEST_CASE("corkscrew points") {
  for (const auto& d : {Domain::ball(Point{0.0, 0.0, 0.0}, 1.0), Domain::half_space(Point{0.0, 0.0, 1.0}, 0.0)}) {
    const Point z = d.kind() == ShapeKind::ball ? Point{0.0, 0.0, 1.0} : Point{0.3, -0.2, 0.0};
    for (double r : {0.05, 0.2, 0.5}) {
      const Point a = d.corkscrew(z, r);
      CHECK(distance(a, z) == doctest::Approx(r));
      CHECK(d.delta(a) >= d.kappa() * r * (1 - 1e-12));
      CHECK(d.delta(a) <= r * (1 + 1e-12));
    }
  }
}

TEST_CASE("power cusp distance against a brute-force scan") {
  const double c = 0.5, p = 1.5;
  const auto d = Domain::power_cusp(2, c, p);
  for (const Point x : {Point{0.1, 0.3}, Point{-0.4, 0.5}, Point{0.0, 0.05}, Point{1.0, 0.6}}) {
    REQUIRE(d.contains(x));
    double best = 1e300;
    for (int k = -400000; k <= 400000; ++k) {
      const double u = k * 5e-6;
      best = std::min(best, std::hypot(x[0] - u, x[1] - c * std::pow(std::abs(u), p)));
    }
    CAPTURE(x.to_string());
    CHECK(d.delta(x) == doctest::Approx(best).epsilon(1e-6));
  }
  CHECK(d.kappa() > 0.0);
  CHECK(d.kappa() <= 1.0);
}

TEST_CASE("localized domain is an intersection") {
  const auto h = Domain::half_space(Point{0.0, 1.0}, 0.0);
  const auto loc = h.localized(Point{0.0, 0.0}, 0.5);
  CHECK(loc.contains(Point{0.1, 0.1}));
  CHECK_FALSE(loc.contains(Point{0.1, 0.6}));
  CHECK_FALSE(loc.contains(Point{0.1, -0.1}));
  CHECK(loc.delta(Point{0.0, 0.4}) == doctest::Approx(0.1));
}

TEST_CASE("complement of a ball") {
  const auto d = Domain::complement_of_ball(Point{0.0, 0.0}, 1.0);
  CHECK(d.contains(Point{2.0, 0.0}));
  CHECK(d.delta(Point{0.0, 3.0}) == doctest::Approx(2.0));
  CHECK_FALSE(d.bounded());
}

TEST_CASE("anisotropic coefficients are uniformly elliptic") {
  const auto s = DiffusionSpec::smooth_anisotropic(2, 2.0);
  for (double x = -1.0; x <= 1.0; x += 0.1) {
    for (int i = 0; i < 2; ++i) {
      const double a = s.a(Point{x, 0.3 * x}, i);
      CHECK(a >= 0.5 - 1e-12);
      CHECK(a <= 2.0 + 1e-12);
    }
  }
  CHECK(DiffusionSpec::identity(3).is_identity());
}

}  // TEST_SUITE
