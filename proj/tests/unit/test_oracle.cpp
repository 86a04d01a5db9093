#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "helpers.hpp"
#include "subdiff/oracle.hpp"

using namespace subdiff;
using std::numbers::pi;

TEST_SUITE("oracle") {

TEST_CASE("interval kernel at t=1, x=y=1/2") {
  double ref = 0.0;
  for (int k = 1; k < 50; ++k) ref += 2.0 * std::exp(-k * k * pi * pi / 2.0) * std::pow(std::sin(k * pi / 2.0), 2);
  const auto d = Domain::interval(0.0, 1.0);
  CHECK(oracle::killed_bm_kernel(d, 1.0, Point{0.5}, Point{0.5}) == doctest::Approx(ref).epsilon(1e-13));
  CHECK(ref == doctest::Approx(2.0 * std::exp(-pi * pi / 2.0)).epsilon(1e-9));
}

TEST_CASE("image and eigen series agree at the seam") {
  CHECK(oracle::interval_seam_disagreement(0.0, 1.0) <= 1e-10);
  CHECK(oracle::interval_seam_disagreement(-1.0, 2.0) <= 1e-10);
  const auto a = oracle::interval_kernel_images(0.0, 1.0, 0.1, 0.3, 0.6);
  const auto b = oracle::interval_kernel_eigen(0.0, 1.0, 0.1, 0.3, 0.6);
  CHECK(a.value == doctest::Approx(b.value).epsilon(1e-10));
  CHECK(a.tail_bound <= 1e-10);
  CHECK(b.tail_bound <= 1e-10);
}

TEST_CASE("killed kernels: symmetry, domination, sub-Markov") {
  const auto d = Domain::interval(0.0, 1.0);
  double prev = 2.0;
  for (double t : {0.005, 0.05, 0.1, 0.5, 2.0}) {
    for (double x : {0.05, 0.3, 0.7}) {
      for (double y : {0.1, 0.5, 0.95}) {
        const double p = oracle::killed_bm_kernel(d, t, Point{x}, Point{y});
        CHECK(p == doctest::Approx(oracle::killed_bm_kernel(d, t, Point{y}, Point{x})).epsilon(1e-13));
        CHECK(p <= oracle::gaussian_kernel(t, Point{x}, Point{y}) * (1 + 1e-12));
      }
    }
    const double mass =
        testing::simpson([&](double y) { return oracle::killed_bm_kernel(d, t, Point{0.3}, Point{y}); }, 0.0, 1.0, 2000);
    CHECK(mass <= 1.0 + 1e-9);
    CHECK(mass < prev);
    CHECK(mass == doctest::Approx(oracle::interval_survival(0.0, 1.0, t, 0.3)).epsilon(1e-6));
    prev = mass;
  }
  const auto h = Domain::half_space(Point{0.0, 1.0}, 0.0);
  const Point x{0.2, 0.3}, y{-0.1, 0.5};
  const Point yr{-0.1, -0.5};
  const double refl = oracle::gaussian_kernel(0.4, x, y) - oracle::gaussian_kernel(0.4, x, yr);
  CHECK(oracle::killed_bm_kernel(h, 0.4, x, y) == doctest::Approx(refl).epsilon(1e-14));
}

TEST_CASE("survival, exit times and Green function closed forms") {
  double s = 0.0;
  for (int k = 1; k < 200; ++k)
    s += 2.0 * std::exp(-k * k * pi * pi * 0.2 / 2.0) * std::sin(k * pi * 0.5) * (1 - std::cos(k * pi)) / (k * pi);
  CHECK(oracle::interval_survival(0.0, 1.0, 0.2, 0.5) == doctest::Approx(s).epsilon(1e-12));
  CHECK(oracle::halfspace_survival(0.3, 0.2) == doctest::Approx(2.0 * 0.5 * std::erfc(-0.2 / std::sqrt(0.6)) - 1.0));
  CHECK(oracle::interval_exit_time(0.0, 1.0, 0.5) == doctest::Approx(0.25));
  CHECK(oracle::ball_exit_time(1.0, 0.0, 2) == doctest::Approx(0.5));
  CHECK(oracle::interval_green(0.0, 1.0, 0.2, 0.6) == doctest::Approx(2.0 * 0.2 * 0.4));
  CHECK(oracle::interval_green(0.0, 1.0, 0.6, 0.2) == doctest::Approx(2.0 * 0.2 * 0.4));
}

TEST_CASE("half-disk harmonic measure against the odd-reflected Poisson integral") {
  for (auto [a, b] : {std::pair{0.0, 0.5}, std::pair{0.3, 0.1}, std::pair{-0.6, 0.6}}) {
    const std::complex<double> z(a, b);
    auto P = [&](double th) { return (1.0 - std::norm(z)) / std::norm(std::polar(1.0, th) - z) / (2 * pi); };
    const double ref = testing::simpson(P, 0.0, pi, 20000) - testing::simpson(P, pi, 2 * pi, 20000);
    CHECK(oracle::half_disk_arc_measure(1.0, a, b) == doctest::Approx(ref).epsilon(1e-9));
    CHECK(oracle::half_disk_arc_measure(2.0, 2 * a, 2 * b) == doctest::Approx(ref).epsilon(1e-9));
  }
}

TEST_CASE("stable jump kernel closed form") {
  const auto e = LaplaceExponent::stable(1.0);
  for (double r : {0.001, 0.1, 2.0}) CHECK(oracle::jump_kernel(e, r, 1) == doctest::Approx(1 / (pi * std::sqrt(2.0) * r * r)).epsilon(1e-8));
}

TEST_CASE("potential occupation") {
  const auto d = Domain::interval(0.0, 1.0);
  const auto e = LaplaceExponent::stable(1.0);
  for (double x : {0.2, 0.5})
    for (double y : {0.1, 0.7}) {
      const double g = oracle::interval_green(0.0, 1.0, x, y);
      CHECK(oracle::potential_occupation(d, LaplaceExponent::drift_only(), Point{x}, Point{y}) ==
            doctest::Approx(g).epsilon(1e-8));
      CHECK(oracle::potential_occupation(d, e, Point{x}, Point{y}, true) == doctest::Approx(g).epsilon(1e-8));
      CHECK(oracle::potential_occupation(d, e, Point{x}, Point{y}) <= g);
    }
}

TEST_CASE("resurrection kernel symmetry and domination") {
  const auto d = Domain::interval(0.0, 1.0);
  const auto e = LaplaceExponent::stable(1.0);
  for (auto [y, z] : {std::pair{0.2, 0.5}, std::pair{0.05, 0.9}, std::pair{0.45, 0.55}}) {
    const double q = oracle::resurrection_kernel(d, e, y, z);
    CHECK(q > 0.0);
    CHECK(q == doctest::Approx(oracle::resurrection_kernel(d, e, z, y)).epsilon(1e-8));
    CHECK(q <= oracle::jump_kernel(e, std::abs(y - z), 1) * (1 + 1e-8));
  }
}

TEST_CASE("stable subordinator density") {
  // normalization and Laplace transform exp(-t lambda^{beta/2}) by independent quadrature
  for (double beta : {1.0, 0.5, 1.5}) {
    const double t = 1.0;
    auto f = [&](double s) { return oracle::stable_subordinator_density(beta, t, s); };
    const double mass = testing::log_trapezoid(f, -12.0, 40.0, 6000);
    const double lt = testing::log_trapezoid([&](double s) { return std::exp(-s) * f(s); }, -12.0, 40.0, 6000);
    CAPTURE(beta);
    CHECK(mass == doctest::Approx(1.0).epsilon(beta == 0.5 ? 1e-3 : 1e-8));
    CHECK(lt == doctest::Approx(std::exp(-1.0)).epsilon(1e-6));
  }
}

}  // TEST_SUITE
