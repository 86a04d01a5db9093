#include <doctest.h>

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "subdiff/bernstein.hpp"

using namespace subdiff;

namespace {

std::vector<LaplaceExponent> catalog() {
  return {LaplaceExponent::stable(0.5),
          LaplaceExponent::stable(1.0),
          LaplaceExponent::stable(1.5),
          LaplaceExponent::conjugate_geometric_stable(1.0),
          LaplaceExponent::conjugate_gamma(),
          LaplaceExponent::exponential_levy(),
          LaplaceExponent::custom_tempered(0.5, 0.5, 2.0)};
}

}  // namespace

TEST_SUITE("bernstein") {

TEST_CASE("stable beta=1 closed forms") {
  const auto e = LaplaceExponent::stable(1.0);
  CHECK(eval_phi(e, 4.0) == doctest::Approx(2.0).epsilon(1e-15));
  // H = phi - lambda phi' = sqrt(lambda) - lambda / (2 sqrt(lambda))
  CHECK(eval_H(e, 4.0) == doctest::Approx(1.0).epsilon(1e-14));
  // lambda + sqrt(lambda) = 6 has the root lambda = 4
  CHECK(inv_phi(e, 6.0) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(inv_phi(e, 2.0, InverseMode::pure_jump) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("derivatives agree with central differences") {
  for (const auto& e : catalog()) {
    for (double l : {0.01, 0.3, 2.0, 50.0, 4000.0}) {
      const double h = 1e-4 * l;
      const double fd1 = (e.phi(l + h) - e.phi(l - h)) / (2 * h);
      const double fd2 = (e.phi(l + h) - 2 * e.phi(l) + e.phi(l - h)) / (h * h);
      CAPTURE(e.name());
      CAPTURE(l);
      CHECK(e.dphi(l) == doctest::Approx(fd1).epsilon(1e-6));
      CHECK(e.d2phi(l) == doctest::Approx(fd2).epsilon(2e-3));
    }
  }
}

TEST_CASE("Bernstein shape: positive, increasing, concave, H >= 0") {
  for (const auto& e : catalog()) {
    for (double l : log_grid(1e-4, 1e6, 41)) {
      CAPTURE(e.name());
      CAPTURE(l);
      CHECK(e.phi(l) > 0.0);
      CHECK(e.dphi(l) > 0.0);
      CHECK(e.d2phi(l) <= 0.0);
      CHECK(eval_H(e, l) >= 0.0);
    }
  }
}

TEST_CASE("phi is the Laplace exponent of the Levy density") {
  // int_0^inf (1 - e^{-lambda t}) mu(t) dt, independent log-scale trapezoid
  for (const auto& e : {LaplaceExponent::stable(1.0), LaplaceExponent::exponential_levy(),
                        LaplaceExponent::custom_tempered(0.5, 0.5, 2.0)}) {
    for (double l : {0.5, 3.0}) {
      const double v = testing::log_trapezoid([&](double t) { return -std::expm1(-l * t) * e.levy_density(t); },
                                              -30.0, 45.0, 3000);
      CAPTURE(e.name());
      CHECK(v == doctest::Approx(e.phi(l)).epsilon(1e-5));
    }
  }
  // mu ~ 1/(t^2 log^2(1/t)) at 0 for the logarithmic kinds, so compare phi'' = -int t^2 e^{-lambda t} mu(t) dt
  for (const auto& e : {LaplaceExponent::conjugate_gamma(), LaplaceExponent::conjugate_geometric_stable(1.0)}) {
    for (double l : {0.5, 3.0}) {
      const double v = testing::log_trapezoid([&](double t) { return t * t * std::exp(-l * t) * e.levy_density(t); },
                                              -60.0, 8.0, 4000);
      CAPTURE(e.name());
      CHECK(-v == doctest::Approx(e.d2phi(l)).epsilon(1e-5));
    }
  }
}

TEST_CASE("conjugate gamma small-lambda series") {
  const auto e = LaplaceExponent::conjugate_gamma();
  // lambda / log(1+lambda) - 1 = lambda/2 - lambda^2/12 + lambda^3/24 - ...
  for (double l : {1e-3, 1e-2, 0.049, 0.051}) {
    const long double L = l;
    const long double direct = L / std::log1p(L) - 1.0L;
    CHECK(e.phi(l) == doctest::Approx(static_cast<double>(direct)).epsilon(1e-11));
  }
  // H = lambda^2/12 - lambda^3/12 + O(lambda^4)
  const double l = 1e-3;
  CHECK(eval_H(e, l) == doctest::Approx(l * l / 12.0 * (1.0 - l)).epsilon(1e-5));
}

TEST_CASE("tempered entry matches the gamma-function closed form") {
  const double c = 0.7, a = 0.4, k = 1.5;
  const auto e = LaplaceExponent::custom_tempered(c, a, k);
  for (double l : {0.1, 1.0, 10.0, 1000.0}) {
    const double closed = c * std::tgamma(1.0 - a) / a * (std::pow(k + l, a) - std::pow(k, a));
    CHECK(e.phi(l) == doctest::Approx(closed).epsilon(1e-7));
  }
}

TEST_CASE("inverse round trip over the catalog") {
  for (const auto& e : catalog()) {
    for (double y : {1e-3, 0.5, 7.0, 1e4}) {
      CAPTURE(e.name());
      CHECK(e.full(inv_phi(e, y)) == doctest::Approx(y).epsilon(1e-10));
    }
  }
  CHECK_THROWS(inv_phi(LaplaceExponent::exponential_levy(), 2.0, InverseMode::pure_jump));
}

TEST_CASE("domain errors") {
  const auto e = LaplaceExponent::stable(1.0);
  CHECK_THROWS_AS(eval_phi(e, 0.0), std::domain_error);
  CHECK_THROWS_AS(eval_phi(e, -1.0), std::domain_error);
  CHECK_THROWS(LaplaceExponent::stable(2.0));
  CHECK_THROWS(LaplaceExponent::stable(0.0));
}

TEST_CASE("psi family for stable beta=1") {
  const auto e = LaplaceExponent::stable(1.0);
  // H(lambda) = sqrt(lambda)/2, so psi(r) = 2r and psi0(r) = r/2
  const auto p = psi_family(e, 0.5, 1.5);
  CHECK(p.psi == doctest::Approx(1.0));
  CHECK(p.psi0 == doctest::Approx(0.25));
  // Psi = psi0 + int_0^r s/2 ds/s + r^{2-eps} = r/2 + r/2 + r^{1/2}
  CHECK(p.Psi == doctest::Approx(0.5 + std::sqrt(0.5)).epsilon(1e-8));
  CHECK_THROWS(psi_family(e, 0.5, 0.9));
  CHECK(psi_family(e, 1e-6, 1.5).psi0 < psi_family(e, 1e-3, 1.5).psi0);
}

TEST_CASE("psi inverse integral for stable beta=1") {
  // int_r^1 (1/(2s)) ds / s = (1/r - 1)/2
  const auto e = LaplaceExponent::stable(1.0);
  CHECK(psi_inverse_integral(e, 0.01, 1.0) == doctest::Approx(0.5 * (100.0 - 1.0)).epsilon(1e-9));
}

TEST_CASE("potential density for stable beta=1 is e^t erfc(sqrt t)") {
  const auto e = LaplaceExponent::stable(1.0);
  for (double t : {0.01, 0.1, 1.0, 5.0}) {
    const double ref = std::exp(t) * std::erfc(std::sqrt(t));
    CHECK(potential_density(e, t) == doctest::Approx(ref).epsilon(1e-6));
  }
  CHECK(potential_density(LaplaceExponent::drift_only(), 3.0) == 1.0);
}

TEST_CASE("scaling witness on exact power laws") {
  const auto grid = log_grid(10.0, 1e5, 60);
  const auto w = estimate_scaling([](double l) { return std::pow(l, 0.7); }, 0.0, grid);
  CHECK(w.gamma == doctest::Approx(0.7).epsilon(1e-9));
  CHECK(w.delta == doctest::Approx(0.7).epsilon(1e-9));
  CHECK(w.fitted_exponent == doctest::Approx(0.7).epsilon(1e-9));
  CHECK(w.a1_holds);
  const auto [cL, CU] = scaling_constants([](double l) { return 3.0 * std::pow(l, 0.7); }, grid, 0.7, 0.7);
  CHECK(cL == doctest::Approx(1.0));
  CHECK(CU == doctest::Approx(1.0));
}

TEST_CASE("drift_only is degenerate") {
  const auto e = LaplaceExponent::drift_only();
  CHECK(e.degenerate());
  CHECK(eval_H(e, 5.0) == 0.0);
  CHECK(inv_phi(e, 3.0) == doctest::Approx(3.0));
  CHECK(psi_family(e, 0.5, 1.5).degenerate);
}

}  // TEST_SUITE
