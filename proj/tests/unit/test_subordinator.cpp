#include <doctest.h>

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <vector>

#include "subdiff/subordinator.hpp"

using namespace subdiff;

namespace {

struct Mean {
  double value, se;
};

template <class F>
Mean mean_of(int n, F&& f) {
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = f();
    s += v;
    s2 += v * v;
  }
  const double m = s / n;
  return {m, std::sqrt((s2 / n - m * m) / (n - 1))};
}

}  // namespace

TEST_SUITE("sampler") {

TEST_CASE("positive stable Laplace transform") {
  Rng rng(7);
  for (double alpha : {0.25, 0.5, 0.75}) {
    for (double l : {0.3, 1.0, 4.0}) {
      const auto m = mean_of(20000, [&] { return std::exp(-l * standard_positive_stable(alpha, rng)); });
      CAPTURE(alpha);
      CAPTURE(l);
      CHECK(std::abs(m.value - std::exp(-std::pow(l, alpha))) <= 3.5 * m.se);
    }
  }
}

TEST_CASE("stable beta=1 increments follow the Levy distribution (chi-square)") {
  // T_t has CDF erfc(t / (2 sqrt s)); 20 equiprobable bins from the inverse CDF
  const double t = 0.5;
  const JumpSampler js(LaplaceExponent::stable(1.0), t);
  Rng rng(11);
  const int bins = 20, n = 100000;
  std::vector<double> edges;
  for (int k = 1; k < bins; ++k) {
    const double p = static_cast<double>(k) / bins;
    // erfc(t/(2 sqrt s)) = p  =>  s = (t / (2 erfc^{-1}(p)))^2, with erfc^{-1} by bisection
    double lo = 0.0, hi = 10.0;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (std::erfc(mid) > p ? lo : hi) = mid;
    }
    const double z = 0.5 * (lo + hi);
    edges.push_back(std::pow(t / (2.0 * z), 2));
  }
  std::vector<int> count(bins, 0);
  for (int i = 0; i < n; ++i) {
    const double s = js.draw(rng);
    ++count[std::upper_bound(edges.begin(), edges.end(), s) - edges.begin()];
  }
  double chi2 = 0.0;
  const double expect = static_cast<double>(n) / bins;
  for (int c : count) chi2 += (c - expect) * (c - expect) / expect;
  const double p_value = boost::math::cdf(boost::math::complement(boost::math::chi_squared(bins - 1), chi2));
  CHECK(p_value > 0.01);
}

TEST_CASE("table-based entries reproduce the Laplace exponent") {
  for (const auto& e : {LaplaceExponent::conjugate_gamma(), LaplaceExponent::custom_tempered(0.5, 0.5, 2.0),
                        LaplaceExponent::exponential_levy()}) {
    const double h = 0.1;
    const JumpSampler js(e, h);
    Rng rng(3);
    for (double l : {0.5, 5.0}) {
      const auto m = mean_of(20000, [&] { return std::exp(-l * js.draw(rng)); });
      CAPTURE(e.name());
      CAPTURE(l);
      CHECK(std::abs(m.value - std::exp(-h * e.phi(l))) <= 3.5 * m.se);
    }
  }
}

TEST_CASE("sampler bookkeeping") {
  const JumpSampler st(LaplaceExponent::stable(1.0), 0.01);
  CHECK(st.exact());
  const JumpSampler cg(LaplaceExponent::conjugate_gamma(), 0.01);
  CHECK_FALSE(cg.exact());
  CHECK(cg.truncation() > 0.0);
  CHECK(cg.compensator_rate() >= 0.0);
  CHECK(cg.jump_rate() > 0.0);
  Rng rng(1);
  const JumpSampler none(LaplaceExponent::drift_only(), 0.01);
  for (int i = 0; i < 100; ++i) CHECK(none.draw(rng) == 0.0);
  for (int i = 0; i < 1000; ++i) CHECK(cg.draw(rng) >= 0.0);
}

TEST_CASE("subordinator path increments") {
  Rng rng(5);
  const auto inc = sample_subordinator(LaplaceExponent::stable(1.0), 1.0, 0.3, rng);
  REQUIRE(inc.size() == 4);
  CHECK(inc[0] >= 0.3);
  CHECK(inc[3] >= 0.1 - 1e-12);
}

}  // TEST_SUITE
