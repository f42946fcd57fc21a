#include <cmath>
#include <random>

#include "carleman/assoc.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace carleman;

TEST_CASE("omega at hand-checked points") {
  const auto g = make_gevrey(1.0, 1000);
  const OmegaTable t(g);
  CHECK(omega_brute(g, 1.0) == doctest::Approx(0.0));
  CHECK(t(1.0) == doctest::Approx(0.0));
  CHECK(omega_brute(g, 3.0) == doctest::Approx(std::log(4.5)).epsilon(1e-13));
  CHECK(t(3.0) == doctest::Approx(std::log(4.5)).epsilon(1e-13));
  // ln(5^5/5!) = 3.259698...
  CHECK(t(5.0) == doctest::Approx(5.0 * std::log(5.0) - oracle::log_factorial(5)).epsilon(1e-13));
  CHECK(t(1e-9) == 0.0);
  CHECK(omega_brute(make_q_family(2.0, 100), 2.0) == doctest::Approx(0.0));
  const auto n = make_log_family(1.0, 1.0, 1000);
  CHECK(std::abs(OmegaTable(n)(10.0) - omega_brute(n, 10.0)) <= 1e-10);
}

TEST_CASE("omega rejects bad arguments") {
  const OmegaTable t(make_gevrey(1.0, 100));
  CHECK_THROWS(t(0.0));
  CHECK_THROWS(t(-1.0));
  CHECK_THROWS(t(1e6));
  CHECK_THROWS(omega_brute(make_gevrey(1.0, 10), 0.0));
  CHECK_THROWS(OmegaTable(make_table("dip", {0.0, 0.0, 2.0, 2.0})));
}

TEST_CASE("piecewise omega agrees with the full scan") {
  std::mt19937_64 rng(11);
  for (const auto& seq : {make_gevrey(1.0, 5000), make_gevrey(2.5, 5000), make_log_family(1.0, 2.0, 5000),
                          make_q_family(1.2, 300)}) {
    const OmegaTable t(seq);
    std::uniform_real_distribution<double> lt(-5.0, t.log_t_max());
    for (int i = 0; i < 500; ++i) {
      const double x = std::exp(lt(rng));
      REQUIRE(std::abs(t(x) - oracle::omega(seq, x)) <= 1e-10);
    }
  }
}

TEST_CASE("omega is nondecreasing and convex in log t") {
  const auto g = make_gevrey(1.5, 2000);
  const OmegaTable t(g);
  double prev = -1.0, prev_slope = -1.0;
  const double step = 1e-2;
  for (double x = -3.0; x + step < t.log_t_max(); x += step) {
    const double a = t.at_log(x), b = t.at_log(x + step);
    REQUIRE(b >= a);
    REQUIRE(a >= prev);
    const double slope = (b - a) / step;
    REQUIRE(slope >= prev_slope - 1e-9);
    prev = a;
    prev_slope = slope;
  }
}

TEST_CASE("segment returns the maximizing index") {
  const auto g = make_gevrey(1.0, 100);
  const OmegaTable t(g);
  CHECK(t.segment(std::log(0.5)) == 0);
  CHECK(t.segment(std::log(3.5)) == 3);
  CHECK(t.segment(std::log(3.0)) == 3);
}

TEST_CASE("omega(Lambda_k)/k stays bounded for Gevrey") {
  const auto fit = lemma2_fit(make_gevrey(1.0), {1, 10000});
  REQUIRE(fit.h);
  CHECK(*fit.h <= 1.05);
  CHECK(fit.rows.front().omega == doctest::Approx(0.0));
  REQUIRE(fit.h_theory);
  CHECK(*fit.h <= *fit.h_theory);
  CHECK(fit.within_theory);
  for (const auto& r : fit.rows) REQUIRE(r.ratio <= fit.max_ratio);
}

TEST_CASE("omega(Lambda_k)/k grows for the q family") {
  const auto fit = lemma2_fit(make_q_family(2.0, 400), {1, 400});
  CHECK_FALSE(fit.h);
  CHECK(fit.trend != TailTrend::bounded);
  CHECK(fit.rows.back().ratio > fit.rows[fit.rows.size() / 2].ratio);
}
