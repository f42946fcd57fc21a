#include <cmath>
#include <random>

#include "carleman/ladder.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace carleman;

TEST_CASE("first rung for Gevrey k=4, sigma=2") {
  const auto g = make_gevrey(1.0);
  const Ladder l = build_ladder(g, 4, 2.0, 10);
  REQUIRE(l.indices.size() == 11);
  CHECK(l.indices[0] == 4);
  CHECK(l.indices[1] == 9);
  CHECK(std::exp(g.log_lambda(9)) == doctest::Approx(4.1472).epsilon(1e-4));
  CHECK(std::exp(g.log_lambda(10)) == doctest::Approx(4.5287).epsilon(1e-4));
  CHECK(verify_ladder(l, g).ok);
  CHECK(maximality_check(l, g));
}

TEST_CASE("geometric roots give one-index bands") {
  const auto q = make_q_family(2.0, 60);
  const Ladder l = build_ladder(q, 3, 2.0, 20);
  for (std::size_t j = 0; j < l.indices.size(); ++j) CHECK(l.indices[j] == 3 + j);
  CHECK(maximality_check(build_ladder(q, 3, 2.0, 1), q));

  Ladder bad = l;
  bad.indices[1] -= 1;
  const LadderCheck c = verify_ladder(bad, q);
  CHECK_FALSE(c.ok);
  REQUIRE(c.violated_band);
  CHECK(*c.violated_band == 1);
}

TEST_CASE("sigma below the closedness constant hits an empty band") {
  const auto g = make_gevrey(1.0);
  CHECK_THROWS_AS(build_ladder(g, 1, 1.05, 3), EmptyBandError);
}

TEST_CASE("smaller in-band index breaks maximality") {
  const auto g = make_gevrey(1.0);
  Ladder l = build_ladder(g, 4, 2.0, 3);
  l.indices[1] = 8;
  CHECK(verify_ladder(l, g).ok);
  CHECK_FALSE(maximality_check(l, g));
}

TEST_CASE("Gevrey 2 with the fitted sigma") {
  const auto g = make_gevrey(2.0);
  const Ladder l = build_ladder(g, 10, default_sigma(g), 15);
  CHECK(l.bands() == 15);
  const auto c = verify_ladder(l, g);
  CHECK(c.ok);
  CHECK(c.min_margin >= -1e-10);
  const auto ref = oracle::ladder_scan(g, 10, default_sigma(g), 15);
  REQUIRE(ref);
  CHECK(*ref == l.indices);
}

TEST_CASE("binary search agrees with the linear scan") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> kd(1, 40);
  std::uniform_real_distribution<double> sd(1.5, 4.0);
  const auto seqs = {make_gevrey(1.0), make_gevrey(1.7), make_log_family(1.0, 1.0)};
  for (const auto& seq : seqs) {
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t k = kd(rng);
      const double sigma = sd(rng);
      const std::size_t bands = std::min<std::size_t>(12, max_bands(seq, k, sigma));
      const Ladder l = build_ladder(seq, k, sigma, bands);
      const auto ref = oracle::ladder_scan(seq, k, sigma, bands);
      REQUIRE(ref);
      REQUIRE(*ref == l.indices);
      REQUIRE(verify_ladder(l, seq).ok);
      REQUIRE(maximality_check(l, seq));
    }
  }
}

TEST_CASE("band count stops at the table") {
  const auto g = make_gevrey(1.0, 200);
  const Ladder l = build_ladder(g, 4, 2.0);
  CHECK(l.bands() == max_bands(g, 4, 2.0));
  CHECK(std::exp(g.log_lambda(l.indices.back())) <= std::exp(g.log_lambda(200)) * (1 + 1e-12));
  const Ladder t = build_ladder(g, 4, 2.0, 100);
  CHECK(t.truncated);
}
