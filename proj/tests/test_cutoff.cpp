#include <cmath>
#include <numbers>

#include "carleman/cutoff.hpp"
#include "doctest.h"

using namespace carleman;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("1D cutoff family is certified") {
  const Box v = Box::interval(pi / 2, 3 * pi / 2), u = Box::interval(pi / 4, 7 * pi / 4);
  const auto fam = make_cutoff_family(v, u, 12, 4096);
  CHECK(fam.margin == doctest::Approx(pi / 4));
  CHECK(fam.q <= 16.0 / fam.margin);
  const auto check = verify_cutoff_bounds(fam, fam.q);
  CHECK(check.ok);
  CHECK(check.worst_ratio <= 1.0 + 1e-12);
  for (unsigned k = 1; k <= 12; ++k) {
    const auto& chi = fam[k];
    double plateau = 0.0, outside = 0.0;
    for (std::size_t i = 0; i < chi.size(); ++i) {
      const double x = chi.coordinate(i);
      const cplx y = chi.samples()[i];
      if (v.contains(x)) plateau = std::max(plateau, std::abs(y - 1.0));
      if (!u.contains(x)) outside = std::max(outside, std::abs(y));
    }
    REQUIRE(plateau <= 1e-10);
    REQUIRE(outside <= 1e-10);
  }
  CHECK_FALSE(verify_cutoff_bounds(fam, 0.5 * fam.q).ok);
}

TEST_CASE("2D cutoff is a tensor product") {
  const Box v = Box::rect({pi / 2, 3 * pi / 2}, {pi / 2, 3 * pi / 2});
  const Box u = Box::rect({pi / 4, 7 * pi / 4}, {pi / 4, 7 * pi / 4});
  const auto fam = make_cutoff_family(v, u, 3, 256);
  CHECK(verify_cutoff_bounds(fam, fam.q).ok);
  const auto& chi = fam[3];
  const std::size_t n = 256, mid = n / 2;
  for (std::size_t i = 0; i < n; i += 7)
    for (std::size_t j = 0; j < n; j += 5) {
      const cplx a = chi.samples()[i * n + j];
      const cplx b = chi.samples()[i * n + mid] * chi.samples()[mid * n + j];
      REQUIRE(std::abs(a - b) <= 1e-10);
    }
}

TEST_CASE("cutoff construction rejects bad geometry") {
  CHECK_THROWS(make_cutoff_family(Box::interval(1, 3), Box::interval(2, 4), 4, 256));
  CHECK_THROWS(make_cutoff_family(Box::interval(1, 3), Box::interval(1, 3), 4, 256));
  // bump radius d/(2k) narrower than four cells
  CHECK_THROWS(make_cutoff_family(Box::interval(1.0, 3.0), Box::interval(0.95, 3.05), 12, 256));
}
