#include <cmath>
#include <random>
#include <sstream>

#include "carleman/grid.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace carleman;

namespace {

double max_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("transform matches the naive DFT") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  for (std::size_t n : {8u, 32u, 64u}) {
    std::vector<cplx> s(n);
    for (auto& v : s) v = {nd(rng), nd(rng)};
    const auto fast = forward_dft(1, n, s);
    const auto slow = oracle::naive_dft(s);
    CHECK(max_diff(fast, slow) <= 1e-13);
    CHECK(max_diff(inverse_dft(1, n, fast), s) <= 1e-13);
  }
}

TEST_CASE("2D layout is row-major with x slowest") {
  const std::size_t n = 16;
  const auto u = GridFunction::from_function(2, n, [](double x, double y) { return std::exp(cplx(0, 2 * x - 3 * y)); });
  const auto c = u.spectrum();
  CHECK(std::abs(c[u.spectrum_index(2, -3)] - cplx(1.0)) <= 1e-14);
  double rest = 0.0;
  for (std::size_t f = 0; f < c.size(); ++f)
    if (f != u.spectrum_index(2, -3)) rest = std::max(rest, std::abs(c[f]));
  CHECK(rest == 0.0);
  const auto xi = u.frequencies(u.spectrum_index(2, -3));
  CHECK(xi[0] == 2);
  CHECK(xi[1] == -3);
  CHECK_THROWS(u.spectrum_index(8, 0));
}

TEST_CASE("spectral derivatives of single modes") {
  const std::size_t n = 64;
  const auto s = GridFunction::from_function(1, n, [](double x, double) { return std::sin(x); });
  const auto ds = spectral_derivative(s, MultiIndex{{1, 0}});
  double err = 0.0;
  for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(ds.samples()[i] - std::cos(s.coordinate(i))));
  CHECK(err <= 1e-10);
  const auto same = spectral_derivative(s, MultiIndex{});
  CHECK(max_diff(same.samples(), s.samples()) == 0.0);

  const auto e3 = GridFunction::from_function(1, n, [](double x, double) { return std::exp(cplx(0, 3 * x)); });
  const auto d2 = spectral_derivative(e3, MultiIndex{{2, 0}});
  CHECK(max_diff(d2.samples(), e3.scaled(-9.0).samples()) <= 1e-10);
  CHECK_THROWS(spectral_derivative(e3, MultiIndex{{n / 4 + 1, 0}}));
}

TEST_CASE("Parseval and linearity on random inputs") {
  std::mt19937_64 rng(9);
  for (std::size_t dim : {1u, 2u}) {
    const std::size_t n = dim == 1 ? 256 : 32;
    for (int t = 0; t < 20; ++t) {
      const auto u = random_band_limited(dim, n, 6, rng);
      const auto v = random_band_limited(dim, n, 6, rng);
      REQUIRE(u.l2_norm() == doctest::Approx(u.spectral_l2_norm()).epsilon(1e-12));
      const auto w = u + v.scaled(cplx(0.5, -2.0));
      const auto ref = GridFunction::from_samples(dim, n, [&] {
        std::vector<cplx> s(u.size());
        for (std::size_t i = 0; i < s.size(); ++i) s[i] = u.samples()[i] + cplx(0.5, -2.0) * v.samples()[i];
        return s;
      }());
      REQUIRE(max_diff(w.samples(), ref.samples()) <= 1e-12);
      REQUIRE(max_diff(w.spectrum(), ref.spectrum()) <= 1e-12);
      REQUIRE((u - u).is_zero());
    }
  }
}

TEST_CASE("derivatives commute and obey the product rule") {
  std::mt19937_64 rng(4);
  const auto u = random_band_limited(2, 32, 4, rng);
  const auto v = random_band_limited(2, 32, 3, rng);
  const auto xy = spectral_derivative(spectral_derivative(u, MultiIndex{{1, 0}}), MultiIndex{{0, 1}});
  const auto yx = spectral_derivative(spectral_derivative(u, MultiIndex{{0, 1}}), MultiIndex{{1, 0}});
  CHECK(max_diff(xy.samples(), yx.samples()) <= 1e-11);
  const auto lhs = spectral_derivative(u.times(v), MultiIndex{{1, 0}});
  const auto rhs = spectral_derivative(u, MultiIndex{{1, 0}}).times(v) + u.times(spectral_derivative(v, MultiIndex{{1, 0}}));
  CHECK(max_diff(lhs.samples(), rhs.samples()) <= 1e-10);
}

TEST_CASE("random band-limited functions stay in their band") {
  std::mt19937_64 rng(1);
  const auto u = random_band_limited(2, 64, 5, rng, true);
  const auto c = u.spectrum();
  for (std::size_t f = 0; f < c.size(); ++f) {
    const auto xi = u.frequencies(f);
    if (std::abs(xi[0]) > 5 || std::abs(xi[1]) > 5) REQUIRE(c[f] == cplx{});
  }
  CHECK(c[u.spectrum_index(0, 0)] == cplx{});
  CHECK_FALSE(u.is_zero());
}

TEST_CASE("boxes") {
  const Box v = Box::interval(1.0, 2.0);
  const Box u = Box::interval(0.5, 3.0);
  CHECK(v.margin_inside(u) == doctest::Approx(0.5));
  CHECK(u.margin_inside(v) < 0.0);
  CHECK(Box::rect({0, 1}, {0, 2}).volume() == doctest::Approx(2.0));
  CHECK(Box::full(2).contains(1.0, 6.0));
  CHECK(multi_indices(2, 2).size() == 6);
  CHECK(multi_indices(1, 5).size() == 6);
}

TEST_CASE("csv and json round trips") {
  std::mt19937_64 rng(2);
  for (std::size_t dim : {1u, 2u}) {
    const auto u = random_band_limited(dim, 16, 3, rng);
    std::stringstream ss;
    write_samples_csv(ss, u);
    const auto back = read_samples_csv(ss);
    CHECK(back.dim() == dim);
    CHECK(max_diff(back.samples(), u.samples()) <= 1e-15);
    const auto j = spectrum_from_json(spectrum_to_json(u));
    CHECK(max_diff(j.spectrum(), u.spectrum()) <= 1e-15);
  }
  CHECK_THROWS(GridFunction::from_samples(1, 7, std::vector<cplx>(7)));
  CHECK_THROWS(GridFunction::from_samples(3, 8, std::vector<cplx>(512)));
}
