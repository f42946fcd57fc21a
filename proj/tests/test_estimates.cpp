#include <cmath>
#include <numbers>
#include <random>

#include "carleman/estimates.hpp"
#include "carleman/norms.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace carleman;

namespace {

constexpr double pi = std::numbers::pi;

GridFunction mode1d(std::size_t n, long xi) {
  return GridFunction::from_function(1, n, [xi](double x, double) { return std::exp(cplx(0, xi * x)); });
}

}  // namespace

TEST_CASE("geometric fit recovers exact geometric data") {
  std::vector<EstimateRow> rows;
  for (unsigned k = 1; k <= 8; ++k) rows.push_back(make_row(k, std::log(3.0) + k * std::log(1.7), 0.0));
  const auto fit = fit_geometric(rows);
  REQUIRE(fit);
  CHECK(fit->gamma == doctest::Approx(1.7).epsilon(1e-10));
  CHECK(fit->c == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(fit->max_residual <= 1e-10);
  CHECK(fit_verdict(fit) == Verdict::bounded_geometric);
  for (const auto& r : rows) REQUIRE(r.ratio <= fit->c * std::pow(fit->gamma, r.k) * (1 + 1e-12));
}

TEST_CASE("geometric fit covers every row and needs two k") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> nd(0.0, 0.2);
  std::vector<EstimateRow> rows;
  for (unsigned k = 1; k <= 10; ++k)
    for (std::size_t s = 0; s < 5; ++s) rows.push_back(make_row(k, 0.4 * k + nd(rng), 0.0, s));
  const auto fit = fit_geometric(rows);
  REQUIRE(fit);
  for (const auto& r : rows) REQUIRE(r.log_left - r.log_right <= fit->log_c + r.k * fit->log_gamma + 1e-9);
  std::vector<EstimateRow> one{make_row(3, 1.0, 0.0)};
  CHECK_FALSE(fit_geometric(one));
  CHECK(fit_verdict(std::nullopt) == Verdict::inconclusive);
}

TEST_CASE("running-maximum fit bounds the raw ratios") {
  std::vector<EstimateRow> rows;
  const double y[] = {0.1, 0.6, 0.9, 1.0, 2.1, 1.3, 2.5, 3.5};
  for (unsigned k = 1; k <= 8; ++k) rows.push_back(make_row(k, y[k - 1], 0.0));
  const auto fit = fit_geometric(rows, FitShape::running_max);
  REQUIRE(fit);
  CHECK(fit->max_residual < 0.5);
  for (const auto& r : rows) REQUIRE(r.log_left <= fit->log_c + r.k * fit->log_gamma + 1e-12);
}

TEST_CASE("zero rows are skipped") {
  const auto r = make_row(2, -INFINITY, -INFINITY);
  CHECK(r.skipped);
}

TEST_CASE("band decomposition is an exact partition") {
  std::mt19937_64 rng(3);
  const auto g = make_gevrey(1.0);
  const Ladder l = build_ladder(g, 4, 2.0, 10);
  for (int t = 0; t < 20; ++t) {
    const auto u = random_band_limited(1, 512, 40, rng);
    const auto d = band_decompose(u, l, g);
    GridFunction sum = GridFunction::zero(1, 512);
    double energy = 0.0;
    for (const auto& p : d.parts) {
      sum = sum + p;
      energy += std::pow(p.spectral_l2_norm(), 2);
    }
    REQUIRE(energy == doctest::Approx(std::pow(u.spectral_l2_norm(), 2)).epsilon(1e-10));
    REQUIRE((sum - u).spectral_l2_norm() <= 1e-10 * u.spectral_l2_norm());
  }
  const auto d3 = band_decompose(mode1d(256, 3), l, g);
  int nonzero = 0;
  for (const auto& p : d3.parts) nonzero += p.is_zero() ? 0 : 1;
  CHECK(nonzero == 1);
}

TEST_CASE("weighted Plancherel bound") {
  const auto g = make_gevrey(1.0);
  const auto z = check_eq19(GridFunction::zero(1, 128), g, 1);
  CHECK(z.verdict != Verdict::violated);

  const auto one = GridFunction::from_function(1, 128, [](double, double) { return cplx(1.0); });
  const auto r = check_eq19(one, g, 1);
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].left == doctest::Approx(kTwoPi).epsilon(1e-12));
  CHECK(r.rows[0].right == doctest::Approx(4.0 * kTwoPi).epsilon(1e-12));

  std::mt19937_64 rng(21);
  for (int t = 0; t < 200; ++t) {
    const auto u = random_band_limited(1, 256, 20, rng);
    for (unsigned k = 1; k <= 8; ++k) REQUIRE(check_eq19(u, g, k).verdict != Verdict::violated);
  }
}

TEST_CASE("cutoff estimate on sin") {
  const Box v = Box::interval(pi / 2, 3 * pi / 2), u = Box::interval(pi / 4, 7 * pi / 4);
  const auto fam = make_cutoff_family(v, u, 10, 4096);
  const auto g = make_gevrey(1.0);
  const auto s = GridFunction::from_function(1, 4096, [](double x, double) { return std::sin(x); });
  const auto r = check_lemma4(s, fam, g, 1, 10);
  CHECK(r.verdict == Verdict::bounded_geometric);
  REQUIRE(r.fit);
  CHECK(std::isfinite(r.fit->gamma));
  const auto z = check_lemma4(GridFunction::zero(1, 4096), fam, g, 1, 4);
  for (const auto& row : z.rows) CHECK(row.skipped);
}

TEST_CASE("band estimate on a single mode") {
  const auto g = make_gevrey(1.0);
  const OmegaTable om(g);
  const Ladder l = build_ladder(g, 2, 2.0, 8);
  const auto u = mode1d(256, 3);
  const unsigned k = 2;
  std::size_t band = 0;
  while (std::exp(g.log_lambda(l.indices[band])) < 3.0) ++band;
  const double lam = g.log_lambda(l.indices[band]);
  const double norm2 = kTwoPi;
  const double log_left = 2.0 * k * lam + std::log(norm2) +
                          std::log1p(std::exp(-2.0 * oracle::omega(g, std::exp(lam)) + 2.0 * oracle::omega(g, 3.0)));
  const auto row = lemma6_row(u, g, k, l, om);
  CHECK(row.log_left == doctest::Approx(log_left).epsilon(1e-12));
  const std::vector<cplx> c(u.spectrum().begin(), u.spectrum().end());
  CHECK(row.log_right == doctest::Approx(2.0 * std::log(oracle::triple_norm_1d(c, std::exp(g.log_lambda(k)), k))).epsilon(1e-12));

  const auto z = check_lemma6(GridFunction::zero(1, 256), g, 2, l, om);
  for (const auto& r : z.rows) CHECK((r.skipped || r.left == 0.0));
}

TEST_CASE("band estimate sweep on random input") {
  std::mt19937_64 rng(13);
  const auto g = make_gevrey(1.0);
  const OmegaTable om(g);
  const auto u = random_band_limited(1, 4096, 16, rng);
  const auto r = sweep_lemma6(u, g, om, 1, 8, default_sigma(g));
  CHECK(r.verdict == Verdict::bounded_geometric);
  CHECK(r.rows.size() == 8);
}

TEST_CASE("theta weight and sum") {
  const auto g = make_gevrey(1.0);
  const OmegaTable om(g);
  const Ladder l = build_ladder(g, 4, 2.0, 6);
  const double gamma = 2.0;
  CHECK(theta_weight(1, 0.0, l, g, om, gamma) == 0.0);
  const double lam1 = std::exp(g.log_lambda(l.indices[1]));
  CHECK(theta_weight(1, gamma * lam1, l, g, om, gamma) ==
        doctest::Approx(std::exp(-oracle::omega(g, lam1))).epsilon(1e-12));
  CHECK(log_theta_weight(1, gamma * lam1, l, g, om, gamma, ThetaVariant::lambda_exponent) ==
        doctest::Approx(-lam1).epsilon(1e-12));
  double prev = -1.0;
  for (double xi = 0.1; xi < 100.0; xi *= 1.3) {
    const double t = theta_weight(2, xi, l, g, om, gamma);
    REQUIRE(t >= prev);
    prev = t;
  }
  CHECK(theta_sum(0.0, 3, l, g, om, gamma).log_theta == -INFINITY);

  const Ladder single = build_ladder(g, 4, 2.0, 0);
  REQUIRE(single.indices.size() == 1);
  const double lam = std::exp(g.log_lambda(4));
  for (double xi : {0.5, 3.0, 17.0}) {
    const unsigned k = 3;
    const double th = std::exp(-oracle::omega(g, lam)) * std::pow(xi / (gamma * lam), 4);
    const double psi = std::pow(xi / lam, 2 * k) / ((1 + th) * (1 + th));
    CHECK(std::exp(theta_sum(xi, k, single, g, om, gamma).log_theta) == doctest::Approx(psi).epsilon(1e-12));
  }
}

TEST_CASE("theta sweep reports a finite constant") {
  const auto g = make_gevrey(1.0);
  const OmegaTable om(g);
  const auto r = check_theta_bound(g, om, 2.0, 1, 8, 2.0, 400);
  CHECK(r.rows.size() == 8);
  for (const auto& row : r.rows) {
    REQUIRE(std::isfinite(row.log_left));
    REQUIRE(row.log_left <= row.log_right + 1e-12);
  }
}

TEST_CASE("log spaced grid") {
  const auto g = log_spaced_grid(1e-2, 1e2, 5);
  REQUIRE(g.size() == 6);
  CHECK(g[0] == 0.0);
  CHECK(g[1] == doctest::Approx(1e-2));
  CHECK(g[3] == doctest::Approx(1.0));
  CHECK(g[5] == doctest::Approx(1e2));
}
