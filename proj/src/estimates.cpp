#include "carleman/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "carleman/logsum.hpp"
#include "carleman/norms.hpp"

namespace carleman {
namespace {

double log_volume(std::size_t dim) { return static_cast<double>(dim) * std::log(kTwoPi); }

// 2 log ||u||_{L^2} from the spectrum; -inf for u = 0.
double log_sq_norm(const GridFunction& u) {
  double s = 0.0;
  for (const cplx& c : u.spectrum()) s += std::norm(c);
  return safe_log(s) + log_volume(u.dim());
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::bounded_geometric: return "bounded-geometric";
    case Verdict::violated: return "violated";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

EstimateRow make_row(unsigned k, double log_left, double log_right, std::optional<std::size_t> sample) {
  EstimateRow r;
  r.k = k;
  r.sample = sample;
  r.log_left = log_left;
  r.log_right = log_right;
  r.left = std::exp(log_left);
  r.right = std::exp(log_right);
  if (log_right == kNegInf) {
    r.skipped = true;
    r.ratio = 0.0;
  } else {
    r.ratio = std::exp(log_left - log_right);
  }
  return r;
}

std::optional<GeometricFit> fit_geometric(std::span<const EstimateRow> rows, FitShape shape) {
  std::map<unsigned, double> envelope;
  for (const EstimateRow& r : rows) {
    if (r.skipped || r.log_left == kNegInf) continue;
    const double y = r.log_left - r.log_right;
    auto [it, fresh] = envelope.emplace(r.k, y);
    if (!fresh) it->second = std::max(it->second, y);
  }
  if (envelope.size() < 2) return std::nullopt;
  if (shape == FitShape::running_max) {
    double top = kNegInf;
    for (auto& [k, y] : envelope) y = top = std::max(top, y);
  }

  // The line is fitted on the upper half of the sweep (at least two k).
  const std::vector<std::pair<unsigned, double>> all(envelope.begin(), envelope.end());
  const std::size_t first = all.size() - std::max<std::size_t>(2, (all.size() + 1) / 2);
  const std::span<const std::pair<unsigned, double>> upper(all.begin() + static_cast<long>(first), all.end());

  const double n = static_cast<double>(upper.size());
  double sk = 0.0, sy = 0.0;
  for (const auto& [k, y] : upper) {
    sk += k;
    sy += y;
  }
  const double mk = sk / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [k, y] : upper) {
    sxx += (k - mk) * (k - mk);
    sxy += (k - mk) * (y - my);
  }
  GeometricFit fit;
  fit.points = upper.size();
  fit.first_k = upper.front().first;
  fit.log_gamma = sxy / sxx;
  const double intercept = my - fit.log_gamma * mk;
  fit.max_residual = -std::numeric_limits<double>::infinity();
  for (const auto& [k, y] : upper)
    fit.max_residual = std::max(fit.max_residual, y - (intercept + fit.log_gamma * k));
  // C is lifted over every row, not only the fitted ones.
  double lift = 0.0;
  for (const auto& [k, y] : all) lift = std::max(lift, y - (intercept + fit.log_gamma * k));
  fit.log_c = intercept + lift;
  fit.c = std::exp(fit.log_c);
  fit.gamma = std::exp(fit.log_gamma);

  fit.concave = true;
  double prev_slope = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < upper.size(); ++i) {
    const double slope = (upper[i + 1].second - upper[i].second) / static_cast<double>(upper[i + 1].first - upper[i].first);
    if (slope > prev_slope + 1e-12 * std::max(1.0, std::abs(prev_slope))) {
      fit.concave = false;
      break;
    }
    prev_slope = slope;
  }
  return fit;
}

Verdict fit_verdict(const std::optional<GeometricFit>& fit) {
  if (!fit) return Verdict::inconclusive;
  if (fit->max_residual < 0.5 || fit->concave) return Verdict::bounded_geometric;
  return Verdict::inconclusive;
}

BandDecomposition band_decompose(const GridFunction& u, const Ladder& ladder, const WeightSequence& seq) {
  BandDecomposition out;
  for (std::size_t kj : ladder.indices) out.log_upper_edges.push_back(seq.log_lambda(kj));
  const std::size_t bands = out.log_upper_edges.size();
  std::vector<std::vector<cplx>> parts(bands + 1, std::vector<cplx>(u.size()));
  const auto spec = u.spectrum();
  for (std::size_t f = 0; f < spec.size(); ++f) {
    if (spec[f] == cplx{}) continue;
    const double r = u.abs_frequency(f);
    const double lr = r > 0.0 ? std::log(r) : kNegInf;
    // First band whose closed upper edge covers |xi|.
    const auto it = std::lower_bound(out.log_upper_edges.begin(), out.log_upper_edges.end(), lr);
    const std::size_t band = static_cast<std::size_t>(it - out.log_upper_edges.begin());
    parts[band][f] = spec[f];
    if (band == bands) out.uncovered = true;
  }
  if (!out.uncovered) parts.pop_back();
  for (auto& p : parts) out.parts.push_back(GridFunction::from_spectrum(u.dim(), u.n(), std::move(p)));
  return out;
}

EstimateReport check_eq19(const GridFunction& u, const WeightSequence& seq, unsigned k) {
  if (k < 1 || k > derivative_guard(u.n())) throw std::invalid_argument("weighted Plancherel order outside [1, N/4]");
  const double lam = std::exp(seq.log_lambda(k));
  std::vector<double> terms;
  const auto spec = u.spectrum();
  for (std::size_t f = 0; f < spec.size(); ++f) {
    if (spec[f] == cplx{}) continue;
    terms.push_back(2.0 * k * std::log(lam + u.abs_frequency(f)) + std::log(std::norm(spec[f])));
  }
  const double log_left = log_sum_exp(terms) + log_volume(u.dim());
  const double log_right =
      k * std::log(4.0) + 2.0 * log_triple_norm(derivative_norms(u, k), seq, k);

  EstimateReport rep;
  rep.tag = "weighted_plancherel";
  rep.params = {{"k", static_cast<double>(k)}};
  rep.rows.push_back(make_row(k, log_left, log_right));
  const bool violated = log_left > log_right + std::log1p(1e-8);
  rep.verdict = violated ? Verdict::violated : Verdict::bounded_geometric;
  if (rep.rows.back().skipped) rep.notes.push_back("u = 0: both sides vanish");
  return rep;
}

EstimateReport check_lemma4(const GridFunction& u, const CutoffFamily& family, const WeightSequence& seq,
                            unsigned k_lo, unsigned k_hi) {
  if (k_lo < 1 || k_lo > k_hi || k_hi > family.k_top)
    throw std::invalid_argument("cutoff estimate k-range outside the cutoff family");
  const DerivativeNorms on_u = derivative_norms(u, k_hi, family.outer);
  EstimateReport rep;
  rep.tag = "cutoff_estimate";
  rep.params = {{"k_lo", static_cast<double>(k_lo)},
                {"k_hi", static_cast<double>(k_hi)},
                {"Q", family.q},
                {"margin", family.margin}};
  for (unsigned k = k_lo; k <= k_hi; ++k) {
    const GridFunction cut = family[k].times(u);
    const double log_left = log_triple_norm(derivative_norms(cut, k), seq, k);
    const double log_right = log_triple_norm(on_u, seq, k);
    rep.rows.push_back(make_row(k, log_left, log_right));
  }
  rep.fit = fit_geometric(rep.rows);
  rep.verdict = fit_verdict(rep.fit);
  if (std::all_of(rep.rows.begin(), rep.rows.end(), [](const EstimateRow& r) { return r.skipped; }))
    rep.notes.push_back("u vanishes on U: every ratio skipped");
  return rep;
}

EstimateRow lemma6_row(const GridFunction& u, const WeightSequence& seq, unsigned k, const Ladder& ladder,
                       const OmegaTable& omega, bool* uncovered) {
  const BandDecomposition dec = band_decompose(u, ladder, seq);
  if (uncovered) *uncovered = dec.uncovered;
  std::vector<double> terms;
  for (std::size_t j = 0; j < dec.bands(); ++j) {
    const GridFunction& part = dec.parts[j];
    const double l2 = log_sq_norm(part);
    if (l2 == kNegInf) continue;
    const double log_lam = dec.log_upper_edges[j];
    const double weighted = -2.0 * omega.at_log(log_lam) + 2.0 * log_g_norm(part, omega);
    terms.push_back(2.0 * k * log_lam + log_add(l2, weighted));
  }
  const double log_left = log_sum_exp(terms);
  const double log_right = 2.0 * log_triple_norm(derivative_norms(u, k), seq, k);
  return make_row(k, log_left, log_right);
}

EstimateReport check_lemma6(const GridFunction& u, const WeightSequence& seq, unsigned k, const Ladder& ladder,
                            const OmegaTable& omega) {
  EstimateReport rep;
  rep.tag = "band_estimate";
  rep.params = {{"k", static_cast<double>(k)},
                {"sigma", ladder.sigma},
                {"bands", static_cast<double>(ladder.bands())}};
  bool uncovered = false;
  rep.rows.push_back(lemma6_row(u, seq, k, ladder, omega, &uncovered));
  if (uncovered) rep.notes.push_back("spectrum extends beyond the last ladder band");
  rep.verdict = Verdict::inconclusive;
  return rep;
}

EstimateReport sweep_lemma6(const GridFunction& u, const WeightSequence& seq, const OmegaTable& omega,
                            unsigned k_lo, unsigned k_hi, double sigma) {
  if (k_lo < 1 || k_lo > k_hi || k_hi > derivative_guard(u.n()))
    throw std::invalid_argument("band estimate k-range outside [1, N/4]");
  EstimateReport rep;
  rep.tag = "band_estimate";
  rep.params = {{"k_lo", static_cast<double>(k_lo)}, {"k_hi", static_cast<double>(k_hi)}, {"sigma", sigma}};
  bool any_uncovered = false;
  for (unsigned k = k_lo; k <= k_hi; ++k) {
    const Ladder ladder = build_ladder(seq, k, sigma);
    bool uncovered = false;
    rep.rows.push_back(lemma6_row(u, seq, k, ladder, omega, &uncovered));
    any_uncovered = any_uncovered || uncovered;
  }
  if (any_uncovered) rep.notes.push_back("spectrum extends beyond the last ladder band");
  rep.fit = fit_geometric(rep.rows, FitShape::running_max);
  rep.verdict = fit_verdict(rep.fit);
  rep.notes.push_back("fit on the running maximum of log ratio over k");
  return rep;
}

double log_theta_weight(std::size_t j, double xi_abs, const Ladder& ladder, const WeightSequence& seq,
                        const OmegaTable& omega, double gamma, ThetaVariant variant) {
  if (!(gamma > 0.0)) throw std::invalid_argument("theta needs gamma > 0");
  if (j >= ladder.indices.size()) throw std::out_of_range("theta band index beyond the ladder");
  if (xi_abs < 0.0) throw std::invalid_argument("theta needs |xi| >= 0");
  const std::size_t kj = ladder.indices[j];
  const double log_lam = seq.log_lambda(kj);
  const double exponent = variant == ThetaVariant::omega_exponent ? omega.at_log(log_lam) : std::exp(log_lam);
  if (xi_abs == 0.0) return kNegInf;
  return -exponent + static_cast<double>(kj) * (std::log(xi_abs) - std::log(gamma) - log_lam);
}

double theta_weight(std::size_t j, double xi_abs, const Ladder& ladder, const WeightSequence& seq,
                    const OmegaTable& omega, double gamma, ThetaVariant variant) {
  return std::exp(log_theta_weight(j, xi_abs, ladder, seq, omega, gamma, variant));
}

ThetaValue theta_sum(double xi_abs, unsigned k, const Ladder& ladder, const WeightSequence& seq,
                     const OmegaTable& omega, double gamma, ThetaVariant variant) {
  ThetaValue out;
  if (xi_abs == 0.0 && k >= 1) {
    out.log_theta = kNegInf;
    return out;
  }
  const double lx = std::log(xi_abs);
  std::vector<double> terms;
  terms.reserve(ladder.indices.size());
  for (std::size_t j = 0; j < ladder.indices.size(); ++j) {
    const double log_lam = seq.log_lambda(ladder.indices[j]);
    const double lt = log_theta_weight(j, xi_abs, ladder, seq, omega, gamma, variant);
    terms.push_back(2.0 * k * (lx - log_lam) - 2.0 * softplus(lt));
  }
  out.log_theta = log_sum_exp(terms);
  const double last = seq.log_lambda(ladder.indices.back());
  const double log_tail =
      2.0 * k * (lx - last) - std::log1p(-std::exp(-2.0 * k * std::log(ladder.sigma)));
  out.tail_fraction = std::exp(log_tail - log_add(out.log_theta, log_tail));
  return out;
}

ThetaMax theta_max(const Ladder& ladder, const WeightSequence& seq, const OmegaTable& omega, unsigned k,
                   double gamma, std::span<const double> xi_grid, ThetaVariant variant) {
  if (xi_grid.empty()) throw std::invalid_argument("theta needs a nonempty |xi| grid");
  ThetaMax out;
  out.log_theta = kNegInf;
  const double top = std::exp(seq.log_lambda(ladder.indices.back()));
  for (double xi : xi_grid) {
    const ThetaValue v = theta_sum(xi, k, ladder, seq, omega, gamma, variant);
    if (v.log_theta > out.log_theta) {
      out.log_theta = v.log_theta;
      out.argmax = xi;
    }
    if (xi <= top) out.tail_fraction = std::max(out.tail_fraction, v.tail_fraction);
  }
  return out;
}

EstimateReport check_theta_bound(const WeightSequence& seq, const OmegaTable& omega, double sigma, unsigned k_lo,
                                 unsigned k_hi, double gamma, std::size_t grid_points, ThetaVariant variant) {
  if (k_lo < 1 || k_lo > k_hi) throw std::invalid_argument("theta k-range must be nonempty and start at 1+");
  EstimateReport rep;
  rep.tag = "theta";
  double worst_tail = 0.0;
  std::vector<double> f;
  std::vector<double> log_max;
  for (unsigned k = k_lo; k <= k_hi; ++k) {
    const Ladder ladder = build_ladder(seq, k, sigma);
    const double top = std::exp(seq.log_lambda(ladder.indices.back()));
    const std::vector<double> grid = log_spaced_grid(1e-2, top, grid_points);
    const ThetaMax m = theta_max(ladder, seq, omega, k, gamma, grid, variant);
    worst_tail = std::max(worst_tail, m.tail_fraction);
    log_max.push_back(m.log_theta);
    f.push_back(m.log_theta / (k + 1.0));
  }
  const double log_c = std::max(0.0, *std::max_element(f.begin(), f.end()));
  bool non_increasing = true;
  for (unsigned k = std::max(k_lo, 2u); k < k_hi; ++k) {
    const double a = f[k - k_lo];
    const double b = f[k + 1 - k_lo];
    if (b > a + 1e-12 * std::max(1.0, std::abs(a))) non_increasing = false;
  }
  for (unsigned k = k_lo; k <= k_hi; ++k) rep.rows.push_back(make_row(k, log_max[k - k_lo], (k + 1.0) * log_c));

  GeometricFit fit;
  fit.log_c = log_c;
  fit.c = std::exp(log_c);
  fit.log_gamma = log_c;
  fit.gamma = fit.c;
  fit.points = log_max.size();
  fit.first_k = k_lo;
  fit.concave = non_increasing;
  rep.fit = fit;
  rep.verdict = non_increasing ? Verdict::bounded_geometric : Verdict::inconclusive;
  rep.params = {{"k_lo", static_cast<double>(k_lo)},
                {"k_hi", static_cast<double>(k_hi)},
                {"sigma", sigma},
                {"gamma", gamma},
                {"tail_fraction", worst_tail},
                {"variant", variant == ThetaVariant::omega_exponent ? 0.0 : 1.0}};
  if (!non_increasing) rep.notes.push_back("log Theta_max / (k + 1) increases along the sweep");
  if (worst_tail > 1e-14) rep.notes.push_back("ladder tail beyond the table exceeds 1e-14 of Theta");
  return rep;
}

std::vector<double> log_spaced_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) throw std::invalid_argument("bad log-spaced grid");
  std::vector<double> g{0.0};
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i)
    g.push_back(std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1)));
  return g;
}

}  // namespace carleman
