#include "carleman/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace carleman {
namespace {

double edge_tol(double v) { return 1e-12 * std::max(1.0, std::abs(v)); }

std::vector<double> lambda_table(const WeightSequence& seq) {
  std::vector<double> out(seq.k_max() + 1, 0.0);
  for (std::size_t m = 1; m <= seq.k_max(); ++m) {
    out[m] = seq.log_lambda(m);
    if (m > 1 && out[m] < out[m - 1] - edge_tol(out[m]))
      throw std::invalid_argument("ladder needs a non-decreasing Lambda table; " + seq.name() +
                                  " decreases at m = " + std::to_string(m));
  }
  return out;
}

}  // namespace

double Ladder::log_lower_edge(const WeightSequence& seq, std::size_t j) const {
  if (j == 0) return -std::numeric_limits<double>::infinity();
  return seq.log_lambda(base_k) + static_cast<double>(j - 1) * std::log(sigma);
}

double Ladder::log_upper_edge(const WeightSequence& seq, std::size_t j) const {
  return seq.log_lambda(base_k) + static_cast<double>(j) * std::log(sigma);
}

std::size_t max_bands(const WeightSequence& seq, std::size_t k, double sigma) {
  if (!(sigma > 1.0)) throw std::invalid_argument("band ratio sigma must exceed 1");
  const double span = seq.log_lambda(seq.k_max()) - seq.log_lambda(k);
  if (span <= 0.0) return 0;
  return static_cast<std::size_t>(std::floor(span / std::log(sigma) + 1e-12));
}

double default_sigma(const WeightSequence& seq) {
  const ConditionReport r = check_deriv_closed(seq, {1, seq.k_max() - 1});
  if (!r.constant) throw std::runtime_error("no finite derivation-closedness constant for " + seq.name());
  return *r.constant * (1.0 + 1e-6);
}

Ladder build_ladder(const WeightSequence& seq, std::size_t k, double sigma,
                    std::optional<std::size_t> j_max) {
  if (k < 1 || k > seq.k_max()) throw std::out_of_range("ladder base index out of range");
  if (!(sigma > 1.0)) throw std::invalid_argument("band ratio sigma must exceed 1");
  const std::vector<double> lam = lambda_table(seq);
  const double log_sigma = std::log(sigma);
  const std::size_t fit = max_bands(seq, k, sigma);

  Ladder ladder;
  ladder.base_k = k;
  ladder.sigma = sigma;
  ladder.requested_bands = j_max.value_or(fit);
  ladder.indices.push_back(k);
  const std::size_t bands = std::min(ladder.requested_bands, fit);
  ladder.truncated = bands < ladder.requested_bands;

  for (std::size_t j = 1; j <= bands; ++j) {
    const double upper = lam[k] + static_cast<double>(j) * log_sigma;
    const double lower = lam[k] + static_cast<double>(j - 1) * log_sigma;
    // Greatest m with log Lambda_m <= upper.
    const auto it = std::upper_bound(lam.begin() + 1, lam.end(), upper + edge_tol(upper));
    const std::size_t m = static_cast<std::size_t>(it - lam.begin()) - 1;
    if (m < 1 || !(lam[m] > lower + edge_tol(lower)))
      throw EmptyBandError(j, "band " + std::to_string(j) + " of the ladder at k = " +
                                  std::to_string(k) + " is empty for sigma = " +
                                  std::to_string(sigma) + " on " + seq.name());
    ladder.indices.push_back(m);
  }
  return ladder;
}

LadderCheck verify_ladder(const Ladder& ladder, const WeightSequence& seq) {
  constexpr double tol = 1e-10;
  LadderCheck check;
  if (ladder.indices.empty() || ladder.indices.front() != ladder.base_k) {
    check.ok = false;
    check.violated_band = 0;
    check.min_margin = -1.0;
    return check;
  }
  const double base = seq.log_lambda(ladder.base_k);
  const double log_sigma = std::log(ladder.sigma);
  check.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < ladder.indices.size(); ++j) {
    BandMargin m;
    m.band = j;
    m.index = ladder.indices[j];
    const double v = seq.log_lambda(m.index);
    if (j == 0) {
      m.lower = base - v;
      m.upper = base - v;
    } else {
      m.lower = v - (base + static_cast<double>(j - 1) * log_sigma);
      m.upper = base + static_cast<double>(j) * log_sigma - v;
    }
    check.min_margin = std::min({check.min_margin, m.lower, m.upper});
    // An index that does not advance sits at or below the previous upper
    // edge, which the strict lower edge excludes even at zero margin.
    const bool stalled = j > 0 && m.index <= ladder.indices[j - 1];
    if ((m.lower < -tol || m.upper < -tol || stalled) && !check.violated_band) {
      check.ok = false;
      check.violated_band = j;
    }
    check.margins.push_back(m);
  }
  return check;
}

bool maximality_check(const Ladder& ladder, const WeightSequence& seq) {
  const double base = seq.log_lambda(ladder.base_k);
  const double log_sigma = std::log(ladder.sigma);
  for (std::size_t j = 1; j < ladder.indices.size(); ++j) {
    const std::size_t kj = ladder.indices[j];
    if (kj >= seq.k_max()) continue;
    const double upper = base + static_cast<double>(j) * log_sigma;
    if (!(seq.log_lambda(kj + 1) > upper + edge_tol(upper))) return false;
  }
  return true;
}

}  // namespace carleman
