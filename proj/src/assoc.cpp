#include "carleman/assoc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "carleman/logsum.hpp"

namespace carleman {

double omega_brute(const WeightSequence& seq, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("omega requires t > 0");
  // k log t reaches ~1e6 at the top of the table; extended precision keeps the
  // difference accurate to ~1e-12 absolute.
  const long double x = std::log(static_cast<long double>(t));
  const auto lm = seq.log_table();
  long double best = 0.0L;
  for (std::size_t k = 1; k < lm.size(); ++k)
    best = std::max(best, static_cast<long double>(k) * x - static_cast<long double>(lm[k]));
  return static_cast<double>(best);
}

OmegaTable::OmegaTable(const WeightSequence& seq)
    : name_(seq.name()), log_m_(seq.log_table().begin(), seq.log_table().end()) {
  log_mu_.assign(log_m_.size(), kNegInf);
  for (std::size_t k = 1; k < log_m_.size(); ++k) {
    log_mu_[k] = log_m_[k] - log_m_[k - 1];
    if (k > 1 && log_mu_[k] < log_mu_[k - 1] - 1e-12 * std::max(1.0, std::abs(log_mu_[k])))
      throw std::invalid_argument("omega table needs non-decreasing quotients; " + name_ +
                                  " fails at k = " + std::to_string(k));
  }
}

std::size_t OmegaTable::segment(double log_t) const {
  // First k >= 1 with log mu_k > log t, minus one. Ties resolve to the
  // largest qualifying index.
  const auto it = std::upper_bound(log_mu_.begin() + 1, log_mu_.end(), log_t);
  return static_cast<std::size_t>(it - log_mu_.begin()) - 1;
}

double OmegaTable::at_log(double log_t) const {
  if (std::isnan(log_t)) throw std::invalid_argument("omega of NaN");
  if (log_t > log_t_max() + 1e-12 * std::max(1.0, std::abs(log_t_max())))
    throw std::out_of_range("t beyond mu_kmax of " + name_ + "; omega is not certified there");
  return evaluate(log_t);
}

double OmegaTable::evaluate(long double log_t) const {
  const std::size_t k = segment(static_cast<double>(log_t));
  if (k == 0) return 0.0;
  // Neighbouring segments are evaluated with the same arithmetic as the
  // brute-force sup so that rounding near breakpoints cannot pick a
  // different maximizer value.
  auto value = [&](std::size_t j) {
    return static_cast<long double>(j) * log_t - static_cast<long double>(log_m_[j]);
  };
  long double best = std::max(0.0L, value(k));
  if (k > 1) best = std::max(best, value(k - 1));
  if (k + 1 < log_m_.size()) best = std::max(best, value(k + 1));
  return static_cast<double>(best);
}

double OmegaTable::operator()(double t) const {
  if (!(t > 0.0)) throw std::invalid_argument("omega requires t > 0");
  const long double log_t = std::log(static_cast<long double>(t));
  if (log_t > log_t_max() + 1e-12 * std::max(1.0, std::abs(log_t_max())))
    throw std::out_of_range("t beyond mu_kmax of " + name_ + "; omega is not certified there");
  return evaluate(log_t);
}

double omega_fast(const OmegaTable& table, double t) { return table(t); }

Lemma2Fit lemma2_fit(const WeightSequence& seq, IndexWindow w) {
  if (w.lo < 1 || w.lo > w.hi || w.hi > seq.k_max())
    throw std::out_of_range("omega ratio window outside table");
  const OmegaTable omega(seq);
  Lemma2Fit fit;
  fit.window = w;
  fit.rows.reserve(w.size());
  std::vector<double> ratios;
  ratios.reserve(w.size());
  for (std::size_t k = w.lo; k <= w.hi; ++k) {
    Lemma2Row row;
    row.k = k;
    row.log_lambda = seq.log_lambda(k);
    row.omega = omega.at_log(row.log_lambda);
    row.ratio = row.omega / static_cast<double>(k);
    ratios.push_back(row.ratio);
    fit.rows.push_back(row);
  }
  const auto top = std::max_element(ratios.begin(), ratios.end());
  fit.max_ratio = *top;
  fit.argmax = w.lo + static_cast<std::size_t>(top - ratios.begin());
  fit.trend = classify_tail(ratios, w.lo);
  if (fit.trend == TailTrend::bounded) fit.h = fit.max_ratio;

  const ConditionReport admissible = is_admissible(seq, w);
  fit.admissible = admissible.holds;
  const ConditionReport growth = check_moderate_growth(seq, w);
  if (growth.constant) {
    fit.d = std::max(*growth.constant, std::numbers::e);
    fit.h_theory = std::log(*fit.d);
    fit.within_theory = fit.h.has_value() && *fit.h <= *fit.h_theory + 1e-9;
  }
  return fit;
}

}  // namespace carleman
