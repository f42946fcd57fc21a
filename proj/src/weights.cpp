#include "carleman/weights.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace carleman {
namespace {

// Tolerance for equality-adjacent comparisons in the log domain.
double rel_tol(double v) { return 1e-12 * std::max(1.0, std::abs(v)); }

// ln k! for k = 0..k_max by compensated summation of ln i.
std::vector<double> log_factorials(std::size_t k_max) {
  std::vector<double> out(k_max + 1, 0.0);
  double sum = 0.0;
  double carry = 0.0;
  for (std::size_t i = 1; i <= k_max; ++i) {
    const double term = std::log(static_cast<double>(i));
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term))
      carry += (sum - t) + term;
    else
      carry += (term - t) + sum;
    sum = t;
    out[i] = sum + carry;
  }
  return out;
}

// Shortest round-trip text for a family parameter: 1, 1.5, 0.25.
std::string param_text(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

void require_k_max(std::size_t k_max) {
  if (k_max < 2) throw std::invalid_argument("k_max must be at least 2");
}

void require_window(const WeightSequence& seq, IndexWindow w, std::size_t top) {
  if (w.lo < 1 || w.lo > w.hi) throw std::invalid_argument("empty or invalid index window");
  if (w.hi > top)
    throw std::out_of_range("window [" + std::to_string(w.lo) + ", " + std::to_string(w.hi) +
                            "] exceeds table of " + seq.name());
}

// Shared tail of the "finite constant" checks: f holds log ratios over the
// window, the constant is exp(max f) clamped below by `floor`.
ConditionReport bounded_ratio_report(Condition c, std::span<const double> f, IndexWindow w,
                                     double floor) {
  ConditionReport r;
  r.condition = c;
  r.window = w;
  r.heuristic = true;
  r.trend = classify_tail(f, w.lo);
  const auto top = std::max_element(f.begin(), f.end());
  const std::size_t argmax = w.lo + static_cast<std::size_t>(top - f.begin());
  r.holds = r.trend == TailTrend::bounded;
  if (r.holds) {
    r.constant = std::max(floor, std::exp(*top));
  } else {
    r.witness = argmax;
    r.witness_log_value = *top;
  }
  return r;
}

}  // namespace

const char* to_string(Family f) {
  switch (f) {
    case Family::gevrey: return "gevrey";
    case Family::logfam: return "logfam";
    case Family::qfam: return "qfam";
    case Family::table: return "table";
  }
  return "?";
}

const char* to_string(Condition c) {
  switch (c) {
    case Condition::log_convex: return "log-convex";
    case Condition::analytic_inclusion: return "analytic-inclusion";
    case Condition::moderate_growth: return "moderate-growth";
    case Condition::deriv_closed: return "deriv-closed";
    case Condition::root_divergence: return "root-divergence";
    case Condition::admissible: return "admissible";
  }
  return "?";
}

const char* to_string(Order o) {
  switch (o) {
    case Order::m_precedes_n: return "m_precedes_n";
    case Order::n_precedes_m: return "n_precedes_m";
    case Order::equivalent: return "equivalent";
    case Order::strict_m_before_n: return "strict_m_before_n";
    case Order::strict_n_before_m: return "strict_n_before_m";
    case Order::undetermined: return "undetermined";
  }
  return "?";
}

WeightSequence::WeightSequence(std::string name, Family family, FamilyParams params,
                               std::vector<double> log_m, bool claims_log_convex)
    : name_(std::move(name)),
      family_(family),
      params_(std::move(params)),
      log_m_(std::move(log_m)),
      claims_log_convex_(claims_log_convex) {
  if (log_m_.size() < 2) throw std::invalid_argument("weight table needs M_0 and M_1");
  if (log_m_[0] != 0.0) throw std::invalid_argument("weight table must have M_0 = 1");
  if (log_m_[1] < 0.0) throw std::invalid_argument("weight table must have M_1 >= 1");
  for (std::size_t k = 0; k < log_m_.size(); ++k) {
    if (!std::isfinite(log_m_[k]))
      throw std::invalid_argument("non-finite log M_" + std::to_string(k) + " in " + name_);
  }
  if (claims_log_convex_) {
    for (std::size_t k = 1; k + 1 < log_m_.size(); ++k) {
      if (2.0 * log_m_[k] > log_m_[k - 1] + log_m_[k + 1] + rel_tol(log_m_[k]))
        throw std::invalid_argument(name_ + " claims log-convexity but fails at k = " +
                                    std::to_string(k));
    }
  }
}

double WeightSequence::log_m(std::size_t k) const {
  if (k > k_max()) throw std::out_of_range("index " + std::to_string(k) + " beyond k_max");
  return log_m_[k];
}

double WeightSequence::log_mu(std::size_t k) const {
  if (k < 1 || k > k_max()) throw std::out_of_range("mu index out of range");
  return log_m_[k] - log_m_[k - 1];
}

double WeightSequence::log_lambda(std::size_t k) const {
  if (k < 1 || k > k_max()) throw std::out_of_range("Lambda index out of range");
  return log_m_[k] / static_cast<double>(k);
}

WeightSequence make_gevrey(double s, std::size_t k_max) {
  if (!(s >= 1.0)) throw std::invalid_argument("Gevrey exponent must satisfy s >= 1");
  require_k_max(k_max);
  std::vector<double> log_m = log_factorials(k_max);
  for (double& v : log_m) v *= s;
  return WeightSequence("G^" + param_text(s), Family::gevrey, {{"s", s}}, std::move(log_m),
                        true);
}

WeightSequence make_log_family(double s, double sigma, std::size_t k_max) {
  if (!(s >= 1.0)) throw std::invalid_argument("log family requires s >= 1");
  if (!(sigma >= 0.0)) throw std::invalid_argument("log family requires sigma >= 0");
  require_k_max(k_max);
  std::vector<double> log_m = log_factorials(k_max);
  for (std::size_t k = 0; k <= k_max; ++k) {
    const double kd = static_cast<double>(k);
    log_m[k] = s * log_m[k] + sigma * kd * std::log(std::log(kd + std::numbers::e));
  }
  return WeightSequence("N^{" + param_text(s) + "," + param_text(sigma) + "}",
                        Family::logfam, {{"s", s}, {"sigma", sigma}}, std::move(log_m), true);
}

WeightSequence make_q_family(double q, std::size_t k_max) {
  if (!(q > 1.0)) throw std::invalid_argument("q family requires q > 1");
  require_k_max(k_max);
  const double lq = std::log(q);
  std::vector<double> log_m(k_max + 1);
  for (std::size_t k = 0; k <= k_max; ++k) {
    const double kd = static_cast<double>(k);
    log_m[k] = kd * kd * lq;
  }
  return WeightSequence("L^" + param_text(q), Family::qfam, {{"q", q}}, std::move(log_m),
                        true);
}

WeightSequence make_table(std::string name, std::vector<double> log_m) {
  return WeightSequence(std::move(name), Family::table, {}, std::move(log_m), false);
}

ConditionReport check_log_convex(const WeightSequence& seq, IndexWindow w) {
  require_window(seq, w, seq.k_max() - 1);
  ConditionReport r;
  r.condition = Condition::log_convex;
  r.window = w;
  r.holds = true;
  r.trend = TailTrend::bounded;
  const auto lm = seq.log_table();
  for (std::size_t k = w.lo; k <= w.hi; ++k) {
    if (2.0 * lm[k] > lm[k - 1] + lm[k + 1] + rel_tol(lm[k])) {
      r.holds = false;
      r.witness = k;
      r.witness_log_value = 2.0 * lm[k] - lm[k - 1] - lm[k + 1];
      break;
    }
  }
  return r;
}

ConditionReport check_analytic_inclusion(const WeightSequence& seq, IndexWindow w) {
  require_window(seq, w, seq.k_max());
  std::vector<double> f(w.size());
  for (std::size_t k = w.lo; k <= w.hi; ++k)
    f[k - w.lo] = std::log(static_cast<double>(k)) - seq.log_lambda(k);
  return bounded_ratio_report(Condition::analytic_inclusion, f, w, 1.0);
}

ConditionReport check_moderate_growth(const WeightSequence& seq, IndexWindow w) {
  require_window(seq, w, seq.k_max());
  std::vector<double> f(w.size());
  for (std::size_t k = w.lo; k <= w.hi; ++k) f[k - w.lo] = seq.log_mu(k) - seq.log_lambda(k);
  ConditionReport r = bounded_ratio_report(Condition::moderate_growth, f, w, 1.0);
  if (r.constant) r.derived_constant = *r.constant / 2.0;
  return r;
}

ConditionReport check_deriv_closed(const WeightSequence& seq, IndexWindow w) {
  require_window(seq, w, seq.k_max() - 1);
  std::vector<double> f(w.size());
  for (std::size_t k = w.lo; k <= w.hi; ++k)
    f[k - w.lo] = seq.log_lambda(k + 1) - seq.log_lambda(k);
  return bounded_ratio_report(Condition::deriv_closed, f, w, 1.0 + 1e-9);
}

ConditionReport check_root_divergence(const WeightSequence& seq, IndexWindow w) {
  require_window(seq, w, seq.k_max());
  if (w.size() < 2) throw std::invalid_argument("root divergence needs at least two indices");
  ConditionReport r;
  r.condition = Condition::root_divergence;
  r.window = w;
  r.heuristic = true;
  const std::size_t t0 = tail_start(w.lo, w.hi);
  const double growth = seq.log_lambda(w.hi) - seq.log_lambda(t0);
  r.holds = growth > rel_tol(seq.log_lambda(w.hi));
  r.trend = r.holds ? TailTrend::divergent : TailTrend::bounded;
  if (!r.holds) {
    r.witness = w.hi;
    r.witness_log_value = seq.log_lambda(w.hi);
  }
  return r;
}

ConditionReport is_admissible(const WeightSequence& seq, IndexWindow w) {
  const ConditionReport inclusion = check_analytic_inclusion(seq, w);
  const ConditionReport growth = check_moderate_growth(seq, w);
  ConditionReport r;
  r.condition = Condition::admissible;
  r.window = w;
  r.heuristic = true;
  r.holds = inclusion.holds && growth.holds;
  r.trend = r.holds ? TailTrend::bounded : TailTrend::divergent;
  if (!inclusion.holds) {
    r.witness = inclusion.witness;
    r.witness_log_value = inclusion.witness_log_value;
  } else if (!growth.holds) {
    r.witness = growth.witness;
    r.witness_log_value = growth.witness_log_value;
  }
  return r;
}

Comparison compare(const WeightSequence& m, const WeightSequence& n, IndexWindow w) {
  require_window(m, w, m.k_max());
  require_window(n, w, n.k_max());
  std::vector<double> fwd(w.size());
  std::vector<double> rev(w.size());
  for (std::size_t k = w.lo; k <= w.hi; ++k) {
    const double lr = (m.log_m(k) - n.log_m(k)) / static_cast<double>(k);
    fwd[k - w.lo] = lr;
    rev[k - w.lo] = -lr;
  }
  Comparison c;
  c.window = w;
  c.forward = classify_tail(fwd, w.lo);
  c.reverse = classify_tail(rev, w.lo);
  c.log_h = std::max(0.0, *std::max_element(fwd.begin(), fwd.end()));
  c.h = std::exp(c.log_h);
  double log_c1 = 0.0;
  for (std::size_t k = w.lo; k <= w.hi; ++k)
    log_c1 = std::max(log_c1, m.log_m(k) - n.log_m(k) - static_cast<double>(k) * c.log_h);
  c.c1 = std::exp(log_c1);

  using T = TailTrend;
  if (c.forward == T::bounded && c.reverse == T::bounded)
    c.verdict = Order::equivalent;
  else if (c.forward == T::bounded)
    c.verdict = c.reverse == T::divergent ? Order::strict_m_before_n : Order::m_precedes_n;
  else if (c.reverse == T::bounded)
    c.verdict = c.forward == T::divergent ? Order::strict_n_before_m : Order::n_precedes_m;
  else
    c.verdict = Order::undetermined;
  return c;
}

}  // namespace carleman
