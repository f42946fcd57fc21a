#ifndef CARLEMAN_ASSOC_HPP
#define CARLEMAN_ASSOC_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "carleman/weights.hpp"

namespace carleman {

// omega_M(t) = sup_k log(t^k / M_k) by direct maximization over every stored
// k (the k = 0 term makes the result nonnegative). Linear in k_max; this is
// the oracle for OmegaTable.
double omega_brute(const WeightSequence& seq, double t);

// Piecewise evaluation of omega_M from the quotient breakpoints mu_k.
//
// On [mu_k, mu_{k+1}) the supremum is attained at k, so a binary search over
// log mu_k followed by one affine evaluation in log t gives omega exactly.
// Requires a non-decreasing quotient table (log-convex input). Arguments
// beyond mu_{k_max} are rejected rather than extrapolated.
class OmegaTable {
 public:
  explicit OmegaTable(const WeightSequence& seq);

  const std::string& name() const { return name_; }
  std::size_t k_max() const { return log_m_.size() - 1; }
  // log mu_{k_max}: the largest certified log t.
  double log_t_max() const { return log_mu_.back(); }
  double log_mu(std::size_t k) const { return log_mu_.at(k); }

  // Maximizing index for log t = x: the largest k with log mu_k <= x.
  std::size_t segment(double log_t) const;

  double operator()(double t) const;
  double at_log(double log_t) const;

 private:
  double evaluate(long double log_t) const;

  std::string name_;
  std::vector<double> log_m_;
  std::vector<double> log_mu_;  // log_mu_[0] unused (= -inf)
};

double omega_fast(const OmegaTable& table, double t);

struct Lemma2Row {
  std::size_t k = 0;
  double log_lambda = 0.0;
  double omega = 0.0;  // omega_M(Lambda_k)
  double ratio = 0.0;  // omega_M(Lambda_k) / k
};

struct Lemma2Fit {
  std::vector<Lemma2Row> rows;
  IndexWindow window;
  // Window maximum of omega(Lambda_k)/k and where it is attained.
  double max_ratio = 0.0;
  std::size_t argmax = 0;
  TailTrend trend = TailTrend::inconclusive;
  // Fitted H; absent when the ratio does not stay bounded on the window.
  std::optional<double> h;
  // D from the moderate-growth check and H_theory = log max(D, e).
  std::optional<double> d;
  std::optional<double> h_theory;
  bool within_theory = false;
  bool admissible = false;
};

// omega_M(Lambda_k) <= H k on the window, with the bound H = log D.
Lemma2Fit lemma2_fit(const WeightSequence& seq, IndexWindow window);

}  // namespace carleman

#endif  // CARLEMAN_ASSOC_HPP
