#ifndef CARLEMAN_WEIGHTS_HPP
#define CARLEMAN_WEIGHTS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "carleman/trend.hpp"

namespace carleman {

inline constexpr std::size_t kDefaultKMax = 100000;

// Inclusive index range [lo, hi].
struct IndexWindow {
  std::size_t lo = 1;
  std::size_t hi = 1;

  std::size_t size() const { return hi - lo + 1; }
  friend bool operator==(const IndexWindow&, const IndexWindow&) = default;
};

enum class Family { gevrey, logfam, qfam, table };

const char* to_string(Family f);

using FamilyParams = std::vector<std::pair<std::string, double>>;

// A weight sequence M_0, ..., M_kmax held as natural logarithms.
//
// M_k itself overflows any double long before k = 10^5 for the families of
// interest, so every quantity derived here (quotients mu_k, roots Lambda_k,
// comparison ratios) is produced as a log value.
class WeightSequence {
 public:
  // Validates log_m[0] == 0, log_m[1] >= 0 and finiteness. When
  // claims_log_convex is set, the table must also pass the discrete
  // log-convexity test to within 1e-12 relative.
  WeightSequence(std::string name, Family family, FamilyParams params,
                 std::vector<double> log_m, bool claims_log_convex);

  const std::string& name() const { return name_; }
  Family family() const { return family_; }
  const FamilyParams& params() const { return params_; }
  bool claims_log_convex() const { return claims_log_convex_; }

  std::size_t k_max() const { return log_m_.size() - 1; }
  double log_m(std::size_t k) const;
  std::span<const double> log_table() const { return log_m_; }

  // log mu_k = log M_k - log M_{k-1}, 1 <= k <= k_max.
  double log_mu(std::size_t k) const;
  // log Lambda_k = log M_k / k, 1 <= k <= k_max.
  double log_lambda(std::size_t k) const;

 private:
  std::string name_;
  Family family_;
  FamilyParams params_;
  std::vector<double> log_m_;
  bool claims_log_convex_;
};

// (k!)^s, s >= 1.
WeightSequence make_gevrey(double s, std::size_t k_max = kDefaultKMax);
// (k!)^s (log(k+e))^{sigma k}, s >= 1, sigma >= 0.
WeightSequence make_log_family(double s, double sigma, std::size_t k_max = kDefaultKMax);
// q^{k^2}, q > 1.
WeightSequence make_q_family(double q, std::size_t k_max = kDefaultKMax);
// Raw log table; log-convexity is not claimed.
WeightSequence make_table(std::string name, std::vector<double> log_m);

enum class Condition {
  log_convex,
  analytic_inclusion,
  moderate_growth,
  deriv_closed,
  root_divergence,
  admissible
};

const char* to_string(Condition c);

struct ConditionReport {
  Condition condition = Condition::log_convex;
  bool holds = false;
  // Fitted constant (delta, D or sigma); finite and >= 1 when present.
  std::optional<double> constant;
  // A = D/2 for moderate growth.
  std::optional<double> derived_constant;
  // First violating index (log-convexity) or the index of the window
  // maximum of a ratio judged unbounded.
  std::optional<std::size_t> witness;
  // Log of the ratio at the witness index.
  std::optional<double> witness_log_value;
  IndexWindow window;
  // Finite-window verdicts on asymptotic conditions are heuristics.
  bool heuristic = false;
  TailTrend trend = TailTrend::inconclusive;
};

ConditionReport check_log_convex(const WeightSequence& seq, IndexWindow window);
// k <= delta Lambda_k.
ConditionReport check_analytic_inclusion(const WeightSequence& seq, IndexWindow window);
// mu_k <= D Lambda_k.
ConditionReport check_moderate_growth(const WeightSequence& seq, IndexWindow window);
// Lambda_{k+1} <= sigma Lambda_k, sigma > 1.
ConditionReport check_deriv_closed(const WeightSequence& seq, IndexWindow window);
// Lambda_k -> infinity, judged from growth over the window tail.
ConditionReport check_root_divergence(const WeightSequence& seq, IndexWindow window);
ConditionReport is_admissible(const WeightSequence& seq, IndexWindow window);

enum class Order {
  m_precedes_n,
  n_precedes_m,
  equivalent,
  strict_m_before_n,
  strict_n_before_m,
  undetermined
};

const char* to_string(Order o);

struct Comparison {
  Order verdict = Order::undetermined;
  // h = max(1, sup_k (M_k/N_k)^{1/k}) over the window and C1 >= 1 with
  // M_k <= C1 h^k N_k on the window.
  double h = 1.0;
  double c1 = 1.0;
  double log_h = 0.0;
  TailTrend forward = TailTrend::inconclusive;
  TailTrend reverse = TailTrend::inconclusive;
  IndexWindow window;
};

Comparison compare(const WeightSequence& m, const WeightSequence& n, IndexWindow window);

}  // namespace carleman

#endif  // CARLEMAN_WEIGHTS_HPP
