#ifndef CARLEMAN_ESTIMATES_HPP
#define CARLEMAN_ESTIMATES_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "carleman/assoc.hpp"
#include "carleman/cutoff.hpp"
#include "carleman/grid.hpp"
#include "carleman/ladder.hpp"
#include "carleman/weights.hpp"

namespace carleman {

enum class Verdict { bounded_geometric, violated, inconclusive };

const char* to_string(Verdict v);

// One measured instance of "left <= const * right". Values are kept as logs
// too, since either side may overflow a double for large k.
struct EstimateRow {
  unsigned k = 0;
  std::optional<std::size_t> sample;  // test-function index when a set is swept
  double left = 0.0;
  double right = 0.0;
  double ratio = 0.0;
  double log_left = 0.0;
  double log_right = 0.0;
  bool skipped = false;  // degenerate 0/0 instance
};

// Least-squares line through (k, log ratio) over the upper half of the
// distinct k (at least two), using the per-k maximum when several rows share
// a k. `c` is lifted by the largest positive residual over all rows, so
// ratio <= c * gamma^k holds on every row of the sweep.
struct GeometricFit {
  double log_c = 0.0;
  double log_gamma = 0.0;
  double c = 1.0;
  double gamma = 1.0;
  double max_residual = 0.0;
  std::size_t points = 0;
  unsigned first_k = 0;  // smallest k in the fitted half
  // Log ratios have non-increasing increments in k (sub-geometric trend).
  bool concave = false;
};

struct EstimateReport {
  std::string tag;
  std::vector<std::pair<std::string, double>> params;
  std::vector<EstimateRow> rows;
  std::optional<GeometricFit> fit;
  Verdict verdict = Verdict::inconclusive;
  std::vector<std::string> notes;
};

EstimateRow make_row(unsigned k, double log_left, double log_right,
                     std::optional<std::size_t> sample = std::nullopt);

// running_max replaces the per-k log ratio by its maximum over all smaller k
// before fitting. Any C gamma^k (gamma >= 1) bounding the ratio bounds this
// envelope too; it removes the jitter of sweeps whose ladder moves with k.
enum class FitShape { raw, running_max };

// Fit over non-skipped rows. Verdict contract: bounded-geometric when the max
// positive residual is below 0.5 (log units) or the trend is concave;
// inconclusive otherwise or with fewer than two distinct k.
std::optional<GeometricFit> fit_geometric(std::span<const EstimateRow> rows, FitShape shape = FitShape::raw);
Verdict fit_verdict(const std::optional<GeometricFit>& fit);

// Spectral partition of u along the ladder: band 0 is |xi| <= Lambda_{k_0},
// band j is Lambda_{k_{j-1}} < |xi| <= Lambda_{k_j}. Modes above
// Lambda_{k_J} go to a trailing residual part and set `uncovered`.
struct BandDecomposition {
  std::vector<GridFunction> parts;
  std::vector<double> log_upper_edges;  // log Lambda_{k_j} per ladder band
  bool uncovered = false;

  std::size_t bands() const { return log_upper_edges.size(); }
};

BandDecomposition band_decompose(const GridFunction& u, const Ladder& ladder, const WeightSequence& seq);

// int (Lambda_k + |xi|)^{2k} |uhat|^2 <= 4^k |||u|||^2 over the whole box.
// Violated iff left > right (1 + 1e-8).
EstimateReport check_eq19(const GridFunction& u, const WeightSequence& seq, unsigned k);

// |||chi_k u|||_{box,M,k} <= gamma^k |||u|||_{U,M,k} for k in [k_lo, k_hi],
// U the family's outer box.
EstimateReport check_lemma4(const GridFunction& u, const CutoffFamily& family,
                            const WeightSequence& seq, unsigned k_lo, unsigned k_hi);

// Left side of the band estimate for one k and ladder:
//   sum_j Lambda_{k_j}^{2k} (||u_j||^2 + e^{-2 omega(Lambda_{k_j})} ||u_j||_G^2)
// against right = |||u|||^2 over the whole box.
EstimateRow lemma6_row(const GridFunction& u, const WeightSequence& seq, unsigned k,
                       const Ladder& ladder, const OmegaTable& omega, bool* uncovered = nullptr);

EstimateReport check_lemma6(const GridFunction& u, const WeightSequence& seq, unsigned k,
                            const Ladder& ladder, const OmegaTable& omega);

// k-sweep of the band estimate with the ladder rebuilt at base k for each k
// (sigma as given, all bands that fit), then fitted (C, gamma) on the running
// maximum of the log ratio.
EstimateReport sweep_lemma6(const GridFunction& u, const WeightSequence& seq, const OmegaTable& omega,
                            unsigned k_lo, unsigned k_hi, double sigma);

enum class ThetaVariant { omega_exponent, lambda_exponent };

// log theta(j, xi) = -E_j + k_j (log|xi| - log gamma - log Lambda_{k_j}),
// E_j = omega(Lambda_{k_j}) (default) or Lambda_{k_j}. -inf at xi = 0.
double log_theta_weight(std::size_t j, double xi_abs, const Ladder& ladder, const WeightSequence& seq,
                        const OmegaTable& omega, double gamma,
                        ThetaVariant variant = ThetaVariant::omega_exponent);
double theta_weight(std::size_t j, double xi_abs, const Ladder& ladder, const WeightSequence& seq,
                    const OmegaTable& omega, double gamma,
                    ThetaVariant variant = ThetaVariant::omega_exponent);

// log Theta(xi) = log sum_j Psi_j(xi), Psi_j = (|xi|/Lambda_{k_j})^{2k} (1 + theta)^{-2},
// over the completed bands. The geometric bound
// (|xi|/Lambda_{k_J})^{2k} / (1 - sigma^{-2k}) on the bands beyond the table
// is not added; its share relative to Theta is reported.
struct ThetaValue {
  double log_theta = 0.0;
  double tail_fraction = 0.0;  // tail bound / (Theta + tail bound)
};

ThetaValue theta_sum(double xi_abs, unsigned k, const Ladder& ladder, const WeightSequence& seq,
                     const OmegaTable& omega, double gamma,
                     ThetaVariant variant = ThetaVariant::omega_exponent);

struct ThetaMax {
  double log_theta = 0.0;
  double argmax = 0.0;
  double tail_fraction = 0.0;  // worst over grid points inside the table
};

// max of Theta over xi_grid for one k and a fixed ladder.
ThetaMax theta_max(const Ladder& ladder, const WeightSequence& seq, const OmegaTable& omega, unsigned k,
                   double gamma, std::span<const double> xi_grid,
                   ThetaVariant variant = ThetaVariant::omega_exponent);

// k-sweep of Theta_max with the ladder rebuilt at base k for each k (with a
// ladder based below k, Psi_0 grows like |xi|^{2(k - k_0)} and Theta is
// unbounded). |xi| runs over 0 and `grid_points` log-spaced points in
// [1e-2, Lambda_{k_J}]. Rows carry left = Theta_max, right = C^{k+1} with
// C = max(1, max_k Theta_max^{1/(k+1)}). Verdict bounded-geometric iff
// log Theta_max / (k+1) is non-increasing from k = max(k_lo, 2) on.
EstimateReport check_theta_bound(const WeightSequence& seq, const OmegaTable& omega, double sigma, unsigned k_lo,
                                 unsigned k_hi, double gamma, std::size_t grid_points = 2000,
                                 ThetaVariant variant = ThetaVariant::omega_exponent);

// 0 followed by `count` log-spaced points in [lo, hi].
std::vector<double> log_spaced_grid(double lo, double hi, std::size_t count);

}  // namespace carleman

#endif  // CARLEMAN_ESTIMATES_HPP
