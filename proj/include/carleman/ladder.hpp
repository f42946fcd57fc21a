#ifndef CARLEMAN_LADDER_HPP
#define CARLEMAN_LADDER_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "carleman/weights.hpp"

namespace carleman {

// Indices k_0 = k < k_1 < ... < k_J with
//   sigma^{j-1} Lambda_k < Lambda_{k_j} <= sigma^j Lambda_k,
// each k_j the greatest index of its band within the table.
struct Ladder {
  std::size_t base_k = 1;
  double sigma = 2.0;
  std::vector<std::size_t> indices;  // indices[0] == base_k
  // Set when the requested band count did not fit below Lambda_{k_max}.
  bool truncated = false;
  std::size_t requested_bands = 0;

  std::size_t bands() const { return indices.empty() ? 0 : indices.size() - 1; }
  // Edges of band j in log domain: (lower, upper].
  double log_lower_edge(const WeightSequence& seq, std::size_t j) const;
  double log_upper_edge(const WeightSequence& seq, std::size_t j) const;
};

// Raised when a band inside the table range has no member: sigma is below
// the sequence's true derivation-closedness constant on that stretch.
class EmptyBandError : public std::runtime_error {
 public:
  EmptyBandError(std::size_t band, const std::string& what)
      : std::runtime_error(what), band_(band) {}
  std::size_t band() const { return band_; }

 private:
  std::size_t band_;
};

// Largest J with sigma^J Lambda_k <= Lambda_{k_max}.
std::size_t max_bands(const WeightSequence& seq, std::size_t k, double sigma);

// sigma from check_deriv_closed over [1, k_max - 1], inflated by 1 + 1e-6.
double default_sigma(const WeightSequence& seq);

// Binary-search construction on the non-decreasing Lambda table. With no
// j_max the ladder runs to max_bands(). Non-monotone tables are rejected.
Ladder build_ladder(const WeightSequence& seq, std::size_t k, double sigma,
                    std::optional<std::size_t> j_max = std::nullopt);

struct BandMargin {
  std::size_t band = 0;
  std::size_t index = 0;
  double lower = 0.0;  // log Lambda_{k_j} - lower edge (j >= 1); for j = 0, log Lambda_k - log Lambda_{k_0}
  double upper = 0.0;  // upper edge - log Lambda_{k_j}
};

struct LadderCheck {
  std::vector<BandMargin> margins;
  double min_margin = 0.0;
  bool ok = true;
  std::optional<std::size_t> violated_band;
};

// Recomputes every band inequality from the table alone; tolerance 1e-10.
LadderCheck verify_ladder(const Ladder& ladder, const WeightSequence& seq);

// True iff Lambda_{k_j + 1} > sigma^j Lambda_k for every completed band.
bool maximality_check(const Ladder& ladder, const WeightSequence& seq);

}  // namespace carleman

#endif  // CARLEMAN_LADDER_HPP
