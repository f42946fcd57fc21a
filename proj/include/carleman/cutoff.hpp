#ifndef CARLEMAN_CUTOFF_HPP
#define CARLEMAN_CUTOFF_HPP

#include <cstddef>
#include <vector>

#include "carleman/grid.hpp"

namespace carleman {

// Cutoffs chi_1, ..., chi_{k_top}: chi_k = 1 on `inner`, supported in
// `outer`, with sup |D^alpha chi_k| <= Q^{|alpha|} k^{|alpha|} for |alpha| <= k.
struct CutoffFamily {
  Box inner;
  Box outer;
  double margin = 0.0;  // d: smallest gap between inner and outer
  std::size_t n = 0;
  unsigned k_top = 0;
  std::vector<GridFunction> chi;  // chi[k - 1] is chi_k
  double q = 0.0;                 // measured derivative-bound constant

  const GridFunction& operator[](unsigned k) const { return chi.at(k - 1); }
};

// chi_k = indicator of the d/2-enlargement of `inner`, convolved k times
// with a normalized C-infinity bump of radius d/(2k) along each axis (tensor
// product in 2D). Convolutions are products in the discrete spectrum. Q is
// measured by scanning spectral derivatives of every chi_k for
// |alpha| <= min(k, N/4). Rejects non-positive margins and bumps narrower
// than four grid cells.
CutoffFamily make_cutoff_family(const Box& inner, const Box& outer, unsigned k_top, std::size_t n);

struct CutoffBoundCheck {
  bool ok = true;
  // max over k, alpha of sup|D^alpha chi_k| / (Q k)^{|alpha|}.
  double worst_ratio = 0.0;
  unsigned worst_k = 0;
  MultiIndex worst_alpha;
};

// Recomputes sup |D^alpha chi_k| from the stored samples and checks it against
// (q k)^{|alpha|} with relative slack 1e-12.
CutoffBoundCheck verify_cutoff_bounds(const CutoffFamily& family, double q);

}  // namespace carleman

#endif  // CARLEMAN_CUTOFF_HPP
