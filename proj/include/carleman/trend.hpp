#ifndef CARLEMAN_TREND_HPP
#define CARLEMAN_TREND_HPP

#include <cstddef>
#include <span>

namespace carleman {

// Finite-window verdict on whether an index-indexed sequence stays bounded.
enum class TailTrend { bounded, divergent, inconclusive };

const char* to_string(TailTrend t);

// Classifies f_k for k = first_index .. first_index + values.size() - 1.
//
// The tail is the last 10% of the window (at least two points). The sequence
// is judged bounded when the tail is non-increasing (relative tolerance
// 1e-12), when the window maximum sits before the tail, or when the rise over
// the last index decade [K/10, K] is at most half the rise over the decade
// before it (a decelerating, saturating trend). Windows spanning fewer than
// two decades that still rise in the tail are inconclusive; otherwise the
// sequence is divergent.
TailTrend classify_tail(std::span<const double> values, std::size_t first_index);

// First index of the tail used by classify_tail.
std::size_t tail_start(std::size_t first_index, std::size_t last_index);

}  // namespace carleman

#endif  // CARLEMAN_TREND_HPP
