#include "carleman/trend.hpp"

#include <algorithm>
#include <cmath>

namespace carleman {

const char* to_string(TailTrend t) {
  switch (t) {
    case TailTrend::bounded: return "bounded";
    case TailTrend::divergent: return "divergent";
    case TailTrend::inconclusive: return "inconclusive";
  }
  return "?";
}

std::size_t tail_start(std::size_t first_index, std::size_t last_index) {
  const std::size_t width = last_index - first_index + 1;
  const std::size_t tail = std::max<std::size_t>(2, width / 10);
  if (tail >= width) return first_index;
  return last_index + 1 - tail;
}

TailTrend classify_tail(std::span<const double> values, std::size_t first_index) {
  if (values.size() < 2) return TailTrend::inconclusive;
  const std::size_t last = first_index + values.size() - 1;
  auto at = [&](std::size_t k) { return values[k - first_index]; };

  const std::size_t t0 = tail_start(first_index, last);
  bool non_increasing = true;
  for (std::size_t k = t0; k < last; ++k) {
    const double tol = 1e-12 * std::max(1.0, std::abs(at(k)));
    if (at(k + 1) > at(k) + tol) {
      non_increasing = false;
      break;
    }
  }
  if (non_increasing) return TailTrend::bounded;

  const auto top = std::max_element(values.begin(), values.end());
  const std::size_t argmax = first_index + static_cast<std::size_t>(top - values.begin());
  if (argmax < t0) return TailTrend::bounded;

  if (last / 100 >= first_index && last / 100 >= 1) {
    const double late = at(last) - at(last / 10);
    const double early = at(last / 10) - at(last / 100);
    if (late <= 0.0) return TailTrend::bounded;
    if (early > 0.0 && late <= 0.5 * early) return TailTrend::bounded;
    return TailTrend::divergent;
  }
  return TailTrend::inconclusive;
}

}  // namespace carleman
