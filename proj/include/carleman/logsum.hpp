#ifndef CARLEMAN_LOGSUM_HPP
#define CARLEMAN_LOGSUM_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace carleman {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(exp(a) + exp(b)) without overflow. Either argument may be -inf.
inline double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == kNegInf) return a;
  return a + std::log1p(std::exp(b - a));
}

// log(sum_i exp(args[i])), max-shifted. Empty input gives -inf.
inline double log_sum_exp(std::span<const double> args) {
  if (args.empty()) return kNegInf;
  const double top = *std::max_element(args.begin(), args.end());
  if (top == kNegInf || std::isinf(top)) return top;
  double sum = 0.0;
  for (double a : args) sum += std::exp(a - top);
  return top + std::log(sum);
}

// log(1 + exp(x)).
inline double softplus(double x) {
  if (x > 35.0) return x + std::exp(-x);
  return std::log1p(std::exp(x));
}

// Natural log of a nonnegative value, with log(0) = -inf.
inline double safe_log(double x) { return x > 0.0 ? std::log(x) : kNegInf; }

}  // namespace carleman

#endif  // CARLEMAN_LOGSUM_HPP
