#ifndef CARLEMAN_OPERATORS_HPP
#define CARLEMAN_OPERATORS_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "carleman/estimates.hpp"
#include "carleman/grid.hpp"
#include "carleman/weights.hpp"

namespace carleman {

using GridMap = std::function<GridFunction(const GridFunction&)>;

// A differential operator on the periodic grid. Constant-coefficient models
// carry their Fourier symbol and a pseudo-inverse R by symbol division on the
// nonzero modes, so that P R f = f for every mean-zero band-limited f.
struct OperatorModel {
  std::string name;
  std::size_t dim = 2;
  unsigned order = 2;
  std::string description;
  GridMap apply;
  GridMap pseudo_inverse;                   // empty when unavailable
  std::function<cplx(long, long)> symbol;  // empty for variable coefficients

  bool has_pseudo_inverse() const { return static_cast<bool>(pseudo_inverse); }
};

// laplacian: d_x^2 (+ d_y^2), dim 1 or 2.
// heat: d_t - d_x^2 on the 2-torus, t the second coordinate.
// grushin_sin: d_x^2 + sin^2(x) d_y^2, the sum of squares of {d_x, sin(x) d_y}.
OperatorModel builtin_operator(const std::string& name, std::size_t n, std::size_t dim = 2);

// Discrete kernel basis on the grid: zero modes of the symbol, or the
// constants for variable-coefficient models (checked to satisfy Pu = 0).
std::vector<GridFunction> kernel_basis(const OperatorModel& op, std::size_t n);

struct EstimateSetup {
  Box inner;  // V
  Box outer;  // U, with V strictly inside
  unsigned k_lo = 1;
  unsigned k_hi = 8;
};

// ||u||_{H^k(V)} <= C L^k (|||Pu|||_{U,M,k} + M_k ||u||_{L^2(U)}) over the test
// set and k-sweep; one row per (u, k), zero functions skipped, (C, L) fitted
// on the per-k envelope.
EstimateReport fit_theorem1(const OperatorModel& op, const WeightSequence& seq, const EstimateSetup& setup,
                            std::span<const GridFunction> test_set);

// ||u||_{H^k(V)} <= C h^k M_k ||u||_{L^2(U)} over kernel elements. Without
// candidates the kernel basis is used; candidates with Pu != 0 are refused
// (report carries a note and no fit).
EstimateReport fit_prop5(const OperatorModel& op, const WeightSequence& seq, const EstimateSetup& setup,
                         std::size_t n, std::optional<std::span<const GridFunction>> candidates = std::nullopt);

}  // namespace carleman

#endif  // CARLEMAN_OPERATORS_HPP
