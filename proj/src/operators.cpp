#include "carleman/operators.hpp"

#include <cmath>
#include <stdexcept>

#include "carleman/logsum.hpp"
#include "carleman/norms.hpp"

namespace carleman {
namespace {

OperatorModel constant_coefficient(std::string name, std::size_t dim, std::string description,
                                   std::function<cplx(long, long)> symbol) {
  OperatorModel op;
  op.name = std::move(name);
  op.dim = dim;
  op.order = 2;
  op.description = std::move(description);
  op.symbol = symbol;
  op.apply = [symbol](const GridFunction& u) { return u.apply_symbol(symbol); };
  op.pseudo_inverse = [symbol](const GridFunction& f) {
    return f.apply_symbol([symbol](long a, long b) {
      const cplx s = symbol(a, b);
      return s == cplx{} ? cplx{} : 1.0 / s;
    });
  };
  return op;
}

void require_setup(const EstimateSetup& s, std::size_t dim, std::size_t n) {
  if (s.inner.dim != dim || s.outer.dim != dim) throw std::invalid_argument("box dimension does not match operator");
  if (!(s.inner.margin_inside(s.outer) > 0.0)) throw std::invalid_argument("V must lie strictly inside U");
  if (s.k_lo > s.k_hi) throw std::invalid_argument("empty k-sweep");
  if (s.k_hi + 2 > derivative_guard(n)) throw std::invalid_argument("k-sweep beyond the derivative guard");
}

}  // namespace

OperatorModel builtin_operator(const std::string& name, std::size_t n, std::size_t dim) {
  if (n < 2 || (n & (n - 1)) != 0) throw std::invalid_argument("grid size must be a power of two");
  if (name == "laplacian") {
    if (dim != 1 && dim != 2) throw std::invalid_argument("laplacian dimension must be 1 or 2");
    return constant_coefficient("laplacian", dim, "sum of second derivatives; symbol -|xi|^2",
                                [](long a, long b) { return cplx(-static_cast<double>(a * a + b * b), 0.0); });
  }
  if (name == "heat") {
    if (dim != 2) throw std::invalid_argument("heat operator lives on the 2-torus");
    return constant_coefficient("heat", 2, "d_t - d_x^2 with t the second coordinate; symbol i xi_t + xi_x^2",
                                [](long a, long b) { return cplx(static_cast<double>(a * a), static_cast<double>(b)); });
  }
  if (name == "grushin_sin") {
    if (dim != 2) throw std::invalid_argument("grushin_sin lives on the 2-torus");
    OperatorModel op;
    op.name = "grushin_sin";
    op.dim = 2;
    op.order = 2;
    op.description = "X1^2 + X2^2 with X1 = d_x, X2 = sin(x) d_y";
    const GridFunction sin2 =
        GridFunction::from_function(2, n, [](double x, double) { return cplx(std::sin(x) * std::sin(x), 0.0); });
    op.apply = [sin2](const GridFunction& u) {
      const GridFunction uxx = spectral_derivative(u, {{2, 0}});
      const GridFunction uyy = spectral_derivative(u, {{0, 2}});
      return uxx + uyy.times(sin2);
    };
    return op;
  }
  throw std::invalid_argument("unknown operator '" + name + "' (laplacian, heat, grushin_sin)");
}

std::vector<GridFunction> kernel_basis(const OperatorModel& op, std::size_t n) {
  std::vector<GridFunction> basis;
  const GridFunction shape = GridFunction::zero(op.dim, n);
  if (op.symbol) {
    for (std::size_t f = 0; f < shape.size(); ++f) {
      const auto xi = shape.frequencies(f);
      if (op.symbol(xi[0], xi[1]) != cplx{}) continue;
      std::vector<cplx> c(shape.size());
      c[f] = 1.0;
      basis.push_back(GridFunction::from_spectrum(op.dim, n, std::move(c)));
    }
    return basis;
  }
  GridFunction one = GridFunction::from_function(op.dim, n, [](double, double) { return cplx(1.0, 0.0); });
  if (op.apply(one).l2_norm() <= 1e-9 * one.l2_norm()) basis.push_back(std::move(one));
  return basis;
}

EstimateReport fit_theorem1(const OperatorModel& op, const WeightSequence& seq, const EstimateSetup& setup,
                            std::span<const GridFunction> test_set) {
  EstimateReport rep;
  rep.tag = "operator_estimate";
  if (test_set.empty()) throw std::invalid_argument("operator estimate needs a nonempty test set");
  const std::size_t n = test_set.front().n();
  require_setup(setup, op.dim, n);
  rep.params = {{"k_lo", static_cast<double>(setup.k_lo)},
                {"k_hi", static_cast<double>(setup.k_hi)},
                {"N", static_cast<double>(n)},
                {"samples", static_cast<double>(test_set.size())}};
  std::size_t skipped = 0;
  for (std::size_t i = 0; i < test_set.size(); ++i) {
    const GridFunction& u = test_set[i];
    if (u.dim() != op.dim || u.n() != n) throw std::invalid_argument("test function on the wrong grid");
    if (u.is_zero()) {
      ++skipped;
      continue;
    }
    const GridFunction pu = op.apply(u);
    const DerivativeNorms on_v = derivative_norms(u, setup.k_hi, setup.inner);
    const DerivativeNorms pu_on_u = derivative_norms(pu, setup.k_hi, setup.outer);
    const double log_u_on_u = safe_log(u.l2_norm(setup.outer));
    for (unsigned k = setup.k_lo; k <= setup.k_hi; ++k) {
      const double log_left = safe_log(sobolev_norm(on_v, k));
      const double log_right = log_add(log_triple_norm(pu_on_u, seq, k), seq.log_m(k) + log_u_on_u);
      rep.rows.push_back(make_row(k, log_left, log_right, i));
    }
  }
  if (skipped > 0) rep.notes.push_back(std::to_string(skipped) + " zero test functions skipped");
  rep.notes.push_back("sampled evidence on a manufactured test set");
  rep.fit = fit_geometric(rep.rows);
  rep.verdict = fit_verdict(rep.fit);
  return rep;
}

EstimateReport fit_prop5(const OperatorModel& op, const WeightSequence& seq, const EstimateSetup& setup, std::size_t n,
                         std::optional<std::span<const GridFunction>> candidates) {
  require_setup(setup, op.dim, n);
  EstimateReport rep;
  rep.tag = "kernel_estimate";
  rep.params = {{"k_lo", static_cast<double>(setup.k_lo)},
                {"k_hi", static_cast<double>(setup.k_hi)},
                {"N", static_cast<double>(n)}};
  std::vector<GridFunction> kernel;
  if (candidates) {
    for (std::size_t i = 0; i < candidates->size(); ++i) {
      const GridFunction& u = (*candidates)[i];
      const double residual = op.apply(u).l2_norm();
      if (residual > 1e-9 * std::max(u.l2_norm(), 1e-300)) {
        rep.notes.push_back("candidate " + std::to_string(i) + " refused: ||Pu|| = " + std::to_string(residual));
        continue;
      }
      kernel.push_back(u);
    }
  } else {
    kernel = kernel_basis(op, n);
  }
  if (kernel.empty()) {
    rep.notes.push_back("empty kernel: no fit");
    rep.verdict = Verdict::inconclusive;
    return rep;
  }
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    const GridFunction& u = kernel[i];
    const DerivativeNorms on_v = derivative_norms(u, setup.k_hi, setup.inner);
    const double log_u_on_u = safe_log(u.l2_norm(setup.outer));
    for (unsigned k = setup.k_lo; k <= setup.k_hi; ++k)
      rep.rows.push_back(make_row(k, safe_log(sobolev_norm(on_v, k)), seq.log_m(k) + log_u_on_u, i));
  }
  rep.fit = fit_geometric(rep.rows);
  rep.verdict = fit_verdict(rep.fit);
  return rep;
}

}  // namespace carleman
