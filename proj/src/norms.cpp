#include "carleman/norms.hpp"

#include <cmath>
#include <stdexcept>

#include "carleman/logsum.hpp"

namespace carleman {

DerivativeNorms derivative_norms(const GridFunction& u, unsigned top, const std::optional<Box>& domain) {
  if (top > derivative_guard(u.n()))
    throw std::invalid_argument("derivative order exceeds the N/4 guard");
  DerivativeNorms d;
  d.dim = u.dim();
  d.top = top;
  d.alphas = multi_indices(u.dim(), top);
  d.norms.reserve(d.alphas.size());
  if (!domain) {
    const double vol = std::pow(kTwoPi, static_cast<double>(u.dim()));
    const auto spec = u.spectrum();
    for (const MultiIndex& a : d.alphas) {
      double s = 0.0;
      for (std::size_t f = 0; f < spec.size(); ++f) {
        if (spec[f] == cplx{}) continue;
        const auto xi = u.frequencies(f);
        const double w = std::pow(static_cast<double>(xi[0]), static_cast<int>(a.a[0])) *
                         std::pow(static_cast<double>(xi[1]), static_cast<int>(a.a[1]));
        s += w * w * std::norm(spec[f]);
      }
      d.norms.push_back(std::sqrt(s * vol));
    }
  } else {
    for (const MultiIndex& a : d.alphas) d.norms.push_back(spectral_derivative(u, a).l2_norm(*domain));
  }
  return d;
}

double log_triple_norm(const DerivativeNorms& d, const WeightSequence& seq, unsigned k) {
  if (k > d.top) throw std::invalid_argument("triple norm order exceeds computed derivatives");
  const double log_lam = k == 0 ? 0.0 : seq.log_lambda(k);
  std::vector<double> terms;
  for (std::size_t i = 0; i < d.alphas.size(); ++i) {
    const unsigned order = d.alphas[i].order();
    if (order > k) break;
    terms.push_back(static_cast<double>(k - order) * log_lam + safe_log(d.norms[i]));
  }
  return log_sum_exp(terms);
}

double triple_norm(const GridFunction& u, const WeightSequence& seq, unsigned k,
                   const std::optional<Box>& domain) {
  return std::exp(log_triple_norm(derivative_norms(u, k, domain), seq, k));
}

double sobolev_norm(const DerivativeNorms& d, unsigned k) {
  if (k > d.top) throw std::invalid_argument("Sobolev order exceeds computed derivatives");
  double s = 0.0;
  for (std::size_t i = 0; i < d.alphas.size() && d.alphas[i].order() <= k; ++i)
    s += d.norms[i] * d.norms[i];
  return std::sqrt(s);
}

DcNorm dc_norm(const GridFunction& u, const WeightSequence& seq, double h, unsigned alpha_top,
               const std::optional<Box>& domain) {
  if (!(h > 0.0)) throw std::invalid_argument("dc_norm requires h > 0");
  if (alpha_top > derivative_guard(u.n())) throw std::invalid_argument("alpha_top exceeds the N/4 guard");
  if (alpha_top > seq.k_max()) throw std::invalid_argument("alpha_top exceeds the weight table");
  DcNorm out;
  out.depth = alpha_top;
  out.log_value = kNegInf;
  const double log_h = std::log(h);
  for (const MultiIndex& a : multi_indices(u.dim(), alpha_top)) {
    const GridFunction du = spectral_derivative(u, a);
    const double sup = domain ? du.sup_norm(*domain) : du.sup_norm();
    const double v = safe_log(sup) - a.order() * log_h - seq.log_m(a.order());
    if (v > out.log_value) {
      out.log_value = v;
      out.attained_order = a.order();
    }
  }
  out.value = std::exp(out.log_value);
  return out;
}

double log_g_norm(const GridFunction& u, const OmegaTable& omega) {
  const auto spec = u.spectrum();
  std::vector<double> terms;
  for (std::size_t f = 0; f < spec.size(); ++f) {
    if (spec[f] == cplx{}) continue;
    const double r = u.abs_frequency(f);
    const double w = r > 0.0 ? omega.at_log(std::log(r)) : 0.0;
    terms.push_back(2.0 * w + std::log(std::norm(spec[f])));
  }
  if (terms.empty()) return kNegInf;
  return 0.5 * (log_sum_exp(terms) + static_cast<double>(u.dim()) * std::log(kTwoPi));
}

double g_norm(const GridFunction& u, const OmegaTable& omega) { return std::exp(log_g_norm(u, omega)); }

}  // namespace carleman
