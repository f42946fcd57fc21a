#ifndef CARLEMAN_NORMS_HPP
#define CARLEMAN_NORMS_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "carleman/assoc.hpp"
#include "carleman/grid.hpp"
#include "carleman/weights.hpp"

namespace carleman {

// ||D^alpha u||_{L^2(domain)} for every |alpha| <= top, in multi_indices()
// order. A missing domain means the whole periodic box, evaluated spectrally;
// a box restricts the quadrature to the samples it contains.
struct DerivativeNorms {
  std::size_t dim = 1;
  unsigned top = 0;
  std::vector<MultiIndex> alphas;
  std::vector<double> norms;
};

DerivativeNorms derivative_norms(const GridFunction& u, unsigned top,
                                 const std::optional<Box>& domain = std::nullopt);

// log |||u|||_{U,M,k} = log sum_{|alpha|<=k} Lambda_k^{k-|alpha|} ||D^alpha u||_{L^2(U)}.
// -inf for u = 0.
double log_triple_norm(const DerivativeNorms& d, const WeightSequence& seq, unsigned k);

double triple_norm(const GridFunction& u, const WeightSequence& seq, unsigned k,
                   const std::optional<Box>& domain = std::nullopt);

// ||u||_{H^k(domain)} = (sum_{|alpha|<=k} ||D^alpha u||^2)^{1/2}.
double sobolev_norm(const DerivativeNorms& d, unsigned k);

struct DcNorm {
  double value = 0.0;
  double log_value = 0.0;
  // Order |alpha| at which the truncated sup is attained.
  unsigned attained_order = 0;
  unsigned depth = 0;
};

// sup_{|alpha| <= alpha_top} ||D^alpha u||_inf / (h^{|alpha|} M_{|alpha|}),
// with the sup norm taken over grid samples.
DcNorm dc_norm(const GridFunction& u, const WeightSequence& seq, double h, unsigned alpha_top,
               const std::optional<Box>& domain = std::nullopt);

// log ||e^{omega(|xi|)} uhat||, normalized like the L^2 norm, accumulated
// with max-shifted exponentials. -inf for u = 0.
double log_g_norm(const GridFunction& u, const OmegaTable& omega);
// exp(log_g_norm); +inf when the value overflows a double.
double g_norm(const GridFunction& u, const OmegaTable& omega);

}  // namespace carleman

#endif  // CARLEMAN_NORMS_HPP
