#include "carleman/cutoff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace carleman {
namespace {

// Discrete convolution kernel of the bump exp(-1/(1 - (x/r)^2)), normalized
// to unit sum, laid out periodically on n points.
std::vector<cplx> bump_kernel(std::size_t n, double radius) {
  const double h = kTwoPi / static_cast<double>(n);
  std::vector<cplx> w(n);
  const long reach = static_cast<long>(std::ceil(radius / h));
  double total = 0.0;
  for (long m = -reach; m <= reach; ++m) {
    const double s = static_cast<double>(m) * h / radius;
    if (std::abs(s) >= 1.0) continue;
    const double v = std::exp(-1.0 / (1.0 - s * s));
    w[static_cast<std::size_t>((m + static_cast<long>(n)) % static_cast<long>(n))] = v;
    total += v;
  }
  for (cplx& v : w) v /= total;
  return w;
}

// Fourier coefficients of the one-axis profile: indicator of
// [lo - d/2, hi + d/2] convolved k times. Kept in the frequency domain so
// that no sample round-off enters the high modes.
std::vector<cplx> axis_profile(std::size_t n, Interval inner, double d, unsigned k) {
  const double h = kTwoPi / static_cast<double>(n);
  std::vector<cplx> ind(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = h * static_cast<double>(i);
    if (x >= inner.lo - d / 2 && x <= inner.hi + d / 2) ind[i] = 1.0;
  }
  std::vector<cplx> spec = forward_dft(1, n, ind);
  // Unnormalized transform of the kernel multiplies normalized coefficients.
  std::vector<cplx> kernel = forward_dft(1, n, bump_kernel(n, d / (2.0 * k)));
  for (std::size_t i = 0; i < n; ++i)
    spec[i] *= std::pow(kernel[i] * static_cast<double>(n), static_cast<int>(k));
  // The profile is real and even about the interval centre: keep the
  // coefficients exactly Hermitian.
  for (std::size_t i = 1; i < n / 2; ++i) {
    const cplx avg = 0.5 * (spec[i] + std::conj(spec[n - i]));
    spec[i] = avg;
    spec[n - i] = std::conj(avg);
  }
  spec[0] = spec[0].real();
  spec[n / 2] = spec[n / 2].real();
  return spec;
}

double measure_q(const GridFunction& chi, unsigned k) {
  double q = 0.0;
  const unsigned top = std::min(k, derivative_guard(chi.n()));
  for (const MultiIndex& a : multi_indices(chi.dim(), top)) {
    if (a.order() == 0) continue;
    const double sup = spectral_derivative(chi, a).sup_norm();
    if (sup <= 0.0) continue;
    q = std::max(q, std::pow(sup, 1.0 / a.order()) / static_cast<double>(k));
  }
  return q;
}

}  // namespace

CutoffFamily make_cutoff_family(const Box& inner, const Box& outer, unsigned k_top, std::size_t n) {
  if (inner.dim != outer.dim) throw std::invalid_argument("cutoff boxes differ in dimension");
  if (k_top < 1) throw std::invalid_argument("cutoff family needs k_top >= 1");
  const double d = inner.margin_inside(outer);
  if (!(d > 0.0)) throw std::invalid_argument("inner box must lie strictly inside the outer box");
  for (std::size_t a = 0; a < outer.dim; ++a) {
    if (outer.axes[a].lo < 0.0 || outer.axes[a].hi > kTwoPi)
      throw std::invalid_argument("outer box must lie in the periodic box [0, 2pi]");
  }
  const double cell = kTwoPi / static_cast<double>(n);
  if (d / (2.0 * k_top) < 4.0 * cell)
    throw std::invalid_argument("grid too coarse for k_top: bump radius below four cells");

  CutoffFamily fam;
  fam.inner = inner;
  fam.outer = outer;
  fam.margin = d;
  fam.n = n;
  fam.k_top = k_top;
  for (unsigned k = 1; k <= k_top; ++k) {
    const std::vector<cplx> px = axis_profile(n, inner.axes[0], d, k);
    if (inner.dim == 1) {
      fam.chi.push_back(GridFunction::from_spectrum(1, n, px));
    } else {
      // Tensor product in space is the outer product of coefficients.
      const std::vector<cplx> py = axis_profile(n, inner.axes[1], d, k);
      std::vector<cplx> s(n * n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s[i * n + j] = px[i] * py[j];
      fam.chi.push_back(GridFunction::from_spectrum(2, n, std::move(s)));
    }
    fam.q = std::max(fam.q, measure_q(fam.chi.back(), k));
  }
  return fam;
}

CutoffBoundCheck verify_cutoff_bounds(const CutoffFamily& family, double q) {
  CutoffBoundCheck check;
  for (unsigned k = 1; k <= family.k_top; ++k) {
    const GridFunction& chi = family[k];
    const unsigned top = std::min(k, derivative_guard(chi.n()));
    for (const MultiIndex& a : multi_indices(chi.dim(), top)) {
      const double sup = spectral_derivative(chi, a).sup_norm();
      const double bound = std::pow(q * k, static_cast<double>(a.order()));
      const double ratio = sup / bound;
      if (ratio > check.worst_ratio) {
        check.worst_ratio = ratio;
        check.worst_k = k;
        check.worst_alpha = a;
      }
      if (sup > bound * (1.0 + 1e-12)) check.ok = false;
    }
  }
  return check;
}

}  // namespace carleman
