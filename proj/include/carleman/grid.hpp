#ifndef CARLEMAN_GRID_HPP
#define CARLEMAN_GRID_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace carleman {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Relative level below which coefficients computed from samples are set to
// zero (see GridFunction::from_samples).
inline constexpr double kSpectralFlush = 1e-14;

struct Interval {
  double lo = 0.0;
  double hi = kTwoPi;
  double width() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
};

// Axis-aligned box in the periodic box [0, 2pi)^dim; only the first `dim`
// axes are used.
struct Box {
  std::size_t dim = 1;
  std::array<Interval, 2> axes{};

  static Box full(std::size_t dim);
  static Box interval(double lo, double hi);
  static Box rect(Interval x, Interval y);

  bool contains(double x, double y = 0.0) const;
  double volume() const;
  // Smallest per-side gap between this box and an enclosing box; negative
  // when this box is not inside `outer`.
  double margin_inside(const Box& outer) const;
};

// Multi-index alpha with |alpha| = alpha[0] + alpha[1].
struct MultiIndex {
  std::array<unsigned, 2> a{0, 0};
  unsigned order() const { return a[0] + a[1]; }
};

// All multi-indices of the given dimension with |alpha| <= top, ordered by
// |alpha| and then lexicographically.
std::vector<MultiIndex> multi_indices(std::size_t dim, unsigned top);

// Complex samples on the uniform N^dim grid over [0, 2pi)^dim together with
// their Fourier coefficients
//   u(x) = sum_xi uhat(xi) e^{i x.xi},  uhat(xi) = N^{-dim} sum_x u(x) e^{-i x.xi},
// xi in [-N/2, N/2)^dim. The object is immutable. Functions built from a
// spectrum compute their samples on first access; copies share that cache. Coefficients computed from samples with
// modulus below kSpectralFlush times the largest one are stored as zero.
// Index layout is row-major with the first coordinate slowest:
// flat = i0 * N + i1.
class GridFunction {
 public:
  static GridFunction from_samples(std::size_t dim, std::size_t n, std::vector<cplx> samples);
  static GridFunction from_spectrum(std::size_t dim, std::size_t n, std::vector<cplx> spectrum);
  static GridFunction from_function(std::size_t dim, std::size_t n,
                                    const std::function<cplx(double, double)>& f);
  static GridFunction zero(std::size_t dim, std::size_t n);

  std::size_t dim() const { return dim_; }
  std::size_t n() const { return n_; }
  std::size_t size() const { return spectrum_.size(); }
  std::span<const cplx> samples() const;
  std::span<const cplx> spectrum() const { return spectrum_; }

  double coordinate(std::size_t i) const { return kTwoPi * static_cast<double>(i) / static_cast<double>(n_); }
  long frequency(std::size_t i) const;
  // Frequency vector of a flat spectrum index (second entry 0 in 1D).
  std::array<long, 2> frequencies(std::size_t flat) const;
  // Sample coordinates of a flat index.
  std::array<double, 2> point(std::size_t flat) const;
  // Euclidean |xi| of a flat spectrum index.
  double abs_frequency(std::size_t flat) const;
  // Flat spectrum index of a frequency vector.
  std::size_t spectrum_index(long xi0, long xi1 = 0) const;
  // Cell volume (2pi/N)^dim.
  double cell_volume() const;

  // L^2 norm over the full box by quadrature of the samples.
  double l2_norm() const;
  // sqrt((2pi)^dim sum |uhat|^2): equal to l2_norm() by Parseval.
  double spectral_l2_norm() const;
  // L^2 norm over the samples inside `box`.
  double l2_norm(const Box& box) const;
  double sup_norm() const;
  double sup_norm(const Box& box) const;
  bool is_zero() const;

  GridFunction operator+(const GridFunction& o) const;
  GridFunction operator-(const GridFunction& o) const;
  GridFunction scaled(cplx c) const;
  // Pointwise product of samples.
  GridFunction times(const GridFunction& o) const;
  // Multiplies every Fourier coefficient by symbol(xi0, xi1).
  GridFunction apply_symbol(const std::function<cplx(long, long)>& symbol) const;

 private:
  struct SampleCache {
    std::once_flag once;
    std::vector<cplx> data;
  };

  GridFunction(std::size_t dim, std::size_t n, std::vector<cplx> samples, std::vector<cplx> spectrum);
  GridFunction(std::size_t dim, std::size_t n, std::vector<cplx> spectrum);
  void require_same_grid(const GridFunction& o) const;

  std::size_t dim_ = 1;
  std::size_t n_ = 0;
  std::shared_ptr<SampleCache> samples_;
  std::vector<cplx> spectrum_;
};

// Normalized forward transform (coefficients) and its inverse (samples).
std::vector<cplx> forward_dft(std::size_t dim, std::size_t n, std::span<const cplx> samples);
std::vector<cplx> inverse_dft(std::size_t dim, std::size_t n, std::span<const cplx> spectrum);

// Largest derivative order accepted by spectral_derivative: N/4.
unsigned derivative_guard(std::size_t n);

// D^alpha u realized as multiplication of the spectrum by (i xi)^alpha.
GridFunction spectral_derivative(const GridFunction& u, MultiIndex alpha);

// Random band-limited function: independent complex Gaussian coefficients
// on |xi_i| <= band for each axis, scaled by (1 + |xi|)^{-decay}. The mean
// mode is dropped when mean_zero is set.
GridFunction random_band_limited(std::size_t dim, std::size_t n, long band, std::mt19937_64& rng,
                                 bool mean_zero = false, double decay = 1.0);

// CSV of samples: "x,re,im" (1D) or "x,y,re,im" (2D), one row per sample.
void write_samples_csv(std::ostream& os, const GridFunction& u);
GridFunction read_samples_csv(std::istream& is);
// JSON spectrum {n, N, modes: [{xi: [...], re, im}]}; absent modes are 0.
std::string spectrum_to_json(const GridFunction& u);
GridFunction spectrum_from_json(const std::string& text);

}  // namespace carleman

#endif  // CARLEMAN_GRID_HPP
