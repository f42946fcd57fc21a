#include "carleman/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "json.hpp"

namespace carleman {
namespace {

bool is_power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

void require_grid(std::size_t dim, std::size_t n) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("grid dimension must be 1 or 2");
  if (!is_power_of_two(n)) throw std::invalid_argument("grid size must be a power of two");
}

std::size_t grid_points(std::size_t dim, std::size_t n) { return dim == 1 ? n : n * n; }

// FFTW planning is not thread-safe; execution on fresh arrays is. Plans are
// created once per (dim, n, sign) under a lock and never destroyed.
class PlanCache {
 public:
  fftw_plan get(std::size_t dim, std::size_t n, int sign) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(dim, n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const std::size_t total = grid_points(dim, n);
    auto* in = fftw_alloc_complex(total);
    auto* out = fftw_alloc_complex(total);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_PRESERVE_INPUT;
    fftw_plan plan = dim == 1 ? fftw_plan_dft_1d(static_cast<int>(n), in, out, sign, flags)
                              : fftw_plan_dft_2d(static_cast<int>(n), static_cast<int>(n), in,
                                                 out, sign, flags);
    fftw_free(in);
    fftw_free(out);
    if (!plan) throw std::runtime_error("FFTW planning failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<std::size_t, std::size_t, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

std::vector<cplx> run_dft(std::size_t dim, std::size_t n, std::span<const cplx> in, int sign) {
  require_grid(dim, n);
  if (in.size() != grid_points(dim, n)) throw std::invalid_argument("sample count does not match grid");
  std::vector<cplx> out(in.size());
  // The plan preserves its input, so the const samples can be passed as is.
  fftw_execute_dft(plan_cache().get(dim, n, sign),
                   reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

}  // namespace

Box Box::full(std::size_t dim) {
  Box b;
  b.dim = dim;
  return b;
}

Box Box::interval(double lo, double hi) {
  Box b;
  b.dim = 1;
  b.axes[0] = {lo, hi};
  return b;
}

Box Box::rect(Interval x, Interval y) {
  Box b;
  b.dim = 2;
  b.axes = {x, y};
  return b;
}

bool Box::contains(double x, double y) const {
  return axes[0].contains(x) && (dim < 2 || axes[1].contains(y));
}

double Box::volume() const {
  double v = axes[0].width();
  if (dim == 2) v *= axes[1].width();
  return v;
}

double Box::margin_inside(const Box& outer) const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t d = 0; d < dim; ++d) {
    m = std::min(m, axes[d].lo - outer.axes[d].lo);
    m = std::min(m, outer.axes[d].hi - axes[d].hi);
  }
  return m;
}

std::vector<MultiIndex> multi_indices(std::size_t dim, unsigned top) {
  std::vector<MultiIndex> out;
  for (unsigned order = 0; order <= top; ++order) {
    if (dim == 1) {
      out.push_back({{order, 0}});
    } else {
      for (unsigned a0 = order + 1; a0-- > 0;) out.push_back({{a0, order - a0}});
    }
  }
  return out;
}

std::vector<cplx> forward_dft(std::size_t dim, std::size_t n, std::span<const cplx> samples) {
  std::vector<cplx> out = run_dft(dim, n, samples, FFTW_FORWARD);
  const double scale = 1.0 / static_cast<double>(samples.size());
  for (cplx& c : out) c *= scale;
  return out;
}

std::vector<cplx> inverse_dft(std::size_t dim, std::size_t n, std::span<const cplx> spectrum) {
  return run_dft(dim, n, spectrum, FFTW_BACKWARD);
}

GridFunction::GridFunction(std::size_t dim, std::size_t n, std::vector<cplx> samples,
                           std::vector<cplx> spectrum)
    : dim_(dim), n_(n), samples_(std::make_shared<SampleCache>()), spectrum_(std::move(spectrum)) {
  std::call_once(samples_->once, [&] { samples_->data = std::move(samples); });
}

GridFunction::GridFunction(std::size_t dim, std::size_t n, std::vector<cplx> spectrum)
    : dim_(dim), n_(n), samples_(std::make_shared<SampleCache>()), spectrum_(std::move(spectrum)) {}

std::span<const cplx> GridFunction::samples() const {
  std::call_once(samples_->once, [&] { samples_->data = inverse_dft(dim_, n_, spectrum_); });
  return samples_->data;
}

GridFunction GridFunction::from_samples(std::size_t dim, std::size_t n, std::vector<cplx> samples) {
  auto spectrum = forward_dft(dim, n, samples);
  // Transform round-off sits near 1e-17 of the peak in every mode; spectral
  // derivatives multiply it by |xi|^k, so it is flushed to exact zeros.
  double peak = 0.0;
  for (const cplx& c : spectrum) peak = std::max(peak, std::abs(c));
  const double floor = kSpectralFlush * peak;
  for (cplx& c : spectrum)
    if (std::abs(c) <= floor) c = cplx{};
  return GridFunction(dim, n, std::move(samples), std::move(spectrum));
}

GridFunction GridFunction::from_spectrum(std::size_t dim, std::size_t n, std::vector<cplx> spectrum) {
  require_grid(dim, n);
  if (spectrum.size() != grid_points(dim, n)) throw std::invalid_argument("spectrum size does not match grid");
  return GridFunction(dim, n, std::move(spectrum));
}

GridFunction GridFunction::from_function(std::size_t dim, std::size_t n,
                                         const std::function<cplx(double, double)>& f) {
  require_grid(dim, n);
  std::vector<cplx> samples(grid_points(dim, n));
  const double h = kTwoPi / static_cast<double>(n);
  if (dim == 1) {
    for (std::size_t i = 0; i < n; ++i) samples[i] = f(h * static_cast<double>(i), 0.0);
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        samples[i * n + j] = f(h * static_cast<double>(i), h * static_cast<double>(j));
  }
  return from_samples(dim, n, std::move(samples));
}

GridFunction GridFunction::zero(std::size_t dim, std::size_t n) {
  require_grid(dim, n);
  const std::size_t total = grid_points(dim, n);
  return GridFunction(dim, n, std::vector<cplx>(total), std::vector<cplx>(total));
}

long GridFunction::frequency(std::size_t i) const {
  const long li = static_cast<long>(i);
  const long ln = static_cast<long>(n_);
  return li < ln / 2 ? li : li - ln;
}

std::array<long, 2> GridFunction::frequencies(std::size_t flat) const {
  if (dim_ == 1) return {frequency(flat), 0};
  return {frequency(flat / n_), frequency(flat % n_)};
}

std::array<double, 2> GridFunction::point(std::size_t flat) const {
  if (dim_ == 1) return {coordinate(flat), 0.0};
  return {coordinate(flat / n_), coordinate(flat % n_)};
}

double GridFunction::abs_frequency(std::size_t flat) const {
  const auto xi = frequencies(flat);
  return std::hypot(static_cast<double>(xi[0]), static_cast<double>(xi[1]));
}

std::size_t GridFunction::spectrum_index(long xi0, long xi1) const {
  const long ln = static_cast<long>(n_);
  auto wrap = [&](long xi) {
    if (xi < -ln / 2 || xi >= ln / 2) throw std::out_of_range("frequency outside grid band");
    return static_cast<std::size_t>(xi < 0 ? xi + ln : xi);
  };
  if (dim_ == 1) return wrap(xi0);
  return wrap(xi0) * n_ + wrap(xi1);
}

double GridFunction::cell_volume() const {
  const double h = kTwoPi / static_cast<double>(n_);
  return dim_ == 1 ? h : h * h;
}

double GridFunction::l2_norm() const {
  double s = 0.0;
  for (const cplx& v : samples()) s += std::norm(v);
  return std::sqrt(s * cell_volume());
}

double GridFunction::spectral_l2_norm() const {
  double s = 0.0;
  for (const cplx& c : spectrum_) s += std::norm(c);
  return std::sqrt(s * std::pow(kTwoPi, static_cast<double>(dim_)));
}

double GridFunction::l2_norm(const Box& box) const {
  double s = 0.0;
  const auto v = samples();
  for (std::size_t f = 0; f < v.size(); ++f) {
    const auto p = point(f);
    if (box.contains(p[0], p[1])) s += std::norm(v[f]);
  }
  return std::sqrt(s * cell_volume());
}

double GridFunction::sup_norm() const {
  double m = 0.0;
  for (const cplx& v : samples()) m = std::max(m, std::abs(v));
  return m;
}

double GridFunction::sup_norm(const Box& box) const {
  double m = 0.0;
  const auto v = samples();
  for (std::size_t f = 0; f < v.size(); ++f) {
    const auto p = point(f);
    if (box.contains(p[0], p[1])) m = std::max(m, std::abs(v[f]));
  }
  return m;
}

bool GridFunction::is_zero() const {
  return std::all_of(spectrum_.begin(), spectrum_.end(), [](const cplx& c) { return c == cplx{}; });
}

void GridFunction::require_same_grid(const GridFunction& o) const {
  if (o.dim_ != dim_ || o.n_ != n_) throw std::invalid_argument("grid functions live on different grids");
}

GridFunction GridFunction::operator+(const GridFunction& o) const {
  require_same_grid(o);
  std::vector<cplx> c(spectrum_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.spectrum_[i];
  return GridFunction(dim_, n_, std::move(c));
}

GridFunction GridFunction::operator-(const GridFunction& o) const { return *this + o.scaled(-1.0); }

GridFunction GridFunction::scaled(cplx a) const {
  std::vector<cplx> c(spectrum_);
  for (cplx& v : c) v *= a;
  return GridFunction(dim_, n_, std::move(c));
}

GridFunction GridFunction::times(const GridFunction& o) const {
  require_same_grid(o);
  const auto a = samples();
  const auto b = o.samples();
  std::vector<cplx> s(a.begin(), a.end());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] *= b[i];
  return from_samples(dim_, n_, std::move(s));
}

GridFunction GridFunction::apply_symbol(const std::function<cplx(long, long)>& symbol) const {
  std::vector<cplx> c(spectrum_);
  for (std::size_t f = 0; f < c.size(); ++f) {
    if (c[f] == cplx{}) continue;
    const auto xi = frequencies(f);
    c[f] *= symbol(xi[0], xi[1]);
  }
  return from_spectrum(dim_, n_, std::move(c));
}

unsigned derivative_guard(std::size_t n) { return static_cast<unsigned>(n / 4); }

GridFunction spectral_derivative(const GridFunction& u, MultiIndex alpha) {
  if (alpha.order() > derivative_guard(u.n()))
    throw std::invalid_argument("derivative order " + std::to_string(alpha.order()) +
                                " exceeds the N/4 guard");
  if (u.dim() == 1 && alpha.a[1] != 0) throw std::invalid_argument("1D function, 2D multi-index");
  if (alpha.order() == 0) return u;
  return u.apply_symbol([&](long x0, long x1) {
    return std::pow(cplx(0.0, static_cast<double>(x0)), static_cast<int>(alpha.a[0])) *
           std::pow(cplx(0.0, static_cast<double>(x1)), static_cast<int>(alpha.a[1]));
  });
}

GridFunction random_band_limited(std::size_t dim, std::size_t n, long band, std::mt19937_64& rng,
                                 bool mean_zero, double decay) {
  require_grid(dim, n);
  if (band < 0 || band >= static_cast<long>(n / 2)) throw std::invalid_argument("band outside grid");
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<cplx> c(grid_points(dim, n));
  const long ln = static_cast<long>(n);
  auto wrap = [ln](long xi) { return static_cast<std::size_t>(xi < 0 ? xi + ln : xi); };
  const long b1 = dim == 2 ? band : 0;
  for (long x0 = -band; x0 <= band; ++x0) {
    for (long x1 = -b1; x1 <= b1; ++x1) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      if (mean_zero && x0 == 0 && x1 == 0) continue;
      const double r = std::hypot(static_cast<double>(x0), static_cast<double>(x1));
      c[dim == 1 ? wrap(x0) : wrap(x0) * n + wrap(x1)] = cplx(re, im) * std::pow(1.0 + r, -decay);
    }
  }
  return GridFunction::from_spectrum(dim, n, std::move(c));
}

void write_samples_csv(std::ostream& os, const GridFunction& u) {
  os << (u.dim() == 1 ? "x,re,im\n" : "x,y,re,im\n");
  os.precision(17);
  for (std::size_t f = 0; f < u.size(); ++f) {
    const auto p = u.point(f);
    os << p[0] << ',';
    if (u.dim() == 2) os << p[1] << ',';
    os << u.samples()[f].real() << ',' << u.samples()[f].imag() << '\n';
  }
}

GridFunction read_samples_csv(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw std::runtime_error("empty samples CSV");
  std::size_t dim = 0;
  if (header.rfind("x,re,im", 0) == 0)
    dim = 1;
  else if (header.rfind("x,y,re,im", 0) == 0)
    dim = 2;
  else
    throw std::runtime_error("samples CSV header must be 'x,re,im' or 'x,y,re,im'");
  std::vector<cplx> samples;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> v;
    while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
    if (v.size() != dim + 2) throw std::runtime_error("malformed samples CSV row: " + line);
    samples.emplace_back(v[dim], v[dim + 1]);
  }
  std::size_t n = samples.size();
  if (dim == 2) {
    n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(samples.size()))));
    if (n * n != samples.size()) throw std::runtime_error("2D samples CSV is not square");
  }
  return GridFunction::from_samples(dim, n, std::move(samples));
}

std::string spectrum_to_json(const GridFunction& u) {
  nlohmann::ordered_json j;
  j["n"] = u.dim();
  j["N"] = u.n();
  auto modes = nlohmann::ordered_json::array();
  for (std::size_t f = 0; f < u.size(); ++f) {
    const cplx c = u.spectrum()[f];
    if (c == cplx{}) continue;
    const auto xi = u.frequencies(f);
    nlohmann::ordered_json m;
    m["xi"] = u.dim() == 1 ? nlohmann::ordered_json::array({xi[0]})
                           : nlohmann::ordered_json::array({xi[0], xi[1]});
    m["re"] = c.real();
    m["im"] = c.imag();
    modes.push_back(std::move(m));
  }
  j["modes"] = std::move(modes);
  return j.dump();
}

GridFunction spectrum_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const std::size_t dim = j.at("n").get<std::size_t>();
  const std::size_t n = j.at("N").get<std::size_t>();
  GridFunction shape = GridFunction::zero(dim, n);
  std::vector<cplx> c(shape.size());
  for (const auto& m : j.at("modes")) {
    const auto& xi = m.at("xi");
    if (xi.size() != dim) throw std::runtime_error("mode frequency has wrong dimension");
    const long x0 = xi[0].get<long>();
    const long x1 = dim == 2 ? xi[1].get<long>() : 0;
    c[shape.spectrum_index(x0, x1)] += cplx(m.at("re").get<double>(), m.value("im", 0.0));
  }
  return GridFunction::from_spectrum(dim, n, std::move(c));
}

}  // namespace carleman
