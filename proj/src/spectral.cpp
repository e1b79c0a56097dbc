#include "bandpredict/spectral.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace bandpredict {

namespace {

std::size_t wrap_index(std::int64_t t, std::size_t n) {
  const auto m = static_cast<std::int64_t>(n);
  return static_cast<std::size_t>(((t % m) + m) % m);
}

template <SupportedReal Real>
bool all_finite(std::span<const std::complex<Real>> values) {
  using std::isfinite;
  using boost::multiprecision::isfinite;
  return std::all_of(values.begin(), values.end(), [](const auto& v) {
    return isfinite(v.real()) && isfinite(v.imag());
  });
}

inline void sin_cos(const double& x, double& s, double& c) {
  s = std::sin(x);
  c = std::cos(x);
}

inline void sin_cos(const Extended& x, Extended& s, Extended& c) {
  mpfr_sin_cos(s.backend().data(), c.backend().data(), x.backend().data(), MPFR_RNDN);
}

// Twiddles e^{-2 pi i k / n} for k < n/2, each computed directly in Real.
// Tables are cached per size; Extended ones cost several ms per thousand entries.
template <SupportedReal Real>
std::shared_ptr<const std::vector<std::complex<Real>>> twiddle_table(std::size_t n) {
  static std::mutex guard;
  static std::map<std::size_t, std::shared_ptr<const std::vector<std::complex<Real>>>> cache;
  {
    std::lock_guard lock(guard);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  auto table = std::make_shared<std::vector<std::complex<Real>>>(n / 2);
  const Real two_pi = 2 * RealTraits<Real>::pi();
#pragma omp parallel for schedule(static) if (n >= 8192)
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(n / 2); ++k) {
    const Real angle = two_pi * Real(k) / Real(static_cast<double>(n));
    Real s, c;
    sin_cos(angle, s, c);
    (*table)[static_cast<std::size_t>(k)] = std::complex<Real>(c, -s);
  }
  std::lock_guard lock(guard);
  return cache.emplace(n, std::move(table)).first->second;
}

}  // namespace

// ---------------------------------------------------------------- Signal

template <SupportedReal Real>
BasicSignal<Real>::BasicSignal(std::int64_t start_index, std::vector<value_type> values)
    : start_(start_index), values_(std::move(values)) {
  require(!values_.empty(), ErrorKind::parameter, "signal window must be non-empty");
  require(all_finite<Real>(values_), ErrorKind::parameter, "signal contains NaN or infinite samples");
}

template <SupportedReal Real>
auto BasicSignal<Real>::at(std::int64_t t) const -> const value_type& {
  require(contains(t), ErrorKind::alignment,
          "time index " + std::to_string(t) + " outside signal window");
  return values_[static_cast<std::size_t>(t - start_)];
}

template <SupportedReal Real>
auto BasicSignal<Real>::at(std::int64_t t) -> value_type& {
  require(contains(t), ErrorKind::alignment,
          "time index " + std::to_string(t) + " outside signal window");
  return values_[static_cast<std::size_t>(t - start_)];
}

template <SupportedReal Real>
BasicSignal<Real> BasicSignal<Real>::slice(std::int64_t first, std::int64_t last_index) const {
  require(first <= last_index && contains(first) && contains(last_index), ErrorKind::alignment,
          "slice [" + std::to_string(first) + ", " + std::to_string(last_index) +
              "] outside signal window");
  auto b = values_.begin() + (first - start_);
  auto e = values_.begin() + (last_index - start_ + 1);
  return BasicSignal(first, std::vector<value_type>(b, e));
}

// ---------------------------------------------------------------- Grid

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

void check_grid_size(std::size_t n) {
  require(n >= 8 && is_power_of_two(n), ErrorKind::parameter,
          "grid size must be a power of two >= 8, got " + std::to_string(n));
}

template <SupportedReal Real>
BasicSpectrumGrid<Real>::BasicSpectrumGrid(std::vector<value_type> values) : values_(std::move(values)) {
  check_grid_size(values_.size());
}

double grid_omega(std::size_t j, std::size_t n) noexcept {
  return std::numbers::pi * (2.0 * static_cast<double>(j) - static_cast<double>(n)) / static_cast<double>(n);
}

template <SupportedReal Real>
Real grid_omega_as(std::size_t j, std::size_t n) {
  const auto num = 2 * static_cast<std::int64_t>(j) - static_cast<std::int64_t>(n);
  return RealTraits<Real>::pi() * Real(static_cast<double>(num)) / Real(static_cast<double>(n));
}

BinPlacement classify_bin(std::size_t j, std::size_t n, double omega) noexcept {
  // |w_j| / pi = |2j - n| / n, compared in units of bins.
  const double r = std::abs(2.0 * static_cast<double>(j) - static_cast<double>(n));
  const double edge = omega / std::numbers::pi * static_cast<double>(n);
  const double tol = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, edge);
  if (std::abs(r - edge) <= tol) return BinPlacement::edge;
  return r < edge ? BinPlacement::inside : BinPlacement::outside;
}

bool in_low_band(std::size_t j, std::size_t n, double omega) noexcept {
  return classify_bin(j, n, omega) != BinPlacement::outside;
}

// ---------------------------------------------------------------- FFT

template <SupportedReal Real>
void fft_inplace(std::span<std::complex<Real>> data, bool inverse) {
  const std::size_t n = data.size();
  require(is_power_of_two(n), ErrorKind::parameter, "FFT length must be a power of two");
  if (n == 1) return;

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }

  const auto table = twiddle_table<Real>(n);
  const auto& twiddles = *table;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    const auto butterflies = static_cast<std::int64_t>(n / 2);
#pragma omp parallel for schedule(static) if (n >= 8192)
    for (std::int64_t b = 0; b < butterflies; ++b) {
      const std::size_t block = static_cast<std::size_t>(b) / half;
      const std::size_t k = static_cast<std::size_t>(b) % half;
      const std::size_t i0 = block * len + k;
      const std::size_t i1 = i0 + half;
      std::complex<Real> w = twiddles[k * stride];
      if (inverse) w = std::conj(w);
      const std::complex<Real> u = data[i0];
      const std::complex<Real> v = data[i1] * w;
      data[i0] = u + v;
      data[i1] = u - v;
    }
  }
}

template <SupportedReal Real>
BasicSpectrumGrid<Real> dtft_on_grid(const BasicSignal<Real>& x, std::size_t n) {
  check_grid_size(n);
  require(x.size() <= n, ErrorKind::sizing,
          "grid of " + std::to_string(n) + " bins cannot hold a window of " + std::to_string(x.size()));
  // e^{-i w_j t} = (-1)^t e^{-2 pi i j t / n}: fold the phase into the samples.
  std::vector<std::complex<Real>> buf(n);
  for (std::int64_t t = x.start(); t <= x.last(); ++t) {
    const auto& v = x.at(t);
    buf[wrap_index(t, n)] = (t % 2 == 0) ? v : -v;
  }
  fft_inplace<Real>(buf, false);
  return BasicSpectrumGrid<Real>(std::move(buf));
}

template <SupportedReal Real>
BasicSignal<Real> inverse_grid(const BasicSpectrumGrid<Real>& grid, std::int64_t first, std::size_t length) {
  const std::size_t n = grid.size();
  require(length >= 1 && length <= n, ErrorKind::sizing,
          "inverse window of " + std::to_string(length) + " exceeds grid of " + std::to_string(n));
  std::vector<std::complex<Real>> buf(grid.values().begin(), grid.values().end());
  fft_inplace<Real>(buf, true);
  const Real scale = Real(1) / Real(static_cast<double>(n));
  std::vector<std::complex<Real>> out(length);
#pragma omp parallel for schedule(static) if (length >= 8192)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(length); ++i) {
    const std::int64_t t = first + i;
    const auto v = buf[wrap_index(t, n)] * scale;
    out[static_cast<std::size_t>(i)] = (t % 2 == 0) ? v : -v;
  }
  return BasicSignal<Real>(first, std::move(out));
}

// ---------------------------------------------------------------- Norms

template <SupportedReal Real>
Real norm(std::span<const std::complex<Real>> values, NormKind kind) {
  using std::sqrt;
  Real acc = 0;
  switch (kind) {
    case NormKind::l1:
      for (const auto& v : values) acc += magnitude(v);
      return acc;
    case NormKind::l2:
      for (const auto& v : values) acc += squared_magnitude(v);
      return sqrt(acc);
    case NormKind::linf:
      for (const auto& v : values) {
        const Real m = magnitude(v);
        if (m > acc) acc = m;
      }
      return acc;
  }
  return acc;
}

template <SupportedReal Real>
Real norm(const BasicSignal<Real>& x, NormKind kind) {
  return norm<Real>(x.values(), kind);
}

template <SupportedReal Real>
Real lq_grid_norm(const BasicSpectrumGrid<Real>& grid, double q) {
  require(q >= 1.0, ErrorKind::parameter, "L_q norm needs q >= 1");
  if (std::isinf(q)) return norm<Real>(grid.values(), NormKind::linf);
  using std::pow;
  const Real step = 2 * RealTraits<Real>::pi() / Real(static_cast<double>(grid.size()));
  Real acc = 0;
  if (q == 2.0) {
    for (const auto& v : grid.values()) acc += squared_magnitude(v);
    using std::sqrt;
    return sqrt(acc * step);
  }
  for (const auto& v : grid.values()) acc += pow(magnitude(v), Real(q));
  return pow(acc * step, Real(1.0 / q));
}

#define BANDPREDICT_INSTANTIATE(Real)                                                               \
  template class BasicSignal<Real>;                                                                 \
  template class BasicSpectrumGrid<Real>;                                                           \
  template Real grid_omega_as<Real>(std::size_t, std::size_t);                                      \
  template void fft_inplace<Real>(std::span<std::complex<Real>>, bool);                             \
  template BasicSpectrumGrid<Real> dtft_on_grid<Real>(const BasicSignal<Real>&, std::size_t);       \
  template BasicSignal<Real> inverse_grid<Real>(const BasicSpectrumGrid<Real>&, std::int64_t,       \
                                                std::size_t);                                       \
  template Real norm<Real>(std::span<const std::complex<Real>>, NormKind);                          \
  template Real norm<Real>(const BasicSignal<Real>&, NormKind);                                     \
  template Real lq_grid_norm<Real>(const BasicSpectrumGrid<Real>&, double);

BANDPREDICT_INSTANTIATE(double)
BANDPREDICT_INSTANTIATE(Extended)

#undef BANDPREDICT_INSTANTIATE

}  // namespace bandpredict
