#pragma once

// Time/frequency conversion on the uniform unit-circle grid
//   omega_j = -pi + 2*pi*j/n,  j = 0..n-1   (ascending, [-pi, pi))
// and the sequence/spectrum norms used to score predictions.

#include "bandpredict/error.hpp"
#include "bandpredict/precision.hpp"

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bandpredict {

// A finite contiguous window x(t0), ..., x(t0 + size - 1) of a sequence.
template <SupportedReal Real>
class BasicSignal {
 public:
  using value_type = std::complex<Real>;

  BasicSignal(std::int64_t start_index, std::vector<value_type> values);

  std::int64_t start() const noexcept { return start_; }
  std::int64_t last() const noexcept { return start_ + static_cast<std::int64_t>(values_.size()) - 1; }
  std::size_t size() const noexcept { return values_.size(); }
  bool contains(std::int64_t t) const noexcept { return t >= start_ && t <= last(); }

  const value_type& at(std::int64_t t) const;
  value_type& at(std::int64_t t);

  std::span<const value_type> values() const noexcept { return values_; }
  std::span<value_type> values() noexcept { return values_; }

  // Sub-window [first, last] by time index.
  BasicSignal slice(std::int64_t first, std::int64_t last) const;

 private:
  std::int64_t start_;
  std::vector<value_type> values_;
};

// n samples of X(e^{i omega_j}); n >= 8 and a power of two.
template <SupportedReal Real>
class BasicSpectrumGrid {
 public:
  using value_type = std::complex<Real>;

  explicit BasicSpectrumGrid(std::vector<value_type> values);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const value_type> values() const noexcept { return values_; }
  std::span<value_type> values() noexcept { return values_; }
  const value_type& operator[](std::size_t j) const { return values_[j]; }
  value_type& operator[](std::size_t j) { return values_[j]; }

 private:
  std::vector<value_type> values_;
};

using Signal = BasicSignal<double>;
using SpectrumGrid = BasicSpectrumGrid<double>;
using ExtendedSignal = BasicSignal<Extended>;
using ExtendedSpectrumGrid = BasicSpectrumGrid<Extended>;

bool is_power_of_two(std::size_t n) noexcept;
void check_grid_size(std::size_t n);

double grid_omega(std::size_t j, std::size_t n) noexcept;

template <SupportedReal Real>
Real grid_omega_as(std::size_t j, std::size_t n);

// Position of a grid bin relative to the band edge. Ties are decided on the
// integer bin index so that the bin at exactly +-omega classifies the same way
// everywhere in the library.
enum class BinPlacement { inside, edge, outside };

BinPlacement classify_bin(std::size_t j, std::size_t n, double omega) noexcept;

// Closed low band |w| <= omega; open high band |w| > omega.
bool in_low_band(std::size_t j, std::size_t n, double omega) noexcept;

// Index of the bin that pairs with j under w -> -w (j itself for w = -pi, 0).
inline std::size_t mirror_bin(std::size_t j, std::size_t n) noexcept { return (n - j) % n; }

// In-place radix-2 FFT. forward: X_k = sum x_m e^{-2 pi i k m / n}; the
// inverse applies e^{+...} without the 1/n factor.
template <SupportedReal Real>
void fft_inplace(std::span<std::complex<Real>> data, bool inverse);

template <SupportedReal Real>
BasicSpectrumGrid<Real> dtft_on_grid(const BasicSignal<Real>& x, std::size_t n);

template <SupportedReal Real>
BasicSignal<Real> inverse_grid(const BasicSpectrumGrid<Real>& grid, std::int64_t first, std::size_t length);

enum class NormKind { l1, l2, linf };

template <SupportedReal Real>
Real norm(const BasicSignal<Real>& x, NormKind kind);

template <SupportedReal Real>
Real norm(std::span<const std::complex<Real>> values, NormKind kind);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Rectangle-rule L_q(-pi, pi) norm; q = kInfinity gives the grid max.
template <SupportedReal Real>
Real lq_grid_norm(const BasicSpectrumGrid<Real>& grid, double q);

template <SupportedReal To, SupportedReal From>
BasicSignal<To> convert_signal(const BasicSignal<From>& x) {
  std::vector<std::complex<To>> out;
  out.reserve(x.size());
  for (const auto& v : x.values()) out.emplace_back(To(v.real()), To(v.imag()));
  return BasicSignal<To>(x.start(), std::move(out));
}

}  // namespace bandpredict
