#include "bandpredict/signals.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

namespace bandpredict {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

bool allowed(std::size_t j, std::size_t n, double omega, Band mode) {
  const bool low = in_low_band(j, n, omega);
  return mode == Band::low ? low : !low;
}

void check_band_nonempty(double omega, Band mode, std::size_t n) {
  check_omega(omega);
  const double bin = 2.0 * std::numbers::pi / static_cast<double>(n);
  if (mode == Band::low) {
    require(omega >= bin, ErrorKind::degenerate_band,
            "low band |w| <= " + std::to_string(omega) + " is narrower than one bin of a " +
                std::to_string(n) + "-point grid");
  } else {
    require(std::numbers::pi - omega >= bin, ErrorKind::degenerate_band,
            "high band |w| > " + std::to_string(omega) + " is narrower than one bin of a " +
                std::to_string(n) + "-point grid");
  }
}

// Fills bins 0..n/2 from draw(j) and mirrors them so that the time signal is real.
template <SupportedReal Real, class Draw>
std::vector<std::complex<Real>> hermitian_fill(std::size_t n, Draw&& draw) {
  std::vector<std::complex<Real>> out(n);
  for (std::size_t j = 0; j <= n / 2; ++j) {
    const std::complex<double> v = draw(j);
    const std::size_t mj = mirror_bin(j, n);
    if (mj == j) {
      out[j] = std::complex<Real>(Real(v.real()), Real(0));
    } else {
      out[j] = std::complex<Real>(Real(v.real()), Real(v.imag()));
      out[mj] = std::complex<Real>(Real(v.real()), Real(-v.imag()));
    }
  }
  return out;
}

template <SupportedReal Real>
BasicSignal<Real> real_window(const BasicSpectrumGrid<Real>& grid, std::int64_t start, std::size_t length) {
  auto x = inverse_grid<Real>(grid, start, length);
  using std::abs;
  Real worst = 0;
  for (auto& v : x.values()) {
    worst = std::max(worst, Real(abs(v.imag())));
    v = std::complex<Real>(v.real(), Real(0));
  }
  require(to_double(worst) <= 1e-12, ErrorKind::consistency,
          "synthesized signal is not real (imaginary part " + std::to_string(to_double(worst)) + ")");
  return x;
}

void check_window(std::size_t length, std::size_t n) {
  require(length >= 1, ErrorKind::parameter, "signal length must be >= 1");
  check_grid_size(n);
  require(length <= n, ErrorKind::sizing,
          "signal length " + std::to_string(length) + " exceeds synthesis grid " + std::to_string(n));
}

}  // namespace

std::string_view to_string(Normalization norm) noexcept {
  return norm == Normalization::unit_l2 ? "unit_l2" : "unit_spectrum_linf";
}

Normalization parse_normalization(std::string_view text) {
  if (text == "unit_l2") return Normalization::unit_l2;
  if (text == "unit_spectrum_linf") return Normalization::unit_spectrum_linf;
  fail(ErrorKind::parameter,
       "unknown normalization '" + std::string(text) + "' (expected unit_l2|unit_spectrum_linf)");
}

std::size_t default_synthesis_grid(std::size_t length) {
  return std::max<std::size_t>(8, std::bit_ceil(4 * std::max<std::size_t>(length, 1)));
}

SignalRng::SignalRng(std::uint64_t seed, Stream stream) {
  std::uint64_t state = seed ^ (static_cast<std::uint64_t>(stream) * 0xD1B54A32D192ED03ULL);
  engine_.seed(splitmix64(state));
}

double SignalRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double SignalRng::gaussian() {
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

template <SupportedReal Real>
BasicSpectrumGrid<Real> band_spectrum(const BandSignalSpec& spec, std::size_t n) {
  check_window(spec.length, n);
  check_band_nonempty(spec.omega, spec.mode, n);
  SignalRng rng(spec.seed, spec.mode == Band::low ? SignalRng::Stream::band_low : SignalRng::Stream::band_high);
  auto values = hermitian_fill<Real>(n, [&](std::size_t j) {
    const double re = rng.gaussian();
    const double im = rng.gaussian();
    if (!allowed(j, n, spec.omega, spec.mode)) return std::complex<double>(0.0, 0.0);
    return std::complex<double>(re, im) * std::numbers::sqrt2 * 0.5;
  });
  BasicSpectrumGrid<Real> grid(std::move(values));
  if (spec.normalization == Normalization::unit_spectrum_linf) {
    const Real peak = norm<Real>(grid.values(), NormKind::linf);
    for (auto& v : grid.values()) v /= peak;
  }
  return grid;
}

template <SupportedReal Real>
BasicSignal<Real> gen_band_signal(const BandSignalSpec& spec, std::size_t n) {
  auto x = real_window<Real>(band_spectrum<Real>(spec, n), spec.start, spec.length);
  if (spec.normalization == Normalization::unit_l2) {
    const Real scale = norm<Real>(x, NormKind::l2);
    require(scale > 0, ErrorKind::degenerate_band, "generated window is identically zero");
    for (auto& v : x.values()) v /= scale;
  }
  return x;
}

template <SupportedReal Real>
BasicSpectrumGrid<Real> noisy_spectrum(const NoisySpectrumSpec& spec, std::size_t n) {
  require(std::isfinite(spec.nu) && spec.nu >= 0.0 && spec.nu < 1.0, ErrorKind::parameter,
          "out-of-band level nu must lie in [0, 1)");
  check_window(spec.length, n);
  check_band_nonempty(spec.omega, Band::low, n);
  // Every bin draws magnitude and phase regardless of nu, so runs that differ
  // only in nu share their in-band content and scale linearly out of band.
  SignalRng rng(spec.seed, SignalRng::Stream::noisy);
  const Real nu(spec.nu);
  std::vector<bool> inside(n);
  for (std::size_t j = 0; j < n; ++j) inside[j] = in_low_band(j, n, spec.omega);
  auto values = hermitian_fill<Real>(n, [&](std::size_t) {
    const double mag = rng.uniform();
    const double phase = 2.0 * std::numbers::pi * rng.uniform();
    return std::polar(mag, phase);
  });
  for (std::size_t j = 0; j < n; ++j) {
    if (!inside[j]) values[j] *= nu;
  }
  return BasicSpectrumGrid<Real>(std::move(values));
}

template <SupportedReal Real>
BasicSignal<Real> gen_noisy_spectrum(const NoisySpectrumSpec& spec, std::size_t n) {
  return real_window<Real>(noisy_spectrum<Real>(spec, n), spec.start, spec.length);
}

template <SupportedReal Real>
SplitSignal<Real> ideal_filter_split(const BasicSignal<Real>& x, double omega, std::size_t n) {
  check_omega(omega);
  const auto spectrum = dtft_on_grid<Real>(x, n);
  std::vector<std::complex<Real>> low(n), high(n);
  for (std::size_t j = 0; j < n; ++j) {
    (in_low_band(j, n, omega) ? low[j] : high[j]) = spectrum[j];
  }
  auto xl = inverse_grid<Real>(BasicSpectrumGrid<Real>(std::move(low)), x.start(), x.size());
  auto xh = inverse_grid<Real>(BasicSpectrumGrid<Real>(std::move(high)), x.start(), x.size());
  const bool real_input = std::all_of(x.values().begin(), x.values().end(),
                                      [](const auto& v) { return v.imag() == 0; });
  if (real_input) {
    for (auto& v : xl.values()) v = std::complex<Real>(v.real(), Real(0));
    for (auto& v : xh.values()) v = std::complex<Real>(v.real(), Real(0));
  }
  return {std::move(xl), std::move(xh)};
}

template <SupportedReal Real>
MixedSignal<Real> gen_mixed_signal(double omega, std::size_t length, std::uint64_t seed, double low_share,
                                   std::size_t n) {
  require(low_share >= 0.0 && low_share <= 1.0, ErrorKind::parameter, "low_share must lie in [0, 1]");
  auto low = gen_band_signal<Real>({omega, Band::low, length, seed, Normalization::unit_l2, 0}, n);
  auto high = gen_band_signal<Real>({omega, Band::high, length, seed, Normalization::unit_l2, 0}, n);
  using std::sqrt;
  const Real wl = sqrt(Real(low_share));
  const Real wh = sqrt(Real(1.0 - low_share));
  for (auto& v : low.values()) v *= wl;
  for (auto& v : high.values()) v *= wh;
  std::vector<std::complex<Real>> sum(length);
  for (std::size_t i = 0; i < length; ++i) sum[i] = low.values()[i] + high.values()[i];
  return {BasicSignal<Real>(0, std::move(sum)), std::move(low), std::move(high)};
}

#define BANDPREDICT_INSTANTIATE(Real)                                                                 \
  template BasicSpectrumGrid<Real> band_spectrum<Real>(const BandSignalSpec&, std::size_t);           \
  template BasicSignal<Real> gen_band_signal<Real>(const BandSignalSpec&, std::size_t);               \
  template BasicSpectrumGrid<Real> noisy_spectrum<Real>(const NoisySpectrumSpec&, std::size_t);       \
  template BasicSignal<Real> gen_noisy_spectrum<Real>(const NoisySpectrumSpec&, std::size_t);         \
  template SplitSignal<Real> ideal_filter_split<Real>(const BasicSignal<Real>&, double, std::size_t); \
  template MixedSignal<Real> gen_mixed_signal<Real>(double, std::size_t, std::uint64_t, double, std::size_t);

BANDPREDICT_INSTANTIATE(double)
BANDPREDICT_INSTANTIATE(Extended)

#undef BANDPREDICT_INSTANTIATE

}  // namespace bandpredict
