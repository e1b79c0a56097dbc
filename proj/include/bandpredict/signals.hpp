#pragma once

// Test processes on a synthesis grid: band-limited (spectrum zero for
// |w| > omega), high-frequency (zero for |w| <= omega), the bounded-envelope
// noisy spectrum, and the ideal low/high split.

#include "bandpredict/kernels.hpp"
#include "bandpredict/spectral.hpp"

#include <cstdint>
#include <random>
#include <utility>

namespace bandpredict {

enum class Normalization { unit_l2, unit_spectrum_linf };

std::string_view to_string(Normalization norm) noexcept;
Normalization parse_normalization(std::string_view text);

struct BandSignalSpec {
  double omega = 0.0;
  Band mode = Band::low;
  std::size_t length = 0;
  std::uint64_t seed = 0;
  Normalization normalization = Normalization::unit_l2;
  std::int64_t start = 0;  // time index of the first sample
};

struct NoisySpectrumSpec {
  double omega = 0.0;
  double nu = 0.0;  // out-of-band envelope, in [0, 1)
  std::uint64_t seed = 0;
  std::size_t length = 0;
  std::int64_t start = 0;
};

// Smallest power of two >= 4 * length (and >= 8).
std::size_t default_synthesis_grid(std::size_t length);

// mt19937_64 seeded through SplitMix64(seed, stream); one stream per
// generator kind so that specs differing only in kind draw independently.
class SignalRng {
 public:
  enum class Stream : std::uint64_t { band_low = 1, band_high = 2, noisy = 3, probe = 4 };

  SignalRng(std::uint64_t seed, Stream stream);

  // Uniform on [0, 1) from the top 53 bits.
  double uniform();
  // Standard normal by Box-Muller.
  double gaussian();

 private:
  std::mt19937_64 engine_;
};

// Spectrum a generated signal is synthesized from (before truncation to the window).
template <SupportedReal Real>
BasicSpectrumGrid<Real> band_spectrum(const BandSignalSpec& spec, std::size_t n);

template <SupportedReal Real>
BasicSignal<Real> gen_band_signal(const BandSignalSpec& spec, std::size_t n);

template <SupportedReal Real>
BasicSpectrumGrid<Real> noisy_spectrum(const NoisySpectrumSpec& spec, std::size_t n);

template <SupportedReal Real>
BasicSignal<Real> gen_noisy_spectrum(const NoisySpectrumSpec& spec, std::size_t n);

template <SupportedReal Real>
struct SplitSignal {
  BasicSignal<Real> low;
  BasicSignal<Real> high;
};

template <SupportedReal Real>
SplitSignal<Real> ideal_filter_split(const BasicSignal<Real>& x, double omega, std::size_t n);

template <SupportedReal Real>
struct MixedSignal {
  BasicSignal<Real> x;
  BasicSignal<Real> low;
  BasicSignal<Real> high;
};

// x = sqrt(low_share) * x_L + sqrt(1 - low_share) * x_H with unit-l2 parts
// drawn from independent streams.
template <SupportedReal Real>
MixedSignal<Real> gen_mixed_signal(double omega, std::size_t length, std::uint64_t seed, double low_share,
                                   std::size_t n);

}  // namespace bandpredict
