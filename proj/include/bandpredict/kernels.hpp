#pragma once

// First-order anticausal target kernels K(z) = 1/(z+a) (K1) and
// K(z) = (z+b)/(z+a) = 1 + c/(z+a) (K0), and the causal predicting kernel
//   Khat(z) = V(z) K(z),  V(z) = 1 - exp(gamma * sign(a+alpha) * (z+a)/(z+alpha)).
// The mirror pole alpha sits inside the unit disc and makes the real part of
// the exponent vanish exactly at w = +-omega, so V -> 1 on the signal band as
// |gamma| grows while the pole of K at z = -a is cancelled by the zero of V.

#include "bandpredict/scaled_double.hpp"
#include "bandpredict/spectral.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace bandpredict {

enum class Band { low, high };

std::string_view to_string(Band band) noexcept;
Band parse_band(std::string_view text);

class FirstOrderKernel {
 public:
  // K(z) = 1/(z+a).
  static FirstOrderKernel k1(double a);
  // K(z) = (z+b)/(z+a).
  static FirstOrderKernel k0(double a, double b);

  double a() const noexcept { return a_; }
  const std::optional<double>& b() const noexcept { return b_; }
  bool is_k0() const noexcept { return b_.has_value(); }
  // c = b - a; zero for K1.
  double c() const noexcept { return b_ ? *b_ - a_ : 0.0; }

 private:
  FirstOrderKernel(double a, std::optional<double> b) : a_(a), b_(b) {}

  double a_;
  std::optional<double> b_;
};

struct PredictorParams {
  double omega = 0.0;    // band edge in (0, pi)
  double gamma = 0.0;    // <= 0 for Band::low, >= 0 for Band::high
  std::size_t n = 4096;  // frequency grid used to build the kernel
  std::size_t m = 512;   // causal taps kept
  Band mode = Band::low;

  void validate() const;
};

void check_omega(double omega);

double alpha(double a, double omega);

// sign(a+alpha) * Re((e^{iw}+a)/(e^{iw}+alpha)), evaluated in closed form.
double psi(double a, double alpha, double w);

// Residual of 1 + alpha*a + (a+alpha) cos(omega), zero by construction.
double alpha_root_residual(double a, double alpha, double omega);

template <SupportedReal Real>
BasicSpectrumGrid<Real> k_transfer(const FirstOrderKernel& kernel, std::size_t n);

// V at a single frequency; throws ErrorKind::saturation when the exponent's
// real part exceeds RealTraits<Real>::exp_ceiling.
template <SupportedReal Real>
std::complex<Real> v_value(double a, double alpha, double gamma, const Real& w);

template <SupportedReal Real>
BasicSpectrumGrid<Real> v_transfer(double a, double alpha, double gamma, std::size_t n);

template <SupportedReal Real>
BasicSpectrumGrid<Real> predictor_transfer(const FirstOrderKernel& kernel, const PredictorParams& params);

// k(t) = (-1)^t a^{t-1} for t_min <= t <= 0 (K1 only).
template <SupportedReal Real>
BasicSignal<Real> anticausal_kernel(const FirstOrderKernel& kernel, std::int64_t t_min);

inline constexpr double kCausalityTolerance = 1e-8;
inline constexpr double kImaginaryTolerance = 1e-10;

template <SupportedReal Real>
struct CausalKernel {
  BasicSignal<Real> taps;  // khat(0..m-1)
  double leak_ratio;       // ||khat on negative grid times||_2 / ||khat||_2
  double tail_l1;          // sum_{t=m}^{n/2-1} |khat(t)|, mass dropped by truncation
  double imag_ratio;       // max |Im khat| / max |khat| before zeroing (real a)
};

template <SupportedReal Real>
CausalKernel<Real> causal_kernel(const FirstOrderKernel& kernel, const PredictorParams& params,
                                 double causality_tol = kCausalityTolerance);

// Exact time-domain coefficients of Khat from its power series in 1/z.
// Independent of the frequency grid; magnitudes are carried as ScaledDouble
// so kernels far beyond double range (omega near pi) stay representable.
struct SeriesKernel {
  std::vector<ScaledDouble> taps;  // khat(0..size-1), empty when not requested
  ScaledDouble sup;                // max_t |khat(t)|
  std::size_t argmax = 0;
  std::size_t terms = 0;           // series length actually summed
};

SeriesKernel series_causal_kernel(const FirstOrderKernel& kernel, double omega, double gamma,
                                  std::size_t keep_taps, std::size_t max_terms = std::size_t{1} << 24);

}  // namespace bandpredict
