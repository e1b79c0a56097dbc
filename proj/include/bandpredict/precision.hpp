#pragma once

// Scalar types supported by the numeric core.
//
// Everything user-facing runs in double. The predicting kernels amplify
// out-of-band content by factors like exp(|gamma| * |psi|), which reaches
// 1e28 and beyond for moderate gamma; double roundoff in the input signal is
// then amplified past any meaningful error level. The Extended type carries
// enough digits to resolve those runs and is explicitly instantiated for
// every templated operation.

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <complex>
#include <concepts>
#include <limits>
#include <numbers>
#include <string_view>

namespace bandpredict {

inline constexpr unsigned kExtendedDigits = 200;

using Extended = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<kExtendedDigits>,
    boost::multiprecision::et_off>;

template <class Real>
concept SupportedReal = std::same_as<Real, double> || std::same_as<Real, Extended>;

template <SupportedReal Real>
struct RealTraits;

template <>
struct RealTraits<double> {
  static constexpr std::string_view name = "double";
  // Largest real part of an exponent we let through before exp() overflows.
  static constexpr double exp_ceiling = 700.0;
  static double pi() { return std::numbers::pi; }
  static double epsilon() { return std::numeric_limits<double>::epsilon(); }
};

template <>
struct RealTraits<Extended> {
  static constexpr std::string_view name = "extended";
  // No overflow risk here; the ceiling is where a gain of exp(x) would eat
  // every digit this type carries beyond double.
  static constexpr double exp_ceiling = (kExtendedDigits - 17) * 2.302585092994046;
  static Extended pi() { return boost::math::constants::pi<Extended>(); }
  static Extended epsilon() { return std::numeric_limits<Extended>::epsilon(); }
};

enum class Precision { standard, extended };

std::string_view to_string(Precision p) noexcept;
Precision parse_precision(std::string_view text);

template <SupportedReal Real>
inline double to_double(const Real& x) {
  return static_cast<double>(x);
}

template <SupportedReal Real>
inline std::complex<double> to_double(const std::complex<Real>& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

template <SupportedReal Real>
inline Real squared_magnitude(const std::complex<Real>& z) {
  return z.real() * z.real() + z.imag() * z.imag();
}

template <SupportedReal Real>
inline Real magnitude(const std::complex<Real>& z) {
  using std::sqrt;
  return sqrt(squared_magnitude(z));
}

// acc += k * x without temporaries where the backend allows it.
inline void multiply_accumulate(double& acc, double k, double x) { acc += k * x; }

inline void multiply_accumulate(Extended& acc, const Extended& k, const Extended& x) {
  mpfr_fma(acc.backend().data(), k.backend().data(), x.backend().data(),
           acc.backend().data(), MPFR_RNDN);
}

}  // namespace bandpredict
