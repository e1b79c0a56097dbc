#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace bandpredict {

// A double mantissa with a separate 64-bit binary exponent: value = m * 2^e.
// Used where magnitudes run far outside double's range but 53 bits of
// relative precision are enough.
class ScaledDouble {
 public:
  ScaledDouble() = default;
  explicit ScaledDouble(double v) { assign(v, 0); }

  static ScaledDouble from_parts(double mantissa, std::int64_t exponent) {
    ScaledDouble s;
    s.assign(mantissa, exponent);
    return s;
  }

  // e^x for any finite x.
  static ScaledDouble exp(double x) {
    const double k = std::floor(x / std::numbers::ln2);
    return from_parts(std::exp(x - k * std::numbers::ln2), static_cast<std::int64_t>(k));
  }

  double mantissa() const noexcept { return m_; }
  std::int64_t exponent() const noexcept { return e_; }
  bool is_zero() const noexcept { return m_ == 0.0; }

  double log10_abs() const {
    if (m_ == 0.0) return -INFINITY;
    return std::log10(std::abs(m_)) + static_cast<double>(e_) * 0.30102999566398120;
  }
  double ln_abs() const {
    if (m_ == 0.0) return -INFINITY;
    return std::log(std::abs(m_)) + static_cast<double>(e_) * std::numbers::ln2;
  }

  // Saturates to +-inf / 0 outside double range.
  double to_double() const { return std::ldexp(m_, static_cast<int>(clamp_exp(e_))); }

  ScaledDouble abs() const { return from_parts(std::abs(m_), e_); }
  ScaledDouble operator-() const { return from_parts(-m_, e_); }

  friend ScaledDouble operator*(const ScaledDouble& x, const ScaledDouble& y) {
    return from_parts(x.m_ * y.m_, x.e_ + y.e_);
  }
  friend ScaledDouble operator*(const ScaledDouble& x, double y) { return x * ScaledDouble(y); }
  friend ScaledDouble operator/(const ScaledDouble& x, double y) {
    const ScaledDouble d(y);
    return from_parts(x.m_ / d.m_, x.e_ - d.e_);
  }

  friend ScaledDouble operator+(const ScaledDouble& x, const ScaledDouble& y) {
    if (x.m_ == 0.0) return y;
    if (y.m_ == 0.0) return x;
    if (x.e_ >= y.e_) return from_parts(x.m_ + shift(y.m_, y.e_ - x.e_), x.e_);
    return from_parts(y.m_ + shift(x.m_, x.e_ - y.e_), y.e_);
  }
  friend ScaledDouble operator-(const ScaledDouble& x, const ScaledDouble& y) { return x + (-y); }

  // Compares magnitudes.
  friend bool abs_less(const ScaledDouble& x, const ScaledDouble& y) {
    if (y.m_ == 0.0) return false;
    if (x.m_ == 0.0) return true;
    if (x.e_ != y.e_) return x.e_ < y.e_;
    return std::abs(x.m_) < std::abs(y.m_);
  }

 private:
  static std::int64_t clamp_exp(std::int64_t e) { return e < -4000 ? -4000 : (e > 4000 ? 4000 : e); }
  static double shift(double m, std::int64_t by) {
    return by < -1100 ? 0.0 : std::ldexp(m, static_cast<int>(by));
  }

  void assign(double m, std::int64_t e) {
    if (m == 0.0 || !std::isfinite(m)) {
      m_ = m;
      e_ = 0;
      return;
    }
    int k = 0;
    m_ = std::frexp(m, &k);
    e_ = e + k;
  }

  double m_ = 0.0;
  std::int64_t e_ = 0;
};

}  // namespace bandpredict
