#pragma once

// Target and forecast on an interior time window, computed by direct sums:
//   y(t)    = sum_{s=t}^{t+tail_len} k(t-s) x(s)      (anticausal target)
//   yhat(t) = sum_{s=t-M+1}^{t}    khat(t-s) x(s)     (causal forecast)
// and the error norms that score one against the other.

#include "bandpredict/kernels.hpp"
#include "bandpredict/spectral.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>

namespace bandpredict {

struct TimeWindow {
  std::int64_t first = 0;
  std::int64_t last = 0;

  std::size_t size() const noexcept { return static_cast<std::size_t>(last - first + 1); }
};

inline constexpr double kDefaultTailTol = 1e-12;

// Smallest tail with sum_{j > tail} |a|^{-j-1} <= tail_tol.
std::size_t tail_length(double a, double tail_tol);

// Largest window with m samples of history before it and tail_len after it.
TimeWindow interior_window(std::int64_t start, std::int64_t last, std::size_t m, std::size_t tail_len);

template <SupportedReal Real>
struct PredictionRun {
  BasicSignal<Real> x;
  FirstOrderKernel kernel;
  PredictorParams params;
  std::optional<TimeWindow> eval_window;  // interior_window() when empty
  double tail_tol = kDefaultTailTol;

  std::size_t tail_len() const { return tail_length(kernel.a(), tail_tol); }
  // Resolved window; throws ErrorKind::insufficient_data if x cannot support it.
  TimeWindow window() const;
};

template <SupportedReal Real>
BasicSignal<Real> target(const PredictionRun<Real>& run);

template <SupportedReal Real>
BasicSignal<Real> forecast(const PredictionRun<Real>& run);

// Lower-level forms used by sweeps that reuse one kernel or one target.
template <SupportedReal Real>
BasicSignal<Real> target_on(const BasicSignal<Real>& x, const FirstOrderKernel& kernel, TimeWindow window,
                            std::size_t tail_len);

template <SupportedReal Real>
BasicSignal<Real> forecast_on(const BasicSignal<Real>& x, const BasicSignal<Real>& taps, TimeWindow window);

struct XNorms {
  double l2 = 0.0;  // ||X||_{L2(-pi,pi)}
  double lq = 0.0;  // ||X||_{Lq(-pi,pi)}
  double q = 4.0;
};

// Norms of the window's transform: L2 by Parseval, Lq on a grid of twice the
// window length rounded up to a power of two.
template <SupportedReal Real>
XNorms x_norms(const BasicSignal<Real>& x, double q = 4.0);

struct ErrorReport {
  double abs_l2 = 0.0;
  double abs_linf = 0.0;
  double rel_l2_vs_L2X = 0.0;
  double rel_linf_vs_L2X = 0.0;
  double rel_l2_vs_LqX = 0.0;
};

template <SupportedReal Real>
ErrorReport error_report(const BasicSignal<Real>& y, const BasicSignal<Real>& yhat, const XNorms& norms);

}  // namespace bandpredict
