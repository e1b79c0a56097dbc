#include "bandpredict/predictor.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>
#include <type_traits>

namespace bandpredict {

namespace {

template <SupportedReal Real>
bool is_real(const BasicSignal<Real>& x) {
  return std::all_of(x.values().begin(), x.values().end(), [](const auto& v) { return v.imag() == 0; });
}

// Taps below this magnitude are summed in double when Real is Extended; their
// products carry at most 2^-10 |x| each, far under anything that is scored.
constexpr double kDoubleTapCeiling = 0x1.0p-10;

std::string window_text(TimeWindow w) {
  return "[" + std::to_string(w.first) + ", " + std::to_string(w.last) + "]";
}

}  // namespace

std::size_t tail_length(double a, double tail_tol) {
  require(std::isfinite(a) && std::abs(a) > 1.0, ErrorKind::domain, "tail length needs |a| > 1");
  require(tail_tol > 0.0 && tail_tol < 1.0, ErrorKind::parameter, "tail_tol must lie in (0, 1)");
  const double len = std::ceil(std::log(tail_tol * (std::abs(a) - 1.0)) / std::log(1.0 / std::abs(a)));
  return len > 0.0 ? static_cast<std::size_t>(len) : 0;
}

TimeWindow interior_window(std::int64_t start, std::int64_t last, std::size_t m, std::size_t tail_len) {
  const TimeWindow w{start + static_cast<std::int64_t>(m), last - static_cast<std::int64_t>(tail_len)};
  require(w.first <= w.last, ErrorKind::insufficient_data,
          "signal [" + std::to_string(start) + ", " + std::to_string(last) + "] is too short for " +
              std::to_string(m) + " samples of history and " + std::to_string(tail_len) + " of future");
  return w;
}

template <SupportedReal Real>
TimeWindow PredictionRun<Real>::window() const {
  const std::size_t tail = tail_len();
  if (!eval_window) return interior_window(x.start(), x.last(), params.m, tail);
  const TimeWindow w = *eval_window;
  require(w.first <= w.last, ErrorKind::parameter, "empty evaluation window " + window_text(w));
  require(w.first - static_cast<std::int64_t>(params.m) >= x.start(), ErrorKind::insufficient_data,
          "evaluation window " + window_text(w) + " needs " + std::to_string(params.m) +
              " samples of history before it");
  require(w.last + static_cast<std::int64_t>(tail) <= x.last(), ErrorKind::insufficient_data,
          "evaluation window " + window_text(w) + " needs " + std::to_string(tail) +
              " samples of future after it");
  return w;
}

template <SupportedReal Real>
BasicSignal<Real> target_on(const BasicSignal<Real>& x, const FirstOrderKernel& kernel, TimeWindow window,
                            std::size_t tail_len) {
  require(window.first >= x.start() && window.last + static_cast<std::int64_t>(tail_len) <= x.last(),
          ErrorKind::insufficient_data,
          "target on " + window_text(window) + " needs x up to t = " +
              std::to_string(window.last + static_cast<std::int64_t>(tail_len)));
  // coef[j] = k(-j)
  const auto k = anticausal_kernel<Real>(FirstOrderKernel::k1(kernel.a()), -static_cast<std::int64_t>(tail_len));
  std::vector<std::complex<Real>> coef(tail_len + 1);
  for (std::size_t j = 0; j <= tail_len; ++j) coef[j] = k.at(-static_cast<std::int64_t>(j));

  const auto xs = x.values();
  const std::size_t len = window.size();
  const Real c(kernel.c());
  std::vector<std::complex<Real>> out(len);
  detail::parallel_for(static_cast<std::int64_t>(len), [&](std::int64_t i) {
    const std::size_t base = static_cast<std::size_t>(window.first + i - x.start());
    std::complex<Real> acc(0, 0);
    for (std::size_t j = 0; j <= tail_len; ++j) acc += coef[j] * xs[base + j];
    out[static_cast<std::size_t>(i)] = kernel.is_k0() ? xs[base] + c * acc : acc;
  }, len >= 256);
  return BasicSignal<Real>(window.first, std::move(out));
}

template <SupportedReal Real>
BasicSignal<Real> forecast_on(const BasicSignal<Real>& x, const BasicSignal<Real>& taps, TimeWindow window) {
  require(taps.start() == 0, ErrorKind::contract, "causal taps must start at t = 0");
  const std::size_t m = taps.size();
  require(window.first - static_cast<std::int64_t>(m) + 1 >= x.start() && window.last <= x.last(),
          ErrorKind::insufficient_data,
          "forecast on " + window_text(window) + " needs x from t = " +
              std::to_string(window.first - static_cast<std::int64_t>(m) + 1));
  const auto xs = x.values();
  const auto ks = taps.values();
  const std::size_t len = window.size();
  std::vector<std::complex<Real>> out(len);
  auto offset = [&](std::int64_t i) { return static_cast<std::size_t>(window.first + i - x.start()); };

  if (!is_real(x) || !is_real(taps)) {
    detail::parallel_for(static_cast<std::int64_t>(len), [&](std::int64_t i) {
      const std::size_t base = offset(i);
      std::complex<Real> acc(0, 0);
      for (std::size_t j = 0; j < m; ++j) acc += ks[j] * xs[base - j];
      out[static_cast<std::size_t>(i)] = acc;
    }, len >= 64);
    return BasicSignal<Real>(window.first, std::move(out));
  }

  std::vector<Real> kr(m), xr(xs.size());
  for (std::size_t j = 0; j < m; ++j) kr[j] = ks[j].real();
  for (std::size_t s = 0; s < xs.size(); ++s) xr[s] = xs[s].real();

  if constexpr (std::is_same_v<Real, double>) {
    detail::parallel_for(static_cast<std::int64_t>(len), [&](std::int64_t i) {
      const std::size_t base = offset(i);
      double acc = 0.0;
      for (std::size_t j = 0; j < m; ++j) acc += kr[j] * xr[base - j];
      out[static_cast<std::size_t>(i)] = {acc, 0.0};
    }, len >= 64);
  } else {
    std::vector<std::size_t> wide, narrow;
    std::vector<double> narrow_k;
    for (std::size_t j = 0; j < m; ++j) {
      using std::abs;
      if (abs(kr[j]) >= kDoubleTapCeiling) {
        wide.push_back(j);
      } else if (kr[j] != 0) {
        narrow.push_back(j);
        narrow_k.push_back(to_double(kr[j]));
      }
    }
    std::vector<double> xd(xr.size());
    for (std::size_t s = 0; s < xr.size(); ++s) xd[s] = to_double(xr[s]);
    detail::parallel_for(static_cast<std::int64_t>(len), [&](std::int64_t i) {
      const std::size_t base = offset(i);
      Real acc = 0;
      for (const std::size_t j : wide) multiply_accumulate(acc, kr[j], xr[base - j]);
      double small = 0.0;
      for (std::size_t p = 0; p < narrow.size(); ++p) small += narrow_k[p] * xd[base - narrow[p]];
      out[static_cast<std::size_t>(i)] = std::complex<Real>(acc + Real(small), Real(0));
    }, len >= 16);
  }
  return BasicSignal<Real>(window.first, std::move(out));
}

template <SupportedReal Real>
BasicSignal<Real> target(const PredictionRun<Real>& run) {
  return target_on<Real>(run.x, run.kernel, run.window(), run.tail_len());
}

template <SupportedReal Real>
BasicSignal<Real> forecast(const PredictionRun<Real>& run) {
  const TimeWindow w = run.window();
  const auto kernel = causal_kernel<Real>(run.kernel, run.params);
  return forecast_on<Real>(run.x, kernel.taps, w);
}

template <SupportedReal Real>
XNorms x_norms(const BasicSignal<Real>& x, double q) {
  XNorms out;
  out.q = q;
  out.l2 = std::sqrt(2.0 * std::numbers::pi) * to_double(norm<Real>(x, NormKind::l2));
  const std::size_t n = std::max<std::size_t>(8, std::bit_ceil(2 * x.size()));
  out.lq = to_double(lq_grid_norm<Real>(dtft_on_grid<Real>(x, n), q));
  return out;
}

template <SupportedReal Real>
ErrorReport error_report(const BasicSignal<Real>& y, const BasicSignal<Real>& yhat, const XNorms& norms) {
  require(y.start() == yhat.start() && y.size() == yhat.size(), ErrorKind::alignment,
          "target and forecast windows differ");
  std::vector<std::complex<Real>> diff(y.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = y.values()[i] - yhat.values()[i];
  ErrorReport r;
  r.abs_l2 = to_double(norm<Real>(std::span<const std::complex<Real>>(diff), NormKind::l2));
  r.abs_linf = to_double(norm<Real>(std::span<const std::complex<Real>>(diff), NormKind::linf));
  r.rel_l2_vs_L2X = r.abs_l2 / norms.l2;
  r.rel_linf_vs_L2X = r.abs_linf / norms.l2;
  r.rel_l2_vs_LqX = r.abs_l2 / norms.lq;
  return r;
}

#define BANDPREDICT_INSTANTIATE(Real)                                                               \
  template struct PredictionRun<Real>;                                                              \
  template BasicSignal<Real> target<Real>(const PredictionRun<Real>&);                              \
  template BasicSignal<Real> forecast<Real>(const PredictionRun<Real>&);                            \
  template BasicSignal<Real> target_on<Real>(const BasicSignal<Real>&, const FirstOrderKernel&,     \
                                             TimeWindow, std::size_t);                              \
  template BasicSignal<Real> forecast_on<Real>(const BasicSignal<Real>&, const BasicSignal<Real>&,  \
                                               TimeWindow);                                         \
  template XNorms x_norms<Real>(const BasicSignal<Real>&, double);                                  \
  template ErrorReport error_report<Real>(const BasicSignal<Real>&, const BasicSignal<Real>&,       \
                                          const XNorms&);

BANDPREDICT_INSTANTIATE(double)
BANDPREDICT_INSTANTIATE(Extended)

#undef BANDPREDICT_INSTANTIATE

}  // namespace bandpredict
