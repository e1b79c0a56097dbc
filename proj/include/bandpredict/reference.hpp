#pragma once

// Single-threaded textbook versions of the transforms and convolutions. They
// share no code with the optimized paths and serve as test oracles and as the
// baseline in the benchmark.

#include "bandpredict/kernels.hpp"
#include "bandpredict/predictor.hpp"
#include "bandpredict/spectral.hpp"

namespace bandpredict::serial {

// X_j = sum_t x(t) e^{-i w_j t}, O(n L).
template <SupportedReal Real>
BasicSpectrumGrid<Real> dtft(const BasicSignal<Real>& x, std::size_t n);

// x(t) = (1/n) sum_j X_j e^{i w_j t}, O(n L).
template <SupportedReal Real>
BasicSignal<Real> inverse(const BasicSpectrumGrid<Real>& grid, std::int64_t first, std::size_t length);

// yhat(t) = sum_{j=0}^{M-1} khat(j) x(t-j), plain complex arithmetic.
template <SupportedReal Real>
BasicSignal<Real> forecast(const BasicSignal<Real>& x, const BasicSignal<Real>& taps, TimeWindow window);

// y(t) = sum_{s=t}^{t+tail} k(t-s) x(s) with k(t) = (-1)^t a^{t-1} from std::pow.
template <SupportedReal Real>
BasicSignal<Real> target(const BasicSignal<Real>& x, const FirstOrderKernel& kernel, TimeWindow window,
                         std::size_t tail_len);

}  // namespace bandpredict::serial
