#include "bandpredict/reference.hpp"

#include <cmath>

namespace bandpredict::serial {

template <SupportedReal Real>
BasicSpectrumGrid<Real> dtft(const BasicSignal<Real>& x, std::size_t n) {
  using std::cos;
  using std::sin;
  check_grid_size(n);
  std::vector<std::complex<Real>> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Real w = grid_omega_as<Real>(j, n);
    std::complex<Real> acc(0, 0);
    for (std::int64_t t = x.start(); t <= x.last(); ++t) {
      const Real phase = -w * Real(static_cast<double>(t));
      acc += x.at(t) * std::complex<Real>(cos(phase), sin(phase));
    }
    out[j] = acc;
  }
  return BasicSpectrumGrid<Real>(std::move(out));
}

template <SupportedReal Real>
BasicSignal<Real> inverse(const BasicSpectrumGrid<Real>& grid, std::int64_t first, std::size_t length) {
  using std::cos;
  using std::sin;
  const std::size_t n = grid.size();
  std::vector<std::complex<Real>> out(length);
  for (std::size_t i = 0; i < length; ++i) {
    const Real t(static_cast<double>(first + static_cast<std::int64_t>(i)));
    std::complex<Real> acc(0, 0);
    for (std::size_t j = 0; j < n; ++j) {
      const Real phase = grid_omega_as<Real>(j, n) * t;
      acc += grid[j] * std::complex<Real>(cos(phase), sin(phase));
    }
    out[i] = acc / Real(static_cast<double>(n));
  }
  return BasicSignal<Real>(first, std::move(out));
}

template <SupportedReal Real>
BasicSignal<Real> forecast(const BasicSignal<Real>& x, const BasicSignal<Real>& taps, TimeWindow window) {
  std::vector<std::complex<Real>> out;
  for (std::int64_t t = window.first; t <= window.last; ++t) {
    std::complex<Real> acc(0, 0);
    for (std::int64_t s = t - static_cast<std::int64_t>(taps.size()) + 1; s <= t; ++s) {
      acc += taps.at(t - s) * x.at(s);
    }
    out.push_back(acc);
  }
  return BasicSignal<Real>(window.first, std::move(out));
}

template <SupportedReal Real>
BasicSignal<Real> target(const BasicSignal<Real>& x, const FirstOrderKernel& kernel, TimeWindow window,
                         std::size_t tail_len) {
  using std::pow;
  const Real a(kernel.a());
  const Real c(kernel.c());
  std::vector<std::complex<Real>> out;
  for (std::int64_t t = window.first; t <= window.last; ++t) {
    std::complex<Real> acc(0, 0);
    for (std::int64_t s = t; s <= t + static_cast<std::int64_t>(tail_len); ++s) {
      const std::int64_t d = t - s;
      const Real k = (d % 2 == 0 ? Real(1) : Real(-1)) * pow(a, Real(static_cast<double>(d - 1)));
      acc += k * x.at(s);
    }
    out.push_back(kernel.is_k0() ? x.at(t) + c * acc : acc);
  }
  return BasicSignal<Real>(window.first, std::move(out));
}

#define BANDPREDICT_INSTANTIATE(Real)                                                                      \
  template BasicSpectrumGrid<Real> dtft<Real>(const BasicSignal<Real>&, std::size_t);                      \
  template BasicSignal<Real> inverse<Real>(const BasicSpectrumGrid<Real>&, std::int64_t, std::size_t);     \
  template BasicSignal<Real> forecast<Real>(const BasicSignal<Real>&, const BasicSignal<Real>&, TimeWindow); \
  template BasicSignal<Real> target<Real>(const BasicSignal<Real>&, const FirstOrderKernel&, TimeWindow,   \
                                          std::size_t);

BANDPREDICT_INSTANTIATE(double)
BANDPREDICT_INSTANTIATE(Extended)

#undef BANDPREDICT_INSTANTIATE

}  // namespace bandpredict::serial
