#include "bandpredict/analysis.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace bandpredict {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <SupportedReal Real>
double l2_distance(const BasicSignal<Real>& u, const BasicSignal<Real>& v) {
  require(u.start() == v.start() && u.size() == v.size(), ErrorKind::alignment, "windows differ");
  Real acc = 0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += squared_magnitude(std::complex<Real>(u.values()[i] - v.values()[i]));
  using std::sqrt;
  return to_double(Real(sqrt(acc)));
}

template <SupportedReal Real>
BasicSignal<Real> add(const BasicSignal<Real>& u, const BasicSignal<Real>& v) {
  require(u.start() == v.start() && u.size() == v.size(), ErrorKind::alignment, "windows differ");
  std::vector<std::complex<Real>> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u.values()[i] + v.values()[i];
  return BasicSignal<Real>(u.start(), std::move(out));
}

// psi decreasing in |w| over the grid bins with 0 <= w <= omega.
bool psi_decreasing(double a, double alpha, double omega, std::size_t n) {
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t j = n / 2; j < n && in_low_band(j, n, omega); ++j) {
    const double v = psi(a, alpha, grid_omega(j, n));
    if (!(v < prev)) return false;
    prev = v;
  }
  return true;
}

}  // namespace

double nu_i3_closed_form(double kappa, double nu, double omega, double eps, double mu, double psi0) {
  return 2.0 * kappa * nu * (std::numbers::pi - omega) * std::pow(2.0 * kappa / eps, mu / psi0);
}

ErrorBudget budget(const FirstOrderKernel& kernel, double omega, double eps, double nu, std::size_t n) {
  check_omega(omega);
  check_grid_size(n);
  require(std::isfinite(eps) && eps > 0.0 && eps < 4.0 * omega, ErrorKind::parameter,
          "eps must lie in (0, 4 omega) so that omega1 = omega - eps/4 > 0");
  require(std::isfinite(nu) && nu >= 0.0 && nu < 1.0, ErrorKind::parameter, "nu must lie in [0, 1)");

  ErrorBudget b;
  b.eps = eps;
  b.nu = nu;
  b.n = n;
  const double a = kernel.a();
  const auto k = k_transfer<double>(kernel, n);
  for (const auto& v : k.values()) b.kappa = std::max(b.kappa, std::abs(v));
  require(2.0 * b.kappa > eps, ErrorKind::parameter,
          "eps must be below 2 kappa = " + std::to_string(2.0 * b.kappa) + " for a band-limited gamma < 0");
  b.alpha = alpha(a, omega);
  b.omega1 = omega - eps / 4.0;
  b.mu = 1.0 + std::abs(a - b.alpha) / (1.0 - b.alpha);

  const auto psi_at = [&](double w) { return psi(a, b.alpha, w); };
  b.psi_monotone = psi_decreasing(a, b.alpha, omega, n);
  if (b.psi_monotone) {
    b.psi0 = psi_at(b.omega1);
  } else {
    // Grid minimum over |w| < omega1, polished by Brent on the neighbouring
    // bins; the infimum may also sit on the open boundary |w| = omega1.
    std::size_t best = n / 2;
    for (std::size_t j = n / 2; j < n && classify_bin(j, n, b.omega1) == BinPlacement::inside; ++j) {
      if (psi_at(grid_omega(j, n)) < psi_at(grid_omega(best, n))) best = j;
    }
    const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
    const double lo = std::max(0.0, grid_omega(best, n) - step);
    const double hi = std::min(b.omega1, grid_omega(best, n) + step);
    const auto found = boost::math::tools::brent_find_minima(psi_at, lo, hi, 52);
    b.psi0 = std::min(found.second, psi_at(b.omega1));
  }
  require(b.psi0 > 0.0, ErrorKind::consistency, "psi0 <= 0 on the inner band");
  b.gamma_eps = -std::log(2.0 * b.kappa / eps) / b.psi0;

  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double w = grid_omega(j, n);
    const double term = b.kappa * std::exp(b.gamma_eps * psi_at(w)) * step;
    if (classify_bin(j, n, b.omega1) == BinPlacement::inside) {
      b.i1 += term;
    } else if (in_low_band(j, n, omega)) {
      b.i2 += term;
    } else {
      b.i3 += term;
    }
  }
  b.i2_bound = b.kappa * eps / 2.0;
  b.i3_bound = nu_i3_closed_form(b.kappa, 1.0, omega, eps, b.mu, b.psi0);
  b.nu_i3 = nu * b.i3_bound;
  return b;
}

template <SupportedReal Real>
std::vector<GammaRow> gamma_sweep(const BasicSignal<Real>& x, const FirstOrderKernel& kernel, double omega,
                                  Band mode, std::span<const double> gammas, std::size_t n, std::size_t m,
                                  const SweepOptions& options) {
  const std::size_t tail = tail_length(kernel.a(), options.tail_tol);
  const TimeWindow w = interior_window(x.start(), x.last(), m, tail);
  const auto y = target_on<Real>(x, kernel, w, tail);
  const XNorms norms = x_norms<Real>(x);

  std::vector<GammaRow> rows;
  rows.reserve(gammas.size());
  for (const double gamma : gammas) {
    GammaRow row;
    row.gamma = gamma;
    try {
      const auto ck = causal_kernel<Real>(kernel, {omega, gamma, n, m, mode}, options.causality_tol);
      const auto yhat = forecast_on<Real>(x, ck.taps, w);
      const auto r = error_report<Real>(y, yhat, norms);
      row.abs_l2 = r.abs_l2;
      row.abs_linf = r.abs_linf;
      row.rel_l2 = r.rel_l2_vs_L2X;
      row.rel_linf = r.rel_linf_vs_L2X;
      row.kernel_tail_l1 = ck.tail_l1;
    } catch (const Error& e) {
      if (!options.keep_going || e.kind() == ErrorKind::parameter) throw;
      row.abs_l2 = row.abs_linf = row.rel_l2 = row.rel_linf = row.kernel_tail_l1 = kNaN;
      row.failure = std::string(to_string(e.kind())) + ": " + e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

template <SupportedReal Real>
std::vector<GammaRow> gamma_sweep(const FirstOrderKernel& kernel, double omega, Band mode,
                                  const BandSignalSpec& signal, std::span<const double> gammas, std::size_t n,
                                  std::size_t m, std::size_t synthesis_n, const SweepOptions& options) {
  const std::size_t grid = synthesis_n ? synthesis_n : default_synthesis_grid(signal.length);
  const auto x = gen_band_signal<Real>(signal, grid);
  return gamma_sweep<Real>(x, kernel, omega, mode, gammas, n, m, options);
}

template <SupportedReal Real>
NoiseSweep noise_sweep(const FirstOrderKernel& kernel, double omega, double eps, std::span<const double> nus,
                       std::size_t n, std::size_t m, std::uint64_t seed, double tail_tol) {
  NoiseSweep out;
  out.budget = budget(kernel, omega, eps, 0.0, n);
  const auto ck = causal_kernel<Real>(kernel, {omega, out.budget.gamma_eps, n, m, Band::low});
  const std::size_t tail = tail_length(kernel.a(), tail_tol);
  for (const double nu : nus) {
    const auto x = gen_noisy_spectrum<Real>({omega, nu, seed, n / 4, 0}, n);
    const TimeWindow w = interior_window(x.start(), x.last(), m, tail);
    const auto y = target_on<Real>(x, kernel, w, tail);
    const auto yhat = forecast_on<Real>(x, ck.taps, w);
    const auto r = error_report<Real>(y, yhat, x_norms<Real>(x));
    NoiseRow row;
    row.nu = nu;
    row.measured_linf = r.abs_linf;
    row.budget_i12 = out.budget.i1 + out.budget.i2;
    row.budget_nu_i3 = nu * out.budget.i3_bound;
    row.budget_nu_i3_integral = nu * out.budget.i3;
    row.x_linf = to_double(norm<Real>(x, NormKind::linf));
    row.slack = (tail_tol + ck.tail_l1) * row.x_linf +
                kCausalityTolerance * to_double(norm<Real>(x, NormKind::l2));
    out.rows.push_back(row);
  }
  return out;
}

template <SupportedReal Real>
SplitResult corollary_split_experiment(const BasicSignal<Real>& x, double omega, const FirstOrderKernel& kernel,
                                       double gamma_low, double gamma_high, std::size_t n, std::size_t m,
                                       double tail_tol) {
  const auto parts = ideal_filter_split<Real>(x, omega, n);
  const std::size_t tail = tail_length(kernel.a(), tail_tol);
  const TimeWindow w = interior_window(x.start(), x.last(), m, tail);
  const auto k_low = causal_kernel<Real>(kernel, {omega, gamma_low, n, m, Band::low});
  const auto k_high = causal_kernel<Real>(kernel, {omega, gamma_high, n, m, Band::high});

  const auto y = target_on<Real>(x, kernel, w, tail);
  const auto y_low = target_on<Real>(parts.low, kernel, w, tail);
  const auto y_high = target_on<Real>(parts.high, kernel, w, tail);
  const auto yhat_low = forecast_on<Real>(parts.low, k_low.taps, w);
  const auto yhat_high = forecast_on<Real>(parts.high, k_high.taps, w);
  const auto yhat_single = forecast_on<Real>(x, k_low.taps, w);

  const double x_l2 = x_norms<Real>(x).l2;
  SplitResult r;
  r.combined_rel_l2 = l2_distance<Real>(y, add<Real>(yhat_low, yhat_high)) / x_l2;
  r.low_rel_l2 = l2_distance<Real>(y_low, yhat_low) / x_l2;
  r.high_rel_l2 = l2_distance<Real>(y_high, yhat_high) / x_l2;
  r.single_low_rel_l2 = l2_distance<Real>(y, yhat_single) / x_l2;
  const Real total = norm<Real>(x, NormKind::l2);
  if (total > 0) {
    r.low_energy = to_double(Real(norm<Real>(parts.low, NormKind::l2) / total));
    r.high_energy = to_double(Real(norm<Real>(parts.high, NormKind::l2) / total));
    r.low_energy *= r.low_energy;
    r.high_energy *= r.high_energy;
  }
  return r;
}

std::vector<FeasibilityRow> feasibility_sweep(const FirstOrderKernel& kernel, std::span<const double> omegas,
                                              double gamma) {
  std::vector<FeasibilityRow> rows;
  for (const double omega : omegas) {
    const auto s = series_causal_kernel(kernel, omega, gamma, 0);
    rows.push_back({omega, alpha(kernel.a(), omega), s.sup.log10_abs(), s.argmax, s.terms});
  }
  return rows;
}

#define BANDPREDICT_INSTANTIATE(Real)                                                                          \
  template std::vector<GammaRow> gamma_sweep<Real>(const BasicSignal<Real>&, const FirstOrderKernel&, double,  \
                                                   Band, std::span<const double>, std::size_t, std::size_t,    \
                                                   const SweepOptions&);                                       \
  template std::vector<GammaRow> gamma_sweep<Real>(const FirstOrderKernel&, double, Band,                      \
                                                   const BandSignalSpec&, std::span<const double>,             \
                                                   std::size_t, std::size_t, std::size_t,                      \
                                                   const SweepOptions&);                                       \
  template NoiseSweep noise_sweep<Real>(const FirstOrderKernel&, double, double, std::span<const double>,      \
                                        std::size_t, std::size_t, std::uint64_t, double);                      \
  template SplitResult corollary_split_experiment<Real>(const BasicSignal<Real>&, double,                      \
                                                        const FirstOrderKernel&, double, double, std::size_t,  \
                                                        std::size_t, double);

BANDPREDICT_INSTANTIATE(double)
BANDPREDICT_INSTANTIATE(Extended)

#undef BANDPREDICT_INSTANTIATE

}  // namespace bandpredict
