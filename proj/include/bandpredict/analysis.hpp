#pragma once

// Error budget for a band-limited predictor facing out-of-band noise, and the
// experiment sweeps that hold measured errors against it.
//
// With psi(w) = sign(a+alpha) Re((e^{iw}+a)/(e^{iw}+alpha)) one has
// |V - 1| = exp(gamma psi), so for |X| <= 1 in band and <= nu out of band
//   ||yhat - y||_inf <= (I1 + I2 + nu I3) / (2 pi),
//   I_k = kappa * integral of exp(gamma psi) over G1 = |w| < omega1,
//         omega1 <= |w| <= omega, and |w| > omega respectively,
// with omega1 = omega - eps/4 and gamma(eps) = -log(2 kappa / eps) / psi0.

#include "bandpredict/kernels.hpp"
#include "bandpredict/predictor.hpp"
#include "bandpredict/signals.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bandpredict {

struct ErrorBudget {
  double eps = 0.0;
  double nu = 0.0;
  std::size_t n = 0;
  double kappa = 0.0;      // max_w |K(e^{iw})| on the grid
  double alpha = 0.0;
  double omega1 = 0.0;     // omega - eps/4
  double psi0 = 0.0;       // min of psi over |w| < omega1
  bool psi_monotone = false;  // psi decreasing in |w| on [0, omega] (grid check)
  double mu = 0.0;         // 1 + |a - alpha| / (1 - alpha)
  double gamma_eps = 0.0;  // -log(2 kappa / eps) / psi0
  double i1 = 0.0;         // rectangle-rule integrals at gamma_eps
  double i2 = 0.0;
  double i3 = 0.0;
  double i2_bound = 0.0;   // kappa * mes(G \ G1) = kappa * eps / 2
  double i3_bound = 0.0;   // 2 kappa (pi - omega) (2 kappa / eps)^{mu / psi0}
  double nu_i3 = 0.0;      // nu * i3_bound
};

ErrorBudget budget(const FirstOrderKernel& kernel, double omega, double eps, double nu, std::size_t n);

// 2 kappa nu (pi - omega) (2 kappa / eps)^{mu / psi0}
double nu_i3_closed_form(double kappa, double nu, double omega, double eps, double mu, double psi0);

struct GammaRow {
  double gamma = 0.0;
  double abs_l2 = 0.0;
  double abs_linf = 0.0;
  double rel_l2 = 0.0;
  double rel_linf = 0.0;
  double kernel_tail_l1 = 0.0;
  std::string failure;  // non-empty when the row could not be computed (keep_going)
};

struct SweepOptions {
  double tail_tol = kDefaultTailTol;
  double causality_tol = kCausalityTolerance;
  bool keep_going = false;  // record kernel errors per row instead of throwing
};

// Rows in input order, all on the same signal x.
template <SupportedReal Real>
std::vector<GammaRow> gamma_sweep(const BasicSignal<Real>& x, const FirstOrderKernel& kernel, double omega,
                                  Band mode, std::span<const double> gammas, std::size_t n, std::size_t m,
                                  const SweepOptions& options = {});

// Generates the signal from spec on a synthesis grid (default 4x length) first.
template <SupportedReal Real>
std::vector<GammaRow> gamma_sweep(const FirstOrderKernel& kernel, double omega, Band mode,
                                  const BandSignalSpec& signal, std::span<const double> gammas, std::size_t n,
                                  std::size_t m, std::size_t synthesis_n = 0, const SweepOptions& options = {});

struct NoiseRow {
  double nu = 0.0;
  double measured_linf = 0.0;
  double budget_i12 = 0.0;     // I1 + I2
  double budget_nu_i3 = 0.0;   // nu * closed-form bound on I3
  double budget_nu_i3_integral = 0.0;  // nu * I3
  double slack = 0.0;          // truncation allowance added to the comparison
  double x_linf = 0.0;
};

struct NoiseSweep {
  ErrorBudget budget;  // at nu = 0, defines gamma(eps)
  std::vector<NoiseRow> rows;
};

// One noisy-spectrum signal per nu (length n/4, synthesized on the n-point
// grid with the same seed), all predicted with the gamma(eps) kernel.
template <SupportedReal Real>
NoiseSweep noise_sweep(const FirstOrderKernel& kernel, double omega, double eps, std::span<const double> nus,
                       std::size_t n, std::size_t m, std::uint64_t seed, double tail_tol = kDefaultTailTol);

struct SplitResult {
  double combined_rel_l2 = 0.0;
  double low_rel_l2 = 0.0;
  double high_rel_l2 = 0.0;
  double low_energy = 0.0;   // ||x_L||^2 / ||x||^2 after the ideal split
  double high_energy = 0.0;
  double single_low_rel_l2 = 0.0;  // x predicted by the low-mode kernel alone
};

// Splits x with the ideal filter on the n-point grid, forecasts each part with
// its mode-matched kernel and scores the sum against the target of x. All
// relative errors are over ||X||_{L2} of the full input.
template <SupportedReal Real>
SplitResult corollary_split_experiment(const BasicSignal<Real>& x, double omega, const FirstOrderKernel& kernel,
                                       double gamma_low, double gamma_high, std::size_t n, std::size_t m,
                                       double tail_tol = kDefaultTailTol);

struct FeasibilityRow {
  double omega = 0.0;
  double alpha = 0.0;
  double log10_sup = 0.0;  // log10 max_t |khat(t)|
  std::size_t argmax = 0;
  std::size_t terms = 0;
};

// Uses the exact series route, so it is not limited by grid size or double range.
std::vector<FeasibilityRow> feasibility_sweep(const FirstOrderKernel& kernel, std::span<const double> omegas,
                                              double gamma);

}  // namespace bandpredict
