#include "bandpredict/kernels.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace bandpredict {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void check_a(double a) {
  require(std::isfinite(a) && std::abs(a) > 1.0, ErrorKind::domain,
          "pole parameter needs |a| > 1, got a = " + fmt(a));
}

void check_alpha(double alpha) {
  require(std::isfinite(alpha) && std::abs(alpha) < 1.0, ErrorKind::domain,
          "mirror pole needs |alpha| < 1, got alpha = " + fmt(alpha));
}

double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

// z = e^{iw} on grid bin j, evaluated in Real.
template <SupportedReal Real>
struct UnitPoint {
  Real cos_w;
  Real sin_w;
};

inline void sin_cos(const double& x, double& s, double& c) {
  s = std::sin(x);
  c = std::cos(x);
}

inline void sin_cos(const Extended& x, Extended& s, Extended& c) {
  mpfr_sin_cos(s.backend().data(), c.backend().data(), x.backend().data(), MPFR_RNDN);
}

template <SupportedReal Real>
UnitPoint<Real> unit_point(std::size_t j, std::size_t n) {
  UnitPoint<Real> z;
  sin_cos(grid_omega_as<Real>(j, n), z.sin_w, z.cos_w);
  return z;
}

// Evaluates f on bins 0..n/2 and fills the rest as conjugates: every transfer
// here has real coefficients, so H(e^{-iw}) = conj(H(e^{iw})).
template <SupportedReal Real, class F>
BasicSpectrumGrid<Real> hermitian_grid(std::size_t n, F&& f) {
  check_grid_size(n);
  std::vector<std::complex<Real>> out(n);
  detail::parallel_for(static_cast<std::int64_t>(n / 2 + 1), [&](std::int64_t j) {
    const auto idx = static_cast<std::size_t>(j);
    out[idx] = f(idx, unit_point<Real>(idx, n));
  }, n >= 4096);
  for (std::size_t j = 1; j < n / 2; ++j) out[n - j] = std::conj(out[j]);
  return BasicSpectrumGrid<Real>(std::move(out));
}

// 1/(z+a) = (cos w + a - i sin w) / (1 + a^2 + 2a cos w).
template <SupportedReal Real>
std::complex<Real> k1_at(const UnitPoint<Real>& z, const Real& a) {
  const Real den = 1 + a * a + 2 * a * z.cos_w;
  return {(z.cos_w + a) / den, -z.sin_w / den};
}

template <SupportedReal Real>
std::complex<Real> k_at(const FirstOrderKernel& kernel, const UnitPoint<Real>& z) {
  const auto k1 = k1_at<Real>(z, Real(kernel.a()));
  if (!kernel.is_k0()) return k1;
  const Real c(kernel.c());
  return {1 + c * k1.real(), c * k1.imag()};
}

// 1 - exp(gamma s (z+a)/(z+alpha)), with
//   (z+a)/(z+alpha) = (1 + a alpha + (a+alpha) cos w + i (alpha-a) sin w) / |z+alpha|^2.
template <SupportedReal Real>
std::complex<Real> v_at(const UnitPoint<Real>& z, double a, double alpha, double gamma, std::size_t bin) {
  using std::exp;
  const Real ra(a), ral(alpha);
  const Real den = 1 + ral * ral + 2 * ral * z.cos_w;
  const Real scale = Real(gamma * sign_of(a + alpha)) / den;
  const Real re = scale * (1 + ra * ral + (ra + ral) * z.cos_w);
  const Real im = scale * (ral - ra) * z.sin_w;
  if (re > Real(RealTraits<Real>::exp_ceiling)) {
    fail(ErrorKind::saturation,
         "exp overflow in V: exponent real part " + fmt(to_double(re)) + " exceeds " +
             fmt(RealTraits<Real>::exp_ceiling) + " (" + std::string(RealTraits<Real>::name) +
             ")" + (bin == static_cast<std::size_t>(-1) ? std::string() : " at bin " + std::to_string(bin)) +
             "; reduce |gamma|");
  }
  const Real mag = exp(re);
  Real s, c;
  sin_cos(im, s, c);
  return {1 - mag * c, -mag * s};
}

}  // namespace

std::string_view to_string(Band band) noexcept { return band == Band::low ? "low" : "high"; }

Band parse_band(std::string_view text) {
  if (text == "low") return Band::low;
  if (text == "high") return Band::high;
  fail(ErrorKind::parameter, "unknown band mode '" + std::string(text) + "' (expected low|high)");
}

FirstOrderKernel FirstOrderKernel::k1(double a) {
  check_a(a);
  return FirstOrderKernel(a, std::nullopt);
}

FirstOrderKernel FirstOrderKernel::k0(double a, double b) {
  check_a(a);
  require(std::isfinite(b), ErrorKind::parameter, "zero parameter b must be finite");
  return FirstOrderKernel(a, b);
}

void check_omega(double omega) {
  require(std::isfinite(omega) && omega > 0.0 && omega < std::numbers::pi, ErrorKind::domain,
          "band edge must lie in (0, pi), got " + fmt(omega));
}

void PredictorParams::validate() const {
  check_omega(omega);
  require(std::isfinite(gamma), ErrorKind::parameter, "gamma must be finite");
  if (mode == Band::low) {
    require(gamma <= 0.0, ErrorKind::parameter, "low mode needs gamma <= 0, got " + fmt(gamma));
  } else {
    require(gamma >= 0.0, ErrorKind::parameter, "high mode needs gamma >= 0, got " + fmt(gamma));
  }
  check_grid_size(n);
  require(m >= 1 && m <= n, ErrorKind::parameter,
          "truncation length m must satisfy 1 <= m <= n, got m = " + std::to_string(m));
}

double alpha(double a, double omega) {
  check_a(a);
  check_omega(omega);
  const double c = std::cos(omega);
  const double d = a + c;
  require(std::abs(d) >= 1e-12, ErrorKind::domain, "degenerate denominator a + cos(omega)");
  // 1 + alpha = (a-1)(1-c)/(a+c) and 1 - alpha = (a+1)(1+c)/(a+c); take the
  // smaller one so that alpha near +-1 keeps its relative accuracy.
  const double s = std::sin(0.5 * omega);
  const double h = std::cos(0.5 * omega);
  const double one_plus = (a - 1.0) * (2.0 * s * s) / d;
  const double one_minus = (a + 1.0) * (2.0 * h * h) / d;
  const double value = std::abs(one_plus) <= std::abs(one_minus) ? one_plus - 1.0 : 1.0 - one_minus;
  require(std::abs(value) < 1.0, ErrorKind::domain,
          "mirror pole rounds onto the unit circle for a = " + fmt(a) + ", omega = " + fmt(omega));
  return value;
}

double psi(double a, double alpha, double w) {
  const double c = std::cos(w);
  const double den = 1.0 + alpha * alpha + 2.0 * alpha * c;
  return sign_of(a + alpha) * (1.0 + a * alpha + (a + alpha) * c) / den;
}

double alpha_root_residual(double a, double alpha, double omega) {
  return 1.0 + alpha * a + (a + alpha) * std::cos(omega);
}

template <SupportedReal Real>
BasicSpectrumGrid<Real> k_transfer(const FirstOrderKernel& kernel, std::size_t n) {
  return hermitian_grid<Real>(n, [&](std::size_t, const UnitPoint<Real>& z) { return k_at<Real>(kernel, z); });
}

template <SupportedReal Real>
std::complex<Real> v_value(double a, double alpha, double gamma, const Real& w) {
  check_a(a);
  check_alpha(alpha);
  UnitPoint<Real> z;
  sin_cos(w, z.sin_w, z.cos_w);
  return v_at<Real>(z, a, alpha, gamma, static_cast<std::size_t>(-1));
}

template <SupportedReal Real>
BasicSpectrumGrid<Real> v_transfer(double a, double alpha, double gamma, std::size_t n) {
  check_a(a);
  check_alpha(alpha);
  return hermitian_grid<Real>(n, [&](std::size_t j, const UnitPoint<Real>& z) {
    return v_at<Real>(z, a, alpha, gamma, j);
  });
}

template <SupportedReal Real>
BasicSpectrumGrid<Real> predictor_transfer(const FirstOrderKernel& kernel, const PredictorParams& params) {
  params.validate();
  const double al = alpha(kernel.a(), params.omega);
  return hermitian_grid<Real>(params.n, [&](std::size_t j, const UnitPoint<Real>& z) {
    return v_at<Real>(z, kernel.a(), al, params.gamma, j) * k_at<Real>(kernel, z);
  });
}

template <SupportedReal Real>
BasicSignal<Real> anticausal_kernel(const FirstOrderKernel& kernel, std::int64_t t_min) {
  require(!kernel.is_k0(), ErrorKind::contract,
          "anticausal_kernel takes the K1 form; decompose K0 as 1 + c K1");
  require(t_min <= 0, ErrorKind::parameter, "t_min must be <= 0");
  const std::size_t len = static_cast<std::size_t>(-t_min) + 1;
  std::vector<std::complex<Real>> out(len);
  const Real a(kernel.a());
  // k(0) = 1/a, k(t-1) = -k(t)/a.
  Real v = 1 / a;
  for (std::size_t i = 0; i < len; ++i) {
    out[len - 1 - i] = std::complex<Real>(v, Real(0));
    v = -v / a;
  }
  return BasicSignal<Real>(t_min, std::move(out));
}

template <SupportedReal Real>
CausalKernel<Real> causal_kernel(const FirstOrderKernel& kernel, const PredictorParams& params,
                                 double causality_tol) {
  const auto grid = predictor_transfer<Real>(kernel, params);
  const std::size_t n = params.n;
  const std::size_t m = params.m;
  // Negative times inspected for leakage; never overlaps the kept taps.
  const std::size_t leak_len = std::min(n / 2, n - m);
  const std::size_t span = std::max(m, n / 2);
  const auto full = inverse_grid<Real>(grid, -static_cast<std::int64_t>(leak_len), leak_len + span);
  const auto values = full.values();

  Real leak2 = 0, total2 = 0, tail = 0, max_abs = 0, max_imag = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const Real sq = squared_magnitude(values[i]);
    total2 += sq;
    if (i < leak_len) {
      leak2 += sq;
    } else if (i < leak_len + m) {
      using std::abs;
      max_abs = std::max(max_abs, magnitude(values[i]));
      max_imag = std::max(max_imag, Real(abs(values[i].imag())));
    } else {
      tail += magnitude(values[i]);
    }
  }
  using std::sqrt;
  const double leak_ratio = total2 > 0 ? to_double(Real(sqrt(leak2 / total2))) : 0.0;
  require(leak_ratio <= causality_tol, ErrorKind::causality,
          "causal kernel leaks " + fmt(leak_ratio) + " of its l2 mass to negative times (tolerance " +
              fmt(causality_tol) + "); increase n above " + std::to_string(n) + " or reduce |gamma|");

  const double imag_ratio = max_abs > 0 ? to_double(Real(max_imag / max_abs)) : 0.0;
  require(imag_ratio <= kImaginaryTolerance, ErrorKind::consistency,
          "causal kernel of a real pole has imaginary parts at relative level " + fmt(imag_ratio));

  std::vector<std::complex<Real>> taps(m);
  for (std::size_t t = 0; t < m; ++t) taps[t] = std::complex<Real>(values[leak_len + t].real(), Real(0));
  return CausalKernel<Real>{BasicSignal<Real>(0, std::move(taps)), leak_ratio, to_double(tail), imag_ratio};
}

// Khat = V K1 with V = 1 - G(w), G(w) = exp(c (1 + a w)/(1 + alpha w)), w = 1/z,
// c = gamma sign(a+alpha). The coefficients g_n of G satisfy
//   (n+1) g_{n+1} = (c (a-alpha) - 2 alpha n) g_n - alpha^2 (n-1) g_{n-1}.
// V vanishes at w = -1/a, so V/(1 + a w) = sum q_t w^t is a power series with
// v_t = q_t + a q_{t-1}; it is solved backward, which is the stable direction,
// and khat(t) = q_{t-1}.
SeriesKernel series_causal_kernel(const FirstOrderKernel& kernel, double omega, double gamma,
                                  std::size_t keep_taps, std::size_t max_terms) {
  require(std::isfinite(gamma), ErrorKind::parameter, "gamma must be finite");
  const double a = kernel.a();
  const double al = alpha(a, omega);
  const double c = gamma * sign_of(a + al);

  std::vector<ScaledDouble> g;
  g.push_back(ScaledDouble::exp(c));
  g.push_back(g[0] * (c * (a - al)));
  double ln_peak = g[0].ln_abs();
  std::size_t peak_at = 0;
  constexpr double kDropLn = 60.0;  // stop once the series is e^-60 below its peak
  constexpr std::size_t kBlock = 256;
  double block_max = -INFINITY;
  for (std::size_t k = 1;; ++k) {
    const double ln_k = g[k].ln_abs();
    if (ln_k > ln_peak) {
      ln_peak = ln_k;
      peak_at = k;
    }
    block_max = std::max(block_max, ln_k);
    if (k % kBlock == 0) {
      // With taps requested, also require the series to be small in absolute
      // terms so that the kept taps are not affected by where it was cut.
      const double floor_ln = keep_taps > 0 ? std::min(ln_peak, 0.0) - kDropLn : ln_peak - kDropLn;
      if (k > 2 * peak_at + 64 && k > keep_taps && block_max < floor_ln) break;
      block_max = -INFINITY;
    }
    require(k + 1 < max_terms, ErrorKind::consistency,
            "kernel series did not settle within " + std::to_string(max_terms) + " terms");
    const double kk = static_cast<double>(k);
    const auto next = (g[k] * (c * (a - al) - 2.0 * al * kk) - g[k - 1] * (al * al * (kk - 1.0))) /
                      (kk + 1.0);
    g.push_back(next);
  }
  const std::size_t terms = g.size();
  auto v_coef = [&](std::size_t t) {
    return t == 0 ? ScaledDouble(1.0) - g[0] : -g[t];
  };

  const double cz = kernel.c();
  SeriesKernel out;
  out.terms = terms;
  if (keep_taps > 0) out.taps.assign(std::min(keep_taps, terms), ScaledDouble());
  auto consider = [&](std::size_t t, const ScaledDouble& value) {
    if (t < out.taps.size()) out.taps[t] = value;
    if (abs_less(out.sup, value)) {
      out.sup = value.abs();
      out.argmax = t;
    }
  };

  ScaledDouble q;  // q_{terms-1}, taken as zero
  for (std::size_t t = terms - 1; t >= 1; --t) {
    q = (v_coef(t) - q) / a;
    consider(t, kernel.is_k0() ? v_coef(t) + q * cz : q);
  }
  consider(0, kernel.is_k0() ? v_coef(0) : ScaledDouble());
  return out;
}

#define BANDPREDICT_INSTANTIATE(Real)                                                              \
  template BasicSpectrumGrid<Real> k_transfer<Real>(const FirstOrderKernel&, std::size_t);          \
  template std::complex<Real> v_value<Real>(double, double, double, const Real&);                  \
  template BasicSpectrumGrid<Real> v_transfer<Real>(double, double, double, std::size_t);          \
  template BasicSpectrumGrid<Real> predictor_transfer<Real>(const FirstOrderKernel&,                \
                                                            const PredictorParams&);                \
  template BasicSignal<Real> anticausal_kernel<Real>(const FirstOrderKernel&, std::int64_t);        \
  template CausalKernel<Real> causal_kernel<Real>(const FirstOrderKernel&, const PredictorParams&, \
                                                  double);

BANDPREDICT_INSTANTIATE(double)
BANDPREDICT_INSTANTIATE(Extended)

#undef BANDPREDICT_INSTANTIATE

}  // namespace bandpredict
