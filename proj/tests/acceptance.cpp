// Acceptance checks. Each criterion prints one PASS/FAIL line with the measured
// quantities next to the pinned tolerances; the process exit status is nonzero
// when any selected criterion fails.
//
//   acceptance                 run all criteria
//   acceptance --criterion 5   run one

#include "bandpredict/analysis.hpp"
#include "bandpredict/cli.hpp"
#include "bandpredict/kernels.hpp"
#include "bandpredict/predictor.hpp"
#include "bandpredict/signals.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace bandpredict;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
  // Related properties reported on their own line; they do not decide the
  // criterion but do set the exit status.
  std::vector<std::pair<bool, std::string>> properties;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [violated]");
  }
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string num_list(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(v[i]);
  return s + "]";
}

// 1. mirror pole inside the unit disc and on the root identity
Outcome alpha_correctness() {
  Outcome o;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t outside = 0, residual_bad = 0, draws = 0;
  double worst = 0.0;
  while (draws < 100000) {
    const double mag = std::exp(u(rng) * std::log(1e6));
    const double omega = u(rng) * kPi;
    if (mag <= 1.0 || omega <= 0.0) continue;
    ++draws;
    const double a = u(rng) < 0.5 ? -mag : mag;
    const double al = alpha(a, omega);
    if (!(std::abs(al) < 1.0)) ++outside;
    const double r = std::abs(alpha_root_residual(a, al, omega)) / (1 + std::abs(a));
    worst = std::max(worst, r);
    if (r > 1e-9) ++residual_bad;
  }
  o.check(outside == 0, "draws=100000 outside_unit_disc=" + std::to_string(outside));
  o.check(residual_bad == 0, "max residual/(1+|a|)=" + num(worst) + " <= 1e-9");
  const double e1 = std::abs(alpha(2.0, kPi / 2) + 0.5);
  const double e2 = std::abs(alpha(2.0, kPi / 3) + 0.8);
  o.check(e1 <= 1e-15 && e2 <= 1e-15, "|alpha(2,pi/2)+0.5|=" + num(e1) + " |alpha(2,pi/3)+0.8|=" + num(e2));
  return o;
}

// 2. |V| <= 2 on the design band and V -> 1 away from the edge
Outcome v_bounds() {
  Outcome o;
  const std::size_t n = 4096;
  struct Config {
    double a, omega;
  };
  for (const Config c : {Config{2.0, kPi / 3}, Config{2.0, kPi / 2}, Config{-3.0, 2.0}}) {
    const double al = alpha(c.a, c.omega);
    const std::string tag = "a=" + num(c.a) + ",omega=" + num(c.omega);
    // low mode: gamma < 0 on bins |w| <= omega. All checks go per bin since the
    // exponent on the other band overflows for large |gamma|.
    double low_max = 0.0, low_sup = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (!in_low_band(j, n, c.omega)) continue;
      const double w = grid_omega(j, n);
      for (double gamma : {-1.0, -8.0, -64.0}) low_max = std::max(low_max, std::abs(v_value<double>(c.a, al, gamma, w)));
      if (std::abs(w) <= c.omega - c.omega / 10) low_sup = std::max(low_sup, std::abs(v_value<double>(c.a, al, -256.0, w) - 1.0));
    }
    // high mode: gamma > 0 on bins |w| >= omega
    double high_max = 0.0, high_sup = 0.0;
    const double margin = (kPi - c.omega) / 10;
    for (std::size_t j = 0; j < n; ++j) {
      const double w = grid_omega(j, n);
      if (std::abs(w) < c.omega) continue;
      for (double gamma : {1.0, 8.0, 64.0}) high_max = std::max(high_max, std::abs(v_value<double>(c.a, al, gamma, w)));
      if (std::abs(w) >= c.omega + margin) high_sup = std::max(high_sup, std::abs(v_value<double>(c.a, al, 256.0, w) - 1.0));
    }
    o.check(low_max <= 2.0 + 1e-12, tag + " low max|V|=" + num(low_max) + " <= 2+1e-12");
    o.check(low_sup <= 1e-6, tag + " low sup|V-1|@-256=" + num(low_sup) + " <= 1e-6");
    o.check(high_max <= 2.0 + 1e-12, tag + " high max|V|=" + num(high_max) + " <= 2+1e-12");
    o.check(high_sup <= 1e-6, tag + " high sup|V-1|@256=" + num(high_sup) + " <= 1e-6");
  }
  return o;
}

// 3. closed-form anticausal kernel against grid inversion of 1/(z+a)
Outcome kernel_oracle() {
  Outcome o;
  const std::size_t n = 4096;
  double worst = 0.0, worst_dc = 0.0;
  for (double a : {-5.0, -2.0, -1.5, 1.5, 2.0, 5.0}) {
    const auto kernel = FirstOrderKernel::k1(a);
    const auto closed = anticausal_kernel<double>(kernel, -64);
    const auto inverted = inverse_grid(k_transfer<double>(kernel, n), -64, 65);
    for (std::int64_t t = -64; t <= 0; ++t) worst = std::max(worst, std::abs(closed.at(t) - inverted.at(t)));
    const auto full = anticausal_kernel<double>(kernel, -2000);
    std::complex<double> sum = 0.0;
    for (const auto& v : full.values()) sum += v;
    worst_dc = std::max(worst_dc, std::abs(sum - 1.0 / (1.0 + a)));
  }
  o.check(worst <= 1e-10, "max_t |k_closed - k_grid| over t in [-64,0]=" + num(worst) + " <= 1e-10");
  o.check(worst_dc <= 1e-10, "max |sum k - K(1)|=" + num(worst_dc) + " <= 1e-10");
  return o;
}

// 4. forecasts never read the future; grid kernels do not leak to t < 0
Outcome causality() {
  Outcome o;
  const auto kernel = FirstOrderKernel::k1(2.0);
  const PredictionRun<double> run{
      .x = gen_band_signal<double>({.omega = kPi / 3, .mode = Band::low, .length = 4096, .seed = 4}, 16384),
      .kernel = kernel,
      .params = {.omega = kPi / 3, .gamma = -8.0, .n = 4096, .m = 512, .mode = Band::low},
      .eval_window = std::nullopt};
  const auto taps = causal_kernel<double>(kernel, run.params).taps;
  const TimeWindow w = run.window();
  const auto base = forecast_on(run.x, taps, w);
  SignalRng rng(4, SignalRng::Stream::probe);
  std::size_t broken = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto t = w.first + static_cast<std::int64_t>(rng.uniform() * static_cast<double>(w.size()));
    auto probe = run.x;
    for (std::int64_t s = t + 1; s <= probe.last(); ++s) probe.at(s) = {1e3 * rng.gaussian(), 0.0};
    const auto changed = forecast_on(probe, taps, w);
    for (std::int64_t s = w.first; s <= t; ++s)
      if (changed.at(s) != base.at(s)) {
        ++broken;
        break;
      }
  }
  o.check(broken == 0, "100 probes, forecasts changed by future samples: " + std::to_string(broken));

  double worst = 0.0;
  std::string where;
  auto leak = [&](double omega, double gamma, Band mode) {
    const PredictorParams p{.omega = omega, .gamma = gamma, .n = 4096, .m = 512, .mode = mode};
    const double r = causal_kernel<double>(kernel, p, 1.0).leak_ratio;
    if (r >= worst) {
      worst = r;
      where = "omega=" + num(omega) + ",gamma=" + num(gamma);
    }
  };
  for (double g = 1.0; g <= 64.0; g *= 2) {
    leak(kPi / 3, -g, Band::low);
    leak(kPi / 2, -g, Band::low);
    leak(kPi / 2, g, Band::high);
  }
  o.check(worst <= 1e-8, "n=4096 M=512 |gamma|<=64: max leak=" + num(worst) + " (" + where + ") <= 1e-8");
  return o;
}

// Acceptance configuration for the convergence sweeps.
constexpr double kSweepOmega = kPi / 3;
constexpr std::size_t kSweepN = 32768, kSweepM = 4096, kSweepLength = 8192;
const std::vector<double> kLowGammas{-1, -2, -4, -8, -16, -32, -64, -128, -256};

struct SweepCheck {
  bool pass;
  std::string detail;
};

SweepCheck check_sweep(const std::vector<GammaRow>& rows, const std::string& tag) {
  std::vector<double> rel;
  for (const auto& r : rows) rel.push_back(r.rel_l2);
  const double ratio = rel.back() / rel.front();
  bool monotone = true;
  for (std::size_t i = rel.size() - 4; i + 1 < rel.size(); ++i) monotone = monotone && rel[i + 1] < rel[i];
  const bool ratio_ok = ratio < 1e-2;  // NaN fails
  std::string d = tag + " rel_l2=" + num_list(rel) + " last/first=" + num(ratio) + " < 1e-2" +
                  (ratio_ok ? "" : " [violated]") + ", last four strictly decreasing: " +
                  (monotone ? "yes" : "no [violated]");
  for (const auto& r : rows)
    if (!r.failure.empty()) d += "; gamma=" + num(r.gamma) + " " + r.failure;
  return {ratio_ok && monotone, d};
}

// 5. convergence along gamma for mode-matched signals
Outcome convergence() {
  Outcome o;
  const auto kernel = FirstOrderKernel::k1(2.0);
  const BandSignalSpec low{.omega = kSweepOmega, .mode = Band::low, .length = kSweepLength, .seed = 1};
  const auto low_rows = gamma_sweep<Extended>(kernel, kSweepOmega, Band::low, low, kLowGammas, kSweepN, kSweepM);
  const auto l = check_sweep(low_rows, "low");
  o.pass = l.pass;
  o.detail = l.detail;

  std::vector<double> high_gammas;
  for (double g : kLowGammas) high_gammas.push_back(-g);
  const BandSignalSpec high{.omega = kSweepOmega, .mode = Band::high, .length = kSweepLength, .seed = 1};
  const auto high_rows = gamma_sweep<Extended>(kernel, kSweepOmega, Band::high, high, high_gammas, kSweepN, kSweepM,
                                               0, {.keep_going = true});
  const auto h = check_sweep(high_rows, "high");
  o.pass = o.pass && h.pass;
  o.detail += "; " + h.detail;
  return o;
}

// 6. the error ratio does not depend on the signal
Outcome uniformity() {
  Outcome o;
  const auto kernel = FirstOrderKernel::k1(2.0);
  const double gamma = kLowGammas.back();  // smallest rel_l2 in the criterion 5 sweep
  const PredictorParams p{.omega = kSweepOmega, .gamma = gamma, .n = kSweepN, .m = kSweepM, .mode = Band::low};
  const auto taps = causal_kernel<Extended>(kernel, p).taps;
  const std::size_t tail = tail_length(2.0, kDefaultTailTol);
  std::vector<double> ratios;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto x = gen_band_signal<Extended>(
        {.omega = kSweepOmega, .mode = Band::low, .length = kSweepLength, .seed = seed}, kSweepN);
    const TimeWindow w = interior_window(x.start(), x.last(), kSweepM, tail);
    const auto r = error_report<Extended>(target_on<Extended>(x, kernel, w, tail), forecast_on<Extended>(x, taps, w),
                                          x_norms<Extended>(x));
    ratios.push_back(r.rel_linf_vs_L2X);
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  o.check(*hi / *lo <= 5.0, "gamma=" + num(gamma) + " rel_linf over 20 seeds in [" + num(*lo) + ", " + num(*hi) +
                                "], max/min=" + num(*hi / *lo) + " <= 5");
  return o;
}

// 7. measured error against the noise budget
Outcome budget_soundness() {
  Outcome o;
  const auto kernel = FirstOrderKernel::k1(2.0);
  const double omega = kPi / 2, eps = 0.1;
  const std::vector<double> nus{0.0, 0.001, 0.01, 0.1};
  const std::size_t n = 16384;
  const auto sweep = noise_sweep<Extended>(kernel, omega, eps, nus, n, 512, 1);
  const auto& b = sweep.budget;
  const double step = 2 * kPi * b.kappa / static_cast<double>(n);
  o.check(b.i1 <= eps / 2 + step, "I1=" + num(b.i1) + " <= eps/2 + 2pi kappa/n");
  o.check(b.i2 <= eps / 2 + step, "I2=" + num(b.i2) + " <= eps/2 + 2pi kappa/n");
  for (const auto& r : sweep.rows) {
    const double bound = (r.budget_i12 + r.budget_nu_i3) / (2 * kPi) + r.slack;
    o.check(r.measured_linf <= bound,
            "nu=" + num(r.nu) + " measured=" + num(r.measured_linf) + " <= (I1+I2+nu I3)/(2pi)+slack=" + num(bound));
  }
  bool linear = sweep.rows[0].budget_nu_i3 == 0.0;
  for (std::size_t i = 1; i < sweep.rows.size(); ++i) {
    const double per_nu = sweep.rows[i].budget_nu_i3 / sweep.rows[i].nu;
    linear = linear && std::abs(per_nu - b.i3_bound) <= 4 * std::numeric_limits<double>::epsilon() * b.i3_bound;
  }
  o.check(linear, "nu I3 column = nu * " + num(b.i3_bound) + " to rounding");

  // log(nu I3) against log(1/eps) at the design's psi0 and mu
  std::vector<double> xs, ys;
  for (double e : {0.4, 0.2, 0.1, 0.05, 0.025}) {
    xs.push_back(std::log(1 / e));
    ys.push_back(std::log(nu_i3_closed_form(b.kappa, 0.01, omega, e, b.mu, b.psi0)));
  }
  const double m = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double icept = (sy - slope * sx) / m;
  double residual = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) residual = std::max(residual, std::abs(ys[i] - icept - slope * xs[i]));
  o.check(residual <= 1e-9 && std::abs(slope - b.mu / b.psi0) <= 1e-9 * (b.mu / b.psi0),
          "log-log slope=" + num(slope) + " vs mu/psi0=" + num(b.mu / b.psi0) + ", residual=" + num(residual) +
              " <= 1e-9");
  return o;
}

// 8. split into bands, predict each, add
Outcome split() {
  Outcome o;
  const auto kernel = FirstOrderKernel::k1(2.0);
  const double omega = kPi / 2;
  const std::size_t n = 8192, m = 3072;
  const auto mixed = gen_mixed_signal<Extended>(omega, n, 1, 0.5, n);
  const auto r = corollary_split_experiment<Extended>(mixed.x, omega, kernel, -64.0, 64.0, n, m);
  o.check(r.combined_rel_l2 <= r.low_rel_l2 + r.high_rel_l2 + 1e-10,
          "combined=" + num(r.combined_rel_l2) + " <= low=" + num(r.low_rel_l2) + " + high=" + num(r.high_rel_l2) +
              " + 1e-10");
  const auto base = corollary_split_experiment<Extended>(mixed.x, omega, kernel, -1.0, 1.0, n, m);
  o.properties.emplace_back(r.combined_rel_l2 * 10 <= base.combined_rel_l2,
                            "mixed 50/50 seed 1: combined at gamma=-+64 " + num(r.combined_rel_l2) +
                                " vs gamma=-+1 baseline " + num(base.combined_rel_l2) + ", ratio=" +
                                num(r.combined_rel_l2 / base.combined_rel_l2) + " <= 0.1");

  const auto low = gen_band_signal<Extended>({.omega = omega, .mode = Band::low, .length = n, .seed = 1}, n);
  const auto pure = corollary_split_experiment<Extended>(low, omega, kernel, -64.0, 64.0, n, m);
  const double diff = std::abs(pure.combined_rel_l2 - pure.single_low_rel_l2);
  o.check(diff <= 1e-12 && pure.high_energy <= 1e-12,
          "pure low input: |combined - single low|=" + num(diff) + ", high energy=" + num(pure.high_energy) +
              " <= 1e-12");
  return o;
}

// 9. kernel size as the band edge approaches pi
Outcome feasibility() {
  Outcome o;
  const std::vector<double> omegas{0.80 * kPi, 0.90 * kPi, 0.95 * kPi, 0.99 * kPi};
  const auto rows = feasibility_sweep(FirstOrderKernel::k1(2.0), omegas, -8.0);
  std::vector<double> logs;
  bool increasing = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    logs.push_back(rows[i].log10_sup);
    if (i > 0) increasing = increasing && rows[i].log10_sup > rows[i - 1].log10_sup;
  }
  o.check(increasing, "log10 max|khat| at 0.80/0.90/0.95/0.99 pi = " + num_list(logs) + " strictly increasing");
  return o;
}

std::string run_cli(const std::vector<std::string>& args, int& code) {
  std::vector<const char*> argv{"bandpredict"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return out.str();
}

// Cell-by-cell comparison; comment and header lines must match exactly.
std::string golden_diff(const std::string& produced, const std::string& path, double tol) {
  std::ifstream in(path);
  if (!in) return "missing " + path;
  std::stringstream ref;
  ref << in.rdbuf();
  std::istringstream a(produced), b(ref.str());
  std::string la, lb;
  std::size_t line = 0, cells = 0;
  double worst = 0.0;
  while (true) {
    const bool ga = static_cast<bool>(std::getline(a, la));
    const bool gb = static_cast<bool>(std::getline(b, lb));
    ++line;
    if (!ga && !gb) break;
    if (ga != gb) return "line count differs at line " + std::to_string(line);
    if (la.empty() || la[0] == '#' || !(std::isdigit(static_cast<unsigned char>(la[0])) || la[0] == '-')) {
      if (la != lb) return "line " + std::to_string(line) + " differs";
      continue;
    }
    std::istringstream ca(la), cb(lb);
    std::string xa, xb;
    while (std::getline(ca, xa, ',')) {
      if (!std::getline(cb, xb, ',')) return "column count differs at line " + std::to_string(line);
      const double va = std::strtod(xa.c_str(), nullptr), vb = std::strtod(xb.c_str(), nullptr);
      const double d = std::abs(va - vb) / std::max(1.0, std::abs(vb));
      if (!(d <= tol)) return "cell differs at line " + std::to_string(line) + ": " + xa + " vs " + xb;
      worst = std::max(worst, d);
      ++cells;
    }
  }
  return "ok (" + std::to_string(cells) + " cells, max diff " + num(worst) + ")";
}

// 10. reproducible output and committed reference runs
Outcome determinism() {
  Outcome o;
  const std::vector<std::vector<std::string>> commands{
      {"kernel", "--n", "1024", "--m", "128"},
      {"kernel", "--n", "1024", "--m", "128", "--format", "json"},
      {"gen", "--length", "256", "--seed", "9"},
      {"gen", "--length", "256", "--seed", "9", "--nu", "0.05", "--precision", "extended"},
      {"predict", "--length", "1024", "--n", "2048", "--m", "128", "--gamma", "-8"},
      {"sweep-gamma", "--gamma", "-1,-4", "--n", "2048", "--m", "128", "--length", "1024"},
      {"sweep-noise", "--n", "2048", "--m", "128", "--eps", "0.5", "--nu", "0,0.01"},
      {"split", "--n", "2048", "--m", "256", "--length", "2048", "--gamma", "-8", "--gamma-high", "8"},
      {"feasibility"},
  };
  std::size_t identical = 0;
  for (const auto& args : commands) {
    int c1 = -1, c2 = -1;
    const auto a = run_cli(args, c1);
    const auto b = run_cli(args, c2);
    if (c1 == 0 && c2 == 0 && !a.empty() && a == b) ++identical;
  }
  o.check(identical == commands.size(), std::to_string(identical) + "/" + std::to_string(commands.size()) +
                                            " commands byte-identical on rerun");

  const std::string dir = BANDPREDICT_GOLDEN_DIR;
  int code = -1;
  const auto sweep = run_cli({"sweep-gamma", "--a", "2", "--omega", "pi/3", "--mode", "low", "--precision", "extended"}, code);
  const auto d1 = golden_diff(sweep, dir + "/sweep_gamma_low.csv", 1e-9);
  o.check(code == 0 && d1.rfind("ok", 0) == 0, "sweep_gamma_low.csv " + d1);
  const auto noise = run_cli({"sweep-noise", "--a", "2", "--omega", "pi/2", "--eps", "0.1", "--nu", "0,0.001,0.01,0.1",
                              "--n", "16384", "--m", "512", "--precision", "extended"},
                             code);
  const auto d2 = golden_diff(noise, dir + "/sweep_noise.csv", 1e-9);
  o.check(code == 0 && d2.rfind("ok", 0) == 0, "sweep_noise.csv " + d2);
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-10)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "alpha correctness", alpha_correctness},
      {2, "V bounds", v_bounds},
      {3, "kernel oracle equivalence", kernel_oracle},
      {4, "causality", causality},
      {5, "convergence along gamma", convergence},
      {6, "uniformity across seeds", uniformity},
      {7, "noise budget soundness", budget_soundness},
      {8, "band split", split},
      {9, "feasibility degradation", feasibility},
      {10, "determinism and reference runs", determinism},
  };
  bool all = true;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] criterion %d (%s, %.1f s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                o.detail.c_str());
    std::fflush(stdout);
    all = all && o.pass;
    for (const auto& [ok, text] : o.properties) {
      std::printf("[%s] criterion %d property: %s\n", ok ? "PASS" : "FAIL", c.id, text.c_str());
      all = all && ok;
    }
  }
  return all ? 0 : 1;
}
