#include "bandpredict/cli.hpp"

#include "bandpredict/analysis.hpp"
#include "bandpredict/kernels.hpp"
#include "bandpredict/predictor.hpp"
#include "bandpredict/signals.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <numbers>
#include <optional>
#include <ostream>

namespace bandpredict::cli {

namespace {

double parse_number(std::string_view text) {
  const std::string s(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  require(used == s.size() && !s.empty(), ErrorKind::parameter, "not a number: '" + s + "'");
  return v;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

struct Options {
  double a = 2.0;
  std::optional<double> b;
  std::string omega = "pi/3";
  std::string gamma = "-8";
  std::string gamma_high = "64";
  std::string mode = "low";
  std::size_t n = 4096;
  std::size_t m = 512;
  std::size_t length = 1024;
  std::size_t synth_n = 0;
  std::uint64_t seed = 1;
  double eps = 0.1;
  std::string nu;
  double low_share = 0.5;
  double tail_tol = kDefaultTailTol;
  std::string norm = "unit_l2";
  std::string precision = "double";
  std::string in;
  std::string out = "-";
  std::string format = "csv";
  bool keep_going = false;
  bool gamma_given = false;
};

FirstOrderKernel make_kernel(const Options& o) {
  return o.b ? FirstOrderKernel::k0(o.a, *o.b) : FirstOrderKernel::k1(o.a);
}

double single(const std::string& text, bool as_angle, const char* flag) {
  const auto v = parse_list(text, as_angle);
  require(v.size() == 1, ErrorKind::parameter, std::string(flag) + " takes a single value here");
  return v.front();
}

void echo_kernel(Document& d, const Options& o) {
  d.config.emplace_back("a", format_number(o.a));
  d.config.emplace_back("b", o.b ? format_number(*o.b) : "none");
}

void echo(Document& d, const char* key, const std::string& v) { d.config.emplace_back(key, v); }
void echo(Document& d, const char* key, double v) { d.config.emplace_back(key, format_number(v)); }
void echo(Document& d, const char* key, std::size_t v) { d.config.emplace_back(key, std::to_string(v)); }
void echo(Document& d, const char* key, std::uint64_t v, int) { d.config.emplace_back(key, std::to_string(v)); }

Signal load_series(const std::string& path) {
  std::ifstream is(path);
  require(static_cast<bool>(is), ErrorKind::io, "cannot open input file '" + path + "'");
  return read_series_csv(is);
}

// ------------------------------------------------------------------ commands

Document cmd_kernel(const Options& o) {
  Document d;
  d.command = "kernel";
  const auto kernel = make_kernel(o);
  PredictorParams p{parse_angle(o.omega), single(o.gamma, false, "--gamma"), o.n, o.m, parse_band(o.mode)};
  echo_kernel(d, o);
  echo(d, "omega", p.omega);
  echo(d, "gamma", p.gamma);
  echo(d, "mode", std::string(to_string(p.mode)));
  echo(d, "n", p.n);
  echo(d, "m", p.m);
  p.validate();
  const double al = alpha(kernel.a(), p.omega);
  d.meta.emplace_back("alpha", format_number(al));
  d.meta.emplace_back("alpha_root_residual", format_number(alpha_root_residual(kernel.a(), al, p.omega)));

  const auto k = k_transfer<double>(kernel, p.n);
  const auto v = v_transfer<double>(kernel.a(), al, p.gamma, p.n);
  const auto kh = predictor_transfer<double>(kernel, p);
  Section grid{"transfer", {"omega", "k_re", "k_im", "v_re", "v_im", "khat_re", "khat_im", "psi"}, {}};
  for (std::size_t j = 0; j < p.n; ++j) {
    const double w = grid_omega(j, p.n);
    grid.rows.push_back({w, k[j].real(), k[j].imag(), v[j].real(), v[j].imag(), kh[j].real(), kh[j].imag(),
                         psi(kernel.a(), al, w)});
  }
  const auto ck = causal_kernel<double>(kernel, p);
  d.meta.emplace_back("leak_ratio", format_number(ck.leak_ratio));
  d.meta.emplace_back("tail_l1", format_number(ck.tail_l1));
  Section taps{"causal_kernel", {"t", "khat"}, {}};
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(p.m); ++t) {
    taps.rows.push_back({static_cast<double>(t), ck.taps.at(t).real()});
  }
  d.sections.push_back(std::move(grid));
  d.sections.push_back(std::move(taps));
  return d;
}

template <SupportedReal Real>
Document cmd_gen(const Options& o) {
  Document d;
  d.command = "gen";
  const double omega = parse_angle(o.omega);
  const std::size_t n = o.synth_n ? o.synth_n : default_synthesis_grid(o.length);
  echo(d, "omega", omega);
  echo(d, "length", o.length);
  echo(d, "seed", o.seed, 0);
  echo(d, "synth_n", n);
  echo(d, "precision", o.precision);
  std::optional<BasicSignal<Real>> x;
  if (!o.nu.empty()) {
    const double nu = single(o.nu, false, "--nu");
    echo(d, "nu", nu);
    x.emplace(gen_noisy_spectrum<Real>({omega, nu, o.seed, o.length, 0}, n));
  } else {
    const Band mode = parse_band(o.mode);
    const Normalization norm = parse_normalization(o.norm);
    echo(d, "mode", std::string(to_string(mode)));
    echo(d, "norm", std::string(to_string(norm)));
    x.emplace(gen_band_signal<Real>({omega, mode, o.length, o.seed, norm, 0}, n));
  }
  Section s{"series", {"t", "x_re", "x_im"}, {}};
  for (std::int64_t t = x->start(); t <= x->last(); ++t) {
    const auto v = to_double(x->at(t));
    s.rows.push_back({static_cast<double>(t), v.real(), v.imag()});
  }
  d.sections.push_back(std::move(s));
  return d;
}

template <SupportedReal Real>
Document cmd_predict(const Options& o) {
  Document d;
  d.command = "predict";
  const auto kernel = make_kernel(o);
  PredictorParams p{parse_angle(o.omega), single(o.gamma, false, "--gamma"), o.n, o.m, parse_band(o.mode)};
  echo_kernel(d, o);
  echo(d, "omega", p.omega);
  echo(d, "gamma", p.gamma);
  echo(d, "mode", std::string(to_string(p.mode)));
  echo(d, "n", p.n);
  echo(d, "m", p.m);
  echo(d, "tail_tol", o.tail_tol);
  echo(d, "precision", o.precision);
  std::optional<BasicSignal<Real>> x;
  if (!o.in.empty()) {
    echo(d, "in", o.in);
    x.emplace(convert_signal<Real, double>(load_series(o.in)));
  } else {
    const std::size_t n = o.synth_n ? o.synth_n : default_synthesis_grid(o.length);
    echo(d, "length", o.length);
    echo(d, "seed", o.seed, 0);
    echo(d, "synth_n", n);
    echo(d, "norm", o.norm);
    x.emplace(gen_band_signal<Real>({p.omega, p.mode, o.length, o.seed, parse_normalization(o.norm), 0}, n));
  }
  const PredictionRun<Real> run{*x, kernel, p, std::nullopt, o.tail_tol};
  const TimeWindow w = run.window();
  const auto y = target<Real>(run);
  const auto yhat = forecast<Real>(run);
  const auto r = error_report<Real>(y, yhat, x_norms<Real>(*x));
  d.meta.emplace_back("window_first", std::to_string(w.first));
  d.meta.emplace_back("window_last", std::to_string(w.last));
  Section rep{"report", {"gamma", "abs_l2", "abs_linf", "rel_l2", "rel_linf", "rel_l2_lq", "y_l2"}, {}};
  rep.rows.push_back({p.gamma, r.abs_l2, r.abs_linf, r.rel_l2_vs_L2X, r.rel_linf_vs_L2X, r.rel_l2_vs_LqX,
                      to_double(norm<Real>(y, NormKind::l2))});
  Section s{"series", {"t", "y_re", "y_im", "yhat_re", "yhat_im"}, {}};
  for (std::int64_t t = w.first; t <= w.last; ++t) {
    const auto a = to_double(y.at(t));
    const auto b = to_double(yhat.at(t));
    s.rows.push_back({static_cast<double>(t), a.real(), a.imag(), b.real(), b.imag()});
  }
  d.sections.push_back(std::move(rep));
  d.sections.push_back(std::move(s));
  return d;
}

template <SupportedReal Real>
Document cmd_sweep_gamma(const Options& o) {
  Document d;
  d.command = "sweep-gamma";
  const auto kernel = make_kernel(o);
  const double omega = parse_angle(o.omega);
  const Band mode = parse_band(o.mode);
  auto gammas = parse_list(o.gamma);
  if (mode == Band::high && !o.gamma_given) {
    for (auto& g : gammas) g = -g;
  }
  const std::size_t synth = o.synth_n ? o.synth_n : default_synthesis_grid(o.length);
  echo_kernel(d, o);
  echo(d, "omega", omega);
  echo(d, "mode", std::string(to_string(mode)));
  echo(d, "gamma", o.gamma);
  echo(d, "n", o.n);
  echo(d, "m", o.m);
  echo(d, "length", o.length);
  echo(d, "seed", o.seed, 0);
  echo(d, "synth_n", synth);
  echo(d, "norm", o.norm);
  echo(d, "tail_tol", o.tail_tol);
  echo(d, "precision", o.precision);
  SweepOptions so;
  so.tail_tol = o.tail_tol;
  so.keep_going = o.keep_going;
  const BandSignalSpec spec{omega, mode, o.length, o.seed, parse_normalization(o.norm), 0};
  const auto rows = gamma_sweep<Real>(kernel, omega, mode, spec, gammas, o.n, o.m, synth, so);
  Section s{"sweep", {"gamma", "abs_l2", "abs_linf", "rel_l2", "rel_linf"}, {}};
  for (const auto& r : rows) {
    s.rows.push_back({r.gamma, r.abs_l2, r.abs_linf, r.rel_l2, r.rel_linf});
    if (!r.failure.empty()) d.meta.emplace_back("failure@gamma=" + format_number(r.gamma), r.failure);
  }
  d.sections.push_back(std::move(s));
  return d;
}

template <SupportedReal Real>
Document cmd_sweep_noise(const Options& o) {
  Document d;
  d.command = "sweep-noise";
  const auto kernel = make_kernel(o);
  const double omega = parse_angle(o.omega);
  const auto nus = parse_list(o.nu.empty() ? "0,0.001,0.01,0.1" : o.nu);
  echo_kernel(d, o);
  echo(d, "omega", omega);
  echo(d, "eps", o.eps);
  echo(d, "nu", o.nu.empty() ? std::string("0,0.001,0.01,0.1") : o.nu);
  echo(d, "n", o.n);
  echo(d, "m", o.m);
  echo(d, "seed", o.seed, 0);
  echo(d, "tail_tol", o.tail_tol);
  echo(d, "precision", o.precision);
  const auto sweep = noise_sweep<Real>(kernel, omega, o.eps, nus, o.n, o.m, o.seed, o.tail_tol);
  const auto& b = sweep.budget;
  for (const auto& [k, v] : std::initializer_list<std::pair<const char*, double>>{
           {"kappa", b.kappa}, {"alpha", b.alpha}, {"omega1", b.omega1}, {"psi0", b.psi0}, {"mu", b.mu},
           {"gamma_eps", b.gamma_eps}, {"i1", b.i1}, {"i2", b.i2}, {"i3", b.i3}, {"i2_bound", b.i2_bound},
           {"i3_bound", b.i3_bound}}) {
    d.meta.emplace_back(k, format_number(v));
  }
  d.meta.emplace_back("psi_monotone", b.psi_monotone ? "true" : "false");
  Section s{"sweep", {"nu", "measured_linf", "budget_i12", "budget_nu_i3"}, {}};
  for (const auto& r : sweep.rows) s.rows.push_back({r.nu, r.measured_linf, r.budget_i12, r.budget_nu_i3});
  d.sections.push_back(std::move(s));
  return d;
}

template <SupportedReal Real>
Document cmd_split(const Options& o) {
  Document d;
  d.command = "split";
  const auto kernel = make_kernel(o);
  const double omega = parse_angle(o.omega);
  const double g_low = single(o.gamma, false, "--gamma");
  const double g_high = single(o.gamma_high, false, "--gamma-high");
  echo_kernel(d, o);
  echo(d, "omega", omega);
  echo(d, "gamma", g_low);
  echo(d, "gamma_high", g_high);
  echo(d, "n", o.n);
  echo(d, "m", o.m);
  echo(d, "tail_tol", o.tail_tol);
  echo(d, "precision", o.precision);
  std::optional<BasicSignal<Real>> x;
  if (!o.in.empty()) {
    echo(d, "in", o.in);
    x.emplace(convert_signal<Real, double>(load_series(o.in)));
  } else {
    echo(d, "length", o.length);
    echo(d, "seed", o.seed, 0);
    echo(d, "low_share", o.low_share);
    x.emplace(gen_mixed_signal<Real>(omega, o.length, o.seed, o.low_share, o.n).x);
  }
  const auto r = corollary_split_experiment<Real>(*x, omega, kernel, g_low, g_high, o.n, o.m, o.tail_tol);
  Section s{"split",
            {"combined_rel_l2", "low_rel_l2", "high_rel_l2", "low_energy", "high_energy", "single_low_rel_l2"},
            {{r.combined_rel_l2, r.low_rel_l2, r.high_rel_l2, r.low_energy, r.high_energy, r.single_low_rel_l2}}};
  d.sections.push_back(std::move(s));
  return d;
}

Document cmd_feasibility(const Options& o) {
  Document d;
  d.command = "feasibility";
  const auto kernel = make_kernel(o);
  const auto omegas = parse_list(o.omega, true);
  const double gamma = single(o.gamma, false, "--gamma");
  echo_kernel(d, o);
  echo(d, "omega", o.omega);
  echo(d, "gamma", gamma);
  Section s{"feasibility", {"omega", "alpha", "log10_sup", "argmax", "terms"}, {}};
  for (const auto& r : feasibility_sweep(kernel, omegas, gamma)) {
    s.rows.push_back({r.omega, r.alpha, r.log10_sup, static_cast<double>(r.argmax), static_cast<double>(r.terms)});
  }
  d.sections.push_back(std::move(s));
  return d;
}

template <template <class> class Fn>
Document by_precision(const Options& o) {
  return parse_precision(o.precision) == Precision::extended ? Fn<Extended>{}(o) : Fn<double>{}(o);
}

#define BANDPREDICT_COMMAND(name)                                        \
  template <class Real>                                                  \
  struct name##_fn {                                                     \
    Document operator()(const Options& o) const { return name<Real>(o); } \
  };
BANDPREDICT_COMMAND(cmd_gen)
BANDPREDICT_COMMAND(cmd_predict)
BANDPREDICT_COMMAND(cmd_sweep_gamma)
BANDPREDICT_COMMAND(cmd_sweep_noise)
BANDPREDICT_COMMAND(cmd_split)
#undef BANDPREDICT_COMMAND

void emit(const Document& d, const Options& o, std::ostream& out) {
  require(o.format == "csv" || o.format == "json", ErrorKind::parameter,
          "unknown format '" + o.format + "' (expected csv|json)");
  auto write = [&](std::ostream& os) { o.format == "csv" ? write_csv(os, d) : write_json(os, d); };
  if (o.out.empty() || o.out == "-") {
    write(out);
    return;
  }
  std::ofstream os(o.out, std::ios::binary);
  require(static_cast<bool>(os), ErrorKind::io, "cannot open output file '" + o.out + "'");
  write(os);
  os.flush();
  require(static_cast<bool>(os), ErrorKind::io, "write failed for '" + o.out + "'");
}

}  // namespace

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::parameter:
    case ErrorKind::domain:
    case ErrorKind::contract:
      return kParameterError;
    case ErrorKind::sizing:
    case ErrorKind::degenerate_band:
    case ErrorKind::insufficient_data:
    case ErrorKind::alignment:
      return kDataError;
    case ErrorKind::causality: return kCausalityError;
    case ErrorKind::io: return kIoError;
    case ErrorKind::saturation: return kSaturationError;
    case ErrorKind::consistency: return kConsistencyError;
  }
  return kConsistencyError;
}

double parse_angle(std::string_view text) {
  std::string s = trim(text);
  require(!s.empty(), ErrorKind::parameter, "empty angle");
  const auto pos = s.find("pi");
  if (pos == std::string::npos) return parse_number(s);
  // [sign][coef]pi[/den]
  std::string coef = s.substr(0, pos);
  std::string rest = s.substr(pos + 2);
  double factor = 1.0;
  if (coef == "-") {
    factor = -1.0;
  } else if (!coef.empty() && coef != "+") {
    if (coef.back() == '*') coef.pop_back();
    factor = parse_number(coef);
  }
  if (!rest.empty()) {
    require(rest.front() == '/', ErrorKind::parameter, "malformed angle '" + s + "'");
    const double den = parse_number(rest.substr(1));
    require(den != 0.0, ErrorKind::parameter, "zero denominator in angle '" + s + "'");
    factor /= den;
  }
  return factor * std::numbers::pi;
}

std::vector<double> parse_list(std::string_view text, bool as_angle) {
  std::vector<double> out;
  std::size_t startpos = 0;
  while (startpos <= text.size()) {
    const auto comma = text.find(',', startpos);
    const auto item = text.substr(startpos, comma == std::string_view::npos ? text.npos : comma - startpos);
    out.push_back(as_angle ? parse_angle(item) : parse_number(trim(item)));
    if (comma == std::string_view::npos) break;
    startpos = comma + 1;
  }
  return out;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const Document& doc) {
  os << "# format_version=" << kFormatVersion << "\n";
  os << "# command=" << doc.command << "\n";
  for (const auto& [k, v] : doc.config) os << "# config." << k << "=" << v << "\n";
  for (const auto& [k, v] : doc.meta) os << "# " << k << "=" << v << "\n";
  for (const auto& s : doc.sections) {
    os << "# section: " << s.name << "\n";
    for (std::size_t c = 0; c < s.columns.size(); ++c) os << (c ? "," : "") << s.columns[c];
    os << "\n";
    for (const auto& row : s.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_number(row[c]);
      os << "\n";
    }
  }
}

void write_json(std::ostream& os, const Document& doc) {
  nlohmann::ordered_json j;
  j["format_version"] = kFormatVersion;
  j["command"] = doc.command;
  j["config"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : doc.config) j["config"][k] = v;
  j["meta"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : doc.meta) j["meta"][k] = v;
  for (const auto& s : doc.sections) {
    auto& sec = j["sections"][s.name];
    for (std::size_t c = 0; c < s.columns.size(); ++c) {
      auto col = nlohmann::ordered_json::array();
      for (const auto& row : s.rows) col.push_back(row[c]);
      sec[s.columns[c]] = std::move(col);
    }
  }
  os << j.dump(1) << "\n";
}

Signal read_series_csv(std::istream& is) {
  std::string line;
  bool header = false;
  std::optional<std::int64_t> start;
  std::vector<std::complex<double>> values;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      require(trim(line) == "t,x_re,x_im", ErrorKind::io, "expected header 't,x_re,x_im' on line " +
                                                              std::to_string(lineno));
      header = true;
      continue;
    }
    const auto f = parse_list(line);
    require(f.size() == 3, ErrorKind::io, "expected 3 fields on line " + std::to_string(lineno));
    const auto t = static_cast<std::int64_t>(f[0]);
    if (!start) start = t;
    require(t == *start + static_cast<std::int64_t>(values.size()), ErrorKind::alignment,
            "time index not contiguous on line " + std::to_string(lineno));
    values.emplace_back(f[1], f[2]);
  }
  require(header && !values.empty(), ErrorKind::io, "no samples in time series");
  return Signal(*start, std::move(values));
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Predicting kernels for band-limited and high-frequency sequences", "bandpredict"};
  app.require_subcommand(1);

  struct Command {
    CLI::App* app;
    Options opt;
    std::function<Document(const Options&)> fn;
  };
  std::vector<std::unique_ptr<Command>> commands;

  auto add = [&](const char* name, const char* help, Options defaults, std::function<Document(const Options&)> fn,
                 std::initializer_list<const char*> flags) {
    auto cmd = std::make_unique<Command>(Command{app.add_subcommand(name, help), defaults, std::move(fn)});
    CLI::App* sub = cmd->app;
    Options& o = cmd->opt;
    const auto has = [&](std::string_view f) { return std::find(flags.begin(), flags.end(), f) != flags.end(); };
    if (has("kernel")) {
      sub->add_option("--a", o.a, "pole parameter, |a| > 1")->capture_default_str();
      sub->add_option("--b", o.b, "zero parameter; selects K(z) = (z+b)/(z+a)");
    }
    sub->add_option("--omega", o.omega,
                    has("omega_list") ? "band edges, comma separated" : "band edge in radians or as a fraction of pi")
        ->capture_default_str();
    if (has("gamma")) sub->add_option("--gamma", o.gamma, "damping exponent(s), comma separated")->capture_default_str();
    if (has("gamma_high")) sub->add_option("--gamma-high", o.gamma_high, "high-band gamma")->capture_default_str();
    if (has("mode")) sub->add_option("--mode", o.mode, "low|high")->capture_default_str();
    if (has("n")) sub->add_option("--n", o.n, "frequency grid size")->capture_default_str();
    if (has("m")) sub->add_option("--m", o.m, "causal taps kept")->capture_default_str();
    if (has("length")) sub->add_option("--length", o.length, "signal length")->capture_default_str();
    if (has("synth")) sub->add_option("--synth-n", o.synth_n, "synthesis grid (0: 4x length)")->capture_default_str();
    if (has("seed")) sub->add_option("--seed", o.seed, "PRNG seed")->capture_default_str();
    if (has("eps")) sub->add_option("--eps", o.eps, "error target")->capture_default_str();
    if (has("nu")) sub->add_option("--nu", o.nu, "out-of-band level(s)");
    if (has("low_share")) sub->add_option("--low-share", o.low_share, "energy share of the low band")->capture_default_str();
    if (has("tail")) sub->add_option("--tail-tol", o.tail_tol, "target truncation tolerance")->capture_default_str();
    if (has("norm")) sub->add_option("--norm", o.norm, "unit_l2|unit_spectrum_linf")->capture_default_str();
    if (has("precision")) sub->add_option("--precision", o.precision, "double|extended")->capture_default_str();
    if (has("in")) sub->add_option("--in", o.in, "input time series (t,x_re,x_im)");
    if (has("keep_going")) sub->add_flag("--keep-going", o.keep_going, "record failing rows instead of stopping");
    sub->add_option("--out", o.out, "output path ('-' for stdout)")->capture_default_str();
    sub->add_option("--format", o.format, "csv|json")->capture_default_str();
    commands.push_back(std::move(cmd));
  };

  Options kd;
  add("kernel", "dump K, V, Khat and psi on the grid plus the causal taps", kd, cmd_kernel,
      {"kernel", "gamma", "mode", "n", "m"});

  Options gd;
  add("gen", "generate a band-limited, high-frequency or noisy-spectrum signal", gd, by_precision<cmd_gen_fn>,
      {"mode", "length", "synth", "seed", "nu", "norm", "precision"});

  Options pd;
  pd.length = 4096;
  add("predict", "target, forecast and error norms for one kernel", pd, by_precision<cmd_predict_fn>,
      {"kernel", "gamma", "mode", "n", "m", "length", "synth", "seed", "tail", "norm", "precision", "in"});

  Options sd;
  sd.gamma = "-1,-2,-4,-8,-16,-32,-64,-128,-256";
  sd.n = 32768;
  sd.m = 4096;
  sd.length = 8192;
  add("sweep-gamma", "prediction error along a list of gamma values", sd, by_precision<cmd_sweep_gamma_fn>,
      {"kernel", "gamma", "mode", "n", "m", "length", "synth", "seed", "tail", "norm", "precision", "keep_going"});

  Options nd;
  nd.omega = "pi/2";
  nd.n = 16384;
  add("sweep-noise", "measured error against the noise budget", nd, by_precision<cmd_sweep_noise_fn>,
      {"kernel", "n", "m", "seed", "eps", "nu", "tail", "precision"});

  Options xd;
  xd.omega = "pi/2";
  xd.gamma = "-64";
  xd.n = 8192;
  xd.m = 3072;
  xd.length = 8192;
  add("split", "ideal low/high split, mode-matched forecasts, combined error", xd, by_precision<cmd_split_fn>,
      {"kernel", "gamma", "gamma_high", "n", "m", "length", "seed", "low_share", "tail", "precision", "in"});

  Options fd;
  fd.omega = "0.8pi,0.9pi,0.95pi,0.99pi";
  add("feasibility", "largest kernel coefficient as the band edge moves", fd, cmd_feasibility,
      {"kernel", "gamma", "omega_list"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kParameterError;
  }

  try {
    for (const auto& c : commands) {
      if (!c->app->parsed()) continue;
      if (const auto* g = c->app->get_option_no_throw("--gamma")) c->opt.gamma_given = g->count() > 0;
      emit(c->fn(c->opt), c->opt, out);
      return kOk;
    }
    fail(ErrorKind::parameter, "no command given");
  } catch (const Error& e) {
    err << "bandpredict: " << to_string(e.kind()) << " error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "bandpredict: " << e.what() << "\n";
    return kConsistencyError;
  }
}

}  // namespace bandpredict::cli
