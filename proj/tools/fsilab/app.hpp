#pragma once

// fsilab command line. run() is the whole program minus main(), so tests can
// drive it with an argument vector and capture the streams.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "csv.hpp"
#include "fsi/algebra/error_coefficients.hpp"
#include "fsi/brackets/brackets.hpp"
#include "fsi/core/potentials.hpp"
#include "fsi/kepler/diagnostics.hpp"
#include "fsi/oscillator/energy.hpp"
#include "fsi/sweep/kepler_optimize.hpp"
#include "fsi/sweep/scan.hpp"
#include "selector.hpp"

#ifndef FSI_VERSION
#define FSI_VERSION "0.0.0"
#endif

namespace fsilab {

using fsi::Extended;

/// Invalid configuration detected after parsing (exit 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string out;
  unsigned precision = fsi::kDefaultDigits;
  unsigned threads = 1;

  std::vector<std::string> schemes;
  std::string omega = "1";
  std::string q0 = "1";
  std::string p0 = "1";
  std::optional<std::string> eps;
  int maxOrder = 6;
  std::optional<std::size_t> steps;

  std::optional<double> e;
  std::optional<double> py;
  std::vector<double> eList;
  std::optional<std::size_t> n;
  std::string kind = "both";
  std::size_t sampleEvery = 1;
  bool shadow = false;

  std::string objective;
  std::optional<double> from;
  std::optional<double> to;
  std::optional<std::size_t> points;
  double alpha = 0;

  int figure = 0;
};

namespace detail {

// Global options plus those of the active subcommand, on one line.
inline std::string stamp(const CLI::App& app, const std::string& sub) {
  std::string cfg = app.config_to_str(true, false);
  std::string flat;
  std::istringstream lines(cfg);
  for (std::string line; std::getline(lines, line);) {
    const auto eq = line.find('=');
    const auto dot = line.find('.');
    if (line.empty() || (dot < eq && line.compare(0, sub.size() + 1, sub + ".") != 0)) {
      continue;
    }
    if (!flat.empty()) {
      flat += "; ";
    }
    flat += line;
  }
  return std::string("fsilab ") + FSI_VERSION + " | " + flat;
}

inline fsi::KeplerOrbitSpec<double> orbit(const Config& c) {
  if (c.e) {
    return fsi::orbitFromEccentricity(*c.e);
  }
  if (c.py) {
    return fsi::orbitFromPy(*c.py);
  }
  throw UsageError("one of --e or --py is required");
}

inline std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = i + 1 == n ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return v;
}

template <class T>
std::string optNum(const std::optional<T>& x) {
  return x ? num(*x) : std::string();
}

// ---- coeffs ---------------------------------------------------------------

inline void runCoeffs(const Config& c, CsvWriter& w) {
  const auto s = selectScheme<Extended>(c.schemes.front());
  const auto e = fsi::errorCoefficients(s);
  const auto fp = fsi::familyFrame(s);
  w.comment("scheme " + s.name);
  w.row({"quantity", "value", "value_ext"});
  auto put = [&](const std::string& k, const Extended& v) { w.row({k, num(v), numExt(v)}); };
  put("eT", e.eT);
  put("eV", e.eV);
  put("eTTV", e.eTTV);
  put("eVTV", e.eVTV);
  put("eTTTTV", e.eTTTTV);
  put("eVTTTV", e.eVTTTV);
  put("eTTVTV", e.eTTVTV);
  put("eVTVTV", e.eVTVTV);
  put("t0", fp.t0);
  put("t1", fp.t1);
  put("v1", fp.v1);
  put("v2", fp.v2);
  put("u0", fp.u0);
  put("alpha", fp.alpha);
  put("c2_predicted", fsi::predictedC2(e));
  put("c4_predicted", fsi::predictedC4(e));
  put("correctable_2", Extended(fsi::isCorrectableSecondOrder(e) ? 1 : 0));
  put("correctable_4", Extended(fsi::isCorrectableFourthOrder(e) ? 1 : 0));
  put("forward", Extended(fsi::isForward(s) ? 1 : 0));
  if (s.params && s.params->family == fsi::SchemeFamily::ForceGradient4) {
    try {
      put("correctable_alpha", fsi::correctableAlpha(s.params->t0));
    } catch (const fsi::PoleError&) {
      w.comment("correctable_alpha: t0 sits on the pole");
    }
  }
}

// ---- oscillator -----------------------------------------------------------

inline void runOscillatorSeries(const Config& c, CsvWriter& w) {
  const auto s = selectScheme<Extended>(c.schemes.front());
  const auto omega = fsi::parseReal<Extended>(c.omega);
  const auto q0 = fsi::parseReal<Extended>(c.q0);
  const auto p0 = fsi::parseReal<Extended>(c.p0);
  std::optional<Extended> eps;
  if (c.eps) {
    eps = fsi::parseReal<Extended>(*c.eps);
  }
  const auto e = fsi::errorCoefficients(s);
  const auto f = fsi::frequencySeries<Extended>(s, omega, c.maxOrder, eps);
  const auto en = fsi::energyErrorSeries<Extended>(s, omega, q0, p0);

  w.comment("scheme " + s.name);
  w.row({"quantity", "value", "error", "prediction", "value_ext"});
  auto put = [&](const std::string& k, const Extended& v, std::optional<Extended> err,
                 std::optional<Extended> pred) {
    w.row({k, num(v), optNum(err), optNum(pred), numExt(v)});
  };
  put("c2", f.c2, f.c2Error, fsi::predictedC2(e));
  put("c4", f.c4, f.c4Error, fsi::predictedC4(e));
  if (c.maxOrder >= 6) {
    put("c6", f.c6, f.c6Error, std::nullopt);
  }
  if (f.omegaA) {
    put("omega_A", *f.omegaA, std::nullopt, std::nullopt);
    put("phase_error_per_period", *f.phaseErrorPerPeriod, std::nullopt, std::nullopt);
  }
  for (std::size_t k = 0; k + 1 < en.coefficients.size(); ++k) {
    const int order = static_cast<int>(2 * k + 2);
    std::optional<Extended> pred;
    if (order == 4) {
      pred = fsi::predictedE4(e, omega, q0, p0);
    } else if (order == 6 && s.nominalOrder == 2) {
      pred = fsi::predictedE6(e, omega, q0, p0);
    } else if (order == 8 && s.nominalOrder == 4) {
      pred = fsi::predictedE8(e, omega, q0, p0);
    }
    put("E" + std::to_string(order), en.coefficients[k], en.errors[k], pred);
  }
  w.comment("energy leading exponent " +
            (en.leadingExponent ? std::to_string(*en.leadingExponent) : std::string("none")) +
            ", measured slope " + num(en.measuredSlope));
}

inline void runOscillatorTrajectory(const Config& c, CsvWriter& w) {
  if (!c.eps) {
    throw UsageError("--steps needs --eps");
  }
  const auto s = selectScheme<double>(c.schemes.front());
  const double omega = fsi::parseReal<double>(c.omega);
  const double eps = fsi::parseReal<double>(*c.eps);
  const auto force = fsi::harmonicForce(omega);
  const auto e = fsi::errorCoefficients(s);
  const int order = s.nominalOrder == 4 ? 4 : 2;
  const auto s0 = fsi::makeState<double>({fsi::parseReal<double>(c.q0)}, {fsi::parseReal<double>(c.p0)});
  const auto path = fsi::integrate(s, force, s0, eps, *c.steps, c.sampleEvery);
  const double ha0 = fsi::modifiedHamiltonian(e, force, s0, eps, order);
  w.row({"t", "q", "p", "H", "H_A", "drift"});
  auto put = [&](const fsi::PhaseState<double>& z) {
    const double ha = fsi::modifiedHamiltonian(e, force, z, eps, order);
    w.row({num(z.t), num(z.q[0]), num(z.p[0]), num(force.energy(z)), num(ha), num(ha - ha0)});
  };
  put(s0);
  for (const auto& z : path) {
    put(z);
  }
}

// ---- kepler ---------------------------------------------------------------

inline void runKeplerSweep(const Config& c, CsvWriter& w) {
  const auto s = selectScheme<double>(c.schemes.front());
  fsi::PrecessionOptions opt;
  opt.n = c.n.value_or(5000);
  const auto rows = fsi::eccentricitySweep(s, c.eList, opt, c.threads);
  w.comment("scheme " + s.name);
  w.row({"e", "py", "perihelion", "theta4_T", "theta4_T_check", "status"});
  for (const auto& r : rows) {
    w.row({num(r.e), num(r.py), num(r.perihelion),
           r.precession ? num(r.precession->value) : std::string(),
           r.precession ? num(r.precession->checkValue) : std::string(), fsi::toString(r.status)});
    if (!r.message.empty()) {
      w.comment("e = " + num(r.e) + ": " + r.message);
    }
  }
}

inline void runKepler(const Config& c, CsvWriter& w) {
  if (!c.eList.empty()) {
    runKeplerSweep(c, w);
    return;
  }
  const auto s = selectScheme<double>(c.schemes.front());
  const auto spec = orbit(c);
  const std::size_t n = c.n.value_or(5000);
  const auto curve = fsi::limitCurve(s, spec, {n, c.sampleEvery});
  const bool energy = c.kind != "angle";
  const bool angle = c.kind != "energy";

  std::vector<double> h;
  std::vector<double> ha;
  std::vector<double> drift;
  if (c.shadow) {
    const auto force = fsi::keplerForce<double>();
    const auto e = fsi::errorCoefficients(s);
    const int order = s.nominalOrder == 4 ? 4 : 2;
    const auto s0 = spec.initialState();
    auto path = fsi::integrate(s, force, s0, curve.eps, n, c.sampleEvery);
    path.insert(path.begin(), s0);
    const double ha0 = fsi::modifiedHamiltonian(e, force, s0, curve.eps, order);
    for (const auto& z : path) {
      h.push_back(force.energy(z));
      ha.push_back(fsi::modifiedHamiltonian(e, force, z, curve.eps, order));
      drift.push_back(ha.back() - ha0);
    }
  }

  w.comment("scheme " + s.name + ", e = " + num(spec.e) + ", T = " + num(spec.T) + ", N = " +
            std::to_string(n));
  std::vector<std::string> header = {"t/T"};
  if (energy) {
    header.push_back("h4");
  }
  if (angle) {
    header.insert(header.end(), {"theta", "theta4"});
  }
  if (c.shadow) {
    header.insert(header.end(), {"H", "H_A", "drift"});
  }
  w.row(header);
  for (std::size_t i = 0; i < curve.times.size(); ++i) {
    std::vector<std::string> r = {num(curve.times[i] / spec.T)};
    if (energy) {
      r.push_back(num(curve.h4[i]));
    }
    if (angle) {
      r.push_back(num(curve.theta[i]));
      r.push_back(num(curve.theta4[i]));
    }
    if (c.shadow) {
      r.insert(r.end(), {num(h[i]), num(ha[i]), num(drift[i])});
    }
    w.row(r);
  }
  w.comment("h4(T) = " + num(curve.h4AtPeriod) + ", theta4(T) = " + num(curve.theta4AtPeriod));
}

// ---- scan -----------------------------------------------------------------

inline void writeExtrema(const fsi::ScanResult& r, CsvWriter& w) {
  for (const auto& e : r.extrema) {
    w.comment(std::string(fsi::toString(e.kind)) + " t0 = " + num(e.location) +
              (e.value ? ", value = " + num(*e.value) : std::string()));
  }
}

inline void runScan(const Config& c, CsvWriter& w) {
  fsi::ScanOptions opt;
  opt.threads = c.threads;
  fsi::Objective f;
  std::optional<fsi::KeplerOrbitSpec<double>> spec;
  const double omega = fsi::parseReal<double>(c.omega);
  if (c.objective == "freq6") {
    f = fsi::freq6Objective<Extended>(omega);
  } else if (c.objective == "energy10") {
    f = fsi::energy10Objective<Extended>(omega, fsi::parseReal<double>(c.q0),
                                         fsi::parseReal<double>(c.p0));
  } else {
    spec = c.e || c.py ? orbit(c) : fsi::orbitFromPy(0.08);
    const std::size_t n = c.n.value_or(3000);
    f = [&c, spec, n](double t0) { return fsi::keplerPrecession(t0, c.alpha, *spec, n); };
  }
  const auto r = fsi::scan1D(f, *c.from, *c.to, *c.points, opt);
  w.row({"t0", "value", "status"});
  for (const auto& p : r.grid) {
    w.row({num(p.t0), optNum(p.value), fsi::toString(p.status)});
  }
  writeExtrema(r, w);
  if (spec) {
    const auto best = fsi::optimizeKepler(*c.from, *c.to, c.alpha, *spec);
    w.comment("optimum t0 = " + num(best.t0Star) + ", theta4(T) = " + num(best.theta4));
  }
}

// ---- figure ---------------------------------------------------------------

inline std::vector<fsi::SplittingScheme<double>> figureSchemes(const Config& c,
                                                               std::vector<std::string> builtins) {
  for (const auto& s : c.schemes) {
    builtins.push_back(s);
  }
  std::vector<fsi::SplittingScheme<double>> out;
  for (const auto& s : builtins) {
    out.push_back(selectScheme<double>(s));
  }
  return out;
}

inline void figureScan(const Config& c, CsvWriter& w, const fsi::Objective& f,
                       const std::string& column) {
  fsi::ScanOptions opt;
  opt.threads = c.threads;
  const auto r = fsi::scan1D(f, c.from.value_or(0.0), c.to.value_or(0.21), c.points.value_or(421), opt);
  w.row({"t0", column});
  for (const auto& p : r.grid) {
    if (p.value) {
      w.row({num(p.t0), num(*p.value)});
    }
  }
  writeExtrema(r, w);
}

inline void figureCurves(const Config& c, CsvWriter& w, double py, bool energy,
                         std::vector<std::string> builtins) {
  const auto schemes = figureSchemes(c, std::move(builtins));
  const auto spec = fsi::orbitFromPy(py);
  const fsi::LimitCurveOptions opt{c.n.value_or(5000), c.sampleEvery};
  std::vector<fsi::DiagnosticsSeries<double>> curves(schemes.size());
  fsi::parallelFor(schemes.size(), c.threads,
                   [&](std::size_t i) { curves[i] = fsi::limitCurve(schemes[i], spec, opt); });
  std::vector<std::string> header = {"t/T"};
  for (const auto& s : schemes) {
    header.push_back((energy ? "h4_" : "theta4_") + s.name);
  }
  w.comment("e = " + num(spec.e) + ", N = " + std::to_string(opt.n));
  w.row(header);
  for (std::size_t i = 0; i < curves.front().times.size(); ++i) {
    std::vector<std::string> r = {num(curves.front().times[i] / spec.T)};
    for (const auto& cv : curves) {
      r.push_back(num(energy ? cv.h4[i] : cv.theta4[i]));
    }
    w.row(r);
  }
  for (std::size_t k = 0; k < schemes.size(); ++k) {
    w.comment(schemes[k].name + ": h4(T) = " + num(curves[k].h4AtPeriod) +
              ", theta4(T) = " + num(curves[k].theta4AtPeriod));
  }
}

inline void figureSweep(const Config& c, CsvWriter& w, std::vector<std::string> builtins) {
  const auto schemes = figureSchemes(c, std::move(builtins));
  const auto es = linspace(c.from.value_or(0.9), c.to.value_or(0.95), c.points.value_or(21));
  fsi::PrecessionOptions opt;
  opt.n = c.n.value_or(5000);
  std::vector<std::vector<fsi::EccentricityRow<double>>> table;
  for (const auto& s : schemes) {
    table.push_back(fsi::eccentricitySweep(s, es, opt, c.threads));
  }
  std::vector<std::string> header = {"e"};
  for (const auto& s : schemes) {
    header.push_back("theta4_T_" + s.name);
  }
  w.row(header);
  for (std::size_t i = 0; i < es.size(); ++i) {
    std::vector<std::string> r = {num(es[i])};
    for (const auto& rows : table) {
      r.push_back(rows[i].precession ? num(rows[i].precession->value) : std::string("nan"));
    }
    w.row(r);
  }
  for (std::size_t k = 0; k < schemes.size(); ++k) {
    for (const auto& row : table[k]) {
      if (!row.message.empty()) {
        w.comment(schemes[k].name + " at e = " + num(row.e) + ": " + row.message);
      }
    }
  }
}

inline void runFigure(const Config& c, CsvWriter& w) {
  switch (c.figure) {
    case 1:
      figureScan(c, w, fsi::freq6Objective<Extended>(), "freq6");
      break;
    case 2:
      figureScan(c, w, fsi::energy10Objective<Extended>(), "energy10");
      break;
    case 3:
      figureCurves(c, w, 0.1, true, {"builtin:C"});
      break;
    case 4:
      figureCurves(c, w, 0.1, false, {"builtin:C"});
      break;
    case 5:
      figureCurves(c, w, 0.08, false, {"builtin:C", "builtin:Opt-C"});
      break;
    case 6:
      figureSweep(c, w, {"builtin:C"});
      break;
    case 7:
      figureSweep(c, w, {"builtin:C", "builtin:Opt-C"});
      break;
    default:
      throw UsageError("figure number must be 1 to 7");
  }
}

// ---- schemes --------------------------------------------------------------

inline void runSchemes(CsvWriter& w) {
  w.row({"name", "family", "params", "order", "forward", "note"});
  for (const auto& b : builtinSchemes()) {
    std::string forward;
    if (b.params.find('=') != std::string::npos) {
      forward = fsi::isForward(selectScheme<double>("builtin:" + b.name)) ? "yes" : "no";
    }
    w.row({b.name, b.family, "\"" + b.params + "\"", std::to_string(b.order), forward,
           "\"" + b.note + "\""});
  }
}

// ---- validation -----------------------------------------------------------

inline void validate(const Config& c, const std::string& sub) {
  const bool needsScheme = sub == "coeffs" || sub == "oscillator" || sub == "kepler";
  if (needsScheme && c.schemes.size() != 1) {
    throw UsageError("--scheme must be given exactly once");
  }
  // Resolve selectors up front: a bad selector is a configuration error.
  for (const auto& s : c.schemes) {
    try {
      (void)selectScheme<double>(s);
    } catch (const fsi::Error& e) {
      throw UsageError(e.what());
    }
  }
  auto real = [](const std::string& text, const char* flag) {
    try {
      (void)fsi::parseReal<double>(text);
    } catch (const fsi::Error& e) {
      throw UsageError(std::string(flag) + ": " + e.what());
    }
  };
  real(c.omega, "--omega");
  real(c.q0, "--q0");
  real(c.p0, "--p0");
  if (c.eps) {
    real(*c.eps, "--eps");
  }
  if (c.points && *c.points < 3) {
    throw UsageError("--points must be at least 3");
  }
  if (c.from && c.to && !(*c.from < *c.to)) {
    throw UsageError("--from must be below --to");
  }
  if (sub == "scan" && (!c.from || !c.to || !c.points)) {
    throw UsageError("scan needs --from, --to and --points");
  }
  if (sub == "kepler" && c.eList.empty() && !c.e && !c.py) {
    throw UsageError("kepler needs --e, --py or --e-list");
  }
  if (c.n && *c.n < 3000) {
    throw UsageError("--N must be at least 3000 (the limit curves are unconverged below)");
  }
}

}  // namespace detail

/// Parses `args` (without the program name), runs the subcommand and writes
/// CSV to --out or `out`. Returns 0 on success, 1 on a computation error and
/// 2 on a usage error; no output file is created unless the run succeeds.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Splitting-scheme error analysis: coefficients, oscillator series, Kepler "
               "diagnostics and parameter scans",
               "fsilab"};
  app.set_version_flag("--version", FSI_VERSION);
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  app.set_config("--config", "", "TOML file with the same keys as the flags");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.option_defaults()->always_capture_default();
  app.add_option("--out", c.out, "Output CSV path (default: standard output)");
  app.add_option("--precision", c.precision, "Extended-precision decimal digits")
      ->check(CLI::Range(20u, 2000u));
  app.add_option("--threads", c.threads, "Worker threads for scans and sweeps (0: all cores)");

  auto* coeffs = app.add_subcommand("coeffs", "Error coefficients of a scheme");
  auto* osc = app.add_subcommand("oscillator", "Harmonic-oscillator frequency and energy series");
  auto* kep = app.add_subcommand("kepler", "Kepler limit curves H4(t), theta4(t)");
  auto* scan = app.add_subcommand("scan", "Scan t0 along the correctable family");
  auto* fig = app.add_subcommand("figure", "Datasets behind figures 1 to 7");
  auto* list = app.add_subcommand("schemes", "List builtin schemes");

  for (auto* sub : {coeffs, osc, kep}) {
    sub->add_option("--scheme", c.schemes, "builtin:NAME(params) or file:PATH")->required();
  }
  fig->add_option("--scheme", c.schemes, "Extra schemes to overlay (builtin: or file:)");
  for (auto* sub : {osc, scan}) {
    sub->add_option("--omega", c.omega, "Oscillator frequency");
    sub->add_option("--q0", c.q0, "Initial position");
    sub->add_option("--p0", c.p0, "Initial momentum");
  }
  osc->add_option("--eps", c.eps, "Step size for omega_A or the trajectory");
  osc->add_option("--max-order", c.maxOrder, "Highest frequency coefficient (2, 4, 6)")
      ->check(CLI::IsMember({2, 4, 6}));
  osc->add_option("--steps", c.steps, "Emit a trajectory of this many steps instead of series")
      ->check(CLI::PositiveNumber);
  osc->add_option("--sample-every", c.sampleEvery, "Trajectory sampling stride")
      ->check(CLI::PositiveNumber);

  for (auto* sub : {kep, scan}) {
    auto* e = sub->add_option("--e", c.e, "Eccentricity (q0 = (10, 0))")->check(CLI::Range(0.0, 1.0));
    auto* py = sub->add_option("--py", c.py, "Initial p_y (q0 = (10, 0))");
    e->excludes(py);
  }
  kep->add_option("--e-list", c.eList, "Eccentricity sweep instead of a curve")
      ->delimiter(',')
      ->excludes("--e")
      ->excludes("--py");
  for (auto* sub : {kep, scan, fig}) {
    sub->add_option("--N", c.n, "Steps per period");
  }
  kep->add_option("--kind", c.kind, "Curve columns")->check(CLI::IsMember({"energy", "angle", "both"}));
  for (auto* sub : {kep, fig}) {
    sub->add_option("--sample-every", c.sampleEvery, "Row stride along the period")
        ->check(CLI::PositiveNumber);
  }
  kep->add_flag("--shadow", c.shadow, "Add H, H_A and H_A drift columns");

  scan->add_option("--objective", c.objective, "freq6 | energy10 | kepler-precession")
      ->required()
      ->check(CLI::IsMember({"freq6", "energy10", "kepler-precession"}));
  scan->add_option("--alpha", c.alpha, "Fixed alpha for kepler-precession");
  for (auto* sub : {scan, fig}) {
    sub->add_option("--from", c.from, "Interval start");
    sub->add_option("--to", c.to, "Interval end");
    sub->add_option("--points", c.points, "Grid points");
  }
  fig->add_option("number", c.figure, "Figure number")->required()->check(CLI::Range(1, 7));

  for (auto* sub : app.get_subcommands({})) {
    sub->allow_config_extras(CLI::config_extras_mode::error);
  }

  std::string sub;
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
    sub = app.get_subcommands().front()->get_name();
    detail::validate(c, sub);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << FSI_VERSION << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  std::ostringstream buf;
  CsvWriter w(buf);
  try {
    const fsi::PrecisionScope digits(c.precision);
    w.comment(detail::stamp(app, sub));
    if (sub == "coeffs") {
      detail::runCoeffs(c, w);
    } else if (sub == "oscillator") {
      if (c.steps) {
        detail::runOscillatorTrajectory(c, w);
      } else {
        detail::runOscillatorSeries(c, w);
      }
    } else if (sub == "kepler") {
      detail::runKepler(c, w);
    } else if (sub == "scan") {
      detail::runScan(c, w);
    } else if (sub == "figure") {
      detail::runFigure(c, w);
    } else {
      detail::runSchemes(w);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  if (c.out.empty()) {
    out << buf.str();
    return 0;
  }
  std::ofstream file(c.out, std::ios::binary);
  if (!(file << buf.str())) {
    err << "error: cannot write " << c.out << '\n';
    return 1;
  }
  return 0;
}

}  // namespace fsilab
