#include <bandcurve/cli.hpp>

#include <bandcurve/control_maps.hpp>
#include <bandcurve/curvature.hpp>
#include <bandcurve/errors.hpp>
#include <bandcurve/fixtures.hpp>
#include <bandcurve/frenet.hpp>
#include <bandcurve/io.hpp>
#include <bandcurve/metrics.hpp>
#include <bandcurve/verification.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

namespace bandcurve {

namespace {

// Raised for bad flag values found after parsing; maps to kExitUsage.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_number(const std::string& s, const char* what) {
  double x = 0.0;
  const char* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, x);
  if (ec != std::errc() || ptr != end || !std::isfinite(x)) {
    throw UsageError(std::string("invalid number for ") + what + ": '" + s + "'");
  }
  return x;
}

CurvatureBand parse_band(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--band expects k1,k2");
  const double k1 = parse_number(text.substr(0, comma), "--band");
  const double k2 = parse_number(text.substr(comma + 1), "--band");
  try {
    return CurvatureBand(k1, k2);
  } catch (const DomainError& e) {
    throw UsageError(std::string("--band: ") + e.what());
  }
}

std::string band_text(const CurvatureBand& b) { return num(b.kappa1()) + "," + num(b.kappa2()); }

// Writes `text` to `path` or, when path is empty, to `out`.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_text(path, text);
  }
}

std::string header(const char* command) {
  return std::string("# bandcurve ") + kToolVersion + " " + command + "\n";
}

// Repeats every cell `factor` times.
ControlPair refine(const ControlPair& c, std::size_t factor) {
  if (factor == 1) return c;
  std::vector<double> w;
  w.reserve(c.grid_size() * factor);
  for (double x : c.w_hat_values()) w.insert(w.end(), factor, x);
  if (c.is_arc_length()) return ControlPair::arc_length(c.band(), c.v_hat(0), std::move(w));
  std::vector<double> v;
  v.reserve(w.size());
  for (double x : c.v_hat_values()) v.insert(v.end(), factor, x);
  return ControlPair::general(c.band(), std::move(v), std::move(w));
}

ControlsFile load_controls(const std::string& path, std::optional<std::size_t> grid) {
  ControlsFile file = controls_from_json(read_text(path));
  if (grid) {
    const std::size_t n = file.controls.grid_size();
    if (*grid == 0 || *grid % n != 0) {
      throw UsageError("--grid " + std::to_string(*grid) + " is not a multiple of the file's grid " +
                       std::to_string(n));
    }
    file.controls = refine(file.controls, *grid / n);
  }
  return file;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::string controls;
  std::string output;
  std::string frames;
  std::optional<std::size_t> grid;
  std::string band;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out, std::ostream& err) {
  const ControlsFile file = load_controls(a.controls, a.grid);
  const CurvatureBand band = a.band.empty() ? file.controls.band() : parse_band(a.band);
  const GeometricControls vw = controls_to_vw(file.controls);
  double kmin = HUGE_VAL;
  double kmax = -HUGE_VAL;
  for (std::size_t k = 0; k < vw.v.size(); ++k) {
    const double kappa = vw.w[k] / vw.v[k];
    if (!band.contains(kappa)) {
      err << "band violation at cell " << k << ": kappa " << num(kappa) << " outside (" << band_text(band)
          << ")\n";
      return kExitFailure;
    }
    kmin = std::min(kmin, kappa);
    kmax = std::max(kmax, kappa);
  }
  const FrenetPath path = integrate_frame(file.initial, file.controls);
  const SphericalCurve curve = curve_from_path(path);
  write_text(a.output, curve_to_json(curve));
  if (!a.frames.empty()) write_text(a.frames, frames_to_json(path));

  out << header("generate");
  out << "grid," << file.controls.grid_size() << "\n";
  out << "band," << band_text(band) << "\n";
  out << "length," << num(curve.length()) << "\n";
  out << "kappa_min," << num(kmin) << "\n";
  out << "kappa_max," << num(kmax) << "\n";
  out << "lower_margin," << num(kmin - band.kappa1()) << "\n";
  out << "upper_margin," << num(band.kappa2() - kmax) << "\n";
  out << "max_orthogonality_defect," << num(max_orthogonality_defect(path)) << "\n";
  return kExitOk;
}

// ----------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::string curve;
  std::string band;
  std::optional<double> window;
  std::optional<double> tol;
  std::vector<double> at;
  std::size_t stations = 9;
  std::string output;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out, std::ostream& err) {
  const SphericalCurve curve = curve_from_json(read_text(a.curve));
  const std::size_t m = curve.segments();
  if (m < 8) throw UsageError("analyze needs at least 8 segments");
  std::optional<CurvatureBand> band;
  if (!a.band.empty()) band = parse_band(a.band);
  // Without a band, a fixed arc of 0.25 keeps the tol bias 2 tol / w^2 small.
  const double window = a.window  ? *a.window
                        : band    ? default_window(curve, *band)
                                  : std::min(0.25, curve.length() / 4) / curve.length();
  const double tol = a.tol ? *a.tol : default_tol(curve);
  if (!(window > 0.0) || !(tol >= 0.0)) throw UsageError("--window must be positive and --tol non-negative");

  std::vector<double> at = a.at;
  if (at.empty()) {
    if (a.stations < 2) throw UsageError("--stations must be at least 2");
    for (std::size_t i = 0; i < a.stations; ++i) {
      at.push_back(static_cast<double>(i) / static_cast<double>(a.stations - 1));
    }
  }
  for (double t : at) {
    if (!(t >= 0.0 && t <= 1.0)) throw UsageError("--at values must lie in [0, 1]");
  }

  std::ostringstream os;
  try {
    const CurvatureProfile profile = curvature_profile(curve);
    const TangentCircleProbe probe(curve);
    os << header("analyze");
    os << "# curve," << a.curve << "\n";
    os << "# segments," << m << "\n";
    os << "# param," << to_string(curve.param()) << "\n";
    os << "# length," << num(curve.length()) << "\n";
    os << "# window," << num(window) << "\n";
    os << "# tol," << num(tol) << "\n";
    os << "# band," << (band ? band_text(*band) : std::string("none")) << "\n";
    os << "t,s,kappa\n";
    for (std::size_t i = 0; i < profile.kappa.size(); ++i) {
      const double s = profile.stations[i];
      os << num(s / curve.length()) << "," << num(s) << "," << num(profile.kappa[i]) << "\n";
    }
    os << "ess_inf," << num(profile.ess_inf) << "\n";
    os << "ess_sup," << num(profile.ess_sup) << "\n";
    ExtendedCurvature lower_min = ExtendedCurvature::plus_infinity();
    ExtendedCurvature upper_max = ExtendedCurvature::minus_infinity();
    for (double t : at) {
      const ExtendedCurvature lo = probe.lower(t, window, tol);
      const ExtendedCurvature up = probe.upper(t, window, tol);
      if (lo < lower_min) lower_min = lo;
      if (up > upper_max) upper_max = up;
      os << "kappa_pm," << num(t) << "," << lo.to_string() << "," << up.to_string() << "\n";
    }
    os << "kappa_minus_min," << lower_min.to_string() << "\n";
    os << "kappa_plus_max," << upper_max.to_string() << "\n";
    if (band) {
      const BandReport br = band_report(curve, *band, window, tol);
      os << "band_inside," << (br.inside ? "true" : "false") << "," << num(br.margin()) << "\n";
    }
  } catch (const DegeneracyError& e) {
    err << "degenerate curve at station " << e.index() << ": " << e.what() << "\n";
    return kExitUsage;
  }
  emit(a.output, os.str(), out);
  return kExitOk;
}

// ---------------------------------------------------------------- distance

struct DistanceArgs {
  std::string a;
  std::string b;
  std::size_t resolution = 0;
};

int cmd_distance(const DistanceArgs& a, std::ostream& out, std::ostream& err) {
  const SphericalCurve ca = curve_from_json(read_text(a.a));
  const SphericalCurve cb = curve_from_json(read_text(a.b));
  if (a.resolution != 0 && a.resolution < 8) {
    throw UsageError("--resolution " + std::to_string(a.resolution) + " is below the minimum of 8");
  }
  const MetricSet m = all_metrics(ca, cb, a.resolution);
  out << header("distance");
  out << "# a," << a.a << "\n";
  out << "# b," << a.b << "\n";
  out << "# resolution," << m.d0.resolution << "\n";
  for (const MetricValue& v : {m.d0bar, m.d0, m.d1, m.d1bar}) {
    out << to_string(v.kind) << "," << num(v.value) << "," << v.resolution << "\n";
  }
  const double slack = 1e-12;
  const bool ordered = m.d0bar.value <= m.d0.value + slack && m.d0.value <= m.d1.value + slack &&
                       m.d1.value <= m.d1bar.value + slack;
  out << "ordering," << (ordered ? "ok" : "violated") << "\n";
  if (!ordered) {
    err << "metric ordering d0bar <= d0 <= d1 <= d1bar violated\n";
    return kExitFailure;
  }
  return kExitOk;
}

// ------------------------------------------------------------------ verify

struct VerifyArgs {
  std::uint64_t seed = 1;
  std::size_t jobs = 0;
  std::string output;
  std::vector<std::string> checks;
  std::string band = "-0.5,1.5";
  std::optional<std::size_t> grid;
  std::string curve;
};

void print_reports(const std::vector<TrialReport>& reports, std::ostream& out) {
  out << "check,trials,failures,worst_margin,status\n";
  for (const TrialReport& r : reports) {
    out << r.name << "," << r.trials << "," << r.failures << "," << num(r.worst_margin) << ","
        << (r.passed() ? "PASS" : "FAIL") << "\n";
  }
}

int finish_verify(const std::vector<TrialReport>& reports, std::ostream& out, std::ostream& err) {
  bool ok = true;
  for (const TrialReport& r : reports) {
    if (r.passed()) continue;
    ok = false;
    err << "check failed: " << r.name << "\n";
    for (std::size_t i = 0; i < r.messages.size() && i < 5; ++i) err << "  " << r.messages[i] << "\n";
    if (r.messages.size() > 5) err << "  (" << r.messages.size() - 5 << " more)\n";
  }
  out << "result," << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kExitOk : kExitFailure;
}

int verify_curve(const VerifyArgs& a, const CurvatureBand& band, std::ostream& out, std::ostream& err) {
  const SphericalCurve curve = curve_from_json(read_text(a.curve));
  std::vector<TrialReport> reports;

  TrialReport space;
  space.name = "space_equality";
  try {
    space = check_space_equality(curve, band);
  } catch (const PreconditionError& e) {
    space.trials = 1;
    space.failures = 1;
    space.worst_margin = -HUGE_VAL;
    space.messages.push_back(e.what());
  }
  reports.push_back(space);

  TrialReport sandwich;
  sandwich.name = "sandwich";
  const std::size_t points = 8;
  try {
    for (std::size_t i = 0; i < points; ++i) {
      const double s0 = (static_cast<double>(i) + 0.5) / static_cast<double>(points) * curve.length();
      if (i == 0) {
        sandwich = check_sandwich(curve, band, s0);
      } else {
        sandwich.absorb(check_sandwich(curve, band, s0));
      }
    }
  } catch (const PreconditionError& e) {
    sandwich = TrialReport{};
    sandwich.name = "sandwich";
    sandwich.trials = 1;
    sandwich.failures = 1;
    sandwich.worst_margin = -HUGE_VAL;
    sandwich.messages.push_back(e.what());
  }
  reports.push_back(sandwich);

  out << header("verify");
  out << "# curve," << a.curve << "\n";
  out << "# band," << band_text(band) << "\n";
  print_reports(reports, out);
  if (!a.output.empty()) {
    write_text(a.output, reports_to_json({{"curve", a.curve}, {"band", band_text(band)}}, reports));
  }
  return finish_verify(reports, out, err);
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const CurvatureBand band = parse_band(a.band);
  if (!a.curve.empty()) return verify_curve(a, band, out, err);

  SuiteConfig config;
  config.seed = a.seed;
  config.jobs = a.jobs != 0 ? a.jobs : std::max(1u, std::thread::hardware_concurrency());
  config.kappa1 = band.kappa1();
  config.kappa2 = band.kappa2();
  config.checks = a.checks;
  const auto names = suite_check_names();
  for (const std::string& c : config.checks) {
    if (std::find(names.begin(), names.end(), c) == names.end()) throw UsageError("unknown check '" + c + "'");
  }
  if (a.grid) {
    if (*a.grid < 16) throw UsageError("--grid must be at least 16");
    config.sandwich_grid = config.space_grid = config.roundtrip_grid = config.sequence_grid = *a.grid;
  }
  const std::vector<TrialReport> reports = run_suite(config);

  out << header("verify");
  out << "# seed," << config.seed << "\n";
  out << "# band," << band_text(band) << "\n";
  out << "# grids," << config.sandwich_grid << "," << config.space_grid << "," << config.sequence_grid << ","
      << config.roundtrip_grid << "\n";
  print_reports(reports, out);
  if (!a.output.empty()) write_text(a.output, suite_to_json(config, reports));
  return finish_verify(reports, out, err);
}

// --------------------------------------------------------------- roundtrip

struct RoundtripArgs {
  std::string controls;
  std::optional<std::size_t> grid;
};

int cmd_roundtrip(const RoundtripArgs& a, std::ostream& out, std::ostream& err) {
  const ControlsFile file = load_controls(a.controls, a.grid);
  TrialReport r;
  try {
    r = check_roundtrip(file.controls, file.initial);
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  }
  out << header("roundtrip");
  out << "grid," << file.controls.grid_size() << "\n";
  for (const auto& [k, v] : r.parameters) out << k << "," << v << "\n";
  out << "result," << (r.passed() ? "PASS" : "FAIL") << "\n";
  for (const std::string& m : r.messages) err << m << "\n";
  return r.passed() ? kExitOk : kExitFailure;
}

// ----------------------------------------------------------------- fixture

struct FixtureArgs {
  std::string kind;
  std::string output;
  std::optional<std::size_t> grid;
  double rho = std::atan(1.0);
  double kappa = 1.0;
  double length = 2.0 * std::acos(-1.0);
  double half_range = 0.01;
  std::string band = "-0.5,1.5";
  std::uint64_t seed = 1;
};

const std::vector<std::string>& fixture_kinds() {
  static const std::vector<std::string> kinds = {"equator", "circle", "cusp", "inflection", "constant-controls",
                                                 "random-controls"};
  return kinds;
}

int cmd_fixture(const FixtureArgs& a, std::ostream& out) {
  const bool figure = a.kind == "cusp" || a.kind == "inflection";
  const std::size_t n = a.grid.value_or(figure ? 4096 : 1024);
  if (n < 8) throw UsageError("--grid must be at least 8");
  std::string text;
  try {
    if (a.kind == "equator") {
      text = curve_to_json(fixtures::equator(n));
    } else if (a.kind == "circle") {
      text = curve_to_json(fixtures::circle(a.rho, n));
    } else if (figure) {
      if (n % 2 != 0) throw UsageError("--grid must be even for figure fixtures");
      const auto shape = a.kind == "cusp" ? fixtures::PlaneShape::even_cusp : fixtures::PlaneShape::odd_inflection;
      text = curve_to_json(fixtures::plane_figure(shape, a.half_range, n));
    } else if (a.kind == "constant-controls") {
      text = controls_to_json({fixtures::constant_controls(parse_band(a.band), a.kappa, a.length, n)});
    } else {
      std::mt19937_64 rng(a.seed);
      text = controls_to_json({fixtures::random_in_band_controls(rng, parse_band(a.band), n)});
    }
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  } catch (const RangeError& e) {
    throw UsageError(e.what());
  }
  emit(a.output, text, out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Curves of bounded geodesic curvature on the unit sphere", "bandcurve"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand("generate", "Integrate a controls file into a curve file");
  generate->add_option("--controls", gen.controls, "Controls file (JSON)")->required();
  generate->add_option("--output,-o", gen.output, "Curve file to write")->required();
  generate->add_option("--frames", gen.frames, "Also write the frame sequence here");
  generate->add_option("--grid", gen.grid, "Refine to N cells (a multiple of the file's grid)");
  generate->add_option("--band", gen.band, "Check curvatures against k1,k2 instead of the file's band");

  AnalyzeArgs ana;
  CLI::App* analyze = app.add_subcommand("analyze", "Curvature profile and upper/lower curvatures");
  analyze->add_option("curve", ana.curve, "Curve file (JSON)")->required();
  analyze->add_option("--band", ana.band, "Band k1,k2; sets the default window and adds a band check");
  analyze->add_option("--window", ana.window, "Probe half-window in t");
  analyze->add_option("--tol", ana.tol, "Tangency tolerance");
  analyze->add_option("--at", ana.at, "Stations t0 for the upper/lower curvatures")->delimiter(',');
  analyze->add_option("--stations", ana.stations, "Evenly spaced stations when --at is absent");
  analyze->add_option("--output,-o", ana.output, "Write the report here instead of stdout");

  DistanceArgs dist;
  CLI::App* distance = app.add_subcommand("distance", "The four distances between two curves");
  distance->add_option("a", dist.a, "First curve file")->required();
  distance->add_option("b", dist.b, "Second curve file")->required();
  distance->add_option("--resolution,-K", dist.resolution, "Comparison intervals K (0 selects the default)");

  VerifyArgs ver;
  CLI::App* verify = app.add_subcommand("verify", "Run the seeded verification suite");
  verify->add_option("--seed", ver.seed, "Master seed");
  verify->add_option("--jobs,-j", ver.jobs, "Worker threads (0 uses every core)");
  verify->add_option("--output,-o", ver.output, "Write the JSON report here");
  verify->add_option("--checks", ver.checks, "Subset of sandwich,space,length,topology,roundtrip")->delimiter(',');
  verify->add_option("--band", ver.band, "Band k1,k2");
  verify->add_option("--grid", ver.grid, "Grid size for every check");
  verify->add_option("--curve", ver.curve, "Check one curve file instead of running the suite");

  RoundtripArgs rt;
  CLI::App* roundtrip = app.add_subcommand("roundtrip", "controls -> curve -> controls on one file");
  roundtrip->add_option("--controls", rt.controls, "Controls file (JSON)")->required();
  roundtrip->add_option("--grid", rt.grid, "Refine to N cells (a multiple of the file's grid)");

  FixtureArgs fix;
  CLI::App* fixture = app.add_subcommand("fixture", "Write a reference curve or controls file");
  fixture->add_option("kind", fix.kind, "equator, circle, cusp, inflection, constant-controls or random-controls")
      ->required()
      ->check(CLI::IsMember(fixture_kinds()));
  fixture->add_option("--output,-o", fix.output, "File to write (stdout when absent)");
  fixture->add_option("--grid", fix.grid, "Segments or cells");
  fixture->add_option("--rho", fix.rho, "Spherical radius of the circle");
  fixture->add_option("--kappa", fix.kappa, "Curvature of constant controls");
  fixture->add_option("--length", fix.length, "Length of constant controls");
  fixture->add_option("--half-range", fix.half_range, "Plane half range of the figure fixtures");
  fixture->add_option("--band", fix.band, "Band k1,k2 of generated controls");
  fixture->add_option("--seed", fix.seed, "Seed of random controls");

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("bandcurve");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen, out, err);
    if (analyze->parsed()) return cmd_analyze(ana, out, err);
    if (distance->parsed()) return cmd_distance(dist, out, err);
    if (verify->parsed()) return cmd_verify(ver, out, err);
    if (roundtrip->parsed()) return cmd_roundtrip(rt, out, err);
    if (fixture->parsed()) return cmd_fixture(fix, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BandViolation& e) {
    err << "band violation at index " << e.index() << ": " << e.what() << "\n";
    return kExitFailure;
  } catch (const DegeneracyError& e) {
    err << "degenerate input at index " << e.index() << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const RangeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace bandcurve
