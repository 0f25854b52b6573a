#include <bandcurve/verification.hpp>

#include <bandcurve/errors.hpp>
#include <bandcurve/fixtures.hpp>
#include <bandcurve/metrics.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

namespace bandcurve {

namespace {

constexpr double kSequenceLengthLimit = 1e-3;
constexpr double kDecayExponentLimit = -0.8;
constexpr double kTopologyD0 = 1e-3;
constexpr double kTopologyD1 = 1e-2;
constexpr double kRoundtripD0 = 1e-5;
constexpr double kRoundtripBanach = 1e-3;
constexpr double kSpaceMarginFraction = 0.05;

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// Independent streams per check so that adding trials to one check never
// shifts the draws of another.
std::uint64_t check_seed(std::uint64_t master, std::uint64_t tag) { return splitmix64(master ^ tag); }

constexpr std::uint64_t kTagSandwich = 0x73616e64;
constexpr std::uint64_t kTagSpace = 0x73706163;
constexpr std::uint64_t kTagSequence = 0x73657175;
constexpr std::uint64_t kTagRoundtrip = 0x726f756e;

}  // namespace

void TrialReport::add_parameter(std::string key, std::string value) {
  parameters.emplace_back(std::move(key), std::move(value));
}

void TrialReport::add_parameter(std::string key, double value) {
  parameters.emplace_back(std::move(key), format_double(value));
}

void TrialReport::absorb(const TrialReport& other) {
  worst_margin = trials == 0 ? other.worst_margin : std::min(worst_margin, other.worst_margin);
  trials += other.trials;
  failures += other.failures;
  messages.insert(messages.end(), other.messages.begin(), other.messages.end());
}

double discretization_slack(const SphericalCurve& curve) {
  const double g = max_gap(curve);
  return 1e-8 + 10.0 * g * g;
}

TrialReport sandwich_inequalities(const SphericalCurve& curve, const FrenetPath& frames,
                                  const CurvatureBand& band, double s0) {
  const double length = curve.length();
  if (!(s0 >= 0.0 && s0 <= length)) throw RangeError("s0 must lie in [0, L]");
  const std::size_t m = curve.segments();
  const double ds = length / static_cast<double>(m);
  const auto k0 = static_cast<std::size_t>(std::llround(s0 / ds));

  const double rho1 = band.rho1();
  const double rho2 = band.rho2();
  const double delta = std::min(2.0 * std::sin(rho1), 2.0 * std::sin(rho2));
  const double delta_bar = 0.5 * std::numbers::pi * std::min(std::sin(rho1), std::sin(rho2));
  const double slack = discretization_slack(curve);

  const Rotation& f0 = frames.frames[k0];
  const Vec3 v1 = std::cos(rho1) * f0.point() + std::sin(rho1) * f0.normal();
  const Vec3 v2 = std::cos(rho2) * f0.point() + std::sin(rho2) * f0.normal();

  TrialReport r;
  r.name = "sandwich";
  r.trials = 1;
  r.worst_margin = std::numeric_limits<double>::infinity();
  r.add_parameter("s0", static_cast<double>(k0) * ds);
  r.add_parameter("delta", delta);
  r.add_parameter("delta_bar", delta_bar);
  r.add_parameter("slack", slack);

  std::string violated;
  auto record = [&](double margin, double scale, const char* which, double s) {
    if (margin < -slack && violated.empty()) {
      violated = std::string(which) + " violated by " + format_double(-margin) + " at s - s0 = " +
                 format_double(s);
    }
    if (scale > 0.0) r.worst_margin = std::min(r.worst_margin, margin / scale);
  };

  const auto reach = static_cast<std::size_t>(std::floor(delta / ds + 1e-9));
  const std::size_t first = k0 > reach ? k0 - reach : 0;
  const std::size_t last = std::min(m, k0 + reach);
  for (std::size_t k = first; k <= last; ++k) {
    const double s = (static_cast<double>(k) - static_cast<double>(k0)) * ds;
    const Vec3& p = curve.sample(k);
    const double quad = 0.5 * s * s;
    record(rho1 - surface_distance(v1, p), quad, "d(v1, gamma) <= rho1", s);
    record(surface_distance(v2, p) - rho2, quad, "d(v2, gamma) >= rho2", s);
    if (std::abs(s) <= delta_bar + 1e-12) {
      const Vec3 t = frames.frames[k].tangent();
      const double sign = s >= 0.0 ? 1.0 : -1.0;
      const double scale = std::abs(s);
      record(sign * t.dot(v1), scale, s >= 0.0 ? "<t, v1> >= 0" : "<t, v1> <= 0", s);
      record(-sign * t.dot(v2), scale, s >= 0.0 ? "<t, v2> <= 0" : "<t, v2> >= 0", s);
    }
  }
  if (!violated.empty()) {
    r.failures = 1;
    r.messages.push_back(violated);
  }
  return r;
}

TrialReport check_sandwich(const SphericalCurve& curve, const CurvatureBand& band, double s0) {
  const BandReport br = band_report(curve, band);
  if (!br.inside) throw PreconditionError("curve is not inside the curvature band");
  return sandwich_inequalities(curve, frame_from_curve(curve), band, s0);
}

TrialReport check_space_equality(const SphericalCurve& curve, const CurvatureBand& band) {
  try {
    (void)controls_from_curve(curve, band);
  } catch (const BandViolation& e) {
    throw PreconditionError(std::string("curve is not strongly admissible for the band: ") + e.what());
  }

  TrialReport r;
  r.name = "space_equality";
  r.trials = 2;
  const BandReport br = band_report(curve, band);
  r.add_parameter("window", br.window);
  r.add_parameter("tol", br.tol);
  r.add_parameter("inf_kappa_minus", br.inf_lower.to_string());
  r.add_parameter("sup_kappa_plus", br.sup_upper.to_string());
  r.worst_margin = br.margin();
  if (!br.inside) {
    ++r.failures;
    r.messages.push_back("P in S: kappa-/kappa+ bounds " + br.floor.to_string() + ", " +
                         br.ceiling.to_string() + " not inside the band");
  }

  const double required = kSpaceMarginFraction * band.width();
  if (br.inside && br.margin() >= required) {
    const CurvatureProfile profile = curvature_profile(curve);
    const double lower = profile.ess_inf - band.kappa1();
    const double upper = band.kappa2() - profile.ess_sup;
    r.add_parameter("ess_inf", profile.ess_inf);
    r.add_parameter("ess_sup", profile.ess_sup);
    r.worst_margin = std::min({r.worst_margin, lower, upper});
    if (!(lower > 0.0 && upper > 0.0)) {
      ++r.failures;
      r.messages.push_back("S in P: profile band [" + format_double(profile.ess_inf) + ", " +
                           format_double(profile.ess_sup) + "] not inside the band");
    }
  } else {
    r.add_parameter("s_in_p", "not applicable (margin below " + format_double(required) + ")");
  }
  return r;
}

std::string to_string(Perturbation p) {
  switch (p) {
    case Perturbation::rotation_shrink:
      return "rotation_shrink";
    case Perturbation::control_shrink:
      return "control_shrink";
    case Perturbation::curvature_blowup:
      return "curvature_blowup";
  }
  return "rotation_shrink";
}

Perturbation perturbation_from_string(const std::string& s) {
  if (s == "rotation_shrink") return Perturbation::rotation_shrink;
  if (s == "control_shrink") return Perturbation::control_shrink;
  if (s == "curvature_blowup") return Perturbation::curvature_blowup;
  throw DomainError("unknown perturbation '" + s + "'");
}

namespace {

ControlPair shrink_controls(const ControlPair& base, std::size_t k) {
  const double scale = 1.0 / static_cast<double>(k);
  const std::size_t n = base.grid_size();
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    w[i] = base.w_hat(i) + 0.002 * scale * std::sin(2.0 * std::numbers::pi * t);
  }
  if (base.is_arc_length()) {
    return ControlPair::arc_length(base.band(), base.v_hat(0) + 0.002 * scale, std::move(w));
  }
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = base.v_hat(i) + 0.002 * scale;
  return ControlPair::general(base.band(), std::move(v), std::move(w));
}

ControlPair blowup_controls(const ControlPair& base, std::size_t k) {
  const GeometricControls vw = controls_to_vw(base);
  const std::size_t n = base.grid_size();
  std::vector<double> w(n);
  const double amplitude = 0.25 * static_cast<double>(k);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    const double kappa = vw.w[i] / vw.v[i] + amplitude * std::sin(16.0 * std::numbers::pi * t);
    w[i] = vw.v[i] * kappa;
  }
  return vw_to_controls(vw.v, w, base.band());
}

}  // namespace

SequenceTable measure_sequence(const SequenceSpec& spec) {
  const SphericalCurve alpha = curve_from_path(integrate_frame(spec.initial, spec.base_controls));
  const std::size_t resolution = 4 * alpha.segments();
  const TangentBundleSamples base = sample_tangent_bundle(alpha, resolution);
  const Rotation tilt = Rotation::about_axis(Vec3(1.0, 2.0, 3.0), 1.0);
  const Vec3 axis = tilt * Vec3::UnitZ();

  SequenceTable table;
  for (std::size_t k = 1; k <= spec.count; ++k) {
    SphericalCurve member = alpha;
    switch (spec.perturbation) {
      case Perturbation::rotation_shrink:
        member = alpha.rotated(Rotation::about_axis(axis, 1.0 / static_cast<double>(k)));
        break;
      case Perturbation::control_shrink:
        member = curve_from_path(integrate_frame(spec.initial, shrink_controls(spec.base_controls, k)));
        break;
      case Perturbation::curvature_blowup:
        try {
          member = curve_from_path(integrate_frame(spec.initial, blowup_controls(spec.base_controls, k)));
        } catch (const BandViolation& e) {
          throw BandViolation("sequence member k = " + std::to_string(k) + " leaves the band (" +
                                  e.what() + ")",
                              k);
        }
        break;
    }
    const TangentBundleSamples s = sample_tangent_bundle(member, resolution);
    double d0v = 0.0;
    double d1v = 0.0;
    for (std::size_t j = 0; j <= resolution; ++j) {
      const double surface = surface_distance(s.position[j], base.position[j]);
      d0v = std::max(d0v, surface);
      d1v = std::max(d1v, std::hypot(surface, (s.velocity[j] - base.velocity[j]).norm()));
    }
    table.d0.push_back(d0v);
    table.d1.push_back(d1v);
    table.length_gap.push_back(std::abs(member.length() - alpha.length()));
  }
  return table;
}

DecayFit fit_decay(const std::vector<double>& gap) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < gap.size(); ++i) {
    if (!(gap[i] > 0.0)) continue;
    const double x = std::log(static_cast<double>(i + 1));
    const double y = std::log(gap[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  DecayFit fit;
  fit.points = n;
  if (n < 2) return fit;
  const double dn = static_cast<double>(n);
  const double denom = dn * sxx - sx * sx;
  if (!(denom > 0.0)) return fit;
  fit.exponent = (dn * sxy - sx * sy) / denom;
  fit.constant = std::exp((sy - fit.exponent * sx) / dn);
  return fit;
}

TrialReport length_convergence_report(const SequenceTable& table) {
  TrialReport r;
  r.name = "length_convergence";
  r.trials = 1;
  r.columns = {"k", "d0", "length_gap"};
  for (std::size_t i = 0; i < table.d0.size(); ++i) {
    r.rows.push_back({static_cast<double>(i + 1), table.d0[i], table.length_gap[i]});
  }
  const double final_gap = table.length_gap.empty() ? 0.0 : table.length_gap.back();
  const DecayFit fit = fit_decay(table.length_gap);
  r.add_parameter("final_gap", final_gap);
  r.worst_margin = kSequenceLengthLimit - final_gap;
  if (fit.points == 0) {
    r.add_parameter("fit", "all gaps zero");
  } else {
    r.add_parameter("fit_constant", fit.constant);
    r.add_parameter("fit_exponent", fit.exponent);
    r.worst_margin = std::min(r.worst_margin, kDecayExponentLimit - fit.exponent);
  }
  std::string why;
  if (!(final_gap < kSequenceLengthLimit)) why = "final length gap " + format_double(final_gap);
  if (fit.points > 0 && !(fit.exponent <= kDecayExponentLimit && fit.constant > 0.0)) {
    why += (why.empty() ? "" : "; ") + std::string("decay fit C = ") + format_double(fit.constant) +
           ", exponent = " + format_double(fit.exponent);
  }
  if (!why.empty()) {
    r.failures = 1;
    r.messages.push_back(why);
  }
  return r;
}

TrialReport run_length_convergence(const SequenceSpec& spec) {
  TrialReport r;
  try {
    r = length_convergence_report(measure_sequence(spec));
  } catch (const BandViolation& e) {
    r.name = "length_convergence";
    r.trials = 1;
    r.failures = 1;
    r.messages.push_back(e.what());
  }
  r.add_parameter("perturbation", to_string(spec.perturbation));
  r.add_parameter("count", static_cast<double>(spec.count));
  return r;
}

std::vector<double> default_eps_grid() { return {1e-1, 5e-2, 2e-2, 1e-2, 5e-3}; }

TrialReport topology_report(const SequenceTable& table, const std::vector<double>& eps_grid) {
  TrialReport r;
  r.name = "topology_equivalence";
  r.trials = 1;
  r.columns = {"eps", "delta"};
  const double largest_d0 =
      table.d0.empty() ? 0.0 : *std::max_element(table.d0.begin(), table.d0.end());
  for (double eps : eps_grid) {
    double delta = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < table.d0.size(); ++i) {
      if (table.d1[i] >= eps) delta = std::min(delta, table.d0[i]);
    }
    r.rows.push_back({eps, std::isfinite(delta) ? delta : largest_d0});
  }

  std::size_t first = table.d0.size();
  for (std::size_t i = 0; i < table.d0.size(); ++i) {
    if (table.d0[i] < kTopologyD0) {
      first = i;
      break;
    }
  }
  r.worst_margin = std::numeric_limits<double>::infinity();
  if (first == table.d0.size()) {
    r.add_parameter("d0_threshold_reached", "no");
  } else {
    r.add_parameter("first_k_below_d0_threshold", static_cast<double>(first + 1));
    for (std::size_t i = first; i < table.d0.size(); ++i) {
      r.worst_margin = std::min(r.worst_margin, kTopologyD1 - table.d1[i]);
      if (!(table.d1[i] < kTopologyD1) && r.failures == 0) {
        r.failures = 1;
        r.messages.push_back("d1 = " + format_double(table.d1[i]) + " at k = " +
                             std::to_string(i + 1) + " after d0 fell below threshold");
      }
    }
  }
  if (!std::isfinite(r.worst_margin)) r.worst_margin = kTopologyD1;
  return r;
}

TrialReport run_topology_equivalence(const SequenceSpec& spec, const std::vector<double>& eps_grid) {
  TrialReport r;
  try {
    r = topology_report(measure_sequence(spec), eps_grid);
  } catch (const BandViolation& e) {
    r.name = "topology_equivalence";
    r.trials = 1;
    r.failures = 1;
    r.messages.push_back(e.what());
  }
  r.add_parameter("perturbation", to_string(spec.perturbation));
  r.add_parameter("count", static_cast<double>(spec.count));
  return r;
}

TrialReport check_roundtrip(const ControlPair& c, const Rotation& initial) {
  if (!c.is_arc_length()) throw PreconditionError("round trip needs arc-length (constant v_hat) controls");
  TrialReport r;
  r.name = "roundtrip";
  r.trials = 1;
  const SphericalCurve first = curve_from_path(integrate_frame(initial, c));
  ControlPair recovered = c;
  try {
    recovered = controls_from_curve(first, c.band());
  } catch (const BandViolation& e) {
    r.failures = 1;
    r.worst_margin = -std::numeric_limits<double>::infinity();
    r.messages.push_back(e.what());
    return r;
  }
  const SphericalCurve second = curve_from_path(integrate_frame(initial, recovered));
  const double dist = d0(first, second).value;
  const double banach = banach_distance(c, recovered);
  r.add_parameter("d0", dist);
  r.add_parameter("banach", banach);
  r.worst_margin = std::min(kRoundtripD0 - dist, kRoundtripBanach - banach);
  if (!(dist <= kRoundtripD0)) {
    r.failures = 1;
    r.messages.push_back("d0 " + format_double(dist) + " exceeds " + format_double(kRoundtripD0));
  } else if (!(banach <= kRoundtripBanach)) {
    r.failures = 1;
    r.messages.push_back("control distance " + format_double(banach) + " exceeds " +
                         format_double(kRoundtripBanach));
  }
  return r;
}

void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::max<std::size_t>(1, std::min(jobs, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mutex;
  std::map<std::size_t, std::exception_ptr> errors;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(mutex);
          errors.emplace(i, std::current_exception());
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (!errors.empty()) std::rethrow_exception(errors.begin()->second);
}

std::vector<std::string> suite_check_names() {
  return {"sandwich", "space", "length", "topology", "roundtrip"};
}

namespace {

bool selected(const SuiteConfig& config, const std::string& name) {
  return config.checks.empty() ||
         std::find(config.checks.begin(), config.checks.end(), name) != config.checks.end();
}

TrialReport merge(const std::string& name, std::uint64_t seed, std::vector<TrialReport>& parts,
                  const std::vector<std::uint64_t>& sub_seeds) {
  TrialReport out;
  out.name = name;
  out.seed = seed;
  out.sub_seeds = sub_seeds;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::string& m : parts[i].messages) {
      m = "trial " + std::to_string(i) + " (sub-seed " + std::to_string(sub_seeds[i]) + "): " + m;
    }
    out.absorb(parts[i]);
  }
  return out;
}

TrialReport run_sandwich_suite(const SuiteConfig& config, const CurvatureBand& band) {
  const std::uint64_t base = check_seed(config.seed, kTagSandwich);
  std::vector<std::uint64_t> seeds(config.sandwich_curves);
  for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = sub_seed(base, i);
  std::vector<TrialReport> parts(seeds.size());
  parallel_for(seeds.size(), config.jobs, [&](std::size_t i) {
    std::mt19937_64 rng(seeds[i]);
    const ControlPair c = fixtures::random_in_band_controls(rng, band, config.sandwich_grid);
    const SphericalCurve curve = curve_from_path(integrate_frame(Rotation::identity(), c));
    TrialReport& part = parts[i];
    const BandReport br = band_report(curve, band);
    if (!br.inside) {
      part.trials = config.sandwich_points;
      part.failures = config.sandwich_points;
      part.worst_margin = -std::numeric_limits<double>::infinity();
      part.messages.push_back("precondition: band report outside the band");
      return;
    }
    const FrenetPath frames = frame_from_curve(curve);
    for (std::size_t j = 0; j < config.sandwich_points; ++j) {
      const double s0 = uniform(rng, 0.0, curve.length());
      TrialReport one = sandwich_inequalities(curve, frames, band, s0);
      for (std::string& m : one.messages) m = "s0 = " + format_double(s0) + ": " + m;
      part.absorb(one);
    }
  });
  TrialReport out = merge("sandwich", config.seed, parts, seeds);
  out.add_parameter("curves", static_cast<double>(config.sandwich_curves));
  out.add_parameter("points_per_curve", static_cast<double>(config.sandwich_points));
  out.add_parameter("grid", static_cast<double>(config.sandwich_grid));
  return out;
}

TrialReport run_space_suite(const SuiteConfig& config, const CurvatureBand& band) {
  const std::uint64_t base = check_seed(config.seed, kTagSpace);
  std::vector<std::uint64_t> seeds(config.space_seeds);
  for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = sub_seed(base, i);
  std::vector<TrialReport> parts(seeds.size());
  parallel_for(seeds.size(), config.jobs, [&](std::size_t i) {
    std::mt19937_64 rng(seeds[i]);
    const ControlPair c = fixtures::random_in_band_controls(rng, band, config.space_grid);
    const SphericalCurve curve = curve_from_path(integrate_frame(Rotation::identity(), c));
    try {
      parts[i] = check_space_equality(curve, band);
    } catch (const PreconditionError& e) {
      parts[i].trials = 2;
      parts[i].failures = 2;
      parts[i].messages.push_back(e.what());
    }
  });
  TrialReport out = merge("space_equality", config.seed, parts, seeds);
  out.add_parameter("seeds", static_cast<double>(config.space_seeds));
  out.add_parameter("grid", static_cast<double>(config.space_grid));
  return out;
}

TrialReport run_roundtrip_suite(const SuiteConfig& config, const CurvatureBand& band) {
  const std::uint64_t base = check_seed(config.seed, kTagRoundtrip);
  std::vector<std::uint64_t> seeds(config.roundtrip_seeds);
  for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = sub_seed(base, i);
  std::vector<TrialReport> parts(seeds.size());
  parallel_for(seeds.size(), config.jobs, [&](std::size_t i) {
    std::mt19937_64 rng(seeds[i]);
    const ControlPair c = fixtures::random_in_band_controls(rng, band, config.roundtrip_grid);
    parts[i] = check_roundtrip(c, Rotation::identity());
  });
  TrialReport out = merge("roundtrip", config.seed, parts, seeds);
  out.add_parameter("seeds", static_cast<double>(config.roundtrip_seeds));
  out.add_parameter("grid", static_cast<double>(config.roundtrip_grid));
  return out;
}

void run_sequence_suites(const SuiteConfig& config, const CurvatureBand& band, bool want_length,
                         bool want_topology, std::vector<TrialReport>& out) {
  const std::uint64_t base = check_seed(config.seed, kTagSequence);
  const std::vector<Perturbation> modes = {Perturbation::rotation_shrink, Perturbation::control_shrink};
  const std::size_t count = config.sequence_seeds * modes.size();
  std::vector<std::uint64_t> seeds(count);
  for (std::size_t i = 0; i < count; ++i) seeds[i] = sub_seed(base, i / modes.size());
  std::vector<TrialReport> length_parts(count);
  std::vector<TrialReport> topology_parts(count);
  const std::vector<double> eps = default_eps_grid();
  std::vector<std::vector<std::vector<double>>> delta_tables(count);

  parallel_for(count, config.jobs, [&](std::size_t i) {
    std::mt19937_64 rng(seeds[i]);
    SequenceSpec spec{fixtures::random_in_band_controls(rng, band, config.sequence_grid),
                      modes[i % modes.size()], config.sequence_count, Rotation::identity()};
    try {
      const SequenceTable table = measure_sequence(spec);
      length_parts[i] = length_convergence_report(table);
      topology_parts[i] = topology_report(table, eps);
    } catch (const BandViolation& e) {
      for (TrialReport* p : {&length_parts[i], &topology_parts[i]}) {
        p->trials = 1;
        p->failures = 1;
        p->messages.push_back(e.what());
      }
    }
    for (TrialReport* p : {&length_parts[i], &topology_parts[i]}) {
      for (std::string& m : p->messages) m = to_string(spec.perturbation) + ": " + m;
    }
  });

  if (want_length) {
    TrialReport r = merge("length_convergence", config.seed, length_parts, seeds);
    r.columns = {"mode", "seed_index", "fit_exponent", "final_gap"};
    for (std::size_t i = 0; i < count; ++i) {
      const DecayFit fit = fit_decay([&] {
        std::vector<double> gap;
        for (const auto& row : length_parts[i].rows) gap.push_back(row[2]);
        return gap;
      }());
      const double final_gap = length_parts[i].rows.empty() ? 0.0 : length_parts[i].rows.back()[2];
      r.rows.push_back({static_cast<double>(i % modes.size()), static_cast<double>(i / modes.size()),
                        fit.exponent, final_gap});
    }
    r.add_parameter("modes", "rotation_shrink=0, control_shrink=1");
    r.add_parameter("sequences_per_mode", static_cast<double>(config.sequence_seeds));
    r.add_parameter("count", static_cast<double>(config.sequence_count));
    r.add_parameter("grid", static_cast<double>(config.sequence_grid));
    out.push_back(std::move(r));
  }

  if (want_topology) {
    TrialReport r = merge("topology_equivalence", config.seed, topology_parts, seeds);
    // delta(eps) over all sequences: the smallest delta any sequence needs.
    r.columns = {"eps", "delta"};
    for (std::size_t e = 0; e < eps.size(); ++e) {
      double delta = std::numeric_limits<double>::infinity();
      for (const TrialReport& p : topology_parts) {
        if (e < p.rows.size()) delta = std::min(delta, p.rows[e][1]);
      }
      r.rows.push_back({eps[e], delta});
    }
    // The theorem needs the band: an oscillating sequence that leaves it must
    // be turned away before anything is measured.
    std::mt19937_64 rng(sub_seed(base, config.sequence_seeds));
    SequenceSpec blowup{fixtures::random_in_band_controls(rng, band, config.sequence_grid),
                        Perturbation::curvature_blowup, config.sequence_count, Rotation::identity()};
    ++r.trials;
    try {
      (void)measure_sequence(blowup);
      ++r.failures;
      r.messages.push_back("curvature_blowup sequence was not rejected");
    } catch (const BandViolation& e) {
      r.add_parameter("curvature_blowup", std::string("rejected: ") + e.what());
    }
    r.add_parameter("d0_threshold", kTopologyD0);
    r.add_parameter("d1_threshold", kTopologyD1);
    r.add_parameter("sequences_per_mode", static_cast<double>(config.sequence_seeds));
    r.add_parameter("count", static_cast<double>(config.sequence_count));
    out.push_back(std::move(r));
  }
}

}  // namespace

std::vector<TrialReport> run_suite(const SuiteConfig& config) {
  const CurvatureBand band(config.kappa1, config.kappa2);
  for (const std::string& c : config.checks) {
    const auto names = suite_check_names();
    if (std::find(names.begin(), names.end(), c) == names.end()) {
      throw DomainError("unknown check '" + c + "'");
    }
  }
  std::vector<TrialReport> out;
  if (selected(config, "sandwich")) out.push_back(run_sandwich_suite(config, band));
  if (selected(config, "space")) out.push_back(run_space_suite(config, band));
  const bool length = selected(config, "length");
  const bool topology = selected(config, "topology");
  if (length || topology) run_sequence_suites(config, band, length, topology, out);
  if (selected(config, "roundtrip")) out.push_back(run_roundtrip_suite(config, band));
  for (TrialReport& r : out) {
    r.add_parameter("band", "[" + format_double(band.kappa1()) + ", " + format_double(band.kappa2()) + "]");
  }
  return out;
}

}  // namespace bandcurve
