#include <bandcurve/curvature.hpp>

#include <bandcurve/errors.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace bandcurve {

namespace {

constexpr int kBisectionSteps = 40;
constexpr double kJumpRatio = 4.0;
constexpr double kJumpFloor = 1e-8;

double cot(double r) { return std::cos(r) / std::sin(r); }

int rank(ExtendedCurvature::Kind k) {
  switch (k) {
    case ExtendedCurvature::Kind::minus_infinity:
      return 0;
    case ExtendedCurvature::Kind::finite:
      return 1;
    case ExtendedCurvature::Kind::plus_infinity:
      return 2;
  }
  return 1;
}

}  // namespace

CurvatureProfile curvature_profile(const SphericalCurve& curve) {
  const std::size_t m = curve.segments();
  if (m < 8) throw DomainError("curvature profile needs at least 8 segments");
  const FrenetPath path = frame_from_curve(curve);
  const double ds = curve.length() / static_cast<double>(m);
  if (!(ds > 0.0)) throw DegeneracyError("curve has zero length");

  CurvatureProfile out;
  out.stations.reserve(m - 1);
  out.kappa.reserve(m - 1);
  for (std::size_t k = 1; k < m; ++k) {
    const Vec3 dt = path.frames[k + 1].tangent() - path.frames[k - 1].tangent();
    out.stations.push_back(static_cast<double>(k) * ds);
    out.kappa.push_back(dt.dot(path.frames[k].normal()) / (2.0 * ds));
  }
  const auto [lo, hi] = std::minmax_element(out.kappa.begin(), out.kappa.end());
  out.ess_inf = *lo;
  out.ess_sup = *hi;
  return out;
}

std::vector<double> vertex_curvatures(const SphericalCurve& curve) {
  const std::size_t m = curve.segments();
  const auto& p = curve.samples();
  std::vector<double> out(m + 1, 0.0);
  for (std::size_t j = 1; j < m; ++j) {
    const Vec3 u = (p[j] - p[j - 1]).cross(p[j + 1] - p[j]);
    const double un = u.norm();
    if (!(un > 0.0)) throw DegeneracyError("collinear or repeated samples at " + std::to_string(j), j);
    const Vec3 axis = u / un;
    // The three points lie on the circle cut by the plane with normal `axis`;
    // its spherical radius r is the angle between axis and the points.
    out[j] = axis.dot(p[j]) / axis.cross(p[j]).norm();
  }
  return out;
}

std::vector<double> cell_curvatures(const SphericalCurve& curve) {
  const std::size_t m = curve.segments();
  if (m < 4) throw DomainError("cell curvatures need at least 4 segments");
  const std::vector<double> vertex = vertex_curvatures(curve);

  // diff[i] = vertex[i+1] - vertex[i] for i = 1..m-2.
  std::vector<double> diff(m, 0.0);
  for (std::size_t i = 1; i + 1 < m; ++i) diff[i] = vertex[i + 1] - vertex[i];

  std::vector<bool> jump(m + 1, false);
  for (std::size_t j = 2; j + 1 < m; ++j) {
    const double a = diff[j - 1];
    const double b = diff[j];
    if (a * b <= 0.0) continue;
    double around = 0.0;
    if (j >= 3) around = std::max(around, std::abs(diff[j - 2]));
    if (j + 2 < m) around = std::max(around, std::abs(diff[j + 1]));
    jump[j] = std::min(std::abs(a), std::abs(b)) > kJumpRatio * around + kJumpFloor;
  }

  std::vector<double> out(m);
  out[0] = vertex[1];
  out[m - 1] = vertex[m - 1];
  for (std::size_t k = 1; k + 1 < m; ++k) {
    if (jump[k] && !jump[k + 1]) {
      out[k] = vertex[k + 1];
    } else if (jump[k + 1] && !jump[k]) {
      out[k] = vertex[k];
    } else {
      out[k] = 0.5 * (vertex[k] + vertex[k + 1]);
    }
  }
  return out;
}

ExtendedCurvature ExtendedCurvature::finite(double v) {
  if (!std::isfinite(v)) throw DomainError("finite curvature value expected");
  return ExtendedCurvature(Kind::finite, v);
}

double ExtendedCurvature::value() const {
  if (kind_ != Kind::finite) throw DomainError("curvature value is infinite");
  return value_;
}

double ExtendedCurvature::to_double() const {
  switch (kind_) {
    case Kind::minus_infinity:
      return -HUGE_VAL;
    case Kind::plus_infinity:
      return HUGE_VAL;
    case Kind::finite:
      break;
  }
  return value_;
}

std::string ExtendedCurvature::to_string() const {
  if (kind_ == Kind::plus_infinity) return "+inf";
  if (kind_ == Kind::minus_infinity) return "-inf";
  std::ostringstream os;
  os.precision(17);
  os << value_;
  return os.str();
}

std::partial_ordering ExtendedCurvature::operator<=>(const ExtendedCurvature& other) const {
  const int a = rank(kind_);
  const int b = rank(other.kind_);
  if (a != b) return a <=> b;
  if (kind_ != Kind::finite) return std::partial_ordering::equivalent;
  return value_ <=> other.value_;
}

bool ordered_within(const ExtendedCurvature& lower, const ExtendedCurvature& upper, double slack) {
  if (lower.is_finite() && upper.is_finite()) return lower.value() <= upper.value() + slack;
  return lower <= upper;
}

TangentCircleProbe::TangentCircleProbe(const SphericalCurve& curve)
    : curve_(curve), frames_(frame_from_curve(curve)) {}

std::size_t TangentCircleProbe::station(double t0) const {
  if (!(t0 >= 0.0 && t0 <= 1.0)) throw RangeError("t0 must lie in [0, 1]");
  const double m = static_cast<double>(curve_.segments());
  return static_cast<std::size_t>(std::llround(t0 * m));
}

void TangentCircleProbe::check_probe(double window, double tol) const {
  if (!(window > 0.0) || !std::isfinite(window)) throw RangeError("window must be positive");
  if (!(tol >= 0.0) || !std::isfinite(tol)) throw RangeError("tol must be non-negative");
}

bool TangentCircleProbe::test(double t0, double r, Side side, double window, double tol) const {
  if (!(r > 0.0 && r < std::numbers::pi)) throw RangeError("radius must lie in (0, pi)");
  check_probe(window, tol);
  const std::size_t m = curve_.segments();
  const std::size_t k0 = station(t0);
  const auto half = static_cast<std::size_t>(std::floor(window * static_cast<double>(m) + 1e-9));
  const std::size_t first = k0 > half ? k0 - half : 0;
  const std::size_t last = std::min(m, k0 + half);

  const Rotation& frame = frames_.frames[k0];
  const Vec3 centre = std::cos(r) * frame.point() + std::sin(r) * frame.normal();
  for (std::size_t k = first; k <= last; ++k) {
    const double d = surface_distance(curve_.sample(k), centre);
    if (side == Side::left ? d < r - tol : d > r + tol) return false;
  }
  return true;
}

ExtendedCurvature TangentCircleProbe::upper(double t0, double window, double tol) const {
  check_probe(window, tol);
  double lo = kMinProbeRadius;
  double hi = std::numbers::pi - kMinProbeRadius;
  if (!test(t0, lo, Side::left, window, tol)) return ExtendedCurvature::plus_infinity();
  if (test(t0, hi, Side::left, window, tol)) return ExtendedCurvature::minus_infinity();
  // Left-passing radii form an initial segment: smaller circles nest inside.
  for (int i = 0; i < kBisectionSteps; ++i) {
    const double mid = 0.5 * (lo + hi);
    (test(t0, mid, Side::left, window, tol) ? lo : hi) = mid;
  }
  return ExtendedCurvature::finite(0.5 * (cot(lo) + cot(hi)));
}

ExtendedCurvature TangentCircleProbe::lower(double t0, double window, double tol) const {
  check_probe(window, tol);
  double lo = kMinProbeRadius;
  double hi = std::numbers::pi - kMinProbeRadius;
  if (!test(t0, hi, Side::right, window, tol)) return ExtendedCurvature::minus_infinity();
  if (test(t0, lo, Side::right, window, tol)) return ExtendedCurvature::plus_infinity();
  for (int i = 0; i < kBisectionSteps; ++i) {
    const double mid = 0.5 * (lo + hi);
    (test(t0, mid, Side::right, window, tol) ? hi : lo) = mid;
  }
  return ExtendedCurvature::finite(0.5 * (cot(lo) + cot(hi)));
}

bool tangent_circle_test(const SphericalCurve& curve, double t0, double r, Side side, double window,
                         double tol) {
  return TangentCircleProbe(curve).test(t0, r, side, window, tol);
}

ExtendedCurvature upper_curvature(const SphericalCurve& curve, double t0, double window, double tol) {
  return TangentCircleProbe(curve).upper(t0, window, tol);
}

ExtendedCurvature lower_curvature(const SphericalCurve& curve, double t0, double window, double tol) {
  return TangentCircleProbe(curve).lower(t0, window, tol);
}

double default_window(const SphericalCurve& curve, const CurvatureBand& band) {
  if (!(curve.length() > 0.0)) throw DegeneracyError("curve has zero length");
  const double arc = 0.25 * std::min(2.0 * std::sin(band.rho1()), 2.0 * std::sin(band.rho2()));
  return arc / curve.length();
}

double default_tol(const SphericalCurve& curve) {
  const double g = max_gap(curve);
  return 10.0 * g * g;
}

BandReport band_report(const SphericalCurve& curve, const CurvatureBand& band,
                       std::optional<double> window, std::optional<double> tol,
                       std::size_t stations) {
  if (stations < 2) throw DomainError("band report needs at least two stations");
  BandReport report(band);
  report.window = window.value_or(default_window(curve, band));
  report.tol = tol.value_or(default_tol(curve));

  const TangentCircleProbe probe(curve);
  for (std::size_t i = 0; i < stations; ++i) {
    const double t0 = static_cast<double>(i) / static_cast<double>(stations - 1);
    report.t0.push_back(t0);
    report.lower.push_back(probe.lower(t0, report.window, report.tol));
    report.upper.push_back(probe.upper(t0, report.window, report.tol));
    if (report.lower.back() < report.inf_lower) report.inf_lower = report.lower.back();
    if (report.upper.back() > report.sup_upper) report.sup_upper = report.upper.back();
    for (const ExtendedCurvature& k : {report.lower.back(), report.upper.back()}) {
      if (k < report.floor) report.floor = k;
      if (k > report.ceiling) report.ceiling = k;
    }
  }

  const auto k1 = ExtendedCurvature::finite(band.kappa1());
  const auto k2 = ExtendedCurvature::finite(band.kappa2());
  report.inside = k1 < report.floor && report.ceiling < k2;
  report.lower_margin = report.floor.is_finite() ? report.floor.value() - band.kappa1()
                        : report.floor.kind() == ExtendedCurvature::Kind::plus_infinity ? HUGE_VAL
                                                                                       : -HUGE_VAL;
  report.upper_margin = report.ceiling.is_finite() ? band.kappa2() - report.ceiling.value()
                        : report.ceiling.kind() == ExtendedCurvature::Kind::minus_infinity ? HUGE_VAL
                                                                                          : -HUGE_VAL;
  return report;
}

}  // namespace bandcurve
