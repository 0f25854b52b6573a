#pragma once

#include <bandcurve/control_maps.hpp>
#include <bandcurve/curve.hpp>
#include <bandcurve/frenet.hpp>

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace bandcurve {

/// Discrete geodesic curvature at the interior stations s_k = k L / M.
struct CurvatureProfile {
  std::vector<double> stations;
  std::vector<double> kappa;
  double ess_inf = 0.0;
  double ess_sup = 0.0;
};

/// kappa_k = <(t_{k+1} - t_{k-1}) / (2 ds), n_k> with frames from
/// frame_from_curve, for k = 1..M-1. Needs M >= 8.
CurvatureProfile curvature_profile(const SphericalCurve& curve);

/// Signed curvature of the circle through each interior triple of samples,
/// indexed by the middle sample (entries 0 and M are left at zero).
std::vector<double> vertex_curvatures(const SphericalCurve& curve);

/// One curvature per cell [k, k+1]. Averages the two vertex circles, except
/// next to a vertex whose circle straddles a jump in curvature, where the
/// cell takes the value from its other vertex. Exact on piecewise-circular
/// curves sampled with a node at every junction. Needs M >= 4.
std::vector<double> cell_curvatures(const SphericalCurve& curve);

/// A curvature value that may be +inf or -inf. The infinite states follow
/// the conventions inf(empty) = +inf and sup(empty) = -inf and never take
/// part in arithmetic.
class ExtendedCurvature {
 public:
  enum class Kind { minus_infinity, finite, plus_infinity };

  static ExtendedCurvature finite(double v);
  static ExtendedCurvature plus_infinity() { return ExtendedCurvature(Kind::plus_infinity, 0.0); }
  static ExtendedCurvature minus_infinity() { return ExtendedCurvature(Kind::minus_infinity, 0.0); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }
  /// Throws DomainError for the infinite states.
  double value() const;
  /// Lossy conversion for reporting (maps the infinite states to +-HUGE_VAL).
  double to_double() const;
  std::string to_string() const;

  std::partial_ordering operator<=>(const ExtendedCurvature& other) const;
  bool operator==(const ExtendedCurvature& other) const = default;

 private:
  ExtendedCurvature(Kind kind, double v) : kind_(kind), value_(v) {}

  Kind kind_;
  double value_;
};

/// lower <= upper + slack, ordering the infinite states conventionally.
bool ordered_within(const ExtendedCurvature& lower, const ExtendedCurvature& upper, double slack);

enum class Side { left, right };

/// Smallest radius tried by the upper/lower bisections; the largest is pi minus this.
inline constexpr double kMinProbeRadius = 1e-3;

/// Tangent-circle probes on one curve. Frames are extracted once, and t0 is
/// snapped to the nearest sample.
class TangentCircleProbe {
 public:
  explicit TangentCircleProbe(const SphericalCurve& curve);

  const SphericalCurve& curve() const { return curve_; }
  const FrenetPath& frames() const { return frames_; }

  /// Index of the sample nearest to t0. Throws RangeError outside [0, 1].
  std::size_t station(double t0) const;

  /// Circle of radius r centred at cos(r) gamma(t0) + sin(r) n(t0). Left:
  /// every sample with |t - t0| <= window has d(gamma(t), a) >= r - tol.
  /// Right: d(gamma(t), a) <= r + tol. Throws RangeError unless r is in
  /// (0, pi), window > 0 and tol >= 0.
  bool test(double t0, double r, Side side, double window, double tol) const;

  /// Infimum of cot(r) over radii whose circle is tangent from the left.
  /// +inf when even the smallest probe radius fails; -inf when the largest
  /// probe radius passes.
  ExtendedCurvature upper(double t0, double window, double tol) const;
  /// Supremum of cot(r) over radii whose circle is tangent from the right.
  /// -inf when even the largest probe radius fails; +inf when the smallest
  /// probe radius passes.
  ExtendedCurvature lower(double t0, double window, double tol) const;

 private:
  void check_probe(double window, double tol) const;

  SphericalCurve curve_;
  FrenetPath frames_;
};

bool tangent_circle_test(const SphericalCurve& curve, double t0, double r, Side side, double window,
                         double tol);
ExtendedCurvature upper_curvature(const SphericalCurve& curve, double t0, double window, double tol);
ExtendedCurvature lower_curvature(const SphericalCurve& curve, double t0, double window, double tol);

/// A quarter of min(2 sin rho1, 2 sin rho2), converted from arc length to t.
double default_window(const SphericalCurve& curve, const CurvatureBand& band);
/// 10 * (largest geodesic gap)^2.
double default_tol(const SphericalCurve& curve);

struct BandReport {
  explicit BandReport(const CurvatureBand& b) : band(b) {}

  CurvatureBand band;
  double window = 0.0;
  double tol = 0.0;
  std::vector<double> t0;
  std::vector<ExtendedCurvature> lower;
  std::vector<ExtendedCurvature> upper;
  ExtendedCurvature inf_lower = ExtendedCurvature::plus_infinity();
  ExtendedCurvature sup_upper = ExtendedCurvature::minus_infinity();
  /// Smallest and largest of all kappa- and kappa+ values. The tangency
  /// tolerance pushes kappa- above kappa+ on smooth curves, so the band test
  /// uses these instead of inf kappa- and sup kappa+ alone.
  ExtendedCurvature floor = ExtendedCurvature::plus_infinity();
  ExtendedCurvature ceiling = ExtendedCurvature::minus_infinity();
  bool inside = false;
  /// floor - kappa1 and kappa2 - ceiling; -HUGE_VAL when the bound is
  /// infinite on the losing side.
  double lower_margin = 0.0;
  double upper_margin = 0.0;
  double margin() const { return lower_margin < upper_margin ? lower_margin : upper_margin; }
};

/// Evaluates kappa- and kappa+ at `stations` evenly spaced samples (ends
/// included) and checks kappa1 < floor and ceiling < kappa2.
BandReport band_report(const SphericalCurve& curve, const CurvatureBand& band,
                       std::optional<double> window = std::nullopt,
                       std::optional<double> tol = std::nullopt, std::size_t stations = 64);

}  // namespace bandcurve
