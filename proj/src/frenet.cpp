#include <bandcurve/frenet.hpp>

#include <bandcurve/curvature.hpp>
#include <bandcurve/errors.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace bandcurve {

namespace {

constexpr std::size_t kHygieneInterval = 1024;
constexpr double kHygieneThreshold = 1e-13;
constexpr double kMinQuotient = 1e-9;
constexpr double kBandGuard = 1e-9;

std::vector<double> uniform_times(std::size_t n) {
  std::vector<double> t(n + 1);
  for (std::size_t k = 0; k <= n; ++k) t[k] = static_cast<double>(k) / static_cast<double>(n);
  t[n] = 1.0;
  return t;
}

// Arc length of a cell whose endpoints sit at geodesic distance `gap` on a
// circle of geodesic curvature kappa.
double cell_arc(double gap, double kappa) {
  const double s = std::sin(arccot(kappa));
  const double x = std::min(1.0, std::sin(0.5 * gap) / s);
  return 2.0 * s * std::asin(x);
}

}  // namespace

FrenetPath integrate_frame(const Rotation& initial, const ControlPair& c) {
  const std::size_t n = c.grid_size();
  const GeometricControls vw = controls_to_vw(c);
  const double dt = 1.0 / static_cast<double>(n);

  FrenetPath path;
  path.times = uniform_times(n);
  path.frames.reserve(n + 1);
  path.frames.push_back(initial);

  Rotation step;
  double last_v = std::nan("");
  double last_w = std::nan("");
  for (std::size_t k = 0; k < n; ++k) {
    if (vw.v[k] != last_v || vw.w[k] != last_w) {
      step = exp_step(skew_from_controls(vw.v[k], vw.w[k]), dt);
      last_v = vw.v[k];
      last_w = vw.w[k];
    }
    Rotation next = path.frames.back() * step;
    if ((k + 1) % kHygieneInterval == 0 && next.orthogonality_defect() > kHygieneThreshold) {
      next = project_to_rotation(next.matrix());
    }
    path.frames.push_back(next);
  }
  path.controls = c;
  return path;
}

SphericalCurve curve_from_path(const FrenetPath& path) {
  std::vector<Vec3> samples(path.frames.size());
  for (std::size_t k = 0; k < samples.size(); ++k) samples[k] = path.frames[k].point().normalized();
  if (!path.controls) {
    const double length = arc_length(samples);
    return SphericalCurve(std::move(samples), Parameterization::raw, length);
  }
  const GeometricControls vw = controls_to_vw(*path.controls);
  double length = 0.0;
  for (double v : vw.v) length += v;
  length /= static_cast<double>(vw.v.size());
  const Parameterization param = path.controls->is_arc_length() ? Parameterization::constant_speed
                                                                 : Parameterization::raw;
  return SphericalCurve(std::move(samples), param, length);
}

double max_orthogonality_defect(const FrenetPath& path) {
  double worst = 0.0;
  for (const Rotation& r : path.frames) worst = std::max(worst, r.orthogonality_defect());
  return worst;
}

FrenetPath frame_from_curve(const SphericalCurve& curve) {
  const std::size_t m = curve.segments();
  if (m < 2) throw DomainError("frame extraction needs at least three samples");
  const auto& p = curve.samples();
  const double inv_h = static_cast<double>(m);

  for (std::size_t k = 0; k < m; ++k) {
    if ((p[k + 1] - p[k]).norm() * inv_h < kMinQuotient) {
      throw DegeneracyError("stationary point between samples " + std::to_string(k) + " and " +
                                std::to_string(k + 1),
                            k);
    }
  }

  FrenetPath path;
  path.times = uniform_times(m);
  path.frames.reserve(m + 1);
  for (std::size_t k = 0; k <= m; ++k) {
    Vec3 d;
    if (k == 0) {
      d = -3.0 * p[0] + 4.0 * p[1] - p[2];
    } else if (k == m) {
      d = 3.0 * p[m] - 4.0 * p[m - 1] + p[m - 2];
    } else {
      d = p[k + 1] - p[k - 1];
    }
    d -= d.dot(p[k]) * p[k];
    const double len = d.norm();
    if (len * 0.5 * inv_h < kMinQuotient) {
      throw DegeneracyError("tangent vanishes at sample " + std::to_string(k), k);
    }
    const Vec3 t = d / len;
    Mat3 frame;
    frame.col(0) = p[k];
    frame.col(1) = t;
    frame.col(2) = p[k].cross(t);
    path.frames.push_back(project_to_rotation(frame));
  }
  return path;
}

ControlPair controls_from_curve(const SphericalCurve& curve, const CurvatureBand& band) {
  const std::vector<double> kappa = cell_curvatures(curve);
  std::vector<double> w_hat(kappa.size());
  double length = 0.0;
  for (std::size_t k = 0; k < kappa.size(); ++k) {
    if (!(kappa[k] - band.kappa1() > kBandGuard) || !(band.kappa2() - kappa[k] > kBandGuard)) {
      throw BandViolation("curvature " + std::to_string(kappa[k]) + " at cell " + std::to_string(k) +
                              " is not inside the open band",
                          k);
    }
    w_hat[k] = h_band(kappa[k], band);
    length += cell_arc(surface_distance(curve.sample(k), curve.sample(k + 1)), kappa[k]);
  }
  return ControlPair::arc_length(band, h(length), std::move(w_hat));
}

}  // namespace bandcurve
