#include <bandcurve/curve.hpp>

#include <bandcurve/errors.hpp>

#include <algorithm>
#include <cmath>

namespace bandcurve {

namespace {

constexpr double kUnitTolerance = 1e-12;

}  // namespace

std::string to_string(Parameterization p) {
  return p == Parameterization::constant_speed ? "constant_speed" : "raw";
}

Parameterization parameterization_from_string(const std::string& s) {
  if (s == "constant_speed") return Parameterization::constant_speed;
  if (s == "raw") return Parameterization::raw;
  throw DomainError("unknown parameterization tag '" + s + "'");
}

SphericalCurve::SphericalCurve(std::vector<Vec3> samples, Parameterization param, double length)
    : samples_(std::move(samples)), param_(param), length_(length) {
  if (samples_.size() < 2) throw DomainError("a curve needs at least two samples");
  if (!std::isfinite(length_) || length_ < 0.0) throw DomainError("curve length must be finite and >= 0");
  for (std::size_t k = 0; k < samples_.size(); ++k) {
    if (!samples_[k].allFinite() || std::abs(samples_[k].norm() - 1.0) > kUnitTolerance) {
      throw DomainError("sample " + std::to_string(k) + " is not a unit vector");
    }
  }
}

SphericalCurve SphericalCurve::from_points(std::vector<Vec3> points, Parameterization param) {
  for (std::size_t k = 0; k < points.size(); ++k) {
    const double n = points[k].norm();
    if (!std::isfinite(n) || !(n > 0.0)) {
      throw DomainError("point " + std::to_string(k) + " cannot be projected to the sphere");
    }
    points[k] /= n;
  }
  const double length = points.size() >= 2 ? arc_length(points) : 0.0;
  return SphericalCurve(std::move(points), param, length);
}

SphericalCurve SphericalCurve::with_length(double length) const {
  return SphericalCurve(samples_, param_, length);
}

SphericalCurve SphericalCurve::rotated(const Rotation& r) const {
  std::vector<Vec3> out(samples_.size());
  for (std::size_t k = 0; k < samples_.size(); ++k) out[k] = (r * samples_[k]).normalized();
  return SphericalCurve(std::move(out), param_, length_);
}

double arc_length(std::span<const Vec3> samples) {
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
    total += surface_distance(samples[k], samples[k + 1]);
  }
  return total;
}

double arc_length(const SphericalCurve& curve) { return arc_length(curve.samples()); }

double max_gap(const SphericalCurve& curve) {
  double g = 0.0;
  for (std::size_t k = 0; k < curve.segments(); ++k) {
    g = std::max(g, surface_distance(curve.sample(k), curve.sample(k + 1)));
  }
  return g;
}

SphericalCurve reparameterize_constant_speed(const SphericalCurve& curve) {
  const std::size_t m = curve.segments();
  std::vector<double> cumulative(m + 1, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    const double gap = surface_distance(curve.sample(k), curve.sample(k + 1));
    if (!(gap > 0.0)) throw DegeneracyError("zero-length gap at segment " + std::to_string(k), k);
    cumulative[k + 1] = cumulative[k] + gap;
  }
  const double total = cumulative[m];
  std::vector<Vec3> out(m + 1);
  out.front() = curve.samples().front();
  out.back() = curve.samples().back();
  std::size_t seg = 0;
  for (std::size_t j = 1; j < m; ++j) {
    const double target = total * static_cast<double>(j) / static_cast<double>(m);
    while (seg + 1 < m && cumulative[seg + 1] <= target) ++seg;
    const double lambda = (target - cumulative[seg]) / (cumulative[seg + 1] - cumulative[seg]);
    out[j] = slerp(curve.sample(seg), curve.sample(seg + 1), lambda);
  }
  return SphericalCurve(std::move(out), Parameterization::constant_speed, total);
}

Vec3 eval(const SphericalCurve& curve, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw RangeError("curve parameter must lie in [0, 1]");
  const std::size_t m = curve.segments();
  const double u = t * static_cast<double>(m);
  const std::size_t k = std::min(static_cast<std::size_t>(u), m - 1);
  return slerp(curve.sample(k), curve.sample(k + 1), u - static_cast<double>(k));
}

}  // namespace bandcurve
