#include <bandcurve/metrics.hpp>

#include <bandcurve/errors.hpp>
#include <bandcurve/frenet.hpp>

#include <algorithm>
#include <cmath>

namespace bandcurve {

namespace {

constexpr std::size_t kMinResolution = 8;

std::size_t resolve(const SphericalCurve& a, const SphericalCurve& b, std::size_t resolution) {
  const std::size_t k = resolution == 0 ? default_resolution(a, b) : resolution;
  if (k < kMinResolution) throw DomainError("comparison resolution must be at least 8");
  return k;
}

}  // namespace

std::string to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::d0:
      return "d0";
    case MetricKind::d0bar:
      return "d0bar";
    case MetricKind::d1:
      return "d1";
    case MetricKind::d1bar:
      return "d1bar";
  }
  return "d0";
}

std::size_t default_resolution(const SphericalCurve& a, const SphericalCurve& b) {
  return 4 * std::min(a.segments(), b.segments());
}

TangentBundleSamples sample_tangent_bundle(const SphericalCurve& curve, std::size_t k) {
  const FrenetPath path = frame_from_curve(curve);
  const std::size_t m = curve.segments();
  TangentBundleSamples out;
  out.position.resize(k + 1);
  out.velocity.resize(k + 1);
  for (std::size_t j = 0; j <= k; ++j) {
    const double t = j == k ? 1.0 : static_cast<double>(j) / static_cast<double>(k);
    const double u = t * static_cast<double>(m);
    const std::size_t i = std::min(static_cast<std::size_t>(u), m - 1);
    const double lambda = u - static_cast<double>(i);
    const Vec3 p = slerp(curve.sample(i), curve.sample(i + 1), lambda);
    Vec3 tan = slerp(path.frames[i].tangent(), path.frames[i + 1].tangent(), lambda);
    tan -= tan.dot(p) * p;
    out.position[j] = p;
    out.velocity[j] = curve.length() * tan.normalized();
  }
  return out;
}

MetricSet all_metrics(const SphericalCurve& a, const SphericalCurve& b, std::size_t resolution) {
  const std::size_t k = resolve(a, b, resolution);
  const TangentBundleSamples sa = sample_tangent_bundle(a, k);
  const TangentBundleSamples sb = sample_tangent_bundle(b, k);
  MetricSet out{{0.0, MetricKind::d0, k}, {0.0, MetricKind::d0bar, k}, {0.0, MetricKind::d1, k},
                {0.0, MetricKind::d1bar, k}};
  for (std::size_t j = 0; j <= k; ++j) {
    const double surface = surface_distance(sa.position[j], sb.position[j]);
    const double chord = (sa.position[j] - sb.position[j]).norm();
    const double dv = (sa.velocity[j] - sb.velocity[j]).norm();
    out.d0.value = std::max(out.d0.value, surface);
    out.d0bar.value = std::max(out.d0bar.value, chord);
    out.d1.value = std::max(out.d1.value, std::hypot(surface, dv));
    out.d1bar.value = std::max(out.d1bar.value, surface + dv);
  }
  return out;
}

MetricValue d0(const SphericalCurve& a, const SphericalCurve& b, std::size_t resolution) {
  const std::size_t k = resolve(a, b, resolution);
  MetricValue out{0.0, MetricKind::d0, k};
  for (std::size_t j = 0; j <= k; ++j) {
    const double t = j == k ? 1.0 : static_cast<double>(j) / static_cast<double>(k);
    out.value = std::max(out.value, surface_distance(eval(a, t), eval(b, t)));
  }
  return out;
}

MetricValue d0bar(const SphericalCurve& a, const SphericalCurve& b, std::size_t resolution) {
  const std::size_t k = resolve(a, b, resolution);
  MetricValue out{0.0, MetricKind::d0bar, k};
  for (std::size_t j = 0; j <= k; ++j) {
    const double t = j == k ? 1.0 : static_cast<double>(j) / static_cast<double>(k);
    out.value = std::max(out.value, (eval(a, t) - eval(b, t)).norm());
  }
  return out;
}

MetricValue d1(const SphericalCurve& a, const SphericalCurve& b, std::size_t resolution) {
  return all_metrics(a, b, resolution).d1;
}

MetricValue d1bar(const SphericalCurve& a, const SphericalCurve& b, std::size_t resolution) {
  return all_metrics(a, b, resolution).d1bar;
}

}  // namespace bandcurve
