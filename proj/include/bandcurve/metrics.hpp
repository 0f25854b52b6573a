#pragma once

#include <bandcurve/curve.hpp>

#include <cstddef>
#include <string>

namespace bandcurve {

enum class MetricKind { d0, d0bar, d1, d1bar };

std::string to_string(MetricKind kind);

struct MetricValue {
  double value = 0.0;
  MetricKind kind = MetricKind::d0;
  /// Number of comparison intervals K (the curves are compared at K+1 stations).
  std::size_t resolution = 0;
};

/// Sampled positions and velocities (L * unit tangent) of one curve at the
/// stations j/K. Tangents are slerped between the frame tangents of the
/// bracketing samples and re-orthogonalised against the position.
struct TangentBundleSamples {
  std::vector<Vec3> position;
  std::vector<Vec3> velocity;
};

TangentBundleSamples sample_tangent_bundle(const SphericalCurve& curve, std::size_t k);

/// Default comparison resolution: four times the coarser curve's segments.
std::size_t default_resolution(const SphericalCurve& a, const SphericalCurve& b);

/// Passing resolution 0 selects default_resolution. Throws DomainError for
/// a resolution below 8.
MetricValue d0(const SphericalCurve& a, const SphericalCurve& b, std::size_t resolution = 0);
MetricValue d0bar(const SphericalCurve& a, const SphericalCurve& b, std::size_t resolution = 0);
MetricValue d1(const SphericalCurve& a, const SphericalCurve& b, std::size_t resolution = 0);
MetricValue d1bar(const SphericalCurve& a, const SphericalCurve& b, std::size_t resolution = 0);

/// All four metrics from one pass over the stations.
struct MetricSet {
  MetricValue d0;
  MetricValue d0bar;
  MetricValue d1;
  MetricValue d1bar;
};

MetricSet all_metrics(const SphericalCurve& a, const SphericalCurve& b, std::size_t resolution = 0);

}  // namespace bandcurve
