#pragma once

#include <bandcurve/so3.hpp>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace bandcurve {

enum class Parameterization { constant_speed, raw };

std::string to_string(Parameterization p);
/// Throws DomainError for unknown tags.
Parameterization parameterization_from_string(const std::string& s);

/// M+1 unit vectors sampling a curve on the unit sphere at parameters k/M,
/// plus its total length. Samples must have norm within 1e-12 of one.
class SphericalCurve {
 public:
  /// Throws DomainError on fewer than two samples, non-unit samples or a
  /// negative or non-finite length.
  SphericalCurve(std::vector<Vec3> samples, Parameterization param, double length);

  /// Normalises the samples and measures the length with arc_length.
  static SphericalCurve from_points(std::vector<Vec3> points, Parameterization param);

  const std::vector<Vec3>& samples() const { return samples_; }
  const Vec3& sample(std::size_t k) const { return samples_[k]; }
  /// Number of segments M (one less than the sample count).
  std::size_t segments() const { return samples_.size() - 1; }
  Parameterization param() const { return param_; }
  bool constant_speed() const { return param_ == Parameterization::constant_speed; }
  double length() const { return length_; }

  SphericalCurve with_length(double length) const;
  /// Applies R to every sample.
  SphericalCurve rotated(const Rotation& r) const;

 private:
  std::vector<Vec3> samples_;
  Parameterization param_;
  double length_;
};

/// Sum of geodesic gaps between consecutive samples.
double arc_length(std::span<const Vec3> samples);
double arc_length(const SphericalCurve& curve);

/// Largest geodesic gap between consecutive samples.
double max_gap(const SphericalCurve& curve);

/// Resamples at M+1 equal arc-length stations. Each output sample is the
/// slerp of the bracketing input pair at the matching fraction of its gap.
/// Throws DegeneracyError (with the segment index) on a zero-length gap.
SphericalCurve reparameterize_constant_speed(const SphericalCurve& curve);

/// Point at parameter t in [0, 1] by slerp between the bracketing samples.
/// Throws RangeError outside [0, 1].
Vec3 eval(const SphericalCurve& curve, double t);

}  // namespace bandcurve
