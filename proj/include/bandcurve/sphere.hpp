#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <cmath>

namespace bandcurve {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Great-circle distance between two unit vectors. Uses atan2 so that nearly
/// coincident and nearly antipodal pairs keep full relative precision.
inline double surface_distance(const Vec3& a, const Vec3& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

/// Spherical-linear interpolation between unit vectors a and b, lambda in [0,1].
/// Returns a exactly at lambda == 0 and b exactly at lambda == 1.
inline Vec3 slerp(const Vec3& a, const Vec3& b, double lambda) {
  if (lambda <= 0.0) return a;
  if (lambda >= 1.0) return b;
  const double omega = surface_distance(a, b);
  if (omega < 1e-12) {
    return ((1.0 - lambda) * a + lambda * b).normalized();
  }
  const double s = std::sin(omega);
  const Vec3 p = (std::sin((1.0 - lambda) * omega) / s) * a +
                 (std::sin(lambda * omega) / s) * b;
  return p.normalized();
}

}  // namespace bandcurve
