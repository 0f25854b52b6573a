#pragma once

#include <bandcurve/sphere.hpp>

namespace bandcurve {

class SkewGenerator;

/// A point of SO3(R) stored as an explicit 3x3 matrix. Used as a Frenet frame
/// with columns (curve point, unit tangent, unit normal).
class Rotation {
 public:
  Rotation() : m_(Mat3::Identity()) {}

  static Rotation identity() { return Rotation(); }

  /// Accepts m only if ||m^T m - I||_F <= tolerance and det(m) > 0.
  /// Throws DomainError otherwise.
  static Rotation from_matrix(const Mat3& m, double tolerance = 1e-12);

  /// Right-handed rotation by `angle` about `axis` (need not be unit length).
  static Rotation about_axis(const Vec3& axis, double angle);

  const Mat3& matrix() const { return m_; }

  Vec3 point() const { return m_.col(0); }
  Vec3 tangent() const { return m_.col(1); }
  Vec3 normal() const { return m_.col(2); }

  Rotation operator*(const Rotation& other) const { return Rotation(m_ * other.m_); }
  Vec3 operator*(const Vec3& x) const { return m_ * x; }
  Rotation transpose() const { return Rotation(m_.transpose()); }

  /// ||R^T R - I||_F, the drift away from the group.
  double orthogonality_defect() const;

 private:
  explicit Rotation(const Mat3& m) : m_(m) {}

  Mat3 m_;

  friend Rotation exp_step(const SkewGenerator& g, double dt);
  friend Rotation project_to_rotation(const Mat3& m);
};

/// Element of so3 with the Frenet sparsity pattern
///
///   [ 0  -v   0 ]
///   [ v   0  -w ]
///   [ 0   w   0 ]
///
/// v is the speed and w = v * (geodesic curvature). As an angular velocity
/// vector it is omega = (w, 0, v).
class SkewGenerator {
 public:
  double v() const { return v_; }
  double w() const { return w_; }

  Mat3 matrix() const;
  Vec3 angular_velocity() const { return Vec3(w_, 0.0, v_); }
  double rate() const { return std::hypot(v_, w_); }

 private:
  SkewGenerator(double v, double w) : v_(v), w_(w) {}

  double v_;
  double w_;

  friend SkewGenerator skew_from_controls(double v, double w);
};

/// Throws DomainError unless v > 0 and both inputs are finite.
SkewGenerator skew_from_controls(double v, double w);

/// exp(dt * g) in closed (Rodrigues) form. A short Taylor series replaces the
/// trigonometric coefficients when dt*|omega| < 1e-6.
Rotation exp_step(const SkewGenerator& g, double dt);

/// Nearest rotation in Frobenius norm (orthogonal polar factor).
/// Throws DegeneracyError if a singular value of m is below 1e-6 and
/// DomainError if m is farther than 0.5 from the result.
Rotation project_to_rotation(const Mat3& m);

struct FrameColumns {
  Vec3 point;
  Vec3 tangent;
  Vec3 normal;
};

FrameColumns frame_columns(const Rotation& r);

}  // namespace bandcurve
