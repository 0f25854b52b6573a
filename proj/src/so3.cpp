#include <bandcurve/so3.hpp>

#include <bandcurve/errors.hpp>

#include <Eigen/SVD>

#include <cmath>

namespace bandcurve {

Rotation Rotation::from_matrix(const Mat3& m, double tolerance) {
  if (!m.allFinite()) throw DomainError("rotation matrix has non-finite entries");
  const Rotation r(m);
  if (r.orthogonality_defect() > tolerance) {
    throw DomainError("matrix is not orthogonal within tolerance");
  }
  if (m.determinant() <= 0.0) throw DomainError("matrix has non-positive determinant");
  return r;
}

Rotation Rotation::about_axis(const Vec3& axis, double angle) {
  const double n = axis.norm();
  if (!(n > 0.0) || !std::isfinite(angle)) throw DomainError("invalid rotation axis or angle");
  return Rotation(Eigen::AngleAxisd(angle, axis / n).toRotationMatrix());
}

double Rotation::orthogonality_defect() const {
  return (m_.transpose() * m_ - Mat3::Identity()).norm();
}

Mat3 SkewGenerator::matrix() const {
  Mat3 m = Mat3::Zero();
  m(0, 1) = -v_;
  m(1, 0) = v_;
  m(1, 2) = -w_;
  m(2, 1) = w_;
  return m;
}

SkewGenerator skew_from_controls(double v, double w) {
  if (!std::isfinite(v) || !std::isfinite(w)) throw DomainError("controls must be finite");
  if (!(v > 0.0)) throw DomainError("speed control v must be positive");
  return SkewGenerator(v, w);
}

Rotation exp_step(const SkewGenerator& g, double dt) {
  if (!std::isfinite(dt) || dt < 0.0) throw DomainError("time step must be finite and non-negative");
  const Mat3 k = dt * g.matrix();
  const double theta = dt * g.rate();
  const Mat3 k2 = k * k;
  double a;  // sin(theta) / theta
  double b;  // (1 - cos(theta)) / theta^2
  if (theta < 1e-6) {
    const double t2 = theta * theta;
    a = 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
    b = 0.5 - t2 / 24.0 + t2 * t2 / 720.0;
  } else {
    const double half = std::sin(0.5 * theta);
    a = std::sin(theta) / theta;
    b = 2.0 * half * half / (theta * theta);
  }
  return Rotation(Mat3::Identity() + a * k + b * k2);
}

Rotation project_to_rotation(const Mat3& m) {
  if (!m.allFinite()) throw DomainError("matrix has non-finite entries");
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.singularValues().minCoeff() < 1e-6) {
    throw DegeneracyError("matrix is too close to singular for polar projection");
  }
  const Mat3& u = svd.matrixU();
  const Mat3& v = svd.matrixV();
  Mat3 d = Mat3::Identity();
  d(2, 2) = (u * v.transpose()).determinant() < 0.0 ? -1.0 : 1.0;
  const Mat3 r = u * d * v.transpose();
  if ((r - m).norm() > 0.5) throw DomainError("matrix is too far from SO(3) to project");
  return Rotation(r);
}

FrameColumns frame_columns(const Rotation& r) {
  return {r.point(), r.tangent(), r.normal()};
}

}  // namespace bandcurve
