#pragma once

// Independent reference computations used by the tests. None of these call
// into the library under test.

#include <Eigen/Core>

#include <cmath>
#include <functional>

namespace oracle {

using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

// exp(a) by a truncated power series.
inline Mat3 exp_series(const Mat3& a, int terms = 50) {
  Mat3 sum = Mat3::Identity();
  Mat3 term = Mat3::Identity();
  for (int k = 1; k < terms; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

// exp(a) for larger |a| by scaling and squaring on top of the series.
inline Mat3 exp_scaled(const Mat3& a) {
  int squarings = 0;
  double norm = a.norm();
  while (norm > 0.5) {
    norm *= 0.5;
    ++squarings;
  }
  Mat3 r = exp_series(a / std::ldexp(1.0, squarings));
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

inline Mat3 lambda(double v, double w) {
  Mat3 m = Mat3::Zero();
  m(0, 1) = -v;
  m(1, 0) = v;
  m(1, 2) = -w;
  m(2, 1) = w;
  return m;
}

// Orthonormalise the columns left to right.
inline Mat3 gram_schmidt(const Mat3& m) {
  Mat3 q;
  for (int c = 0; c < 3; ++c) {
    Vec3 x = m.col(c);
    for (int p = 0; p < c; ++p) x -= q.col(p).dot(x) * q.col(p);
    q.col(c) = x.normalized();
  }
  return q;
}

// Root of a strictly increasing f on (lo, hi).
inline double bisect(const std::function<double(double)>& f, double target, double lo, double hi,
                     int iterations = 200) {
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Point at arc length s on the circle of spherical radius rho through e_x
// with centre cos(rho) e_x + sin(rho) e_z, moving towards +y.
inline Vec3 circle_point(double rho, double s) {
  const Vec3 c(std::cos(rho), 0.0, std::sin(rho));
  const Vec3 u = Vec3(1.0, 0.0, 0.0) - std::cos(rho) * c;  // radial, length sin(rho)
  const Vec3 e1 = u.normalized();
  const Vec3 e2 = c.cross(e1);
  const double phi = s / std::sin(rho);
  return std::cos(rho) * c + std::sin(rho) * (std::cos(phi) * e1 + std::sin(phi) * e2);
}

}  // namespace oracle
