#include "oracles.hpp"

#include <bandcurve/errors.hpp>
#include <bandcurve/fixtures.hpp>
#include <bandcurve/so3.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace bandcurve;

namespace {

constexpr double kPi = std::numbers::pi;

void expect_near(const Mat3& a, const Mat3& b, double tol) { EXPECT_LE((a - b).norm(), tol) << a << "\nvs\n" << b; }

}  // namespace

TEST(SkewGenerator, SparsityPattern) {
  Mat3 expected;
  expected << 0, -1, 0, 1, 0, 0, 0, 0, 0;
  EXPECT_EQ(skew_from_controls(1.0, 0.0).matrix(), expected);
  expected << 0, -1, 0, 1, 0, -1, 0, 1, 0;
  EXPECT_EQ(skew_from_controls(1.0, 1.0).matrix(), expected);
}

TEST(SkewGenerator, RejectsBadControls) {
  EXPECT_THROW(skew_from_controls(0.0, 1.0), DomainError);
  EXPECT_THROW(skew_from_controls(-1.0, 0.0), DomainError);
  EXPECT_THROW(skew_from_controls(1.0, NAN), DomainError);
  EXPECT_THROW(skew_from_controls(INFINITY, 0.0), DomainError);
}

TEST(ExpStep, FullTurnAndZeroTime) {
  expect_near(exp_step(skew_from_controls(2 * kPi, 0.0), 1.0).matrix(), Mat3::Identity(), 1e-14);
  EXPECT_EQ(exp_step(skew_from_controls(1.0, 1.0), 0.0).matrix(), Mat3::Identity());
}

TEST(ExpStep, QuarterTurnMatchesSeries) {
  Mat3 expected;
  expected << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  const Mat3 got = exp_step(skew_from_controls(kPi / 2, 0.0), 1.0).matrix();
  expect_near(got, oracle::exp_series(oracle::lambda(kPi / 2, 0.0)), 1e-14);
  expect_near(got, expected, 1e-15);
}

TEST(ExpStep, AgreesWithPowerSeries) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const double v = uniform(rng, 1e-3, 6.0);
    const double w = uniform(rng, -6.0, 6.0);
    const double theta_max = 10.0;
    const double dt = uniform(rng, 0.0, 1.0) * theta_max / std::hypot(v, w);
    const Mat3 series = oracle::exp_series(dt * oracle::lambda(v, w), 80);
    expect_near(exp_step(skew_from_controls(v, w), dt).matrix(), series, 1e-11);
  }
}

TEST(ExpStep, SmallAngleBranch) {
  for (double dt : {1e-5, 1e-7, 1e-9, 1e-12}) {
    const Mat3 got = exp_step(skew_from_controls(0.3, -0.4), dt).matrix();
    expect_near(got, oracle::exp_series(dt * oracle::lambda(0.3, -0.4)), 1e-16);
  }
}

TEST(ExpStep, GroupLaw) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 300; ++i) {
    const SkewGenerator g = skew_from_controls(uniform(rng, 0.01, 10.0), uniform(rng, -10.0, 10.0));
    const double a = uniform(rng, 0.0, 1.0);
    const double b = uniform(rng, 0.0, 1.0);
    expect_near((exp_step(g, a) * exp_step(g, b)).matrix(), exp_step(g, a + b).matrix(), 1e-12);
  }
}

TEST(ExpStep, Orthogonality) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 300; ++i) {
    const SkewGenerator g = skew_from_controls(uniform(rng, 0.01, 50.0), uniform(rng, -50.0, 50.0));
    const Rotation r = exp_step(g, uniform(rng, 0.0, 2.0));
    EXPECT_LE(r.orthogonality_defect(), 1e-13);
    EXPECT_NEAR(r.matrix().determinant(), 1.0, 1e-12);
  }
}

TEST(ExpStep, RotatesAboutOmega) {
  const SkewGenerator g = skew_from_controls(2.0, 1.5);
  const Vec3 axis = g.angular_velocity().normalized();
  const Rotation r = exp_step(g, 0.7);
  EXPECT_LE((r * axis - axis).norm(), 1e-15);
  const double angle = std::acos(std::clamp((r.matrix().trace() - 1.0) / 2.0, -1.0, 1.0));
  EXPECT_NEAR(angle, 0.7 * g.rate(), 1e-13);
}

TEST(ProjectToRotation, FixedPointsAndScaling) {
  expect_near(project_to_rotation(Mat3::Identity()).matrix(), Mat3::Identity(), 1e-15);
  expect_near(project_to_rotation(1.01 * Mat3::Identity()).matrix(), Mat3::Identity(), 1e-15);
  const Rotation r = Rotation::about_axis(Vec3(1, 2, 3), 0.9);
  expect_near(project_to_rotation(r.matrix()).matrix(), r.matrix(), 1e-15);
}

TEST(ProjectToRotation, PerturbedColumnAgainstGramSchmidt) {
  const Rotation r = Rotation::about_axis(Vec3(-1, 0.5, 2), 2.2);
  std::mt19937_64 rng(14);
  for (int c = 0; c < 3; ++c) {
    Mat3 m = r.matrix();
    m.col(c) += 1e-8 * Vec3(uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1));
    const Mat3 projected = project_to_rotation(m).matrix();
    expect_near(projected, r.matrix(), 1e-7);
    expect_near(projected, oracle::gram_schmidt(m), 1e-7);
    EXPECT_LE(Rotation::from_matrix(projected).orthogonality_defect(), 1e-12);
  }
}

TEST(ProjectToRotation, Errors) {
  Mat3 singular = Mat3::Identity();
  singular(2, 2) = 1e-9;
  EXPECT_THROW(project_to_rotation(singular), DegeneracyError);
  Mat3 far = Mat3::Identity() * 3.0;
  EXPECT_THROW(project_to_rotation(far), DomainError);
}

TEST(Rotation, FromMatrixValidates) {
  Mat3 reflection = Mat3::Identity();
  reflection(0, 0) = -1;
  EXPECT_THROW(Rotation::from_matrix(reflection), DomainError);
  EXPECT_THROW(Rotation::from_matrix(1.001 * Mat3::Identity()), DomainError);
  EXPECT_NO_THROW(Rotation::from_matrix(Rotation::about_axis(Vec3(0, 0, 1), 1.0).matrix()));
}

TEST(FrameColumns, IdentityAndQuarterTurn) {
  const FrameColumns id = frame_columns(Rotation::identity());
  EXPECT_EQ(id.point, Vec3(1, 0, 0));
  EXPECT_EQ(id.tangent, Vec3(0, 1, 0));
  EXPECT_EQ(id.normal, Vec3(0, 0, 1));

  Mat3 rz;
  rz << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  const FrameColumns q = frame_columns(Rotation::about_axis(Vec3(0, 0, 1), kPi / 2));
  EXPECT_LE((q.point - rz.col(0)).norm(), 1e-15);
  EXPECT_LE((q.tangent - rz.col(1)).norm(), 1e-15);
  EXPECT_LE((q.normal - rz.col(2)).norm(), 1e-15);
}

TEST(FrameColumns, NormalIsPointCrossTangent) {
  std::mt19937_64 rng(15);
  for (int i = 0; i < 200; ++i) {
    const Vec3 axis(uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1));
    const FrameColumns f = frame_columns(Rotation::about_axis(axis, uniform(rng, -4, 4)));
    EXPECT_LE((f.normal - f.point.cross(f.tangent)).norm(), 1e-14);
    EXPECT_NEAR(f.point.norm(), 1.0, 1e-15);
    EXPECT_NEAR(f.tangent.norm(), 1.0, 1e-15);
  }
}
