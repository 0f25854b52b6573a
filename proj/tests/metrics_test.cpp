#include <bandcurve/errors.hpp>
#include <bandcurve/fixtures.hpp>
#include <bandcurve/frenet.hpp>
#include <bandcurve/metrics.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

using namespace bandcurve;

namespace {

constexpr double kPi = std::numbers::pi;

SphericalCurve antipodal(const SphericalCurve& c) {
  std::vector<Vec3> p;
  for (const Vec3& x : c.samples()) p.push_back(-x);
  return SphericalCurve(std::move(p), c.param(), c.length());
}

SphericalCurve random_curve(std::mt19937_64& rng, std::size_t n) {
  const CurvatureBand band(-0.5, 1.5);
  const Rotation p0 = Rotation::about_axis(Vec3(uniform(rng, -1, 1), uniform(rng, -1, 1), 1), uniform(rng, -0.5, 0.5));
  return curve_from_path(integrate_frame(p0, fixtures::random_in_band_controls(rng, band, n)));
}

}  // namespace

TEST(Metrics, IdenticalCurves) {
  const SphericalCurve c = fixtures::circle(0.6, 256);
  const MetricSet m = all_metrics(c, c);
  EXPECT_EQ(m.d0.value, 0.0);
  EXPECT_EQ(m.d0bar.value, 0.0);
  EXPECT_EQ(m.d1.value, 0.0);
  EXPECT_EQ(m.d1bar.value, 0.0);
  EXPECT_EQ(m.d0.resolution, 1024u);
  EXPECT_EQ(m.d1bar.kind, MetricKind::d1bar);
  EXPECT_EQ(to_string(MetricKind::d0bar), "d0bar");
}

TEST(Metrics, AntipodalCurves) {
  const SphericalCurve c = fixtures::circle(0.6, 256);
  EXPECT_NEAR(d0(c, antipodal(c)).value, kPi, 1e-12);
  EXPECT_NEAR(d0bar(c, antipodal(c)).value, 2.0, 1e-12);
}

TEST(Metrics, RotatedEquator) {
  const double theta = 0.1;
  const SphericalCurve e = fixtures::equator(1024);
  const SphericalCurve r = e.rotated(Rotation::about_axis(Vec3(1, 0, 0), theta));
  const std::size_t k = 4096;
  EXPECT_NEAR(d0(e, r, k).value, theta, 1e-6);

  // Station-by-station closed form: position angle 2 asin(|sin phi| sin(theta/2))
  // and velocity chord 2 pi * 2 sin(theta/2) |cos phi|.
  double want_d1 = 0.0;
  double want_d1bar = 0.0;
  for (std::size_t j = 0; j <= k; ++j) {
    const double phi = 2 * kPi * static_cast<double>(j) / static_cast<double>(k);
    const double pos = 2 * std::asin(std::abs(std::sin(phi)) * std::sin(theta / 2));
    const double vel = 2 * kPi * 2 * std::sin(theta / 2) * std::abs(std::cos(phi));
    want_d1 = std::max(want_d1, std::hypot(pos, vel));
    want_d1bar = std::max(want_d1bar, pos + vel);
  }
  EXPECT_NEAR(d1(e, r, k).value, want_d1, 1e-6);
  EXPECT_NEAR(d1bar(e, r, k).value, want_d1bar, 1e-6);
}

TEST(Metrics, VelocityOnlyDifference) {
  // Same points, different speed: the position term vanishes.
  const SphericalCurve e = fixtures::equator(512);
  for (double eps : {1e-3, 0.05, 0.4}) {
    const SphericalCurve f = e.with_length(e.length() + eps);
    const double v = d1(e, f).value;
    EXPECT_GE(v, eps - 1e-12);
    EXPECT_LE(v, eps + 1e-6);
    EXPECT_EQ(d0(e, f).value, 0.0);
  }
}

TEST(Metrics, ResolutionBelowEightIsRejected) {
  const SphericalCurve e = fixtures::equator(64);
  EXPECT_THROW(d0(e, e, 7), DomainError);
  EXPECT_THROW(all_metrics(e, e, 4), DomainError);
  EXPECT_NO_THROW(d1(e, e, 8));
  EXPECT_EQ(default_resolution(fixtures::equator(64), fixtures::equator(100)), 256u);
}

TEST(Metrics, AxiomsOnRandomTriples) {
  std::mt19937_64 rng(61);
  const double tol = 1e-9;
  for (int trial = 0; trial < 100; ++trial) {
    const SphericalCurve a = random_curve(rng, 128);
    const SphericalCurve b = random_curve(rng, 128);
    const SphericalCurve c = random_curve(rng, 128);
    const MetricSet ab = all_metrics(a, b, 512);
    const MetricSet ba = all_metrics(b, a, 512);
    const MetricSet bc = all_metrics(b, c, 512);
    const MetricSet ac = all_metrics(a, c, 512);
    const auto values = [](const MetricSet& m) {
      return std::array<double, 4>{m.d0.value, m.d0bar.value, m.d1.value, m.d1bar.value};
    };
    for (std::size_t i = 0; i < 4; ++i) {
      EXPECT_NEAR(values(ab)[i], values(ba)[i], tol);
      EXPECT_LE(values(ac)[i], values(ab)[i] + values(bc)[i] + tol);
    }
    EXPECT_LE(ab.d0bar.value, ab.d0.value + tol);
    EXPECT_LE(ab.d0.value, kPi / 2 * ab.d0bar.value + tol);
    EXPECT_LE(ab.d0.value, ab.d1.value + tol);
    EXPECT_LE(ab.d1.value, ab.d1bar.value + tol);
  }
}

TEST(Metrics, ChordArcBoundsPerStation) {
  std::mt19937_64 rng(62);
  const TangentBundleSamples a = sample_tangent_bundle(random_curve(rng, 256), 1024);
  const TangentBundleSamples b = sample_tangent_bundle(random_curve(rng, 256), 1024);
  ASSERT_EQ(a.position.size(), 1025u);
  for (std::size_t j = 0; j < a.position.size(); ++j) {
    const double arc = surface_distance(a.position[j], b.position[j]);
    const double chord = (a.position[j] - b.position[j]).norm();
    EXPECT_LE(chord, arc + 1e-15);
    EXPECT_LE(arc, kPi / 2 * chord + 1e-15);
  }
}

TEST(Metrics, RotationInvariant) {
  std::mt19937_64 rng(63);
  const SphericalCurve a = random_curve(rng, 256);
  const SphericalCurve b = random_curve(rng, 256);
  const MetricSet m = all_metrics(a, b);
  for (int i = 0; i < 5; ++i) {
    const Rotation r = Rotation::about_axis(Vec3(uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1)),
                                            uniform(rng, -3, 3));
    const MetricSet mr = all_metrics(a.rotated(r), b.rotated(r));
    EXPECT_NEAR(mr.d0.value, m.d0.value, 1e-10);
    EXPECT_NEAR(mr.d0bar.value, m.d0bar.value, 1e-10);
    EXPECT_NEAR(mr.d1.value, m.d1.value, 1e-10);
    EXPECT_NEAR(mr.d1bar.value, m.d1bar.value, 1e-10);
  }
}

TEST(Metrics, MonotoneInResolution) {
  // Smooth fixtures: two circles of nearby radius.
  const SphericalCurve a = fixtures::circle(0.7, 1024);
  const SphericalCurve b = fixtures::circle(0.72, 1024);
  MetricSet prev = all_metrics(a, b, 64);
  for (std::size_t k = 128; k <= 8192; k *= 2) {
    const MetricSet m = all_metrics(a, b, k);
    EXPECT_GE(m.d0.value, prev.d0.value);
    EXPECT_GE(m.d1.value, prev.d1.value);
    EXPECT_GE(m.d1bar.value, prev.d1bar.value);
    if (k >= 4096) {
      EXPECT_NEAR(m.d0.value, prev.d0.value, 1e-6);
      EXPECT_NEAR(m.d1.value, prev.d1.value, 1e-6);
      EXPECT_NEAR(m.d1bar.value, prev.d1bar.value, 1e-6);
    }
    prev = m;
  }
}

TEST(TangentBundle, VelocityIsLengthTimesTangent) {
  const SphericalCurve e = fixtures::equator(256);
  const TangentBundleSamples s = sample_tangent_bundle(e, 100);
  for (std::size_t j = 0; j <= 100; ++j) {
    const double phi = 2 * kPi * static_cast<double>(j) / 100.0;
    EXPECT_LE((s.position[j] - Vec3(std::cos(phi), std::sin(phi), 0)).norm(), 1e-12);
    EXPECT_LE((s.velocity[j] - 2 * kPi * Vec3(-std::sin(phi), std::cos(phi), 0)).norm(), 1e-9);
  }
}
