#include "oracles.hpp"

#include <bandcurve/control_maps.hpp>
#include <bandcurve/errors.hpp>
#include <bandcurve/fixtures.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <random>

using namespace bandcurve;

namespace {

// h_band on its own, for the bisection oracle.
double h_band_ref(double t, double k1, double k2) { return 1.0 / (k1 - t) + 1.0 / (k2 - t); }

double h_band_inv_oracle(double a, double k1, double k2) {
  return oracle::bisect([&](double t) { return h_band_ref(t, k1, k2); }, a, k1, k2);
}

}  // namespace

TEST(CurvatureBand, RadiiAndValidation) {
  const CurvatureBand b(-0.5, 1.5);
  EXPECT_NEAR(b.rho1(), std::numbers::pi - std::atan(2.0), 1e-15);
  EXPECT_NEAR(b.rho2(), std::atan(1.0 / 1.5), 1e-15);
  EXPECT_LT(b.rho2(), b.rho1());
  EXPECT_THROW(CurvatureBand(1.0, 1.0), DomainError);
  EXPECT_THROW(CurvatureBand(2.0, 1.0), DomainError);
  EXPECT_THROW(CurvatureBand(-INFINITY, 1.0), DomainError);
  EXPECT_NEAR(arccot(0.0), std::numbers::pi / 2, 1e-15);
  EXPECT_NEAR(arccot(-1.0), 3 * std::numbers::pi / 4, 1e-15);
}

TEST(H, Values) {
  EXPECT_EQ(h(1.0), 0.0);
  EXPECT_EQ(h(2.0), 1.5);
  EXPECT_THROW(h(0.0), DomainError);
  EXPECT_THROW(h(-1.0), DomainError);
  EXPECT_EQ(h_inv(0.0), 1.0);
  EXPECT_EQ(h_inv(1.5), 2.0);
}

TEST(H, InverseOfLargeNegative) {
  const double got = h_inv(-1e6);
  const double want = oracle::bisect([](double t) { return t - 1.0 / t; }, -1e6, 1e-9, 10.0);
  EXPECT_GT(got, 0.0);
  EXPECT_NEAR(got, want, 1e-15);
  EXPECT_NEAR(got, 1e-6, 1e-12);
}

TEST(H, RoundTrips) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 10000; ++i) {
    const double t = std::exp(uniform(rng, std::log(1e-6), std::log(1e6)));
    EXPECT_NEAR(h_inv(h(t)), t, 1e-10 * t);
    const double a = uniform(rng, -1e6, 1e6);
    EXPECT_NEAR(h(h_inv(a)), a, 1e-9);
  }
}

TEST(HBand, Values) {
  const CurvatureBand b02(0.0, 2.0);
  EXPECT_EQ(h_band(1.0, b02), 0.0);
  EXPECT_NEAR(h_band(0.5, b02), -4.0 / 3.0, 1e-15);
  EXPECT_THROW(h_band(0.0, b02), DomainError);
  EXPECT_THROW(h_band(2.0, b02), DomainError);
  EXPECT_THROW(h_band(3.0, b02), DomainError);
  EXPECT_THROW(h_band(1e-13, b02), DomainError);
  const CurvatureBand b(-0.5, 1.5);
  EXPECT_EQ(h_band(b.midpoint(), b), 0.0);
}

TEST(HBand, StrictlyIncreasing) {
  const CurvatureBand b(-0.5, 1.5);
  double prev = -INFINITY;
  for (int i = 1; i < 1000; ++i) {
    const double t = b.kappa1() + b.width() * i / 1000.0;
    const double y = h_band(t, b);
    EXPECT_GT(y, prev);
    prev = y;
  }
}

TEST(HBandInv, Values) {
  const CurvatureBand b02(0.0, 2.0);
  EXPECT_EQ(h_band_inv(0.0, b02), 1.0);
  EXPECT_NEAR(h_band_inv(-4.0 / 3.0, b02), 0.5, 1e-15);
  EXPECT_NEAR(h_band_inv(-4.0 / 3.0, b02), h_band_inv_oracle(-4.0 / 3.0, 0.0, 2.0), 1e-12);
  const CurvatureBand pm1(-1.0, 1.0);
  const double t = h_band_inv(1e8, pm1);
  EXPECT_LT(t, 1.0);
  EXPECT_NEAR(t, 1.0, 1e-7);
  EXPECT_NEAR(t, h_band_inv_oracle(1e8, -1.0, 1.0), 1e-12);
}

TEST(HBandInv, MatchesBisectionOracle) {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 2000; ++i) {
    const double k1 = uniform(rng, -5.0, 5.0);
    const CurvatureBand b(k1, k1 + uniform(rng, 0.01, 10.0));
    const double a = std::sinh(uniform(rng, -20.0, 20.0));
    EXPECT_NEAR(h_band_inv(a, b), h_band_inv_oracle(a, b.kappa1(), b.kappa2()), 1e-10) << a;
  }
}

TEST(HBandInv, StrictlyInsideForEveryFiniteInput) {
  const CurvatureBand b(-0.5, 1.5);
  for (double a : {-1e300, -1e20, -1e12, -1.0, 0.0, 1.0, 1e12, 1e20, 1e300, -DBL_MAX, DBL_MAX}) {
    const double t = h_band_inv(a, b);
    EXPECT_GT(t, b.kappa1()) << a;
    EXPECT_LT(t, b.kappa2()) << a;
  }
  EXPECT_THROW(h_band_inv(NAN, b), DomainError);
}

TEST(HBandInv, RoundTripsIncludingNearPoles) {
  std::mt19937_64 rng(23);
  const CurvatureBand b(-0.5, 1.5);
  for (int i = 0; i < 10000; ++i) {
    // Half the points crowd towards the poles.
    const double u = uniform(rng, 0.0, 1.0);
    const double gap = std::pow(10.0, uniform(rng, -9.0, -1.0));
    double t = i % 2 == 0 ? b.kappa1() + b.width() * u : (i % 4 == 1 ? b.kappa1() + gap : b.kappa2() - gap);
    t = std::clamp(t, b.kappa1() + 1e-9, b.kappa2() - 1e-9);
    EXPECT_NEAR(h_band_inv(h_band(t, b), b), t, 1e-9);
    const double a = std::sinh(uniform(rng, -15.0, 15.0));
    EXPECT_NEAR(h_band(h_band_inv(a, b), b), a, 1e-9 * std::max(1.0, std::abs(a) * std::abs(a)));
  }
}

TEST(ControlPair, ModesAndValidation) {
  const CurvatureBand b(-1.0, 1.0);
  const ControlPair c = ControlPair::arc_length(b, 0.5, {0.0, 1.0});
  EXPECT_TRUE(c.is_arc_length());
  EXPECT_EQ(c.grid_size(), 2u);
  EXPECT_EQ(c.v_hat(1), 0.5);
  EXPECT_EQ(c.v_hat_constant(), 0.5);
  const ControlPair g = ControlPair::general(b, {0.1, 0.2}, {0.0, 0.0});
  EXPECT_FALSE(g.is_arc_length());
  EXPECT_FALSE(g.v_hat_constant().has_value());
  EXPECT_THROW(ControlPair::arc_length(b, NAN, {0.0}), DomainError);
  EXPECT_THROW(ControlPair::arc_length(b, 0.0, {}), DomainError);
  EXPECT_THROW(ControlPair::general(b, {0.0}, {0.0, 0.0}), DomainError);
  EXPECT_THROW(ControlPair::general(b, {0.0}, {INFINITY}), DomainError);
}

TEST(ControlsToVw, Examples) {
  const GeometricControls a = controls_to_vw(ControlPair::arc_length(CurvatureBand(-1, 1), 0.0, {0.0, 0.0}));
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_EQ(a.v[k], 1.0);
    EXPECT_EQ(a.w[k], 0.0);
  }
  const GeometricControls b = controls_to_vw(ControlPair::arc_length(CurvatureBand(0, 2), 1.5, {0.0}));
  EXPECT_EQ(b.v[0], 2.0);
  EXPECT_EQ(b.w[0], 2.0);
}

TEST(ControlsToVw, RatiosInsideBand) {
  std::mt19937_64 rng(24);
  for (int i = 0; i < 10000; ++i) {
    const double k1 = uniform(rng, -3.0, 3.0);
    const CurvatureBand b(k1, k1 + uniform(rng, 0.1, 4.0));
    const ControlPair c = ControlPair::general(b, {std::sinh(uniform(rng, -10, 10))}, {std::sinh(uniform(rng, -30, 30))});
    const GeometricControls g = controls_to_vw(c);
    EXPECT_GT(g.v[0], 0.0);
    const double kappa = h_band_inv(c.w_hat(0), b);
    EXPECT_TRUE(b.contains(kappa));
  }
}

TEST(VwToControls, InverseAndErrors) {
  const CurvatureBand b(-1.0, 1.0);
  const std::vector<double> v{1.0, 1.0};
  const std::vector<double> w{0.0, 0.0};
  const ControlPair c = vw_to_controls(v, w, b);
  EXPECT_EQ(c.v_hat(0), 0.0);
  EXPECT_EQ(c.w_hat(1), 0.0);
  const std::vector<double> at_edge{1.0, 1.0};
  try {
    vw_to_controls(v, at_edge, b);
    FAIL() << "expected a band violation";
  } catch (const BandViolation& e) {
    EXPECT_EQ(e.index(), 0u);
  }
  const std::vector<double> bad_speed{1.0, 0.0};
  EXPECT_THROW(vw_to_controls(bad_speed, w, b), DomainError);
}

TEST(VwToControls, MutualInverses) {
  std::mt19937_64 rng(25);
  const CurvatureBand b(-0.5, 1.5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 64;
    std::vector<double> v(n);
    std::vector<double> w(n);
    for (std::size_t k = 0; k < n; ++k) {
      v[k] = uniform(rng, 0.1, 20.0);
      w[k] = v[k] * uniform(rng, b.kappa1() + 0.1 * b.width(), b.kappa2() - 0.1 * b.width());
    }
    const ControlPair c = vw_to_controls(v, w, b);
    const GeometricControls back = controls_to_vw(c);
    for (std::size_t k = 0; k < n; ++k) {
      EXPECT_NEAR(back.v[k], v[k], 1e-10 * std::max(1.0, v[k]));
      EXPECT_NEAR(back.w[k], w[k], 1e-10 * std::max(1.0, v[k]));
    }
    const ControlPair again = vw_to_controls(back.v, back.w, b);
    EXPECT_LE(banach_distance(again, c), 1e-10);
  }
}

TEST(BanachNorm, Values) {
  const CurvatureBand b(-1.0, 1.0);
  EXPECT_EQ(banach_norm(ControlPair::arc_length(b, 0.0, {0.0, 0.0})), 0.0);
  EXPECT_EQ(banach_norm(ControlPair::arc_length(b, 3.0, {1.0, -2.0})), 3.0);
  EXPECT_EQ(banach_norm(ControlPair::general(b, {0.5, -4.0}, {1.0, -2.0})), 4.0);
  EXPECT_GT(banach_norm(ControlPair::general(b, {0.0, 0.0}, {0.0, 1e-300})), 0.0);
  EXPECT_THROW(banach_distance(ControlPair::arc_length(b, 0.0, {0.0}), ControlPair::arc_length(b, 0.0, {0.0, 0.0})),
               DomainError);
}

TEST(BanachNorm, NormAxioms) {
  std::mt19937_64 rng(26);
  const CurvatureBand b(-1.0, 1.0);
  auto random_pair = [&](std::size_t n) {
    std::vector<double> v(n);
    std::vector<double> w(n);
    for (std::size_t k = 0; k < n; ++k) {
      v[k] = uniform(rng, -5, 5);
      w[k] = uniform(rng, -5, 5);
    }
    return std::pair{v, w};
  };
  for (int trial = 0; trial < 200; ++trial) {
    auto [v1, w1] = random_pair(16);
    auto [v2, w2] = random_pair(16);
    std::vector<double> vs(16), ws(16), vl(16), wl(16);
    const double lambda = uniform(rng, -3, 3);
    for (std::size_t k = 0; k < 16; ++k) {
      vs[k] = v1[k] + v2[k];
      ws[k] = w1[k] + w2[k];
      vl[k] = lambda * v1[k];
      wl[k] = lambda * w1[k];
    }
    const double n1 = banach_norm(ControlPair::general(b, v1, w1));
    const double n2 = banach_norm(ControlPair::general(b, v2, w2));
    EXPECT_LE(banach_norm(ControlPair::general(b, vs, ws)), n1 + n2 + 1e-12);
    EXPECT_NEAR(banach_norm(ControlPair::general(b, vl, wl)), std::abs(lambda) * n1, 1e-12);
  }
}
