#include <bandcurve/fixtures.hpp>

#include <bandcurve/errors.hpp>

#include <array>
#include <cmath>
#include <numbers>

namespace bandcurve {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t sub_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ (index * 0xD1B54A32D192ED03ULL + 1));
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

namespace fixtures {

namespace {

// 10-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr std::array<double, 5> kNodes = {0.1488743389816312, 0.4333953941292472,
                                          0.6794095682990244, 0.8650633666889845,
                                          0.9739065285171717};
constexpr std::array<double, 5> kWeights = {0.2955242247147529, 0.2692667193099963,
                                            0.2190863625159820, 0.1494513415010596,
                                            0.0666713443086881};

// The plane curve is written as (x, y) = (-u^4, u^3) or (-u^5, u^3), which is
// polynomial in u, so the lifted speed is smooth and quadrature converges fast.
struct PlaneCurve {
  PlaneShape shape;

  Vec3 lift(double u) const {
    const double y = u * u * u;
    const double x = shape == PlaneShape::even_cusp ? -y * u : -y * u * u;
    return Vec3(1.0, x, y).normalized();
  }

  double speed(double u) const {
    const double u2 = u * u;
    const double y = u2 * u;
    const double dy = 3.0 * u2;
    double x;
    double dx;
    if (shape == PlaneShape::even_cusp) {
      x = -u2 * u2;
      dx = -4.0 * y;
    } else {
      x = -u2 * u2 * u;
      dx = -5.0 * u2 * u2;
    }
    const Vec3 q(1.0, x, y);
    const Vec3 dq(0.0, dx, dy);
    const double qq = q.squaredNorm();
    return (dq - (q.dot(dq) / qq) * q).norm() / std::sqrt(qq);
  }

  double arc(double a, double b) const {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < kNodes.size(); ++i) {
      sum += kWeights[i] * (speed(mid - half * kNodes[i]) + speed(mid + half * kNodes[i]));
    }
    return sum * half;
  }

  double arc_composite(double a, double b, int panels) const {
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
      const double lo = a + (b - a) * p / panels;
      const double hi = a + (b - a) * (p + 1) / panels;
      sum += arc(lo, hi);
    }
    return sum;
  }
};

// Smallest u > a with arc(a, u) = ds, by Newton steps kept inside [a, b].
double advance(const PlaneCurve& c, double a, double b, double ds) {
  double lo = a;
  double hi = b;
  double u = a + 0.5 * (b - a);
  const double sa = c.speed(a);
  if (sa > 0.0) u = std::min(b, a + ds / sa);
  for (int it = 0; it < 200; ++it) {
    const double f = c.arc(a, u) - ds;
    if (f > 0.0) hi = u; else lo = u;
    const double sp = c.speed(u);
    double next = sp > 0.0 ? u - f / sp : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - u) <= 1e-17 + 1e-16 * std::abs(u)) return next;
    u = next;
  }
  return u;
}

}  // namespace

ControlPair constant_controls(const CurvatureBand& band, double kappa, double length, std::size_t n) {
  return ControlPair::arc_length(band, h(length), std::vector<double>(n, h_band(kappa, band)));
}

SphericalCurve equator(std::size_t m) {
  std::vector<Vec3> s(m + 1);
  for (std::size_t k = 0; k <= m; ++k) {
    const double phi = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
    s[k] = Vec3(std::cos(phi), std::sin(phi), 0.0);
  }
  s[m] = s[0];
  return SphericalCurve(std::move(s), Parameterization::constant_speed, 2.0 * std::numbers::pi);
}

SphericalCurve circle(double rho, std::size_t m) {
  if (!(rho > 0.0 && rho < std::numbers::pi)) throw RangeError("circle radius must lie in (0, pi)");
  const Vec3 axis(std::cos(rho), 0.0, std::sin(rho));
  const Vec3 start = Vec3::UnitX();
  std::vector<Vec3> s(m + 1);
  for (std::size_t k = 0; k <= m; ++k) {
    const double phi = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
    s[k] = (Eigen::AngleAxisd(phi, axis) * start).normalized();
  }
  s[0] = start;
  s[m] = start;
  return SphericalCurve(std::move(s), Parameterization::constant_speed,
                        2.0 * std::numbers::pi * std::sin(rho));
}

SphericalCurve plane_figure(PlaneShape shape, double half_range, std::size_t m) {
  if (m < 4 || m % 2 != 0) throw DomainError("plane figure needs an even number of segments >= 4");
  if (!(half_range > 0.0)) throw DomainError("plane figure half range must be positive");
  const PlaneCurve c{shape};
  const double u_max = std::cbrt(half_range);
  const double total = c.arc_composite(0.0, u_max, 64);
  const std::size_t half = m / 2;
  const double ds = total / static_cast<double>(half);

  std::vector<double> u(half + 1, 0.0);
  for (std::size_t j = 1; j < half; ++j) u[j] = advance(c, u[j - 1], u_max, ds);
  u[half] = u_max;

  std::vector<Vec3> s(m + 1);
  for (std::size_t j = 0; j <= half; ++j) {
    const Vec3 p = c.lift(u[j]);
    s[half + j] = p;
    // Mirror for negative parameters: y -> -y, and x -> -x for the odd shape.
    s[half - j] = shape == PlaneShape::even_cusp ? Vec3(p.x(), p.y(), -p.z())
                                                 : Vec3(p.x(), -p.y(), -p.z());
  }
  return SphericalCurve(std::move(s), Parameterization::constant_speed, 2.0 * total);
}

ControlPair random_in_band_controls(std::mt19937_64& rng, const CurvatureBand& band, std::size_t n,
                                    std::size_t levels, double central) {
  if (levels == 0 || n == 0) throw DomainError("need at least one level and one cell");
  if (!(central > 0.0 && central < 1.0)) throw DomainError("central fraction must lie in (0, 1)");
  const double length = uniform(rng, std::numbers::pi, 4.0 * std::numbers::pi);
  const double inset = 0.5 * (1.0 - central) * band.width();
  std::vector<double> level_w(levels);
  for (double& w : level_w) {
    w = h_band(uniform(rng, band.kappa1() + inset, band.kappa2() - inset), band);
  }
  std::vector<double> w_hat(n);
  for (std::size_t k = 0; k < n; ++k) w_hat[k] = level_w[levels * k / n];
  return ControlPair::arc_length(band, h(length), std::move(w_hat));
}

}  // namespace fixtures

}  // namespace bandcurve
