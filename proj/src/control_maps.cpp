#include <bandcurve/control_maps.hpp>

#include <bandcurve/errors.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace bandcurve {

namespace {

constexpr double kPoleGuard = 1e-12;

void require_finite(std::span<const double> xs, const char* what) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i])) {
      throw DomainError(std::string(what) + " has a non-finite sample at index " + std::to_string(i));
    }
  }
}

}  // namespace

double arccot(double k) {
  if (std::isnan(k)) throw DomainError("arccot of NaN");
  return 0.5 * std::numbers::pi - std::atan(k);
}

CurvatureBand::CurvatureBand(double kappa1, double kappa2)
    : kappa1_(kappa1), kappa2_(kappa2), rho1_(0.0), rho2_(0.0) {
  if (!std::isfinite(kappa1) || !std::isfinite(kappa2)) {
    throw DomainError("curvature band ends must be finite");
  }
  if (!(kappa1 < kappa2)) throw DomainError("curvature band requires kappa1 < kappa2");
  rho1_ = arccot(kappa1);
  rho2_ = arccot(kappa2);
}

double h(double t) {
  if (!std::isfinite(t) || !(t > 0.0)) throw DomainError("h is defined on (0, inf) only");
  return t - 1.0 / t;
}

double h_inv(double a) {
  if (!std::isfinite(a)) throw DomainError("h_inv needs a finite argument");
  const double root = std::hypot(a, 2.0);
  // For a < 0 the textbook form (a + root)/2 cancels; use 2/(root - a) instead.
  return a >= 0.0 ? 0.5 * (a + root) : 2.0 / (root - a);
}

double h_band(double t, const CurvatureBand& band) {
  if (!std::isfinite(t)) throw DomainError("h_band needs a finite argument");
  if (!(t - band.kappa1() > kPoleGuard) || !(band.kappa2() - t > kPoleGuard)) {
    throw DomainError("h_band argument " + std::to_string(t) + " is not inside the open band");
  }
  return 1.0 / (band.kappa1() - t) + 1.0 / (band.kappa2() - t);
}

double h_band_inv(double a, const CurvatureBand& band) {
  if (!std::isfinite(a)) throw DomainError("h_band_inv needs a finite argument");
  const double mid = band.midpoint();
  if (a == 0.0) return mid;
  // With u = t - mid and c the half width, h_band(t) = 2u / (c^2 - u^2), so
  // a u^2 + 2u - a c^2 = 0. The in-band root, written without cancellation:
  const double c = 0.5 * band.width();
  const double u = a * c * c / (1.0 + std::hypot(1.0, a * c));
  double t = mid + u;
  // For |a| near overflow the root rounds onto an end; keep the interval open.
  if (t >= band.kappa2()) t = std::nextafter(band.kappa2(), band.kappa1());
  if (t <= band.kappa1()) t = std::nextafter(band.kappa1(), band.kappa2());
  return t;
}

ControlPair::ControlPair(const CurvatureBand& band, std::vector<double> v_hat,
                         std::vector<double> w_hat)
    : band_(band), v_hat_(std::move(v_hat)), w_hat_(std::move(w_hat)) {
  if (w_hat_.empty()) throw DomainError("control grid must have at least one cell");
  require_finite(v_hat_, "v_hat");
  require_finite(w_hat_, "w_hat");
}

ControlPair ControlPair::arc_length(const CurvatureBand& band, double v_hat,
                                   std::vector<double> w_hat) {
  return ControlPair(band, std::vector<double>{v_hat}, std::move(w_hat));
}

ControlPair ControlPair::general(const CurvatureBand& band, std::vector<double> v_hat,
                                 std::vector<double> w_hat) {
  if (v_hat.size() != w_hat.size()) {
    throw DomainError("v_hat and w_hat must have the same number of cells");
  }
  return ControlPair(band, std::move(v_hat), std::move(w_hat));
}

std::optional<double> ControlPair::v_hat_constant() const {
  if (is_arc_length()) return v_hat_.front();
  return std::nullopt;
}

GeometricControls controls_to_vw(const ControlPair& c) {
  const std::size_t n = c.grid_size();
  GeometricControls out;
  out.v.resize(n);
  out.w.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.v[k] = h_inv(c.v_hat(k));
    out.w[k] = out.v[k] * h_band_inv(c.w_hat(k), c.band());
  }
  return out;
}

ControlPair vw_to_controls(std::span<const double> v, std::span<const double> w,
                           const CurvatureBand& band) {
  if (v.size() != w.size()) throw DomainError("v and w must have the same number of cells");
  std::vector<double> v_hat(v.size());
  std::vector<double> w_hat(w.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!std::isfinite(v[k]) || !(v[k] > 0.0)) {
      throw DomainError("speed must be positive at cell " + std::to_string(k));
    }
    const double kappa = w[k] / v[k];
    if (!std::isfinite(kappa) || !(kappa - band.kappa1() > kPoleGuard) ||
        !(band.kappa2() - kappa > kPoleGuard)) {
      throw BandViolation("curvature " + std::to_string(kappa) + " at cell " + std::to_string(k) +
                              " is not inside the open band",
                          k);
    }
    v_hat[k] = h(v[k]);
    w_hat[k] = h_band(kappa, band);
  }
  return ControlPair::general(band, std::move(v_hat), std::move(w_hat));
}

double banach_norm(const ControlPair& c) {
  double sup = 0.0;
  for (double x : c.v_hat_values()) sup = std::max(sup, std::abs(x));
  for (double x : c.w_hat_values()) sup = std::max(sup, std::abs(x));
  return sup;
}

double banach_distance(const ControlPair& a, const ControlPair& b) {
  if (a.grid_size() != b.grid_size()) throw DomainError("control grids differ in size");
  double sup = 0.0;
  for (std::size_t k = 0; k < a.grid_size(); ++k) {
    sup = std::max(sup, std::abs(a.v_hat(k) - b.v_hat(k)));
    sup = std::max(sup, std::abs(a.w_hat(k) - b.w_hat(k)));
  }
  return sup;
}

}  // namespace bandcurve
