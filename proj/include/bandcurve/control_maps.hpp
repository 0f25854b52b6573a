#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace bandcurve {

/// arccot on the branch with values in (0, pi), continuous and strictly
/// decreasing on the whole real line.
double arccot(double k);

/// The open curvature interval (kappa1, kappa2) together with the tangent
/// circle radii rho_i = arccot(kappa_i). rho2 < rho1.
class CurvatureBand {
 public:
  /// Throws DomainError unless both ends are finite and kappa1 < kappa2.
  CurvatureBand(double kappa1, double kappa2);

  double kappa1() const { return kappa1_; }
  double kappa2() const { return kappa2_; }
  double rho1() const { return rho1_; }
  double rho2() const { return rho2_; }
  double width() const { return kappa2_ - kappa1_; }
  double midpoint() const { return 0.5 * (kappa1_ + kappa2_); }

  /// Strict membership in the open interval.
  bool contains(double kappa) const { return kappa1_ < kappa && kappa < kappa2_; }

  bool operator==(const CurvatureBand&) const = default;

 private:
  double kappa1_;
  double kappa2_;
  double rho1_;
  double rho2_;
};

/// h(t) = t - 1/t, a diffeomorphism (0, inf) -> R.
double h(double t);
/// Inverse of h: (a + sqrt(a^2 + 4)) / 2, evaluated without cancellation for a < 0.
double h_inv(double a);

/// h_band(t) = 1/(kappa1 - t) + 1/(kappa2 - t), a diffeomorphism band -> R.
/// Rejects t within 1e-12 of either end.
double h_band(double t, const CurvatureBand& band);
/// Unique t in the open band with h_band(t) = a.
double h_band_inv(double a, const CurvatureBand& band);

/// Piecewise-constant controls (v_hat, w_hat) on a uniform grid of N cells
/// over [0, 1]. v_hat is either one constant (arc-length-proportional curves)
/// or one value per cell.
class ControlPair {
 public:
  static ControlPair arc_length(const CurvatureBand& band, double v_hat, std::vector<double> w_hat);
  static ControlPair general(const CurvatureBand& band, std::vector<double> v_hat,
                             std::vector<double> w_hat);

  std::size_t grid_size() const { return w_hat_.size(); }
  bool is_arc_length() const { return v_hat_.size() == 1; }
  const CurvatureBand& band() const { return band_; }

  double v_hat(std::size_t cell) const { return is_arc_length() ? v_hat_.front() : v_hat_[cell]; }
  double w_hat(std::size_t cell) const { return w_hat_[cell]; }

  /// The single constant when is_arc_length(), empty otherwise.
  std::optional<double> v_hat_constant() const;
  /// Stored v_hat samples: one value in arc-length mode, N otherwise.
  std::span<const double> v_hat_values() const { return v_hat_; }
  std::span<const double> w_hat_values() const { return w_hat_; }

 private:
  ControlPair(const CurvatureBand& band, std::vector<double> v_hat, std::vector<double> w_hat);

  CurvatureBand band_;
  std::vector<double> v_hat_;
  std::vector<double> w_hat_;
};

/// Per-cell speed and turning rate (v, w) with v > 0 and w/v inside the band.
struct GeometricControls {
  std::vector<double> v;
  std::vector<double> w;
};

GeometricControls controls_to_vw(const ControlPair& c);

/// Left inverse of controls_to_vw. Throws BandViolation naming the first cell
/// whose ratio w/v is not strictly inside the band, DomainError on v <= 0.
ControlPair vw_to_controls(std::span<const double> v, std::span<const double> w,
                           const CurvatureBand& band);

/// max(sup |v_hat|, sup |w_hat|).
double banach_norm(const ControlPair& c);

/// Banach norm of the cell-wise difference. Both pairs must share grid size.
double banach_distance(const ControlPair& a, const ControlPair& b);

}  // namespace bandcurve
