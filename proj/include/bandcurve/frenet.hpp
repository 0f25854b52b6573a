#pragma once

#include <bandcurve/control_maps.hpp>
#include <bandcurve/curve.hpp>
#include <bandcurve/so3.hpp>

#include <optional>
#include <vector>

namespace bandcurve {

/// Frames on the uniform grid t_k = k/N, k = 0..N. `controls` is set when
/// the path came out of integrate_frame.
struct FrenetPath {
  std::vector<double> times;
  std::vector<Rotation> frames;
  std::optional<ControlPair> controls;

  std::size_t steps() const { return frames.size() - 1; }
};

/// Steps Phi' = Phi Lambda exactly on each cell: frames[k+1] = frames[k] *
/// exp_step(Lambda_k, 1/N). Every 1024 steps a frame whose orthogonality
/// defect exceeds 1e-13 is projected back onto SO(3).
FrenetPath integrate_frame(const Rotation& initial, const ControlPair& c);

/// First columns of the frames. The length is sum(v_k)/N when controls are
/// present and arc_length of the samples otherwise. The curve is tagged
/// constant_speed only for arc-length controls.
SphericalCurve curve_from_path(const FrenetPath& path);

/// Largest orthogonality defect over all frames of the path.
double max_orthogonality_defect(const FrenetPath& path);

/// Frames (gamma, t, n) from samples. Tangents come from central differences
/// (second-order one-sided at the two ends), projected orthogonal to gamma.
/// Throws DegeneracyError with the segment index when a difference quotient
/// between consecutive samples is shorter than 1e-9, and DomainError on
/// fewer than three samples.
FrenetPath frame_from_curve(const SphericalCurve& curve);

/// Arc-length controls of a sampled curve: v_hat = h(L) with L the arc
/// length corrected for the curvature of each cell, and w_hat_k =
/// h_band(kappa_k) with kappa_k from cell_curvatures. Throws BandViolation
/// naming the first cell whose curvature is not inside the band by at least
/// 1e-9.
ControlPair controls_from_curve(const SphericalCurve& curve, const CurvatureBand& band);

}  // namespace bandcurve
