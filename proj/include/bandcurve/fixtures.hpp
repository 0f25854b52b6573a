#pragma once

#include <bandcurve/control_maps.hpp>
#include <bandcurve/curve.hpp>

#include <cstddef>
#include <cstdint>
#include <random>

namespace bandcurve {

/// splitmix64 finaliser; used to derive independent sub-seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of trial `index` under `master`.
std::uint64_t sub_seed(std::uint64_t master, std::uint64_t index);

/// Uniform double in [0, 1) from the top 53 bits of one draw. Unlike
/// std::uniform_real_distribution this is identical on every platform.
double uniform01(std::mt19937_64& rng);
double uniform(std::mt19937_64& rng, double lo, double hi);

namespace fixtures {

/// Arc-length controls for a curve of constant curvature kappa and length L.
ControlPair constant_controls(const CurvatureBand& band, double kappa, double length, std::size_t n);

/// The equator z = 0 traversed once from (1,0,0) towards (0,1,0).
SphericalCurve equator(std::size_t m);

/// Closed circle of spherical radius rho starting at (1,0,0) with tangent
/// (0,1,0) and centre cos(rho) e_x + sin(rho) e_z; curvature cot(rho).
SphericalCurve circle(double rho, std::size_t m);

/// Shape of a plane curve (x(y), y) lifted to the sphere.
enum class PlaneShape {
  /// x = -|y|^(4/3): curvature blows up on one side at y = 0.
  even_cusp,
  /// x = -sign(y) |y|^(5/3): an inflection with unbounded curvature.
  odd_inflection,
};

/// Gnomonic lift (x, y) -> (1, x, y)/|(1, x, y)| of the plane curve over
/// y in [-half_range, half_range], sampled at m+1 points of equal arc length
/// with the origin at sample m/2. m must be even.
SphericalCurve plane_figure(PlaneShape shape, double half_range, std::size_t m);

/// Arc-length controls with L uniform in [pi, 4 pi] and w_hat a staircase of
/// `levels` equal steps whose curvatures are uniform in the central
/// `central` fraction of the band.
ControlPair random_in_band_controls(std::mt19937_64& rng, const CurvatureBand& band, std::size_t n,
                                    std::size_t levels = 16, double central = 0.9);

}  // namespace fixtures

}  // namespace bandcurve
