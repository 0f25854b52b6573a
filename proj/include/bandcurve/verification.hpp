#pragma once

#include <bandcurve/control_maps.hpp>
#include <bandcurve/curvature.hpp>
#include <bandcurve/curve.hpp>
#include <bandcurve/frenet.hpp>
#include <bandcurve/so3.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace bandcurve {

/// Outcome of one named check. A report depends only on its seed and
/// parameters.
struct TrialReport {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double worst_margin = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> parameters;
  /// Sub-seed of every randomized trial, in trial order, for isolated replay.
  std::vector<std::uint64_t> sub_seeds;
  /// One line per failed trial, naming the sub-seed or index that failed.
  std::vector<std::string> messages;
  /// Optional numeric table (column names and rows).
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  bool passed() const { return failures == 0; }
  void add_parameter(std::string key, std::string value);
  void add_parameter(std::string key, double value);
  /// Folds another report into this one: trials and failures add up, the
  /// worst margins combine by min and messages are appended.
  void absorb(const TrialReport& other);
};

/// Slack added to every inequality of a check: 1e-8 + 10 gap^2.
double discretization_slack(const SphericalCurve& curve);

/// The three pairs of tangent-circle inequalities at arc length s0, checked
/// on the sample grid. d(v1, gamma) <= rho1 and d(v2, gamma) >= rho2 within
/// arc distance delta of s0; <t, v1> >= 0 and <t, v2> <= 0 on [s0, s0 +
/// delta_bar], with both signs reversed on [s0 - delta_bar, s0].
/// worst_margin is the smallest normalised margin: distance margins divided
/// by (s - s0)^2 / 2, inner-product margins by |s - s0|. Throws
/// PreconditionError unless the band report says the curve is inside.
TrialReport check_sandwich(const SphericalCurve& curve, const CurvatureBand& band, double s0);

/// Same check with frames already extracted and the band precondition
/// already established by the caller.
TrialReport sandwich_inequalities(const SphericalCurve& curve, const FrenetPath& frames,
                                  const CurvatureBand& band, double s0);

/// Both inclusions between the control-defined space and the tangent-circle
/// space on one curve. Throws PreconditionError when the curve's cell
/// curvatures are not inside the open band.
TrialReport check_space_equality(const SphericalCurve& curve, const CurvatureBand& band);

enum class Perturbation {
  /// alpha_k = rotation of alpha by angle 1/k about a fixed axis.
  rotation_shrink,
  /// v_hat + 0.002/k and w_hat + 0.002 bump/k with bump = sin(2 pi t).
  control_shrink,
  /// Curvature oscillating with amplitude k/4 around the base. Leaves the
  /// band for some k and is rejected before anything is measured.
  curvature_blowup,
};

std::string to_string(Perturbation p);
Perturbation perturbation_from_string(const std::string& s);

struct SequenceSpec {
  ControlPair base_controls;
  Perturbation perturbation = Perturbation::rotation_shrink;
  std::size_t count = 64;
  Rotation initial = Rotation::identity();
};

/// One measured sequence: d0, d1 and length gap for k = 1..count.
struct SequenceTable {
  std::vector<double> d0;
  std::vector<double> d1;
  std::vector<double> length_gap;
};

/// Builds alpha and alpha_1..alpha_count. Throws BandViolation with the
/// offending k when a member would leave the band.
SequenceTable measure_sequence(const SequenceSpec& spec);

/// Least-squares fit log(gap_k) = log C + p log k over the k with gap_k > 0.
struct DecayFit {
  double constant = 0.0;
  double exponent = 0.0;
  std::size_t points = 0;
};
DecayFit fit_decay(const std::vector<double>& gap);

/// Table (k, d0, |L_k - L|). Passes when the final gap is below 1e-3 and the
/// fitted exponent is at most -0.8 with C > 0; a sequence whose gaps are all
/// zero passes trivially. A band violation is recorded as a failure naming k.
TrialReport run_length_convergence(const SequenceSpec& spec);
TrialReport length_convergence_report(const SequenceTable& table);

/// For each eps: delta(eps) = smallest d0 among the k with d1 >= eps (or the
/// largest d0 seen when there is none), tabulated as (eps, delta). Fails
/// when some k after the first one with d0 < 1e-3 has d1 >= 1e-2.
TrialReport run_topology_equivalence(const SequenceSpec& spec, const std::vector<double>& eps_grid);
TrialReport topology_report(const SequenceTable& table, const std::vector<double>& eps_grid);

/// Default eps grid for the delta(eps) table.
std::vector<double> default_eps_grid();

/// integrate -> curve -> controls_from_curve -> integrate. Fails when d0
/// between the two curves exceeds 1e-5 or the Banach distance between the
/// control pairs exceeds 1e-3. Throws PreconditionError for controls that
/// are not in arc-length mode.
TrialReport check_roundtrip(const ControlPair& c, const Rotation& initial);

/// Runs body(i) for i in [0, count) on up to `jobs` threads. Exceptions are
/// rethrown after all workers stop (the one with the lowest index wins).
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& body);

struct SuiteConfig {
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  double kappa1 = -0.5;
  double kappa2 = 1.5;
  std::size_t sandwich_curves = 200;
  std::size_t sandwich_points = 8;
  std::size_t sandwich_grid = 1024;
  std::size_t space_seeds = 100;
  std::size_t space_grid = 1024;
  std::size_t roundtrip_seeds = 50;
  std::size_t roundtrip_grid = 4096;
  std::size_t sequence_seeds = 20;
  std::size_t sequence_count = 64;
  std::size_t sequence_grid = 1024;
  /// Subset of {sandwich, space, length, topology, roundtrip}; empty runs all.
  std::vector<std::string> checks;
};

std::vector<std::string> suite_check_names();

/// Runs the selected checks. The reports are ordered by check name and
/// within a check by trial index, whatever the number of jobs.
std::vector<TrialReport> run_suite(const SuiteConfig& config);

}  // namespace bandcurve
