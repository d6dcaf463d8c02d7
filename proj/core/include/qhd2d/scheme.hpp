#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "qhd2d/diagnostics.hpp"
#include "qhd2d/field.hpp"
#include "qhd2d/polar.hpp"
#include "qhd2d/step_params.hpp"

namespace qhd2d {

/// Fractional-step run: collisionless strips of length tau, each followed by the
/// collision update psi -> |psi| exp(i (1 - tau) arg psi) when collisions are on.
struct SchemeConfig {
  double tau = 0.1;
  double t_max = 1.0;
  StepParams step;  // step.dt is the inner time step
  bool collision_on = false;
  /// Steps between diagnostics records inside a strip; 0 disables them.
  int diagnostics_cadence = 0;
  /// Steps between stored trajectory snapshots; 0 stores none.
  int snapshot_every = 0;
  std::optional<double> vacuum_eps;

  /// Throws ConfigError: needs 0 < dt <= tau, tau/dt and t_max/dt integral,
  /// tau < 1 when collisions are on.
  void validate() const;
  int steps_per_strip() const;
  int strip_count() const;
  /// Steps of the trailing partial strip (propagated without a final update).
  int trailing_steps() const;
};

struct StripRecord {
  int k = 0;
  double t = 0.0;
  double mass_pre = 0.0;
  double mass_post = 0.0;
  double j_l2_pre = 0.0;
  double j_l2_post = 0.0;
  double lambda_l2_pre = 0.0;
  double energy_pre = 0.0;
  double energy_post = 0.0;
  double update_grad_residual = 0.0;
};

/// Which one-sided value a snapshot holds at a strip boundary.
enum class Side { interior, before_update, after_update };

struct TrajectorySnapshot {
  double t = 0.0;
  Side side = Side::interior;
  WaveField psi;
};

struct Trajectory {
  double tau = 0.0;
  double snapshot_dt = 0.0;
  bool collisional = false;
  StepParams params;
  std::vector<TrajectorySnapshot> snapshots;
};

struct SchemeResult {
  WaveField psi;
  std::vector<StripRecord> strips;
  std::vector<DiagnosticsRecord> records;
  /// For each record, the N with the record in [N tau, (N+1) tau) or at the left
  /// limit (N+1) tau-.
  std::vector<int> record_strip;
  Trajectory trajectory;
};

/// Throws BlowUpError carrying the failing strip index.
SchemeResult run(const WaveField& psi0, const SchemeConfig& cfg);

struct EnergyInequalityReport {
  bool holds = true;
  /// min over records of bound + slack - E(t); negative means violated.
  double worst_margin = 0.0;
  double worst_t = 0.0;
  std::size_t checked = 0;
};

/// E(t) <= -(tau/2) sum_{k<=N} ||Lambda(k tau-)||^2 + (1 + tau) E0 + slack for every record.
EnergyInequalityReport energy_inequality(const SchemeResult& result, double tau, double e0, double slack);

struct TauStudyRow {
  double tau = 0.0;
  double rho_diff = 0.0;        // ||rho^tau(T) - rho^(tau/2)(T)||_2
  double j_diff = 0.0;          // same for J
  double ratio = 0.0;           // rho_diff of the previous row / this rho_diff (NaN on the first row)
  double momentum_norm = 0.0;   // |P^tau(T)|
  double momentum_norm_half = 0.0;
};

/// Runs the scheme at every tau and tau/2 (taus strictly decreasing) and tabulates the
/// self-convergence differences at the final time. Runs are spread over `jobs` threads.
std::vector<TauStudyRow> tau_convergence_study(const WaveField& psi0, const SchemeConfig& base,
                                               std::span<const double> taus, int jobs = 1);

void write_strip_csv(std::ostream& out, std::span<const StripRecord> strips);
void write_tau_study_csv(std::ostream& out, std::span<const TauStudyRow> rows);

/// Test function b(t) s(x) e: b a smooth bump of half width `half_width` centred at
/// `center`, s = cos or sin of the lattice mode (mx, my), e = (ex, ey) scaled by amplitude.
struct TestFunctionSpec {
  double center = 0.5;
  double half_width = 0.25;
  int mx = 1;
  int my = 0;
  bool sine = false;
  double ex = 1.0;
  double ey = 0.0;
  double amplitude = 1.0;
};

struct WeakFormResidual {
  double continuity = 0.0;
  double momentum = 0.0;
  /// Sum of the magnitudes of the individual terms, for relative comparisons.
  double continuity_scale = 0.0;
  double momentum_scale = 0.0;
};

/// Time quadrature (trapezoid per strip) of the continuity and momentum weak forms over
/// the stored snapshots. The relaxation term -J.zeta enters only for collisional runs.
/// Throws RefusalError when the snapshot spacing exceeds half_width / 8.
WeakFormResidual weak_form_residual(const Trajectory& trajectory, const TestFunctionSpec& spec);

}  // namespace qhd2d
