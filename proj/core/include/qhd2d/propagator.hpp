#pragma once

#include <functional>
#include <vector>

#include "qhd2d/diagnostics.hpp"
#include "qhd2d/field.hpp"
#include "qhd2d/step_params.hpp"

namespace qhd2d {

/// Free Schrodinger flow over dt: psi_hat(k) *= exp(-i hbar |k|^2 dt / 2).
WaveField kinetic_step(const WaveField& psi, double dt);

/// Pointwise phase rotation exp(-i dt (|psi|^(p-1) + V) / hbar) psi; exact for this
/// substep since |psi| is invariant. Either term may be switched off in params.
WaveField potential_step(const WaveField& psi, const RealField& v, const StepParams& params, double dt);

/// Potential for the current density under params (zero field when the potential is off).
RealField potential_for(const WaveField& psi, const StepParams& params);

/// Strang step: half kinetic, Poisson solve on the current density and full
/// potential step, half kinetic.
WaveField strang_step(const WaveField& psi, const StepParams& params);

struct PropagateOptions {
  double t0 = 0.0;
  /// Steps between diagnostics records; 0 disables them. Records are taken at
  /// t0 and every `cadence` steps, plus at the final time.
  int diagnostics_cadence = 0;
  /// Called after every step with the absolute time and the new state.
  std::function<void(double, const WaveField&)> observer;
  /// Reference for the blow-up guard; defaults to max|psi0|.
  double reference_max = 0.0;
};

struct PropagationResult {
  WaveField psi;
  std::vector<DiagnosticsRecord> records;
  int steps = 0;
};

/// Repeated strang_step over t_span (must be a non-negative integer multiple of dt).
/// Throws BlowUpError on non-finite values or runaway amplitude.
PropagationResult propagate(const WaveField& psi0, double t_span, const StepParams& params,
                            const PropagateOptions& options = {});

/// Number of steps dt that make up t_span; throws ConfigError if not integral.
int step_count(double t_span, double dt);

}  // namespace qhd2d
