#include "qhd2d/propagator.hpp"

#include <cmath>
#include <string>

#include "qhd2d/poisson.hpp"
#include "qhd2d/spectral.hpp"

namespace qhd2d {

namespace {

// exp(-i hbar |k|^2 dt / 2) for every mode.
std::vector<cplx> kinetic_multiplier(const Grid& g, double hbar, double dt) {
  std::vector<cplx> mult(g.size());
  for (int j = 0; j < g.ny; ++j) {
    const double ky2 = g.ky[static_cast<std::size_t>(j)] * g.ky[static_cast<std::size_t>(j)];
    for (int i = 0; i < g.nx; ++i) {
      const double k2 = g.kx[static_cast<std::size_t>(i)] * g.kx[static_cast<std::size_t>(i)] + ky2;
      mult[g.index(i, j)] = std::polar(1.0, -0.5 * hbar * k2 * dt);
    }
  }
  return mult;
}

ComplexField apply_multiplier(const ComplexField& psi, const std::vector<cplx>& mult) {
  ComplexField hat = fft_forward(psi);
  for (std::size_t n = 0; n < hat.size(); ++n) {
    hat[n] *= mult[n];
  }
  return fft_inverse(hat);
}

void rotate_phase(ComplexField& psi, const RealField& v, const StepParams& params, double hbar, double dt) {
  const double p_minus_1 = params.p - 1.0;
  for (std::size_t n = 0; n < psi.size(); ++n) {
    double w = 0.0;
    if (params.nonlinearity_on) {
      w += std::pow(std::abs(psi[n]), p_minus_1);
    }
    if (params.potential_on) {
      w += v[n];
    }
    psi[n] *= std::polar(1.0, -dt * w / hbar);
  }
}

RealField potential_of(const ComplexField& psi, const StepParams& params) {
  RealField rho(psi.grid_ptr());
  if (!params.potential_on) {
    return rho;
  }
  for (std::size_t n = 0; n < psi.size(); ++n) {
    rho[n] = std::norm(psi[n]);
  }
  return solve(rho, params.doping.get(), params.poisson_mode).v;
}

// One Strang step with precomputed half-step kinetic multiplier; no validation.
ComplexField strang_raw(const ComplexField& psi, const StepParams& params, double hbar,
                        const std::vector<cplx>& half_kinetic) {
  ComplexField out = apply_multiplier(psi, half_kinetic);
  const RealField v = potential_of(out, params);
  rotate_phase(out, v, params, hbar, params.dt);
  return apply_multiplier(out, half_kinetic);
}

}  // namespace

void StepParams::validate() const {
  if (!std::isfinite(dt) || dt == 0.0) {
    throw ConfigError("dt must be finite and non-zero (got " + std::to_string(dt) + ")");
  }
  if (!(p >= 1.0 && p <= 5.0)) {
    throw ConfigError("p must lie in [1, 5] (got " + std::to_string(p) + ")");
  }
  if (!(hbar > 0.0) || !std::isfinite(hbar)) {
    throw ConfigError("hbar must be positive and finite");
  }
  if (!(blowup_factor > 1.0)) {
    throw ConfigError("blowup_factor must exceed 1");
  }
}

WaveField kinetic_step(const WaveField& psi, double dt) {
  return WaveField(apply_multiplier(psi.psi(), kinetic_multiplier(psi.grid(), psi.hbar(), dt)), psi.hbar());
}

WaveField potential_step(const WaveField& psi, const RealField& v, const StepParams& params, double dt) {
  if (params.potential_on) {
    require_same_grid(psi.grid(), v.grid(), "potential_step");
  }
  WaveField out = psi;
  rotate_phase(out.psi(), v, params, psi.hbar(), dt);
  return out;
}

RealField potential_for(const WaveField& psi, const StepParams& params) {
  return potential_of(psi.psi(), params);
}

WaveField strang_step(const WaveField& psi, const StepParams& params) {
  params.validate();
  const auto half = kinetic_multiplier(psi.grid(), psi.hbar(), 0.5 * params.dt);
  return WaveField(strang_raw(psi.psi(), params, psi.hbar(), half), psi.hbar());
}

int step_count(double t_span, double dt) {
  if (!std::isfinite(t_span) || !std::isfinite(dt) || dt == 0.0) {
    throw ConfigError("time span and dt must be finite, dt non-zero");
  }
  const double ratio = t_span / dt;
  const double n = std::round(ratio);
  if (n < 0.0 || std::abs(ratio - n) > 1e-9 * std::max(1.0, std::abs(ratio))) {
    throw ConfigError("time span " + std::to_string(t_span) + " is not a non-negative multiple of dt " +
                      std::to_string(dt));
  }
  return static_cast<int>(n);
}

PropagationResult propagate(const WaveField& psi0, double t_span, const StepParams& params,
                            const PropagateOptions& options) {
  params.validate();
  const int steps = step_count(t_span, params.dt);
  const double hbar = psi0.hbar();
  const double reference = options.reference_max > 0.0 ? options.reference_max : psi0.max_abs();
  const double limit = params.blowup_factor * reference;
  const auto half = kinetic_multiplier(psi0.grid(), hbar, 0.5 * params.dt);

  PropagationResult result{psi0, {}, 0};
  const int cadence = options.diagnostics_cadence;
  if (cadence > 0) {
    result.records.push_back(record(psi0, params, options.t0));
  }

  double t_good = options.t0;
  for (int s = 1; s <= steps; ++s) {
    ComplexField next = strang_raw(result.psi.psi(), params, hbar, half);
    const double t = options.t0 + s * params.dt;
    if (!next.all_finite()) {
      throw BlowUpError("non-finite values after step at t=" + std::to_string(t), t_good);
    }
    if (reference > 0.0 && max_abs(next) > limit) {
      throw BlowUpError("amplitude exceeded " + std::to_string(params.blowup_factor) +
                            "x its initial maximum at t=" + std::to_string(t),
                        t_good);
    }
    result.psi.psi() = std::move(next);
    result.steps = s;
    t_good = t;
    if (options.observer) {
      options.observer(t, result.psi);
    }
    if (cadence > 0 && (s % cadence == 0 || s == steps)) {
      result.records.push_back(record(result.psi, params, t));
    }
  }
  return result;
}

}  // namespace qhd2d
