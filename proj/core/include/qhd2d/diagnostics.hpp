#pragma once

#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "qhd2d/field.hpp"
#include "qhd2d/step_params.hpp"

namespace qhd2d {

/// One time sample of every monitored scalar.
struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;
  double energy_wave = 0.0;    // int hbar^2/2 |grad psi|^2 + f(rho) + 1/2 V rho
  double energy_hydro = 0.0;   // e_kinetic_amp + e_kinetic_cur + e_internal + e_field
  double e_kinetic_amp = 0.0;  // hbar^2/2 int |grad sqrt rho|^2
  double e_kinetic_cur = 0.0;  // 1/2 int |Lambda|^2
  double e_internal = 0.0;     // int 2/(p+1) rho^((p+1)/2)
  double e_field = 0.0;        // 1/2 int V rho
  double px = 0.0;
  double py = 0.0;
  double entropy = 0.0;        // int rho log rho, 0 log 0 = 0
  double null_residual = 0.0;
  double irrot_residual = 0.0;
  double lambda_l2 = 0.0;
  /// Not part of the CSV schema: 1/2 int |grad V|^2.
  double half_grad_v_sq = 0.0;
};

DiagnosticsRecord record(const WaveField& psi, const StepParams& params, double t);

/// Internal energy density f(rho) = 2/(p+1) rho^((p+1)/2).
double internal_energy_density(double rho, double p) noexcept;
/// Pressure P(rho) = (p-1)/(p+1) rho^((p+1)/2).
double pressure(double rho, double p) noexcept;

/// sup |P(rho) - (rho f'(rho) - f(rho))|; rho must be non-negative (InputError otherwise).
double pressure_identity_residual(const RealField& rho, double p);

struct BohmResiduals {
  double first_vs_third = 0.0;
  double second_vs_third = 0.0;
};

/// Evaluates hbar^2/2 rho grad(Delta sqrt rho / sqrt rho), hbar^2/4 div(rho grad^2 log rho)
/// and hbar^2/4 Delta grad rho - hbar^2 div(grad sqrt rho (x) grad sqrt rho) spectrally and
/// returns relative sup differences over the super-threshold set. Throws RefusalError
/// when more than half of the grid is vacuum.
BohmResiduals bohm_residuals(const WaveField& psi, std::optional<double> vacuum_eps = std::nullopt);

struct LogSobolevResult {
  double mass = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  /// max boundary value relative to max f (the inequality is posed on the plane).
  double boundary_fraction = 0.0;
};

/// Lower bound C(M) = -(M^2/2)(1 + log pi - log M) of
/// (M/2) int f log f + int int f(x) log|x-y| f(y).
double log_sobolev_constant(double mass);
/// Sign variant (M^2/2)(1 + log pi + log M), not a valid lower bound. Reference only.
double plus_sign_log_sobolev_rhs(double mass);

/// Checks the logarithmic HLS / Sobolev inequality on f >= 0. The double integral uses the
/// direct quadrature sum up to 128^2 points and the padded convolution beyond.
/// holds = lhs >= rhs - rel_tol |rhs|. Throws InputError for values below -1e-14.
LogSobolevResult log_sobolev_check(const RealField& f, double rel_tol = 1e-8);

/// L^q_t L^r_x norm of grad psi from uniformly spaced snapshots (trapezoid rule in time).
/// q = infinity is accepted for the (inf, 2) endpoint. Throws ConfigError unless
/// 1/q + 1/r = 1/2 with 2 <= r < infinity.
double mixed_norm(std::span<const ComplexVectorField> grads, double snapshot_dt, double q, double r);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

void write_diagnostics_csv_header(std::ostream& out);
void write_diagnostics_csv_row(std::ostream& out, const DiagnosticsRecord& r);
void write_diagnostics_csv(std::ostream& out, std::span<const DiagnosticsRecord> records);

}  // namespace qhd2d
