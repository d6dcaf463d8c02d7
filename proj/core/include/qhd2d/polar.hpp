#pragma once

#include <filesystem>
#include <optional>
#include <utility>
#include <vector>

#include "qhd2d/field.hpp"

namespace qhd2d {

/// Unit-modulus-or-zero factor phi with psi = |psi| * phi.
struct PolarFactor {
  ComplexField phi;
};

/// Hydrodynamic moments of a wave function.
///
/// grad_sqrt_rho = Re(conj(phi) grad psi), lambda = hbar Im(conj(phi) grad psi),
/// j = hbar Im(conj(psi) grad psi). Gradients are spectral, products pointwise.
/// At vacuum points (|psi| <= vacuum_eps) phi, lambda and grad_sqrt_rho are 0.
struct HydroMoments {
  RealField sqrt_rho;
  VectorField grad_sqrt_rho;
  VectorField lambda;
  VectorField j;
  RealField rho;
  std::vector<unsigned char> vacuum;  // 1 where the point is treated as vacuum
  double hbar = 1.0;
  double vacuum_eps = 0.0;

  std::size_t vacuum_count() const noexcept;
};

/// Default threshold: 1e-10 * max|psi|.
double default_vacuum_eps(const WaveField& psi) noexcept;

PolarFactor polar_factor(const WaveField& psi, double vacuum_eps);

HydroMoments moments(const WaveField& psi, std::optional<double> vacuum_eps = std::nullopt);
/// Variant reusing an already computed spectral gradient of psi.
HydroMoments moments(const WaveField& psi, const ComplexVectorField& grad_psi, std::optional<double> vacuum_eps = std::nullopt);

/// max over non-vacuum points and (j,k) of
/// |hbar^2 Re(d_j conj(psi) d_k psi) - hbar^2 d_j sqrt(rho) d_k sqrt(rho) - Lambda_j Lambda_k|,
/// divided by hbar^2 max|grad psi|^2 plus a floor.
double null_form_residual(const WaveField& psi, std::optional<double> vacuum_eps = std::nullopt);

/// Relative sup norm of curl(J) - 2 (d_x sqrt(rho) Lambda_y - d_y sqrt(rho) Lambda_x)
/// over non-vacuum points, curl taken spectrally.
double irrotationality_residual(const HydroMoments& m);

struct UpdateReport {
  double tau = 0.0;
  double mass_before = 0.0;
  double mass_after = 0.0;
  double j_l2_before = 0.0;
  double j_l2_after = 0.0;
  double j_ratio = 0.0;        // ||J~||_2 / ||J||_2 (1 when J = 0)
  double lambda_l2_before = 0.0;
  double grad_residual = 0.0;  // ||grad psi~ - grad psi + i (tau/hbar) phi~ Lambda||_2
  double grad_norm = 0.0;      // ||grad psi||_2 before the update
};

/// Collision update psi~ = |psi| exp(i (1 - tau) arg psi), arg in (-pi, pi];
/// vacuum points map to 0. Throws ConfigError unless 0 <= tau < 1.
WaveField collision_update_field(const WaveField& psi, double tau, double vacuum_eps);

/// Update plus the measured report (costs a handful of transforms).
std::pair<WaveField, UpdateReport> collision_update(const WaveField& psi, double tau,
                                                    std::optional<double> vacuum_eps = std::nullopt);

/// ||Lambda(psi + s d) - Lambda(psi)||_2 + ||grad sqrt rho(psi + s d) - grad sqrt rho(psi)||_2.
double stability_probe(const WaveField& psi, const WaveField& perturbation, double scale,
                       std::optional<double> vacuum_eps = std::nullopt);

/// Writes sqrt_rho, jx, jy, lambda_x, lambda_y as <dir>/<prefix>_<name>.bin snapshots.
void write_moments(const std::filesystem::path& dir, const std::string& prefix, const HydroMoments& m, double t);

}  // namespace qhd2d
