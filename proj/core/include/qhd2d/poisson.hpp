#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "qhd2d/field.hpp"

namespace qhd2d {

/// How -Delta V = rho - C is closed on the finite grid.
enum class PoissonMode {
  periodic_zero_mean,  // torus solve, mean of the source removed
  free_space_padded,   // log-kernel convolution on a 2x zero-padded lattice
  quadrature_oracle,   // direct O(N^2) sum of the same kernel (small grids only)
};

std::string to_string(PoissonMode mode);
/// Accepts the enum names; throws ConfigError otherwise.
PoissonMode parse_poisson_mode(std::string_view text);

/// Largest grid (points) the quadrature oracle accepts.
inline constexpr std::size_t kOracleMaxPoints = 128 * 128;

struct PoissonSolution {
  RealField v;
  /// Free-space mode only: the doping profile carries non-zero net charge.
  bool doping_mean_warning = false;
};

/// Sampled free-space Green's function -(1/2pi) log|r|; at r = 0 the cell
/// self-interaction value -(1/2pi)(log h - 3/2), h = sqrt(dx dy).
double log_kernel(double rx, double ry, double h) noexcept;

/// Solves -Delta V = rho - doping. Throws RefusalError for the oracle on grids above 128^2.
PoissonSolution solve(const RealField& rho, const RealField* doping, PoissonMode mode);
inline PoissonSolution solve(const RealField& rho, PoissonMode mode) { return solve(rho, nullptr, mode); }

/// Gradient of the potential. Periodic: spectral gradient of solve().
/// Free space and oracle: the Hardy kernel -(1/2pi)(x-y)/|x-y|^2 summed against the
/// source (padded FFT convolution and direct sum respectively), self cell 0.
VectorField grad_v(const RealField& rho, const RealField* doping, PoissonMode mode);
inline VectorField grad_v(const RealField& rho, PoissonMode mode) { return grad_v(rho, nullptr, mode); }

struct PotentialEnergy {
  double half_v_rho = 0.0;       // (1/2) int V rho
  double half_grad_v_sq = 0.0;   // (1/2) int |grad V|^2, spectral gradient of v
};

PotentialEnergy potential_energy(const RealField& rho, const RealField& v);

/// Direct double sum  sum_i sum_j f_i f_j log|x_i - x_j| dA^2  with the self cell
/// weighted by log h - 3/2 (the same regularization as the kernel).
/// Throws RefusalError above kOracleMaxPoints.
double log_interaction_oracle(const RealField& f);

/// Same quantity evaluated through the padded FFT convolution; any grid size.
double log_interaction_fast(const RealField& f);

}  // namespace qhd2d
