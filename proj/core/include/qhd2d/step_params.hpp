#pragma once

#include <memory>

#include "qhd2d/field.hpp"
#include "qhd2d/poisson.hpp"

namespace qhd2d {

/// Physical and numerical parameters of one collisionless NLS-Poisson step.
struct StepParams {
  double dt = 1e-3;
  double p = 3.0;      // nonlinearity exponent, |psi|^(p-1) psi; accepted range [1, 5]
  double hbar = 1.0;
  PoissonMode poisson_mode = PoissonMode::periodic_zero_mean;
  bool nonlinearity_on = true;
  bool potential_on = true;
  /// Static background charge C(x); empty means none.
  std::shared_ptr<const RealField> doping;
  /// Abort once max|psi| exceeds this multiple of its initial value.
  double blowup_factor = 1e6;

  /// Throws ConfigError naming the offending field. Negative dt is allowed
  /// (time reversal); zero is not.
  void validate() const;
};

}  // namespace qhd2d
