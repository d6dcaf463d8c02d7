#pragma once

#include <string>
#include <vector>

namespace qhd2d {

/// One identity or inequality evaluated on a fixed reference state.
struct VerifyCheck {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

/// Null form, irrotationality, Bohm forms, pressure identity, log-Sobolev,
/// Poisson fast path against the quadrature oracle, collision update contract.
/// Every check uses its own fixed grid and state; hbar scales the wave functions.
std::vector<VerifyCheck> run_verify_suite(double hbar = 1.0, double p = 3.0);

}  // namespace qhd2d
