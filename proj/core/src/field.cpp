#include "qhd2d/field.hpp"

namespace qhd2d {

WaveField::WaveField(ComplexField psi, double hbar) : psi_(std::move(psi)), hbar_(hbar) {
  if (!(hbar_ > 0.0) || !std::isfinite(hbar_)) {
    throw ConfigError("hbar must be positive and finite");
  }
  if (!psi_.all_finite()) {
    throw InputError("wave function contains non-finite values");
  }
}

RealField WaveField::density() const {
  RealField rho(psi_.grid_ptr());
  for (std::size_t n = 0; n < psi_.size(); ++n) {
    rho[n] = std::norm(psi_[n]);
  }
  return rho;
}

double WaveField::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& v : psi_.values()) {
    m = std::max(m, std::abs(v));
  }
  return m;
}

}  // namespace qhd2d
