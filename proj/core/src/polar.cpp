#include "qhd2d/polar.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qhd2d/snapshot_io.hpp"
#include "qhd2d/spectral.hpp"

namespace qhd2d {

namespace {

constexpr double kTiny = 1e-300;

// Principal argument in (-pi, pi].
double principal_arg(const cplx& z) noexcept {
  const double a = std::arg(z);
  return a <= -std::numbers::pi ? std::numbers::pi : a;
}

double resolve_eps(const WaveField& psi, std::optional<double> eps) {
  const double e = eps.value_or(default_vacuum_eps(psi));
  if (!(e >= 0.0)) {
    throw ConfigError("vacuum_eps must be non-negative");
  }
  return e;
}

}  // namespace

std::size_t HydroMoments::vacuum_count() const noexcept {
  std::size_t n = 0;
  for (auto v : vacuum) {
    n += v;
  }
  return n;
}

double default_vacuum_eps(const WaveField& psi) noexcept { return 1e-10 * psi.max_abs(); }

PolarFactor polar_factor(const WaveField& psi, double vacuum_eps) {
  if (!(vacuum_eps >= 0.0)) {
    throw ConfigError("vacuum_eps must be non-negative");
  }
  ComplexField phi(psi.grid_ptr());
  for (std::size_t n = 0; n < psi.size(); ++n) {
    const double a = std::abs(psi[n]);
    phi[n] = (a > vacuum_eps) ? psi[n] / a : cplx(0.0, 0.0);
  }
  return {std::move(phi)};
}

HydroMoments moments(const WaveField& psi, std::optional<double> vacuum_eps) {
  return moments(psi, gradient(psi.psi()), vacuum_eps);
}

HydroMoments moments(const WaveField& psi, const ComplexVectorField& grad_psi, std::optional<double> vacuum_eps) {
  const double eps = resolve_eps(psi, vacuum_eps);
  const double hbar = psi.hbar();
  const GridPtr& g = psi.grid_ptr();
  const PolarFactor pf = polar_factor(psi, eps);

  HydroMoments m{RealField(g),
                 {RealField(g), RealField(g)},
                 {RealField(g), RealField(g)},
                 {RealField(g), RealField(g)},
                 RealField(g),
                 std::vector<unsigned char>(psi.size(), 0),
                 hbar,
                 eps};

  for (std::size_t n = 0; n < psi.size(); ++n) {
    const cplx z = psi[n];
    const double a = std::abs(z);
    m.sqrt_rho[n] = a;
    m.rho[n] = a * a;
    const cplx gx = grad_psi.x[n];
    const cplx gy = grad_psi.y[n];
    m.j.x[n] = hbar * (std::conj(z) * gx).imag();
    m.j.y[n] = hbar * (std::conj(z) * gy).imag();
    const cplx phi_bar = std::conj(pf.phi[n]);
    if (pf.phi[n] == cplx(0.0, 0.0)) {
      m.vacuum[n] = 1;
      continue;
    }
    const cplx px = phi_bar * gx;
    const cplx py = phi_bar * gy;
    m.grad_sqrt_rho.x[n] = px.real();
    m.grad_sqrt_rho.y[n] = py.real();
    m.lambda.x[n] = hbar * px.imag();
    m.lambda.y[n] = hbar * py.imag();
  }
  return m;
}

double null_form_residual(const WaveField& psi, std::optional<double> vacuum_eps) {
  const ComplexVectorField grad = gradient(psi.psi());
  const HydroMoments m = moments(psi, grad, vacuum_eps);
  const double h2 = psi.hbar() * psi.hbar();

  double worst = 0.0;
  double grad_sup2 = 0.0;
  for (std::size_t n = 0; n < psi.size(); ++n) {
    const cplx d[2] = {grad.x[n], grad.y[n]};
    grad_sup2 = std::max(grad_sup2, std::norm(d[0]) + std::norm(d[1]));
    if (m.vacuum[n]) {
      continue;
    }
    const double s[2] = {m.grad_sqrt_rho.x[n], m.grad_sqrt_rho.y[n]};
    const double l[2] = {m.lambda.x[n], m.lambda.y[n]};
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        const double lhs = h2 * (std::conj(d[a]) * d[b]).real();
        const double rhs = h2 * s[a] * s[b] + l[a] * l[b];
        worst = std::max(worst, std::abs(lhs - rhs));
      }
    }
  }
  return worst / (h2 * grad_sup2 + kTiny);
}

double irrotationality_residual(const HydroMoments& m) {
  const RealField curl_j = curl(m.j);
  const double h = m.hbar;
  double worst = 0.0;
  double scale = 0.0;
  for (std::size_t n = 0; n < curl_j.size(); ++n) {
    if (m.vacuum[n]) {
      continue;
    }
    const double sx = m.grad_sqrt_rho.x[n];
    const double sy = m.grad_sqrt_rho.y[n];
    const double lx = m.lambda.x[n];
    const double ly = m.lambda.y[n];
    const double rhs = 2.0 * (sx * ly - sy * lx);
    worst = std::max(worst, std::abs(curl_j[n] - rhs));
    // hbar |grad psi|^2 written through the null-form trace.
    scale = std::max(scale, h * (sx * sx + sy * sy) + (lx * lx + ly * ly) / h);
  }
  return worst / (scale + kTiny);
}

WaveField collision_update_field(const WaveField& psi, double tau, double vacuum_eps) {
  if (!(tau >= 0.0 && tau < 1.0)) {
    throw ConfigError("collision update requires 0 <= tau < 1 (got tau=" + std::to_string(tau) + ")");
  }
  if (!(vacuum_eps >= 0.0)) {
    throw ConfigError("vacuum_eps must be non-negative");
  }
  if (tau == 0.0) {
    return psi;
  }
  ComplexField out(psi.grid_ptr());
  const double keep = 1.0 - tau;
  for (std::size_t n = 0; n < psi.size(); ++n) {
    const double a = std::abs(psi[n]);
    if (a <= vacuum_eps) {
      out[n] = cplx(0.0, 0.0);
      continue;
    }
    const double theta = principal_arg(psi[n]);
    if (theta == 0.0) {
      out[n] = psi[n];
      continue;
    }
    out[n] = std::polar(a, keep * theta);
  }
  return WaveField(std::move(out), psi.hbar());
}

std::pair<WaveField, UpdateReport> collision_update(const WaveField& psi, double tau,
                                                    std::optional<double> vacuum_eps) {
  const double eps = resolve_eps(psi, vacuum_eps);
  WaveField updated = collision_update_field(psi, tau, eps);

  const ComplexVectorField grad_before = gradient(psi.psi());
  const HydroMoments before = moments(psi, grad_before, eps);
  const ComplexVectorField grad_after = gradient(updated.psi());
  const HydroMoments after = moments(updated, grad_after, eps);
  const PolarFactor phi_after = polar_factor(updated, eps);

  UpdateReport r;
  r.tau = tau;
  r.mass_before = integrate(before.rho);
  r.mass_after = integrate(after.rho);
  r.j_l2_before = norm_l2(before.j);
  r.j_l2_after = norm_l2(after.j);
  r.j_ratio = r.j_l2_before > 0.0 ? r.j_l2_after / r.j_l2_before : 1.0;
  r.lambda_l2_before = norm_l2(before.lambda);
  r.grad_norm = norm_l2(grad_before);

  const double shift = tau / psi.hbar();
  double acc = 0.0;
  for (std::size_t n = 0; n < psi.size(); ++n) {
    const cplx i_phi = cplx(0.0, shift) * phi_after.phi[n];
    const cplx rx = grad_after.x[n] - grad_before.x[n] + i_phi * before.lambda.x[n];
    const cplx ry = grad_after.y[n] - grad_before.y[n] + i_phi * before.lambda.y[n];
    acc += std::norm(rx) + std::norm(ry);
  }
  r.grad_residual = std::sqrt(acc * psi.grid().cell_area());
  return {std::move(updated), r};
}

double stability_probe(const WaveField& psi, const WaveField& perturbation, double scale,
                       std::optional<double> vacuum_eps) {
  require_same_grid(psi.grid(), perturbation.grid(), "stability_probe");
  if (scale == 0.0) {
    return 0.0;
  }
  ComplexField shifted(psi.grid_ptr());
  for (std::size_t n = 0; n < psi.size(); ++n) {
    shifted[n] = psi[n] + scale * perturbation[n];
  }
  const WaveField moved(std::move(shifted), psi.hbar());
  const HydroMoments a = moments(psi, vacuum_eps);
  const HydroMoments b = moments(moved, vacuum_eps);

  double dl = 0.0;
  double ds = 0.0;
  for (std::size_t n = 0; n < psi.size(); ++n) {
    dl += std::pow(b.lambda.x[n] - a.lambda.x[n], 2) + std::pow(b.lambda.y[n] - a.lambda.y[n], 2);
    ds += std::pow(b.grad_sqrt_rho.x[n] - a.grad_sqrt_rho.x[n], 2) +
          std::pow(b.grad_sqrt_rho.y[n] - a.grad_sqrt_rho.y[n], 2);
  }
  const double da = psi.grid().cell_area();
  return std::sqrt(dl * da) + std::sqrt(ds * da);
}

void write_moments(const std::filesystem::path& dir, const std::string& prefix, const HydroMoments& m, double t) {
  const SnapshotMeta meta{t, m.hbar};
  write_snapshot(dir / (prefix + "_sqrt_rho.bin"), m.sqrt_rho, meta);
  write_snapshot(dir / (prefix + "_jx.bin"), m.j.x, meta);
  write_snapshot(dir / (prefix + "_jy.bin"), m.j.y, meta);
  write_snapshot(dir / (prefix + "_lambda_x.bin"), m.lambda.x, meta);
  write_snapshot(dir / (prefix + "_lambda_y.bin"), m.lambda.y, meta);
}

}  // namespace qhd2d
