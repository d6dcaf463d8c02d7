#include "qhd2d/diagnostics.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "qhd2d/poisson.hpp"
#include "qhd2d/polar.hpp"
#include "qhd2d/propagator.hpp"
#include "qhd2d/spectral.hpp"

namespace qhd2d {

namespace {

constexpr double kTiny = 1e-300;

double sup_diff(const VectorField& a, const VectorField& b, const std::vector<unsigned char>& skip) {
  double worst = 0.0;
  for (std::size_t n = 0; n < a.x.size(); ++n) {
    if (skip[n]) {
      continue;
    }
    worst = std::max(worst, std::hypot(a.x[n] - b.x[n], a.y[n] - b.y[n]));
  }
  return worst;
}

double sup_norm(const VectorField& a, const std::vector<unsigned char>& skip) {
  double worst = 0.0;
  for (std::size_t n = 0; n < a.x.size(); ++n) {
    if (!skip[n]) {
      worst = std::max(worst, std::hypot(a.x[n], a.y[n]));
    }
  }
  return worst;
}

RealField product(const RealField& a, const RealField& b) {
  RealField out(a.grid_ptr());
  for (std::size_t n = 0; n < a.size(); ++n) {
    out[n] = a[n] * b[n];
  }
  return out;
}

}  // namespace

double internal_energy_density(double rho, double p) noexcept {
  return rho > 0.0 ? 2.0 / (p + 1.0) * std::pow(rho, 0.5 * (p + 1.0)) : 0.0;
}

double pressure(double rho, double p) noexcept {
  return rho > 0.0 ? (p - 1.0) / (p + 1.0) * std::pow(rho, 0.5 * (p + 1.0)) : 0.0;
}

DiagnosticsRecord record(const WaveField& psi, const StepParams& params, double t) {
  const ComplexVectorField grad = gradient(psi.psi());
  const HydroMoments m = moments(psi, grad);
  const double h2 = psi.hbar() * psi.hbar();
  const double da = psi.grid().cell_area();

  DiagnosticsRecord r;
  r.t = t;

  double grad_sq = 0.0;
  double amp_sq = 0.0;
  double lam_sq = 0.0;
  double internal = 0.0;
  double entropy = 0.0;
  double mass = 0.0;
  double px = 0.0;
  double py = 0.0;
  for (std::size_t n = 0; n < psi.size(); ++n) {
    const double rho = m.rho[n];
    mass += rho;
    grad_sq += std::norm(grad.x[n]) + std::norm(grad.y[n]);
    amp_sq += m.grad_sqrt_rho.x[n] * m.grad_sqrt_rho.x[n] + m.grad_sqrt_rho.y[n] * m.grad_sqrt_rho.y[n];
    lam_sq += m.lambda.x[n] * m.lambda.x[n] + m.lambda.y[n] * m.lambda.y[n];
    internal += internal_energy_density(rho, params.p);
    if (rho > 0.0) {
      entropy += rho * std::log(rho);
    }
    px += m.j.x[n];
    py += m.j.y[n];
  }
  r.mass = mass * da;
  r.e_kinetic_amp = 0.5 * h2 * amp_sq * da;
  r.e_kinetic_cur = 0.5 * lam_sq * da;
  r.e_internal = params.nonlinearity_on ? internal * da : 0.0;
  r.px = px * da;
  r.py = py * da;
  r.entropy = entropy * da;
  r.lambda_l2 = std::sqrt(lam_sq * da);

  if (params.potential_on) {
    const RealField v = potential_for(psi, params);
    const PotentialEnergy pe = potential_energy(m.rho, v);
    r.e_field = pe.half_v_rho;
    r.half_grad_v_sq = pe.half_grad_v_sq;
  }

  r.energy_wave = 0.5 * h2 * grad_sq * da + r.e_internal + r.e_field;
  r.energy_hydro = r.e_kinetic_amp + r.e_kinetic_cur + r.e_internal + r.e_field;
  r.null_residual = null_form_residual(psi, m.vacuum_eps);
  r.irrot_residual = irrotationality_residual(m);
  return r;
}

double pressure_identity_residual(const RealField& rho, double p) {
  double worst = 0.0;
  for (std::size_t n = 0; n < rho.size(); ++n) {
    const double r = rho[n];
    if (!(r >= 0.0)) {
      throw InputError("pressure identity requires a non-negative density");
    }
    const double f = internal_energy_density(r, p);
    const double f_prime = r > 0.0 ? std::pow(r, 0.5 * (p - 1.0)) : 0.0;
    worst = std::max(worst, std::abs(pressure(r, p) - (r * f_prime - f)));
  }
  return worst;
}

BohmResiduals bohm_residuals(const WaveField& psi, std::optional<double> vacuum_eps) {
  const double eps = vacuum_eps.value_or(default_vacuum_eps(psi));
  const GridPtr& g = psi.grid_ptr();
  const std::size_t size = psi.size();
  std::vector<unsigned char> vacuum(size, 0);
  std::size_t vacuum_points = 0;

  RealField a(g);
  RealField rho(g);
  RealField log_rho(g);
  for (std::size_t n = 0; n < size; ++n) {
    a[n] = std::abs(psi[n]);
    rho[n] = a[n] * a[n];
    if (a[n] <= eps) {
      vacuum[n] = 1;
      ++vacuum_points;
    }
  }
  if (2 * vacuum_points > size) {
    throw RefusalError("Bohm identities refused: more than half of the grid is vacuum");
  }
  const double log_floor = 2.0 * std::log(std::max(eps, kTiny));
  for (std::size_t n = 0; n < size; ++n) {
    log_rho[n] = vacuum[n] ? log_floor : std::log(rho[n]);
  }

  const double h2 = psi.hbar() * psi.hbar();

  // (hbar^2/2) rho grad(Delta a / a)
  const RealField lap_a = laplacian(a);
  RealField quotient(g);
  for (std::size_t n = 0; n < size; ++n) {
    quotient[n] = vacuum[n] ? 0.0 : lap_a[n] / a[n];
  }
  VectorField first = gradient(quotient);
  for (std::size_t n = 0; n < size; ++n) {
    first.x[n] *= 0.5 * h2 * rho[n];
    first.y[n] *= 0.5 * h2 * rho[n];
  }

  // (hbar^2/4) div(rho Hess log rho)
  const VectorField dlog = gradient(log_rho);
  const RealField lxx = derivative(dlog.x, 0);
  const RealField lxy = derivative(dlog.x, 1);
  const RealField lyy = derivative(dlog.y, 1);
  const VectorField row_x{product(rho, lxx), product(rho, lxy)};
  const VectorField row_y{product(rho, lxy), product(rho, lyy)};
  VectorField second{divergence(row_x), divergence(row_y)};
  for (std::size_t n = 0; n < size; ++n) {
    second.x[n] *= 0.25 * h2;
    second.y[n] *= 0.25 * h2;
  }

  // (hbar^2/4) Delta grad rho - hbar^2 div(grad a (x) grad a)
  const VectorField da_ = gradient(a);
  const VectorField grad_rho = gradient(rho);
  const RealField lap_rx = laplacian(grad_rho.x);
  const RealField lap_ry = laplacian(grad_rho.y);
  const VectorField t_x{product(da_.x, da_.x), product(da_.y, da_.x)};
  const VectorField t_y{product(da_.x, da_.y), product(da_.y, da_.y)};
  const RealField div_x = divergence(t_x);
  const RealField div_y = divergence(t_y);
  VectorField third{RealField(g), RealField(g)};
  for (std::size_t n = 0; n < size; ++n) {
    third.x[n] = 0.25 * h2 * lap_rx[n] - h2 * div_x[n];
    third.y[n] = 0.25 * h2 * lap_ry[n] - h2 * div_y[n];
  }

  const double scale = sup_norm(third, vacuum) + kTiny;
  return {sup_diff(first, third, vacuum) / scale, sup_diff(second, third, vacuum) / scale};
}

double log_sobolev_constant(double mass) {
  if (mass <= 0.0) {
    return 0.0;
  }
  return -0.5 * mass * mass * (1.0 + std::log(std::numbers::pi) - std::log(mass));
}

double plus_sign_log_sobolev_rhs(double mass) {
  if (mass <= 0.0) {
    return 0.0;
  }
  return 0.5 * mass * mass * (1.0 + std::log(std::numbers::pi) + std::log(mass));
}

LogSobolevResult log_sobolev_check(const RealField& f, double rel_tol) {
  const Grid& g = f.grid();
  RealField clean(f.grid_ptr());
  double f_max = 0.0;
  double entropy = 0.0;
  for (std::size_t n = 0; n < f.size(); ++n) {
    const double v = f[n];
    if (!(v >= -1e-14)) {
      throw InputError("log-Sobolev check requires a non-negative density");
    }
    clean[n] = std::max(v, 0.0);
    f_max = std::max(f_max, clean[n]);
    if (clean[n] > 0.0) {
      entropy += clean[n] * std::log(clean[n]);
    }
  }
  entropy *= g.cell_area();

  double edge = 0.0;
  for (int i = 0; i < g.nx; ++i) {
    edge = std::max({edge, clean(i, 0), clean(i, g.ny - 1)});
  }
  for (int j = 0; j < g.ny; ++j) {
    edge = std::max({edge, clean(0, j), clean(g.nx - 1, j)});
  }

  LogSobolevResult r;
  r.mass = integrate(clean);
  r.boundary_fraction = f_max > 0.0 ? edge / f_max : 0.0;
  const double interaction = clean.size() <= kOracleMaxPoints ? log_interaction_oracle(clean) : log_interaction_fast(clean);
  r.lhs = 0.5 * r.mass * entropy + interaction;
  r.rhs = log_sobolev_constant(r.mass);
  r.holds = r.lhs >= r.rhs - rel_tol * std::abs(r.rhs);
  return r;
}

double mixed_norm(std::span<const ComplexVectorField> grads, double snapshot_dt, double q, double r) {
  if (!(r >= 2.0) || !std::isfinite(r)) {
    throw ConfigError("mixed_norm: r must satisfy 2 <= r < infinity");
  }
  if (!(q > 0.0)) {
    throw ConfigError("mixed_norm: q must be positive");
  }
  const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
  if (std::abs(inv_q + 1.0 / r - 0.5) > 1e-12) {
    throw ConfigError("mixed_norm: (q, r) is not admissible, need 1/q + 1/r = 1/2");
  }
  if (grads.empty()) {
    return 0.0;
  }
  if (!(snapshot_dt > 0.0)) {
    throw ConfigError("mixed_norm: snapshot spacing must be positive");
  }

  std::vector<double> spatial;
  spatial.reserve(grads.size());
  for (const auto& gpsi : grads) {
    const double da = gpsi.x.grid().cell_area();
    double acc = 0.0;
    for (std::size_t n = 0; n < gpsi.x.size(); ++n) {
      const double mag2 = std::norm(gpsi.x[n]) + std::norm(gpsi.y[n]);
      acc += std::pow(mag2, 0.5 * r);
    }
    spatial.push_back(std::pow(acc * da, 1.0 / r));
  }

  if (std::isinf(q)) {
    return *std::max_element(spatial.begin(), spatial.end());
  }
  double integral = 0.0;
  for (std::size_t k = 0; k + 1 < spatial.size(); ++k) {
    integral += 0.5 * snapshot_dt * (std::pow(spatial[k], q) + std::pow(spatial[k + 1], q));
  }
  return std::pow(integral, 1.0 / q);
}

void write_diagnostics_csv_header(std::ostream& out) {
  out << "t,mass,energy_wave,energy_hydro,e_kinetic_amp,e_kinetic_cur,e_internal,e_field,"
         "px,py,entropy,null_residual,irrot_residual,lambda_l2\n";
}

void write_diagnostics_csv_row(std::ostream& out, const DiagnosticsRecord& r) {
  const auto old_precision = out.precision(17);
  out << r.t << ',' << r.mass << ',' << r.energy_wave << ',' << r.energy_hydro << ',' << r.e_kinetic_amp << ','
      << r.e_kinetic_cur << ',' << r.e_internal << ',' << r.e_field << ',' << r.px << ',' << r.py << ','
      << r.entropy << ',' << r.null_residual << ',' << r.irrot_residual << ',' << r.lambda_l2 << '\n';
  out.precision(old_precision);
}

void write_diagnostics_csv(std::ostream& out, std::span<const DiagnosticsRecord> records) {
  write_diagnostics_csv_header(out);
  for (const auto& r : records) {
    write_diagnostics_csv_row(out, r);
  }
}

}  // namespace qhd2d
