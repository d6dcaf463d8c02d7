#include <cmath>
#include <numbers>
#include <string>

#include "qhd2d/poisson.hpp"
#include "qhd2d/polar.hpp"
#include "qhd2d/scheme.hpp"
#include "qhd2d/spectral.hpp"

namespace qhd2d {

namespace {

// Smooth bump exp(1 - 1/(1 - u^2)) on |u| < 1 and its time derivative.
struct Bump {
  double center;
  double half_width;

  double value(double t) const {
    const double u = (t - center) / half_width;
    if (std::abs(u) >= 1.0) {
      return 0.0;
    }
    return std::exp(1.0 - 1.0 / (1.0 - u * u));
  }

  double derivative(double t) const {
    const double u = (t - center) / half_width;
    if (std::abs(u) >= 1.0) {
      return 0.0;
    }
    const double d = 1.0 - u * u;
    return value(t) * (-2.0 * u / (d * d)) / half_width;
  }
};

// Continuity terms: rho d_t eta, J . grad eta.
// Momentum terms: J . d_t zeta, Lambda (x) Lambda : grad zeta, hbar^2 grad a (x) grad a : grad zeta,
// P div zeta, -(hbar^2/4) rho Delta div zeta, -rho grad V . zeta, -J . zeta.
constexpr int kContinuityTerms = 2;
constexpr int kMomentumTerms = 7;

struct Integrands {
  double c[kContinuityTerms] = {};
  double m[kMomentumTerms] = {};
};

}  // namespace

WeakFormResidual weak_form_residual(const Trajectory& trajectory, const TestFunctionSpec& spec) {
  const auto& snaps = trajectory.snapshots;
  if (snaps.size() < 2) {
    throw RefusalError("weak form needs at least two stored snapshots");
  }
  if (!(spec.half_width > 0.0)) {
    throw ConfigError("test function half width must be positive");
  }
  const double t_end = snaps.back().t;
  if (spec.center + spec.half_width > t_end + 1e-12) {
    throw RefusalError("test function support extends past the stored trajectory end t=" + std::to_string(t_end));
  }
  double max_gap = 0.0;
  for (std::size_t i = 1; i < snaps.size(); ++i) {
    max_gap = std::max(max_gap, snaps[i].t - snaps[i - 1].t);
  }
  const double allowed = spec.half_width / 8.0;
  if (max_gap > allowed * (1.0 + 1e-9)) {
    const double dt = std::abs(trajectory.params.dt);
    const long steps = dt > 0.0 ? static_cast<long>(std::floor(allowed / dt + 1e-9)) : 0;
    throw RefusalError("snapshot spacing " + std::to_string(max_gap) + " too coarse for half width " +
                       std::to_string(spec.half_width) + "; need spacing <= " + std::to_string(allowed) +
                       " (snapshot_every <= " + std::to_string(steps) + " steps)");
  }

  const Grid& g = snaps.front().psi.grid();
  const double kx = 2.0 * std::numbers::pi * spec.mx / g.lx;
  const double ky = 2.0 * std::numbers::pi * spec.my / g.ly;
  const double k2 = kx * kx + ky * ky;
  const GridPtr& gp = snaps.front().psi.grid_ptr();
  RealField s(gp);
  RealField sx(gp);
  RealField sy(gp);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const double th = kx * g.x(i) + ky * g.y(j);
      const std::size_t n = g.index(i, j);
      // s and its gradient; sine or cosine of the lattice mode.
      const double val = spec.sine ? std::sin(th) : std::cos(th);
      const double dval = spec.sine ? std::cos(th) : -std::sin(th);
      s[n] = spec.amplitude * val;
      sx[n] = spec.amplitude * dval * kx;
      sy[n] = spec.amplitude * dval * ky;
    }
  }

  const StepParams& params = trajectory.params;
  const double h2 = [&] {
    const double h = snaps.front().psi.hbar();
    return h * h;
  }();
  const double da = g.cell_area();
  const double ex = spec.ex;
  const double ey = spec.ey;

  // Spatial integrals per snapshot; the time profile multiplies them afterwards.
  auto evaluate = [&](const WaveField& psi, double b, double db) {
    Integrands out;
    if (b == 0.0 && db == 0.0) {
      return out;
    }
    const HydroMoments m = moments(psi);
    VectorField gv{RealField(gp), RealField(gp)};
    if (params.potential_on) {
      gv = grad_v(m.rho, params.doping.get(), params.poisson_mode);
    }
    for (std::size_t n = 0; n < psi.size(); ++n) {
      const double rho = m.rho[n];
      const double je = m.j.x[n] * ex + m.j.y[n] * ey;
      const double j_grad = m.j.x[n] * sx[n] + m.j.y[n] * sy[n];
      const double le = m.lambda.x[n] * ex + m.lambda.y[n] * ey;
      const double l_grad = m.lambda.x[n] * sx[n] + m.lambda.y[n] * sy[n];
      const double ae = m.grad_sqrt_rho.x[n] * ex + m.grad_sqrt_rho.y[n] * ey;
      const double a_grad = m.grad_sqrt_rho.x[n] * sx[n] + m.grad_sqrt_rho.y[n] * sy[n];
      const double div_zeta = ex * sx[n] + ey * sy[n];
      out.c[0] += db * rho * s[n];
      out.c[1] += b * j_grad;
      out.m[0] += db * je * s[n];
      out.m[1] += b * le * l_grad;
      out.m[2] += b * h2 * ae * a_grad;
      out.m[3] += params.nonlinearity_on ? b * pressure(rho, params.p) * div_zeta : 0.0;
      out.m[4] += b * 0.25 * h2 * rho * k2 * div_zeta;
      out.m[5] += params.potential_on ? -b * rho * (gv.x[n] * ex + gv.y[n] * ey) * s[n] : 0.0;
      out.m[6] += trajectory.collisional ? -b * je * s[n] : 0.0;
    }
    for (double& v : out.c) {
      v *= da;
    }
    for (double& v : out.m) {
      v *= da;
    }
    return out;
  };

  const Bump bump{spec.center, spec.half_width};
  std::vector<Integrands> values;
  values.reserve(snaps.size());
  for (const auto& snap : snaps) {
    values.push_back(evaluate(snap.psi, bump.value(snap.t), bump.derivative(snap.t)));
  }

  double cont[kContinuityTerms] = {};
  double mom[kMomentumTerms] = {};
  for (std::size_t i = 1; i < snaps.size(); ++i) {
    const double h = snaps[i].t - snaps[i - 1].t;
    if (h <= 0.0) {
      continue;  // the two one-sided values of a strip boundary
    }
    for (int q = 0; q < kContinuityTerms; ++q) {
      cont[q] += 0.5 * h * (values[i - 1].c[q] + values[i].c[q]);
    }
    for (int q = 0; q < kMomentumTerms; ++q) {
      mom[q] += 0.5 * h * (values[i - 1].m[q] + values[i].m[q]);
    }
  }

  WeakFormResidual r;
  for (double v : cont) {
    r.continuity += v;
    r.continuity_scale += std::abs(v);
  }
  for (double v : mom) {
    r.momentum += v;
    r.momentum_scale += std::abs(v);
  }

  const double b0 = bump.value(snaps.front().t);
  if (b0 != 0.0) {
    const HydroMoments m0 = moments(snaps.front().psi);
    double init_c = 0.0;
    double init_m = 0.0;
    for (std::size_t n = 0; n < s.size(); ++n) {
      init_c += m0.rho[n] * s[n];
      init_m += (m0.j.x[n] * ex + m0.j.y[n] * ey) * s[n];
    }
    init_c *= b0 * da;
    init_m *= b0 * da;
    r.continuity += init_c;
    r.continuity_scale += std::abs(init_c);
    r.momentum += init_m;
    r.momentum_scale += std::abs(init_m);
  }
  return r;
}

}  // namespace qhd2d
