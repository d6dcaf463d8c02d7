#include "qhd2d/verify.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "qhd2d/diagnostics.hpp"
#include "qhd2d/initial_conditions.hpp"
#include "qhd2d/poisson.hpp"
#include "qhd2d/polar.hpp"
#include "qhd2d/spectral.hpp"

namespace qhd2d {

namespace {

VerifyCheck at_most(std::string name, double value, double threshold) {
  return {std::move(name), value, threshold, value <= threshold};
}

WaveField state(const char* name, const GridPtr& g, double hbar, std::map<std::string, double> params = {}) {
  IcConfig ic;
  ic.name = name;
  ic.params = std::move(params);
  return make_initial_condition(ic, g, hbar);
}

}  // namespace

std::vector<VerifyCheck> run_verify_suite(double hbar, double p) {
  std::vector<VerifyCheck> out;
  const GridPtr torus = make_grid(64, 64, 2.0 * std::numbers::pi, 2.0 * std::numbers::pi);
  const GridPtr box = make_grid(128, 128, 12.0, 12.0);

  const WaveField vortex = state("vortex", box, hbar);
  const WaveField plane = state("plane_wave", torus, hbar, {{"kx_index", 2.0}, {"ky_index", 1.0}});
  const WaveField real_gauss = state("gaussian", box, hbar);

  out.push_back(at_most("null_form.vortex", null_form_residual(vortex), 1e-6));
  out.push_back(at_most("null_form.plane_wave", null_form_residual(plane), 1e-10));
  out.push_back(at_most("null_form.real_gaussian", null_form_residual(real_gauss), 1e-10));

  out.push_back(at_most("irrotationality.vortex", irrotationality_residual(moments(vortex)), 1e-5));
  const HydroMoments real_m = moments(real_gauss);
  out.push_back(at_most("irrotationality.real_gaussian",
                        std::max(max_abs(curl(real_m.j)), norm_l2(real_m.lambda)), 1e-10));

  {
    const RealField floor = RealField::sample(box, [&](double x, double y) {
      const double rx = x - 6.0;
      const double ry = y - 6.0;
      return std::sqrt(0.1 + std::exp(-(rx * rx + ry * ry)));
    });
    ComplexField psi(box);
    for (std::size_t n = 0; n < psi.size(); ++n) {
      psi[n] = floor[n];
    }
    const BohmResiduals b = bohm_residuals(WaveField(std::move(psi), hbar));
    out.push_back(at_most("bohm.first_vs_third", b.first_vs_third, 1e-6));
    out.push_back(at_most("bohm.second_vs_third", b.second_vs_third, 1e-6));
  }

  {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> dist(0.0, 10.0);
    RealField rho(torus);
    for (std::size_t n = 0; n < rho.size(); ++n) {
      rho[n] = dist(rng);
    }
    double worst = 0.0;
    for (double q : {2.0, 3.0, 5.0, p}) {
      worst = std::max(worst, pressure_identity_residual(rho, q));
    }
    out.push_back(at_most("pressure_identity", worst, 1e-12));
  }

  const GridPtr small = make_grid(64, 64, 12.0, 12.0);
  {
    const RealField f = RealField::sample(small, [](double x, double y) {
      const double rx = x - 6.0;
      const double ry = y - 6.0;
      return std::exp(-(rx * rx + ry * ry)) / std::numbers::pi;
    });
    const LogSobolevResult ls = log_sobolev_check(f);
    // Reported value: (rhs - lhs) / |rhs|, non-positive when the inequality holds.
    out.push_back({"log_sobolev.gaussian", (ls.rhs - ls.lhs) / std::abs(ls.rhs), 1e-8, ls.holds});

    const RealField fast = solve(f, PoissonMode::free_space_padded).v;
    const RealField oracle = solve(f, PoissonMode::quadrature_oracle).v;
    double worst = 0.0;
    for (std::size_t n = 0; n < f.size(); ++n) {
      worst = std::max(worst, std::abs(fast[n] - oracle[n]));
    }
    out.push_back(at_most("poisson.fast_vs_oracle", worst, 1e-8));

    const RealField v = solve(f, PoissonMode::periodic_zero_mean).v;
    const RealField lap = laplacian(v);
    const double mean = integrate(f) / small->area();
    double res = 0.0;
    for (std::size_t n = 0; n < f.size(); ++n) {
      res = std::max(res, std::abs(-lap[n] - (f[n] - mean)));
    }
    out.push_back(at_most("poisson.periodic_laplacian", res / max_abs(f), 1e-10));
  }

  {
    const WaveField bump = state("phase_bump", box, hbar);
    const double tau = 0.1;
    const auto [updated, rep] = collision_update(bump, tau);
    out.push_back(at_most("collision.mass", std::abs(rep.mass_after - rep.mass_before) / rep.mass_before, 1e-13));
    const HydroMoments before = moments(bump);
    const HydroMoments after = moments(updated);
    double acc = 0.0;
    for (std::size_t n = 0; n < bump.size(); ++n) {
      acc += std::pow(after.j.x[n] - (1.0 - tau) * before.j.x[n], 2) +
             std::pow(after.j.y[n] - (1.0 - tau) * before.j.y[n], 2);
    }
    const double j_err = std::sqrt(acc * box->cell_area()) / norm_l2(before.j);
    out.push_back(at_most("collision.j_scaling", j_err, 1e-6));
    out.push_back(at_most("collision.grad_residual", rep.grad_residual / (rep.grad_norm + 1e-300), 2.0 * tau));
  }
  return out;
}

}  // namespace qhd2d
