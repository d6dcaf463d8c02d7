#include <gtest/gtest.h>

#include <sstream>

#include "helpers.hpp"
#include "qhd2d/diagnostics.hpp"
#include "qhd2d/spectral.hpp"

using namespace qhd2d;
using namespace qhd2d::test;

TEST(Diagnostics, ZeroStateRecordsZeros) {
  const GridPtr g = torus(16);
  const WaveField psi(ComplexField(g), 1.0);
  const DiagnosticsRecord r = record(psi, StepParams{}, 0.5);
  EXPECT_EQ(r.t, 0.5);
  EXPECT_EQ(r.mass, 0.0);
  EXPECT_EQ(r.energy_wave, 0.0);
  EXPECT_EQ(r.energy_hydro, 0.0);
  EXPECT_EQ(r.px, 0.0);
  EXPECT_EQ(r.entropy, 0.0);
  EXPECT_EQ(r.lambda_l2, 0.0);
}

TEST(Diagnostics, PlaneWaveEnergies) {
  const GridPtr g = torus(32);
  const double a = 0.7;
  const double hbar = 0.6;
  const WaveField psi(ComplexField::sample(g, [&](double x, double) { return a * std::polar(1.0, x); }), hbar);
  StepParams s;
  s.hbar = hbar;
  s.p = 3.0;
  const DiagnosticsRecord r = record(psi, s, 0.0);
  const double area = g->area();
  EXPECT_NEAR(r.mass, a * a * area, 1e-12);
  EXPECT_NEAR(r.e_kinetic_amp, 0.0, 1e-12);
  EXPECT_NEAR(r.e_kinetic_cur, 0.5 * hbar * hbar * a * a * area, 1e-11);
  EXPECT_NEAR(r.e_internal, 0.5 * a * a * a * a * area, 1e-11);
  EXPECT_NEAR(r.e_field, 0.0, 1e-12);
  EXPECT_NEAR(r.energy_wave, r.e_kinetic_cur + r.e_internal, 1e-11);
  EXPECT_NEAR(r.energy_hydro, r.energy_wave, 1e-11);
  EXPECT_NEAR(r.px, hbar * a * a * area, 1e-11);
  EXPECT_NEAR(r.py, 0.0, 1e-12);
  EXPECT_NEAR(r.entropy, a * a * std::log(a * a) * area, 1e-11);
}

TEST(Diagnostics, SwitchedOffTermsAreZero) {
  const GridPtr g = torus(16);
  StepParams s;
  s.nonlinearity_on = false;
  s.potential_on = false;
  const DiagnosticsRecord r = record(ic("gaussian", g), s, 0.0);
  EXPECT_EQ(r.e_internal, 0.0);
  EXPECT_EQ(r.e_field, 0.0);
  EXPECT_NEAR(r.energy_wave, r.e_kinetic_amp, 1e-12 * r.energy_wave);
}

TEST(Diagnostics, WaveAndHydroEnergiesAgree) {
  const GridPtr g = make_grid(64, 64, 12.0, 12.0);
  for (const char* name : {"gaussian", "gaussian_boosted", "phase_bump"}) {
    const WaveField psi = ic(name, g, {{"kx_index", 2}});
    StepParams s;
    s.poisson_mode = PoissonMode::free_space_padded;
    const DiagnosticsRecord r = record(psi, s, 0.0);
    EXPECT_LE(std::abs(r.energy_wave - r.energy_hydro), 1e-8 * std::abs(r.energy_wave)) << name;
  }
}

TEST(Diagnostics, RealWaveCarriesNoMomentum) {
  const GridPtr g = make_grid(64, 64, 12.0, 12.0);
  const DiagnosticsRecord r = record(ic("gaussian", g), StepParams{}, 0.0);
  EXPECT_EQ(r.px, 0.0);
  EXPECT_EQ(r.py, 0.0);
  EXPECT_EQ(r.e_kinetic_cur, 0.0);
}

TEST(Diagnostics, UniformEntropy) {
  const GridPtr g = torus(16);
  const WaveField psi(ComplexField(g, cplx(2.0, 0.0)), 1.0);
  EXPECT_NEAR(record(psi, StepParams{}, 0.0).entropy, 4.0 * std::log(4.0) * g->area(), 1e-10);
}

TEST(Diagnostics, PressureExamples) {
  EXPECT_DOUBLE_EQ(pressure(4.0, 3.0), 8.0);
  EXPECT_DOUBLE_EQ(pressure(4.0, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(internal_energy_density(4.0, 3.0), 8.0);
  EXPECT_DOUBLE_EQ(internal_energy_density(0.0, 3.0), 0.0);
  const GridPtr g = torus(16);
  for (double p : {1.0, 2.0, 3.0, 5.0}) {
    RealField rho = smooth_random(g, 3);
    for (std::size_t n = 0; n < rho.size(); ++n) rho[n] = rho[n] * rho[n];
    EXPECT_LE(pressure_identity_residual(rho, p), 1e-12 * std::max(1.0, std::pow(max_abs(rho), (p + 1) / 2)));
  }
  RealField negative(g, 1.0);
  negative[5] = -0.1;
  EXPECT_THROW(pressure_identity_residual(negative, 3.0), InputError);
}

TEST(Diagnostics, BohmFormsAgreeOnSmoothDensity) {
  const GridPtr g = make_grid(64, 64, 2.0 * kTwoPi, 2.0 * kTwoPi);
  const WaveField psi(ComplexField::sample(g, [](double x, double y) {
                        return std::sqrt(1.5 + 0.5 * std::cos(x / 2.0) * std::sin(y / 2.0)) * std::polar(1.0, std::sin(y / 2.0));
                      }),
                      0.8);
  const BohmResiduals r = bohm_residuals(psi);
  EXPECT_LE(r.first_vs_third, 1e-8);
  EXPECT_LE(r.second_vs_third, 1e-8);
}

TEST(Diagnostics, BohmRefusesMostlyVacuum) {
  const GridPtr g = make_grid(64, 64, 40.0, 40.0);
  const WaveField psi = ic("gaussian", g, {{"width", 0.5}});
  EXPECT_THROW(bohm_residuals(psi, 1e-6), RefusalError);
}

TEST(Diagnostics, LogSobolevConstant) {
  const double pi = std::numbers::pi;
  EXPECT_NEAR(log_sobolev_constant(1.0), -0.5 * (1.0 + std::log(pi)), 1e-15);
  EXPECT_NEAR(plus_sign_log_sobolev_rhs(1.0), 1.0724, 1e-4);
  EXPECT_NEAR(log_sobolev_constant(2.0), -2.0 * (1.0 + std::log(pi) - std::log(2.0)), 1e-14);
}

TEST(Diagnostics, LogSobolevHoldsForGaussians) {
  const GridPtr g = make_grid(128, 128, 16.0, 16.0);
  for (double mass : {1.0, 2.0}) {
    const RealField f = RealField::sample(g, [&](double x, double y) {
      return mass / std::numbers::pi * std::exp(-((x - 8) * (x - 8) + (y - 8) * (y - 8)));
    });
    const LogSobolevResult r = log_sobolev_check(f);
    EXPECT_NEAR(r.mass, mass, 1e-8);
    EXPECT_TRUE(r.holds) << mass;
    EXPECT_GT(r.lhs, r.rhs);
    EXPECT_LT(r.boundary_fraction, 1e-20);
  }
}

TEST(Diagnostics, LogSobolevNearlySharpForCauchyProfile) {
  // M / (pi (1 + r^2)^2) attains the bound on the plane; the box truncates its tail.
  const GridPtr g = make_grid(128, 128, 40.0, 40.0);
  const double mass = 1.0;
  const RealField f = RealField::sample(g, [&](double x, double y) {
    const double r2 = (x - 20) * (x - 20) + (y - 20) * (y - 20);
    return mass / (std::numbers::pi * (1.0 + r2) * (1.0 + r2));
  });
  const LogSobolevResult r = log_sobolev_check(f);
  EXPECT_LT(std::abs(r.lhs - r.rhs), 0.02 * std::abs(r.rhs));
}

TEST(Diagnostics, LogSobolevRejectsNegativeInput) {
  const GridPtr g = torus(16);
  RealField f(g, 1.0);
  f[0] = -1e-3;
  EXPECT_THROW(log_sobolev_check(f), InputError);
}

TEST(Diagnostics, MixedNormCases) {
  const GridPtr g = torus(16);
  const WaveField psi(ComplexField::sample(g, [](double x, double) { return std::polar(1.0, x); }), 1.0);
  const ComplexVectorField d = gradient(psi.psi());
  const std::vector<ComplexVectorField> grads(5, d);
  // |grad psi| = 1, so the L^r norm is area^(1/r) at every time.
  const double area = g->area();
  EXPECT_NEAR(mixed_norm(grads, 0.25, kInfinity, 2.0), std::sqrt(area), 1e-10);
  EXPECT_NEAR(mixed_norm(grads, 0.25, 4.0, 4.0), std::pow(area, 0.25), 1e-10);
  EXPECT_NEAR(mixed_norm(grads, 0.25, 3.0, 6.0), std::pow(area, 1.0 / 6.0), 1e-10);
  EXPECT_THROW(mixed_norm(grads, 0.25, 2.0, 2.0), ConfigError);
  EXPECT_THROW(mixed_norm(grads, 0.25, 2.0, kInfinity), ConfigError);
  EXPECT_THROW(mixed_norm(grads, 0.25, 4.0, 1.0), ConfigError);
  EXPECT_EQ(mixed_norm({}, 0.25, 4.0, 4.0), 0.0);
}

TEST(Diagnostics, CsvLayout) {
  std::ostringstream out;
  DiagnosticsRecord r;
  r.t = 0.1;
  r.mass = 1.0 / 3.0;
  write_diagnostics_csv(out, std::span<const DiagnosticsRecord>(&r, 1));
  std::istringstream in(out.str());
  std::string header;
  std::string row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header,
            "t,mass,energy_wave,energy_hydro,e_kinetic_amp,e_kinetic_cur,e_internal,e_field,px,py,entropy,"
            "null_residual,irrot_residual,lambda_l2");
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), 13);
  EXPECT_EQ(row.substr(0, 24), "0.10000000000000001,0.33");
}
