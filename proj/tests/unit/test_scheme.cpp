#include <gtest/gtest.h>

#include <sstream>

#include "helpers.hpp"
#include "qhd2d/propagator.hpp"
#include "qhd2d/scheme.hpp"
#include "qhd2d/spectral.hpp"

using namespace qhd2d;
using namespace qhd2d::test;

namespace {

SchemeConfig base_config(double dt, double tau, double t_max, bool collision) {
  SchemeConfig c;
  c.step.dt = dt;
  c.step.poisson_mode = PoissonMode::periodic_zero_mean;
  c.tau = tau;
  c.t_max = t_max;
  c.collision_on = collision;
  return c;
}

double mass(const WaveField& psi) { return integrate(psi.density()); }

}  // namespace

TEST(Scheme, CollisionlessRunMatchesPropagate) {
  const GridPtr g = make_grid(32, 32, 12.0, 12.0);
  const WaveField psi0 = ic("phase_bump", g);
  const SchemeConfig c = base_config(0.01, 0.05, 0.3, false);
  const SchemeResult r = run(psi0, c);
  const PropagationResult p = propagate(psi0, 0.3, c.step);
  EXPECT_EQ(max_diff(r.psi.psi(), p.psi.psi()), 0.0);
  EXPECT_EQ(r.strips.size(), 6u);
}

TEST(Scheme, SingleStepStripIsStepThenUpdate) {
  const GridPtr g = make_grid(32, 32, 12.0, 12.0);
  const WaveField psi0 = ic("phase_bump", g);
  const SchemeConfig c = base_config(0.02, 0.02, 0.02, true);
  const SchemeResult r = run(psi0, c);
  const WaveField expected = collision_update(strang_step(psi0, c.step), 0.02).first;
  EXPECT_LT(max_diff(r.psi.psi(), expected.psi()), 1e-15);
}

TEST(Scheme, Validation) {
  SchemeConfig c = base_config(0.01, 0.1, 1.0, true);
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.steps_per_strip(), 10);
  EXPECT_EQ(c.strip_count(), 10);
  EXPECT_EQ(c.trailing_steps(), 0);

  c.tau = 0.005;
  EXPECT_THROW(c.validate(), ConfigError);
  c = base_config(0.01, 0.015, 1.0, false);
  EXPECT_THROW(c.validate(), ConfigError);
  c = base_config(0.01, 0.1, 1.005, false);
  EXPECT_THROW(c.validate(), ConfigError);
  c = base_config(0.01, 1.0, 2.0, true);
  EXPECT_THROW(c.validate(), ConfigError);
  c = base_config(-0.01, 0.1, 1.0, false);
  EXPECT_THROW(c.validate(), ConfigError);

  c = base_config(0.01, 0.3, 1.0, true);
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.strip_count(), 3);
  EXPECT_EQ(c.trailing_steps(), 10);

  try {
    base_config(0.01, 0.005, 1.0, true).validate();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("time.tau"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("time.dt"), std::string::npos);
  }
}

TEST(Scheme, CollisionsPreserveMassAndDampCurrent) {
  const GridPtr g = make_grid(32, 32, 12.0, 12.0);
  const WaveField psi0 = ic("gaussian_boosted", g, {{"kx_index", 2}, {"width", 1.5}});
  const SchemeConfig c = base_config(0.01, 0.1, 1.0, true);
  const SchemeResult r = run(psi0, c);
  ASSERT_EQ(r.strips.size(), 10u);
  for (const StripRecord& s : r.strips) {
    EXPECT_NEAR(s.mass_post, s.mass_pre, 1e-12 * s.mass_pre) << s.k;
    EXPECT_LE(s.j_l2_post, s.j_l2_pre * (1.0 + 1e-12)) << s.k;
  }
  EXPECT_NEAR(mass(r.psi), mass(psi0), 1e-10 * mass(psi0));
}

TEST(Scheme, RecordsCarryStripIndices) {
  const GridPtr g = make_grid(32, 32, 12.0, 12.0);
  SchemeConfig c = base_config(0.01, 0.05, 0.2, true);
  c.diagnostics_cadence = 5;
  const SchemeResult r = run(ic("phase_bump", g), c);
  ASSERT_EQ(r.records.size(), r.record_strip.size());
  ASSERT_FALSE(r.records.empty());
  EXPECT_EQ(r.record_strip.front(), 0);
  for (std::size_t n = 1; n < r.record_strip.size(); ++n) {
    EXPECT_GE(r.record_strip[n], r.record_strip[n - 1]);
    EXPECT_GE(r.records[n].t, r.records[n - 1].t);
  }
}

TEST(Scheme, EnergyInequalityOnDampedRun) {
  const GridPtr g = make_grid(32, 32, 12.0, 12.0);
  const WaveField psi0 = ic("phase_bump", g, {{"width", 1.0}});
  SchemeConfig c = base_config(0.005, 0.05, 0.5, true);
  c.diagnostics_cadence = 2;
  const SchemeResult r = run(psi0, c);
  const double e0 = r.records.front().energy_hydro;
  const EnergyInequalityReport rep = energy_inequality(r, c.tau, e0, 1e-8 * std::abs(e0));
  EXPECT_TRUE(rep.holds) << rep.worst_margin << " at " << rep.worst_t;
  EXPECT_EQ(rep.checked, r.records.size());
}

TEST(Scheme, TauStudyWithoutCollisionsIsTrivial) {
  const GridPtr g = make_grid(32, 32, 12.0, 12.0);
  const SchemeConfig c = base_config(0.005, 0.1, 0.2, false);
  const std::vector<double> taus{0.1, 0.05};
  const auto rows = tau_convergence_study(ic("phase_bump", g), c, taus, 2);
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& row : rows) {
    EXPECT_LE(row.rho_diff, 1e-12);
    EXPECT_LE(row.j_diff, 1e-12);
  }
  EXPECT_TRUE(std::isnan(rows[0].ratio));
}

TEST(Scheme, TauStudyJobsDoNotChangeResults) {
  const GridPtr g = make_grid(32, 32, 12.0, 12.0);
  const SchemeConfig c = base_config(0.005, 0.1, 0.2, true);
  const std::vector<double> taus{0.1, 0.05};
  const auto a = tau_convergence_study(ic("phase_bump", g), c, taus, 1);
  const auto b = tau_convergence_study(ic("phase_bump", g), c, taus, 3);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t n = 0; n < a.size(); ++n) {
    EXPECT_EQ(a[n].rho_diff, b[n].rho_diff);
    EXPECT_EQ(a[n].j_diff, b[n].j_diff);
  }
  std::ostringstream out;
  write_tau_study_csv(out, a);
  EXPECT_EQ(out.str().substr(0, 4), "tau,");
}

TEST(Scheme, StripCsvHasOneRowPerStrip) {
  const GridPtr g = make_grid(32, 32, 12.0, 12.0);
  const SchemeResult r = run(ic("phase_bump", g), base_config(0.01, 0.05, 0.2, true));
  std::ostringstream out;
  write_strip_csv(out, r.strips);
  const std::string text = out.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 5);
}

TEST(WeakForm, ZeroTestFunctionGivesZero) {
  const GridPtr g = make_grid(32, 32, 12.0, 12.0);
  SchemeConfig c = base_config(0.01, 0.1, 0.5, true);
  c.snapshot_every = 1;
  const SchemeResult r = run(ic("phase_bump", g), c);
  TestFunctionSpec spec;
  spec.center = 0.25;
  spec.half_width = 0.2;
  spec.amplitude = 0.0;
  const WeakFormResidual w = weak_form_residual(r.trajectory, spec);
  EXPECT_EQ(w.continuity, 0.0);
  EXPECT_EQ(w.momentum, 0.0);
}

TEST(WeakForm, CollisionlessContinuityIsSmall) {
  const GridPtr g = make_grid(32, 32, 12.0, 12.0);
  SchemeConfig c = base_config(0.005, 0.1, 0.5, false);
  c.snapshot_every = 1;
  const SchemeResult r = run(ic("phase_bump", g), c);
  TestFunctionSpec spec;
  spec.center = 0.25;
  spec.half_width = 0.2;
  const WeakFormResidual w = weak_form_residual(r.trajectory, spec);
  EXPECT_LE(std::abs(w.continuity), 1e-4 * w.continuity_scale);
  EXPECT_LE(std::abs(w.momentum), 1e-3 * w.momentum_scale);
}

TEST(WeakForm, RefusesCoarseSnapshots) {
  const GridPtr g = make_grid(32, 32, 12.0, 12.0);
  SchemeConfig c = base_config(0.01, 0.1, 0.5, true);
  c.snapshot_every = 5;
  const SchemeResult r = run(ic("phase_bump", g), c);
  TestFunctionSpec spec;
  spec.center = 0.25;
  spec.half_width = 0.2;
  EXPECT_THROW(weak_form_residual(r.trajectory, spec), RefusalError);
  Trajectory empty;
  EXPECT_THROW(weak_form_residual(empty, spec), RefusalError);
  spec.center = 0.45;
  c.snapshot_every = 1;
  EXPECT_THROW(weak_form_residual(run(ic("phase_bump", g), c).trajectory, spec), RefusalError);
}

TEST(WeakForm, CollisionalResidualShrinksWithTau) {
  const GridPtr g = make_grid(32, 32, 12.0, 12.0);
  TestFunctionSpec spec;
  spec.center = 0.25;
  spec.half_width = 0.2;
  spec.mx = 1;
  std::vector<double> rel;
  for (double tau : {0.1, 0.05, 0.025}) {
    SchemeConfig c = base_config(0.0025, tau, 0.5, true);
    c.snapshot_every = 1;
    const SchemeResult r = run(ic("phase_bump", g, {{"width", 1.0}}), c);
    const WeakFormResidual w = weak_form_residual(r.trajectory, spec);
    rel.push_back(std::abs(w.momentum) / w.momentum_scale);
    EXPECT_LE(std::abs(w.continuity), 1e-3 * w.continuity_scale);
  }
  EXPECT_LT(rel[1], rel[0]);
  EXPECT_LT(rel[2], rel[1]);
}
