#include <gtest/gtest.h>

#include <cstdlib>

#include "helpers.hpp"
#include "qhd2d/config.hpp"
#include "qhd2d/polar.hpp"
#include "qhd2d/spectral.hpp"

using namespace qhd2d;
using namespace qhd2d::test;

namespace {

std::string message_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST(Config, Defaults) {
  const SimConfig c = parse_config("");
  EXPECT_EQ(c, SimConfig{});
  EXPECT_EQ(c.grid.nx, 128);
  EXPECT_DOUBLE_EQ(c.grid.lx, kTwoPi);
  EXPECT_EQ(c.physics.poisson_mode, PoissonMode::periodic_zero_mean);
  EXPECT_EQ(c.time.dt, 1e-3);
  EXPECT_EQ(c.time.tau, 0.1);
  EXPECT_FALSE(c.time.collision);
  EXPECT_EQ(c.ic.name, "gaussian");
}

TEST(Config, ParsesSectionsAndComments) {
  const SimConfig c = parse_config(
      "# leading comment\n"
      "[grid]\n"
      "nx = 64 ; trailing comment\n"
      "ly = 12.5\n"
      "[physics]\n"
      "poisson_mode = free_space_padded\n"
      "nonlinearity = false\n"
      "[time]\n"
      "dt = 0.01\n"
      "tau = 0.05\n"
      "t_max = 0.5\n"
      "collision = true\n"
      "[ic]\n"
      "name = vortex\n"
      "width = 0.8\n");
  EXPECT_EQ(c.grid.nx, 64);
  EXPECT_EQ(c.grid.ly, 12.5);
  EXPECT_EQ(c.physics.poisson_mode, PoissonMode::free_space_padded);
  EXPECT_FALSE(c.physics.nonlinearity);
  EXPECT_TRUE(c.time.collision);
  EXPECT_EQ(c.ic.name, "vortex");
  EXPECT_EQ(c.ic.params.at("width"), 0.8);
}

TEST(Config, TauBelowDtNamesBothKeys) {
  const std::string msg = message_of("[time]\ndt = 0.01\ntau = 0.001\n");
  EXPECT_TRUE(contains(msg, "time.tau")) << msg;
  EXPECT_TRUE(contains(msg, "time.dt")) << msg;
  EXPECT_TRUE(contains(msg, "line 3")) << msg;
}

TEST(Config, ErrorsCarryLineNumbers) {
  EXPECT_TRUE(contains(message_of("[grid]\nnx = 64\nny = 48\n"), "line 3"));
  EXPECT_TRUE(contains(message_of("[grid]\nnx = 64\n\nwidth = 2\n"), "line 4"));
  EXPECT_TRUE(contains(message_of("[grid]\nnx = 64\n\nwidth = 2\n"), "width"));
  EXPECT_TRUE(contains(message_of("[nope]\nx = 1\n"), "nope"));
  EXPECT_TRUE(contains(message_of("[time]\ndt = fast\n"), "line 2"));
  EXPECT_TRUE(contains(message_of("nx = 64\n"), "line 1"));
  EXPECT_TRUE(contains(message_of("[physics]\np = 7\n"), "physics.p"));
  EXPECT_TRUE(contains(message_of("[time]\ncollision = true\ntau = 1\n"), "time.tau"));
  EXPECT_TRUE(contains(message_of("[ic]\nname = soliton\n"), "soliton"));
  EXPECT_TRUE(contains(message_of("[ic]\nbogus = 1\n"), "bogus"));
}

TEST(Config, SerializeRoundTrip) {
  SimConfig c;
  c.grid.nx = 32;
  c.grid.lx = 1.0 / 3.0;
  c.physics.hbar = 0.7;
  c.physics.poisson_mode = PoissonMode::quadrature_oracle;
  c.physics.potential = false;
  c.time.dt = 0.002;
  c.time.tau = 0.02;
  c.time.t_max = 0.2;
  c.time.collision = true;
  c.ic.name = "gaussian_boosted";
  c.ic.params = {{"kx_index", 2.0}, {"width", 0.75}};
  c.output.out_dir = "some dir/out";
  c.output.cadence = 3;
  c.output.snapshot_every = 4;
  EXPECT_EQ(parse_config(serialize_config(c)), c);
  EXPECT_EQ(parse_config(serialize_config(SimConfig{})), SimConfig{});
}

TEST(Config, Overrides) {
  SimConfig c;
  apply_override(c, "time.tau", "0.05");
  apply_override(c, "grid.nx", "64");
  apply_override(c, "ic.width", "2");
  apply_override(c, "physics.poisson_mode", "free_space_padded");
  EXPECT_EQ(c.time.tau, 0.05);
  EXPECT_EQ(c.grid.nx, 64);
  EXPECT_EQ(c.ic.params.at("width"), 2.0);
  EXPECT_EQ(c.physics.poisson_mode, PoissonMode::free_space_padded);
  EXPECT_NO_THROW(validate_config(c));
  EXPECT_THROW(apply_override(c, "time", "1"), ConfigError);
  EXPECT_THROW(apply_override(c, "time.speed", "1"), ConfigError);
  EXPECT_THROW(apply_override(c, "grid.nx", "sixty"), ConfigError);
  apply_override(c, "time.dt", "0.5");
  EXPECT_THROW(validate_config(c), ConfigError);
}

TEST(Config, OutDirResolution) {
  SimConfig c;
  ::unsetenv("QHD2D_OUT_DIR");
  EXPECT_EQ(resolve_out_dir(c), std::filesystem::path("qhd2d_out"));
  ::setenv("QHD2D_OUT_DIR", "/tmp/from_env", 1);
  EXPECT_EQ(resolve_out_dir(c), std::filesystem::path("/tmp/from_env"));
  c.output.out_dir = "explicit";
  EXPECT_EQ(resolve_out_dir(c), std::filesystem::path("explicit"));
  ::unsetenv("QHD2D_OUT_DIR");
}

TEST(Config, MissingFileNamesPath) {
  try {
    load_config("/nonexistent/qhd2d.ini");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_TRUE(contains(e.what(), "/nonexistent/qhd2d.ini"));
  }
}

TEST(Config, SchemeAndStepTranslation) {
  SimConfig c = parse_config("[grid]\nnx = 16\nny = 16\n[time]\ndt = 0.01\ntau = 0.05\nt_max = 0.2\ncollision = true\n");
  const GridPtr g = make_grid(c.grid);
  const SchemeConfig s = to_scheme_config(c, g);
  EXPECT_EQ(s.step.dt, 0.01);
  EXPECT_TRUE(s.collision_on);
  EXPECT_EQ(s.steps_per_strip(), 5);
  EXPECT_EQ(s.strip_count(), 4);
  EXPECT_EQ(to_step_params(c, g).doping, nullptr);
}

TEST(InitialConditions, GaussianMass) {
  const GridPtr g = make_grid(128, 128, 16.0, 16.0);
  const WaveField psi = ic("gaussian", g, {{"amp", 1.5}, {"width", 1.2}});
  EXPECT_NEAR(integrate(psi.density()), std::numbers::pi * 1.5 * 1.5 * 1.2 * 1.2, 1e-9);
  EXPECT_NEAR(std::abs(psi.psi()(64, 64)), 1.5, 1e-14);
}

TEST(InitialConditions, PlaneWaveCurrent) {
  const GridPtr g = torus(32);
  const WaveField psi = ic("plane_wave", g, {{"kx_index", 2}, {"ky_index", -1}, {"amp", 0.5}}, 0.8);
  const HydroMoments m = moments(psi);
  for (std::size_t n = 0; n < psi.size(); ++n) {
    EXPECT_NEAR(m.j.x[n], 0.8 * 0.25 * 2.0, 1e-12);
    EXPECT_NEAR(m.j.y[n], -0.8 * 0.25, 1e-12);
  }
}

TEST(InitialConditions, VortexHasZeroAtCentre) {
  const GridPtr g = make_grid(64, 64, 8.0, 8.0);
  const WaveField psi = ic("vortex", g);
  EXPECT_EQ(std::abs(psi.psi()(32, 32)), 0.0);
  EXPECT_GT(std::abs(psi.psi()(34, 32)), 0.0);
}

TEST(InitialConditions, UnknownNameIsConfigError) {
  EXPECT_THROW(ic("soliton", torus(16)), ConfigError);
}
