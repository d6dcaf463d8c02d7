#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "qhd2d/cli.hpp"

namespace fs = std::filesystem;
using qhd2d::cli::run_cli;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("qhd2d_cli_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path write_small_config(const fs::path& dir) {
  const fs::path cfg = dir / "sim.ini";
  std::ofstream(cfg) << "[grid]\nnx = 16\nny = 16\nlx = 8\nly = 8\n"
                        "[time]\ndt = 0.01\ntau = 0.05\nt_max = 0.1\ncollision = true\n"
                        "[ic]\nname = phase_bump\n"
                        "[output]\ncadence = 2\nsnapshot_every = 5\nout_dir = \""
                     << (dir / "out").string() << "\"\n";
  return cfg;
}

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, UnknownSubcommandIsValidationError) {
  EXPECT_EQ(call({"frobnicate"}).code, qhd2d::cli::kValidation);
  EXPECT_EQ(call({}).code, qhd2d::cli::kValidation);
}

TEST(Cli, MissingConfigNamesThePath) {
  const Outcome o = call({"run", "--config", "/nonexistent/sim.ini"});
  EXPECT_EQ(o.code, qhd2d::cli::kValidation);
  EXPECT_NE(o.err.find("/nonexistent/sim.ini"), std::string::npos) << o.err;
}

TEST(Cli, BadOverrideIsValidationError) {
  const fs::path dir = scratch("override");
  const Outcome o = call({"run", "--config", write_small_config(dir).string(), "--time.tau=0.001"});
  EXPECT_EQ(o.code, qhd2d::cli::kValidation);
  EXPECT_NE(o.err.find("time.tau"), std::string::npos) << o.err;
}

TEST(Cli, VerifyPasses) {
  const Outcome o = call({"verify"});
  EXPECT_EQ(o.code, qhd2d::cli::kOk) << o.out << o.err;
  EXPECT_FALSE(o.out.empty());
}

TEST(Cli, RunWritesOutputsAndConfigCopy) {
  const fs::path dir = scratch("run");
  const Outcome o = call({"run", "--config", write_small_config(dir).string()});
  ASSERT_EQ(o.code, qhd2d::cli::kOk) << o.err;
  const fs::path out = dir / "out";
  for (const char* f : {"config.resolved.ini", "diagnostics.csv", "strips.csv", "final.bin", "final.bin.json"}) {
    EXPECT_TRUE(fs::exists(out / f)) << f;
  }
  EXPECT_TRUE(fs::exists(out / "snapshot_00000.bin"));
  EXPECT_NE(slurp(out / "config.resolved.ini").find("collision = true"), std::string::npos);
  EXPECT_EQ(slurp(out / "diagnostics.csv").substr(0, 7), "t,mass,");
}

TEST(Cli, RunIsDeterministic) {
  const fs::path a = scratch("det_a");
  const fs::path b = scratch("det_b");
  ASSERT_EQ(call({"run", "--config", write_small_config(a).string()}).code, 0);
  ASSERT_EQ(call({"run", "--config", write_small_config(b).string()}).code, 0);
  EXPECT_EQ(slurp(a / "out" / "diagnostics.csv"), slurp(b / "out" / "diagnostics.csv"));
  EXPECT_EQ(slurp(a / "out" / "strips.csv"), slurp(b / "out" / "strips.csv"));
}

TEST(Cli, CollisionlessAndTauStudy) {
  const fs::path dir = scratch("study");
  const std::string cfg = write_small_config(dir).string();
  EXPECT_EQ(call({"collisionless", "--config", cfg}).code, 0);
  const Outcome o = call({"tau-study", "--config", cfg, "--taus", "0.1,0.02", "--jobs", "2"});
  EXPECT_EQ(o.code, 0) << o.err;
  EXPECT_TRUE(fs::exists(dir / "out" / "tau_study.csv"));
  EXPECT_EQ(call({"tau-study", "--config", cfg, "--taus", "0.1,zero"}).code, qhd2d::cli::kValidation);
}
