#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <fstream>

#include <unistd.h>

#include "helpers.hpp"
#include "qhd2d/snapshot_io.hpp"

using namespace qhd2d;
using namespace qhd2d::test;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("qhd2d_snapshot_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(SnapshotIo, ComplexRoundTripIsBitExact) {
  const GridPtr g = make_grid(16, 8, 3.0, 2.0);
  const WaveField psi = ic("vortex", g, {{"width", 0.5}}, 0.7);
  const fs::path path = scratch("psi.bin");
  write_snapshot(path, psi, 1.25);

  const LoadedSnapshot snap = read_snapshot(path);
  ASSERT_TRUE(snap.is_complex());
  EXPECT_TRUE(snap.grid->same_shape(*g));
  EXPECT_EQ(snap.meta.t, 1.25);
  EXPECT_EQ(snap.meta.hbar, 0.7);
  const auto& f = std::get<ComplexField>(snap.field);
  for (std::size_t n = 0; n < f.size(); ++n) {
    EXPECT_EQ(f[n], psi[n]);
  }
  EXPECT_TRUE(fs::exists(sidecar_path(path)));
}

TEST(SnapshotIo, HeaderLayout) {
  const GridPtr g = make_grid(8, 16, 1.5, 2.5);
  const RealField f(g, 2.0);
  const fs::path path = scratch("real.bin");
  write_snapshot(path, f, SnapshotMeta{});

  std::ifstream in(path, std::ios::binary);
  char magic[8];
  in.read(magic, 8);
  EXPECT_EQ(std::memcmp(magic, "QHD2DF01", 8), 0);
  std::uint32_t nx = 0;
  std::uint32_t ny = 0;
  double lx = 0.0;
  double ly = 0.0;
  std::uint8_t kind = 9;
  in.read(reinterpret_cast<char*>(&nx), 4);
  in.read(reinterpret_cast<char*>(&ny), 4);
  in.read(reinterpret_cast<char*>(&lx), 8);
  in.read(reinterpret_cast<char*>(&ly), 8);
  in.read(reinterpret_cast<char*>(&kind), 1);
  EXPECT_EQ(nx, 8u);
  EXPECT_EQ(ny, 16u);
  EXPECT_EQ(lx, 1.5);
  EXPECT_EQ(ly, 2.5);
  EXPECT_EQ(kind, 0);
  EXPECT_EQ(fs::file_size(path), 8u + 4 + 4 + 8 + 8 + 1 + 8u * 128);
}

TEST(SnapshotIo, GridMismatchIsDimensionError) {
  const GridPtr g = make_grid(16, 16, 3.0, 3.0);
  const fs::path path = scratch("mismatch.bin");
  write_snapshot(path, ic("gaussian", g), 0.0);
  EXPECT_THROW(read_wave_snapshot(path, make_grid(32, 16, 3.0, 3.0), 1.0), DimensionError);
  EXPECT_NO_THROW(read_wave_snapshot(path, g, 1.0));
}

TEST(SnapshotIo, BadMagicIsInputError) {
  const fs::path path = scratch("garbage.bin");
  std::ofstream(path) << "not a snapshot at all";
  EXPECT_THROW(read_snapshot(path), InputError);
  EXPECT_THROW(read_snapshot(scratch("missing.bin")), InputError);
}
