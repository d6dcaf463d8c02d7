#pragma once

#include <filesystem>
#include <variant>

#include "qhd2d/field.hpp"

namespace qhd2d {

// Binary field snapshot:
//   8-byte magic "QHD2DF01"
//   u32 nx, u32 ny, f64 lx, f64 ly, u8 kind (0 = real, 1 = complex)   little-endian
//   nx*ny f64 values (re, im pairs for complex), row-major, x fastest
// plus a JSON sidecar <file>.json holding the same metadata and t, hbar.

inline constexpr char kSnapshotMagic[8] = {'Q', 'H', 'D', '2', 'D', 'F', '0', '1'};

struct SnapshotMeta {
  double t = 0.0;
  double hbar = 1.0;
};

struct LoadedSnapshot {
  GridPtr grid;
  std::variant<RealField, ComplexField> field;
  SnapshotMeta meta;

  bool is_complex() const noexcept { return field.index() == 1; }
};

void write_snapshot(const std::filesystem::path& path, const RealField& f, const SnapshotMeta& meta);
void write_snapshot(const std::filesystem::path& path, const ComplexField& f, const SnapshotMeta& meta);
void write_snapshot(const std::filesystem::path& path, const WaveField& psi, double t);

/// Reads a snapshot. The sidecar is optional; without it meta keeps its defaults.
LoadedSnapshot read_snapshot(const std::filesystem::path& path);

/// Reads a complex snapshot and checks it against `grid` (DimensionError on mismatch).
WaveField read_wave_snapshot(const std::filesystem::path& path, const GridPtr& grid, double hbar);

std::filesystem::path sidecar_path(const std::filesystem::path& path);

}  // namespace qhd2d
