#include "qhd2d/snapshot_io.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <json.hpp>

namespace qhd2d {

namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <class T>
void put(std::ostream& out, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(std::begin(bytes), std::end(bytes));
  }
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <class T>
T get(std::istream& in, const std::filesystem::path& path) {
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T))) {
    throw InputError("truncated snapshot file: " + path.string());
  }
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(std::begin(bytes), std::end(bytes));
  }
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

void write_header(std::ostream& out, const Grid& g, std::uint8_t kind) {
  out.write(kSnapshotMagic, sizeof(kSnapshotMagic));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.nx));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.ny));
  put<double>(out, g.lx);
  put<double>(out, g.ly);
  put<std::uint8_t>(out, kind);
}

void write_sidecar(const std::filesystem::path& path, const Grid& g, int kind, const SnapshotMeta& meta) {
  nlohmann::json j;
  j["magic"] = std::string(kSnapshotMagic, sizeof(kSnapshotMagic));
  j["nx"] = g.nx;
  j["ny"] = g.ny;
  j["lx"] = g.lx;
  j["ly"] = g.ly;
  j["kind"] = kind == 0 ? "real" : "complex";
  j["t"] = meta.t;
  j["hbar"] = meta.hbar;
  std::ofstream out(sidecar_path(path));
  if (!out) {
    throw InputError("cannot write snapshot sidecar for " + path.string());
  }
  out << j.dump(2) << '\n';
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw InputError("cannot open snapshot for writing: " + path.string());
  }
  return out;
}

}  // namespace

std::filesystem::path sidecar_path(const std::filesystem::path& path) {
  auto p = path;
  p += ".json";
  return p;
}

void write_snapshot(const std::filesystem::path& path, const RealField& f, const SnapshotMeta& meta) {
  auto out = open_out(path);
  write_header(out, f.grid(), 0);
  for (double v : f.values()) {
    put<double>(out, v);
  }
  write_sidecar(path, f.grid(), 0, meta);
}

void write_snapshot(const std::filesystem::path& path, const ComplexField& f, const SnapshotMeta& meta) {
  auto out = open_out(path);
  write_header(out, f.grid(), 1);
  for (const cplx& v : f.values()) {
    put<double>(out, v.real());
    put<double>(out, v.imag());
  }
  write_sidecar(path, f.grid(), 1, meta);
}

void write_snapshot(const std::filesystem::path& path, const WaveField& psi, double t) {
  write_snapshot(path, psi.psi(), SnapshotMeta{t, psi.hbar()});
}

LoadedSnapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InputError("cannot open snapshot: " + path.string());
  }
  char magic[sizeof(kSnapshotMagic)];
  if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kSnapshotMagic, sizeof(magic)) != 0) {
    throw InputError("not a QHD2DF01 snapshot: " + path.string());
  }
  const auto nx = get<std::uint32_t>(in, path);
  const auto ny = get<std::uint32_t>(in, path);
  const auto lx = get<double>(in, path);
  const auto ly = get<double>(in, path);
  const auto kind = get<std::uint8_t>(in, path);
  if (kind > 1) {
    throw InputError("unknown snapshot kind " + std::to_string(kind) + " in " + path.string());
  }

  LoadedSnapshot snap;
  snap.grid = make_grid(static_cast<int>(nx), static_cast<int>(ny), lx, ly);
  if (kind == 0) {
    RealField f(snap.grid);
    for (auto& v : f.values()) {
      v = get<double>(in, path);
    }
    snap.field = std::move(f);
  } else {
    ComplexField f(snap.grid);
    for (auto& v : f.values()) {
      const double re = get<double>(in, path);
      const double im = get<double>(in, path);
      v = cplx(re, im);
    }
    snap.field = std::move(f);
  }

  if (std::ifstream side(sidecar_path(path)); side) {
    const auto j = nlohmann::json::parse(side, nullptr, false);
    if (!j.is_discarded()) {
      snap.meta.t = j.value("t", 0.0);
      snap.meta.hbar = j.value("hbar", 1.0);
    }
  }
  return snap;
}

WaveField read_wave_snapshot(const std::filesystem::path& path, const GridPtr& grid, double hbar) {
  auto snap = read_snapshot(path);
  if (!snap.grid->same_shape(*grid)) {
    throw DimensionError("snapshot " + path.string() + " has grid " + std::to_string(snap.grid->nx) + "x" +
                         std::to_string(snap.grid->ny) + " on " + std::to_string(snap.grid->lx) + "x" +
                         std::to_string(snap.grid->ly) + ", which does not match the configured grid");
  }
  if (!snap.is_complex()) {
    throw InputError("snapshot " + path.string() + " holds a real field, expected a wave function");
  }
  const auto& f = std::get<ComplexField>(snap.field);
  return WaveField(ComplexField(grid, std::vector<cplx>(f.values().begin(), f.values().end())), hbar);
}

}  // namespace qhd2d
