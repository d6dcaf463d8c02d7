#pragma once

#include <filesystem>
#include <map>
#include <numbers>
#include <string>
#include <string_view>

#include "qhd2d/poisson.hpp"
#include "qhd2d/scheme.hpp"
#include "qhd2d/step_params.hpp"

namespace qhd2d {

struct GridConfig {
  int nx = 128;
  int ny = 128;
  double lx = 2.0 * std::numbers::pi;
  double ly = 2.0 * std::numbers::pi;
  bool operator==(const GridConfig&) const = default;
};

struct PhysicsConfig {
  double hbar = 1.0;
  double p = 3.0;
  PoissonMode poisson_mode = PoissonMode::periodic_zero_mean;
  std::string doping;  // empty: none, otherwise a real snapshot path
  bool nonlinearity = true;
  bool potential = true;
  bool operator==(const PhysicsConfig&) const = default;
};

struct TimeConfig {
  double dt = 1e-3;
  double tau = 0.1;
  double t_max = 1.0;
  bool collision = false;
  bool operator==(const TimeConfig&) const = default;
};

/// Initial condition: a named family plus its numeric parameters, or a snapshot file.
struct IcConfig {
  std::string name = "gaussian";
  std::map<std::string, double> params;
  std::string path;
  bool operator==(const IcConfig&) const = default;
};

struct OutputConfig {
  std::string out_dir;  // empty: QHD2D_OUT_DIR, then ./qhd2d_out
  int cadence = 10;
  int snapshot_every = 0;
  bool operator==(const OutputConfig&) const = default;
};

struct SimConfig {
  GridConfig grid;
  PhysicsConfig physics;
  TimeConfig time;
  IcConfig ic;
  OutputConfig output;
  bool operator==(const SimConfig&) const = default;
};

/// Parses `[section]` headers and `key = value` lines (# and ; start comments) and
/// validates the result. Errors are ConfigError and carry the line number and key.
SimConfig parse_config(std::string_view text);
/// Throws InputError naming the path when the file cannot be read.
SimConfig load_config(const std::filesystem::path& path);

/// Sets one `section.key` value; throws ConfigError for unknown keys or bad values.
/// Call validate_config afterwards.
void apply_override(SimConfig& cfg, std::string_view dotted_key, std::string_view value);

/// Re-checks every cross-field constraint; messages name the offending keys.
void validate_config(const SimConfig& cfg);

/// Text that parse_config maps back to an equal SimConfig.
std::string serialize_config(const SimConfig& cfg);

std::filesystem::path resolve_out_dir(const SimConfig& cfg);

GridPtr make_grid(const GridConfig& g);
StepParams to_step_params(const SimConfig& cfg, const GridPtr& grid);
SchemeConfig to_scheme_config(const SimConfig& cfg, const GridPtr& grid);

}  // namespace qhd2d
