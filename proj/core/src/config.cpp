#include "qhd2d/config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qhd2d/snapshot_io.hpp"

namespace qhd2d {

namespace {

constexpr std::array kIcParams = {"x0", "y0", "width", "amp", "kx_index", "ky_index", "amp_phase"};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string where(int line) { return line > 0 ? "line " + std::to_string(line) + ": " : "override: "; }

double to_double(const std::string& key, const std::string& value, int line) {
  double out = 0.0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
    throw ConfigError(where(line) + key + ": expected a finite number, got '" + value + "'");
  }
  return out;
}

int to_int(const std::string& key, const std::string& value, int line) {
  int out = 0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(where(line) + key + ": expected an integer, got '" + value + "'");
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& value, int line) {
  const std::string v = lower(value);
  if (v == "true" || v == "on" || v == "yes" || v == "1") {
    return true;
  }
  if (v == "false" || v == "off" || v == "no" || v == "0") {
    return false;
  }
  throw ConfigError(where(line) + key + ": expected true/false, got '" + value + "'");
}

std::string unquote(std::string v) {
  if (v.size() >= 2 && ((v.front() == '"' && v.back() == '"') || (v.front() == '\'' && v.back() == '\''))) {
    return v.substr(1, v.size() - 2);
  }
  return v;
}

void set_value(SimConfig& cfg, const std::string& section, const std::string& key, const std::string& raw,
               int line) {
  const std::string name = section + "." + key;
  const std::string value = unquote(raw);
  if (section == "grid") {
    if (key == "nx") return void(cfg.grid.nx = to_int(name, value, line));
    if (key == "ny") return void(cfg.grid.ny = to_int(name, value, line));
    if (key == "lx") return void(cfg.grid.lx = to_double(name, value, line));
    if (key == "ly") return void(cfg.grid.ly = to_double(name, value, line));
  } else if (section == "physics") {
    if (key == "hbar") return void(cfg.physics.hbar = to_double(name, value, line));
    if (key == "p") return void(cfg.physics.p = to_double(name, value, line));
    if (key == "poisson_mode") {
      try {
        cfg.physics.poisson_mode = parse_poisson_mode(value);
      } catch (const ConfigError& e) {
        throw ConfigError(where(line) + name + ": " + e.what());
      }
      return;
    }
    if (key == "doping") {
      const std::string v = lower(value);
      cfg.physics.doping = (v == "none" || v.empty()) ? std::string() : value;
      return;
    }
    if (key == "nonlinearity") return void(cfg.physics.nonlinearity = to_bool(name, value, line));
    if (key == "potential") return void(cfg.physics.potential = to_bool(name, value, line));
  } else if (section == "time") {
    if (key == "dt") return void(cfg.time.dt = to_double(name, value, line));
    if (key == "tau") return void(cfg.time.tau = to_double(name, value, line));
    if (key == "t_max") return void(cfg.time.t_max = to_double(name, value, line));
    if (key == "collision") return void(cfg.time.collision = to_bool(name, value, line));
  } else if (section == "ic") {
    if (key == "name") return void(cfg.ic.name = value);
    if (key == "path") return void(cfg.ic.path = value);
    if (std::find(kIcParams.begin(), kIcParams.end(), key) != kIcParams.end()) {
      cfg.ic.params[key] = to_double(name, value, line);
      return;
    }
  } else if (section == "output") {
    if (key == "out_dir") return void(cfg.output.out_dir = value);
    if (key == "cadence") return void(cfg.output.cadence = to_int(name, value, line));
    if (key == "snapshot_every") return void(cfg.output.snapshot_every = to_int(name, value, line));
  } else {
    throw ConfigError(where(line) + "unknown section '" + section + "'");
  }
  throw ConfigError(where(line) + "unknown key '" + name + "'");
}

int line_of(const std::map<std::string, int>& lines, const std::string& key) {
  const auto it = lines.find(key);
  return it == lines.end() ? 0 : it->second;
}

std::string at(const std::map<std::string, int>& lines, const std::string& key) {
  const int l = line_of(lines, key);
  return l > 0 ? "line " + std::to_string(l) + ": " : "";
}

bool is_multiple(double span, double dt) {
  const double ratio = span / dt;
  return std::abs(ratio - std::round(ratio)) <= 1e-9 * std::max(1.0, std::abs(ratio));
}

std::string num(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

void validate_with_lines(const SimConfig& c, const std::map<std::string, int>& lines) {
  const auto fail = [&](const std::string& key, const std::string& msg) {
    throw ConfigError(at(lines, key) + msg);
  };
  for (const auto& [key, n] : {std::pair{"grid.nx", c.grid.nx}, std::pair{"grid.ny", c.grid.ny}}) {
    if (n < 8 || !is_power_of_two(n)) {
      fail(key, std::string(key) + " must be a power of two >= 8 (got " + std::to_string(n) + ")");
    }
  }
  for (const auto& [key, l] : {std::pair{"grid.lx", c.grid.lx}, std::pair{"grid.ly", c.grid.ly}}) {
    if (!(l > 0.0) || !std::isfinite(l)) {
      fail(key, std::string(key) + " must be positive (got " + num(l) + ")");
    }
  }
  if (!(c.physics.hbar > 0.0)) {
    fail("physics.hbar", "physics.hbar must be positive (got " + num(c.physics.hbar) + ")");
  }
  if (!(c.physics.p >= 1.0 && c.physics.p <= 5.0)) {
    fail("physics.p", "physics.p must lie in [1, 5] (got " + num(c.physics.p) + ")");
  }
  if (!(c.time.dt > 0.0)) {
    fail("time.dt", "time.dt must be positive (got " + num(c.time.dt) + ")");
  }
  if (c.time.tau < c.time.dt) {
    const std::string l = at(lines, "time.tau").empty() ? at(lines, "time.dt") : at(lines, "time.tau");
    throw ConfigError(l + "time.tau (" + num(c.time.tau) + ") must be >= time.dt (" + num(c.time.dt) + ")");
  }
  if (!is_multiple(c.time.tau, c.time.dt)) {
    fail("time.tau", "time.tau (" + num(c.time.tau) + ") must be an integer multiple of time.dt (" +
                         num(c.time.dt) + ")");
  }
  if (!(c.time.t_max >= 0.0) || !is_multiple(c.time.t_max, c.time.dt)) {
    fail("time.t_max", "time.t_max (" + num(c.time.t_max) + ") must be a non-negative multiple of time.dt (" +
                           num(c.time.dt) + ")");
  }
  if (c.time.collision && !(c.time.tau < 1.0)) {
    fail("time.tau", "time.tau must be < 1 when time.collision is on (got " + num(c.time.tau) + ")");
  }
  static const std::array names = {"gaussian", "plane_wave", "gaussian_boosted", "vortex", "phase_bump", "file"};
  if (std::find(names.begin(), names.end(), c.ic.name) == names.end()) {
    fail("ic.name", "ic.name: unknown initial condition '" + c.ic.name + "'");
  }
  if (c.ic.name == "file" && c.ic.path.empty()) {
    fail("ic.name", "ic.name = file requires ic.path");
  }
  if (c.output.cadence < 0) {
    fail("output.cadence", "output.cadence must be non-negative");
  }
  if (c.output.snapshot_every < 0) {
    fail("output.snapshot_every", "output.snapshot_every must be non-negative");
  }
}

}  // namespace

SimConfig parse_config(std::string_view text) {
  SimConfig cfg;
  std::map<std::string, int> lines;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    if (const auto c = s.find_first_of("#;"); c != std::string::npos) {
      s.erase(c);
    }
    s = trim(s);
    if (s.empty()) {
      continue;
    }
    if (s.front() == '[') {
      if (s.back() != ']') {
        throw ConfigError(where(line) + "malformed section header '" + s + "'");
      }
      section = lower(trim(std::string_view(s).substr(1, s.size() - 2)));
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(where(line) + "expected 'key = value', got '" + s + "'");
    }
    if (section.empty()) {
      throw ConfigError(where(line) + "key outside of any [section]");
    }
    const std::string key = lower(trim(std::string_view(s).substr(0, eq)));
    const std::string value = trim(std::string_view(s).substr(eq + 1));
    set_value(cfg, section, key, value, line);
    lines[section + "." + key] = line;
  }
  validate_with_lines(cfg, lines);
  return cfg;
}

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot read config file '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void apply_override(SimConfig& cfg, std::string_view dotted_key, std::string_view value) {
  const auto dot = dotted_key.find('.');
  if (dot == std::string_view::npos) {
    throw ConfigError("override '" + std::string(dotted_key) + "' must have the form section.key");
  }
  set_value(cfg, lower(std::string(dotted_key.substr(0, dot))), lower(std::string(dotted_key.substr(dot + 1))),
            trim(value), 0);
}

void validate_config(const SimConfig& cfg) { validate_with_lines(cfg, {}); }

std::string serialize_config(const SimConfig& c) {
  std::ostringstream out;
  out.precision(17);
  const auto b = [](bool v) { return v ? "true" : "false"; };
  out << "[grid]\n"
      << "nx = " << c.grid.nx << "\n"
      << "ny = " << c.grid.ny << "\n"
      << "lx = " << c.grid.lx << "\n"
      << "ly = " << c.grid.ly << "\n\n";
  out << "[physics]\n"
      << "hbar = " << c.physics.hbar << "\n"
      << "p = " << c.physics.p << "\n"
      << "poisson_mode = " << to_string(c.physics.poisson_mode) << "\n"
      << "doping = " << (c.physics.doping.empty() ? "none" : "\"" + c.physics.doping + "\"") << "\n"
      << "nonlinearity = " << b(c.physics.nonlinearity) << "\n"
      << "potential = " << b(c.physics.potential) << "\n\n";
  out << "[time]\n"
      << "dt = " << c.time.dt << "\n"
      << "tau = " << c.time.tau << "\n"
      << "t_max = " << c.time.t_max << "\n"
      << "collision = " << b(c.time.collision) << "\n\n";
  out << "[ic]\n"
      << "name = " << c.ic.name << "\n";
  if (!c.ic.path.empty()) {
    out << "path = \"" << c.ic.path << "\"\n";
  }
  for (const auto& [k, v] : c.ic.params) {
    out << k << " = " << v << "\n";
  }
  out << "\n[output]\n";
  if (!c.output.out_dir.empty()) {
    out << "out_dir = \"" << c.output.out_dir << "\"\n";
  }
  out << "cadence = " << c.output.cadence << "\n"
      << "snapshot_every = " << c.output.snapshot_every << "\n";
  return out.str();
}

std::filesystem::path resolve_out_dir(const SimConfig& cfg) {
  if (!cfg.output.out_dir.empty()) {
    return cfg.output.out_dir;
  }
  if (const char* env = std::getenv("QHD2D_OUT_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return "qhd2d_out";
}

GridPtr make_grid(const GridConfig& g) { return make_grid(g.nx, g.ny, g.lx, g.ly); }

StepParams to_step_params(const SimConfig& cfg, const GridPtr& grid) {
  StepParams p;
  p.dt = cfg.time.dt;
  p.p = cfg.physics.p;
  p.hbar = cfg.physics.hbar;
  p.poisson_mode = cfg.physics.poisson_mode;
  p.nonlinearity_on = cfg.physics.nonlinearity;
  p.potential_on = cfg.physics.potential;
  if (!cfg.physics.doping.empty()) {
    LoadedSnapshot snap = read_snapshot(cfg.physics.doping);
    if (snap.is_complex()) {
      throw InputError("doping snapshot '" + cfg.physics.doping + "' must hold a real field");
    }
    if (!snap.grid->same_shape(*grid)) {
      throw DimensionError("doping snapshot '" + cfg.physics.doping + "' does not match the configured grid");
    }
    p.doping = std::make_shared<const RealField>(grid, std::vector<double>(std::get<RealField>(snap.field).values().begin(),
                                                                           std::get<RealField>(snap.field).values().end()));
  }
  p.validate();
  return p;
}

SchemeConfig to_scheme_config(const SimConfig& cfg, const GridPtr& grid) {
  SchemeConfig s;
  s.tau = cfg.time.tau;
  s.t_max = cfg.time.t_max;
  s.step = to_step_params(cfg, grid);
  s.collision_on = cfg.time.collision;
  s.diagnostics_cadence = cfg.output.cadence;
  s.snapshot_every = cfg.output.snapshot_every;
  s.validate();
  return s;
}

}  // namespace qhd2d
