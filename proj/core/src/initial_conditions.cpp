#include "qhd2d/initial_conditions.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "qhd2d/snapshot_io.hpp"

namespace qhd2d {

namespace {

double param(const IcConfig& ic, const char* key, double fallback) {
  const auto it = ic.params.find(key);
  return it == ic.params.end() ? fallback : it->second;
}

}  // namespace

WaveField make_initial_condition(const IcConfig& ic, const GridPtr& grid, double hbar) {
  if (ic.name == "file") {
    return read_wave_snapshot(ic.path, grid, hbar);
  }

  const double two_pi = 2.0 * std::numbers::pi;
  const double x0 = param(ic, "x0", 0.5 * grid->lx);
  const double y0 = param(ic, "y0", 0.5 * grid->ly);
  const double amp = param(ic, "amp", 1.0);
  const double kx = two_pi * std::round(param(ic, "kx_index", 0.0)) / grid->lx;
  const double ky = two_pi * std::round(param(ic, "ky_index", 0.0)) / grid->ly;
  const bool narrow = ic.name == "vortex" || ic.name == "phase_bump";
  const double width = param(ic, "width", narrow ? 1.0 / std::numbers::sqrt2 : 1.0);
  if (!(width > 0.0)) {
    throw ConfigError("ic.width must be positive");
  }
  const double inv_two_w2 = 0.5 / (width * width);

  auto envelope = [&](double x, double y) {
    const double rx = x - x0;
    const double ry = y - y0;
    return amp * std::exp(-(rx * rx + ry * ry) * inv_two_w2);
  };

  std::function<cplx(double, double)> fn;
  if (ic.name == "gaussian") {
    fn = [&](double x, double y) { return cplx(envelope(x, y), 0.0); };
  } else if (ic.name == "plane_wave") {
    fn = [&](double x, double y) { return amp * std::polar(1.0, kx * x + ky * y); };
  } else if (ic.name == "gaussian_boosted") {
    fn = [&](double x, double y) { return envelope(x, y) * std::polar(1.0, kx * x + ky * y); };
  } else if (ic.name == "vortex") {
    fn = [&](double x, double y) { return cplx(x - x0, y - y0) * envelope(x, y); };
  } else if (ic.name == "phase_bump") {
    const double eps = param(ic, "amp_phase", 0.5);
    fn = [&, eps](double x, double y) { return envelope(x, y) * std::polar(1.0, eps * std::sin(x - x0)); };
  } else {
    throw ConfigError("unknown initial condition '" + ic.name + "'");
  }
  return WaveField(ComplexField::sample(grid, fn), hbar);
}

}  // namespace qhd2d
