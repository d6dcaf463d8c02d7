#include "qhd2d/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qhd2d/error.hpp"

namespace qhd2d {

namespace {

constexpr int kMinPoints = 8;

}  // namespace

std::vector<double> fft_wavenumbers(int n, double length) {
  std::vector<double> k(static_cast<std::size_t>(n));
  const double base = 2.0 * std::numbers::pi / length;
  for (int m = 0; m < n; ++m) {
    const int freq = (m < (n + 1) / 2) ? m : m - n;
    k[static_cast<std::size_t>(m)] = base * freq;
  }
  return k;
}

bool is_power_of_two(long long n) noexcept { return n > 0 && (n & (n - 1)) == 0; }

GridPtr make_grid(int nx, int ny, double lx, double ly) {
  if (!is_power_of_two(nx) || !is_power_of_two(ny)) {
    throw ConfigError("grid sizes must be powers of two (got nx=" + std::to_string(nx) +
                      ", ny=" + std::to_string(ny) + ")");
  }
  if (nx < kMinPoints || ny < kMinPoints) {
    throw ConfigError("grid sizes must be at least " + std::to_string(kMinPoints) + " (got nx=" +
                      std::to_string(nx) + ", ny=" + std::to_string(ny) + ")");
  }
  if (!(lx > 0.0) || !(ly > 0.0) || !std::isfinite(lx) || !std::isfinite(ly)) {
    throw ConfigError("domain lengths lx, ly must be positive and finite");
  }
  auto g = std::make_shared<Grid>();
  g->nx = nx;
  g->ny = ny;
  g->lx = lx;
  g->ly = ly;
  g->dx = lx / nx;
  g->dy = ly / ny;
  g->kx = fft_wavenumbers(nx, lx);
  g->ky = fft_wavenumbers(ny, ly);
  return g;
}

}  // namespace qhd2d
