#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace qhd2d {

/// Periodic rectangle [0, lx) x [0, ly) sampled on an nx-by-ny lattice.
///
/// Point (i, j) sits at x = i*dx, y = j*dy and is stored at index i + nx*j
/// (row-major, x fastest). The wavenumber tables follow the usual DFT ordering:
/// non-negative frequencies first, the Nyquist frequency stored as negative.
struct Grid {
  int nx = 0;
  int ny = 0;
  double lx = 0.0;
  double ly = 0.0;
  double dx = 0.0;
  double dy = 0.0;
  std::vector<double> kx;
  std::vector<double> ky;

  std::size_t size() const noexcept { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(nx) * static_cast<std::size_t>(j);
  }
  double x(int i) const noexcept { return i * dx; }
  double y(int j) const noexcept { return j * dy; }
  double cell_area() const noexcept { return dx * dy; }
  double area() const noexcept { return lx * ly; }

  /// Wavenumbers used by first-derivative operators: the Nyquist entry is zeroed.
  double kx_odd(int i) const noexcept { return (nx % 2 == 0 && i == nx / 2) ? 0.0 : kx[static_cast<std::size_t>(i)]; }
  double ky_odd(int j) const noexcept { return (ny % 2 == 0 && j == ny / 2) ? 0.0 : ky[static_cast<std::size_t>(j)]; }

  bool same_shape(const Grid& other) const noexcept {
    return nx == other.nx && ny == other.ny && lx == other.lx && ly == other.ly;
  }
};

using GridPtr = std::shared_ptr<const Grid>;

/// Builds a validated grid. Throws ConfigError unless nx, ny are powers of two
/// no smaller than 8 and lx, ly are positive and finite.
GridPtr make_grid(int nx, int ny, double lx, double ly);

/// DFT-ordered angular wavenumbers for n samples over a period of `length`.
std::vector<double> fft_wavenumbers(int n, double length);

bool is_power_of_two(long long n) noexcept;

}  // namespace qhd2d
