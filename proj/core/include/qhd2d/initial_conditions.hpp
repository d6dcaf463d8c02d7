#pragma once

#include "qhd2d/config.hpp"
#include "qhd2d/field.hpp"

namespace qhd2d {

/// Builds psi0 on `grid` from an initial-condition block.
///
///   gaussian          amp exp(-r^2 / (2 width^2))                  x0, y0, width = 1, amp = 1
///   plane_wave        amp exp(i (kx x + ky y)), k = 2 pi index / L  kx_index, ky_index, amp
///   gaussian_boosted  gaussian times the plane-wave factor
///   vortex            amp ((x - x0) + i (y - y0)) exp(-r^2 / (2 width^2)), width = 1/sqrt(2)
///   phase_bump        amp exp(-r^2 / (2 width^2)) exp(i amp_phase sin(x - x0)), width = 1/sqrt(2)
///   file              complex snapshot at ic.path (DimensionError on a grid mismatch)
///
/// Centres default to the middle of the box; wave indices are rounded to the lattice.
WaveField make_initial_condition(const IcConfig& ic, const GridPtr& grid, double hbar);

}  // namespace qhd2d
