#pragma once

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <string>

#include "qhd2d/config.hpp"
#include "qhd2d/field.hpp"
#include "qhd2d/initial_conditions.hpp"

namespace qhd2d::test {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline GridPtr torus(int n = 32) { return make_grid(n, n, kTwoPi, kTwoPi); }

inline WaveField ic(const char* name, const GridPtr& g, std::map<std::string, double> params = {}, double hbar = 1.0) {
  IcConfig c;
  c.name = name;
  c.params = std::move(params);
  return make_initial_condition(c, g, hbar);
}

/// Smooth random periodic field: a few low Fourier modes with seeded coefficients.
inline RealField smooth_random(const GridPtr& g, unsigned seed, int modes = 4) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> d(0.0, 1.0);
  RealField f(g);
  for (int a = -modes; a <= modes; ++a) {
    for (int b = -modes; b <= modes; ++b) {
      const double c = d(rng);
      const double s = d(rng);
      for (int j = 0; j < g->ny; ++j) {
        for (int i = 0; i < g->nx; ++i) {
          const double th = kTwoPi * (a * g->x(i) / g->lx + b * g->y(j) / g->ly);
          f(i, j) += c * std::cos(th) + s * std::sin(th);
        }
      }
    }
  }
  return f;
}

inline double max_diff(const RealField& a, const RealField& b) {
  double m = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) {
    m = std::max(m, std::abs(a[n] - b[n]));
  }
  return m;
}

inline double max_diff(const ComplexField& a, const ComplexField& b) {
  double m = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) {
    m = std::max(m, std::abs(a[n] - b[n]));
  }
  return m;
}

}  // namespace qhd2d::test
