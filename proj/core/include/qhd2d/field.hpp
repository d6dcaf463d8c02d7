#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "qhd2d/error.hpp"
#include "qhd2d/grid.hpp"

namespace qhd2d {

using cplx = std::complex<double>;

/// Samples of a scalar quantity on a grid, stored row-major with x fastest.
template <class T>
class Field {
 public:
  using value_type = T;

  Field() = default;
  explicit Field(GridPtr grid) : grid_(std::move(grid)), data_(grid_->size(), T{}) {}
  Field(GridPtr grid, T fill) : grid_(std::move(grid)), data_(grid_->size(), fill) {}
  Field(GridPtr grid, std::vector<T> data) : grid_(std::move(grid)), data_(std::move(data)) {
    if (data_.size() != grid_->size()) {
      throw DimensionError("field data length does not match grid size");
    }
  }

  const Grid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }

  std::size_t size() const noexcept { return data_.size(); }
  T& operator[](std::size_t n) noexcept { return data_[n]; }
  const T& operator[](std::size_t n) const noexcept { return data_[n]; }
  T& operator()(int i, int j) noexcept { return data_[grid_->index(i, j)]; }
  const T& operator()(int i, int j) const noexcept { return data_[grid_->index(i, j)]; }

  std::span<T> values() noexcept { return data_; }
  std::span<const T> values() const noexcept { return data_; }
  T* data() noexcept { return data_.data(); }
  const T* data() const noexcept { return data_.data(); }

  bool all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](const T& v) {
      if constexpr (std::is_same_v<T, cplx>) {
        return std::isfinite(v.real()) && std::isfinite(v.imag());
      } else {
        return std::isfinite(v);
      }
    });
  }

  /// Builds a field by evaluating fn(x, y) at every lattice point.
  template <class Fn>
  static Field sample(GridPtr grid, Fn&& fn) {
    Field f(grid);
    for (int j = 0; j < grid->ny; ++j) {
      for (int i = 0; i < grid->nx; ++i) {
        f(i, j) = static_cast<T>(fn(grid->x(i), grid->y(j)));
      }
    }
    return f;
  }

 private:
  GridPtr grid_;
  std::vector<T> data_;
};

using RealField = Field<double>;
using ComplexField = Field<cplx>;

/// Two-component field (x and y components on the same grid).
template <class T>
struct Vec2 {
  Field<T> x;
  Field<T> y;
};

using VectorField = Vec2<double>;
using ComplexVectorField = Vec2<cplx>;

/// Complex wave function together with the hbar it evolves under.
class WaveField {
 public:
  WaveField() = default;
  WaveField(ComplexField psi, double hbar);

  const Grid& grid() const noexcept { return psi_.grid(); }
  const GridPtr& grid_ptr() const noexcept { return psi_.grid_ptr(); }
  double hbar() const noexcept { return hbar_; }
  const ComplexField& psi() const noexcept { return psi_; }
  ComplexField& psi() noexcept { return psi_; }
  std::size_t size() const noexcept { return psi_.size(); }
  const cplx& operator[](std::size_t n) const noexcept { return psi_[n]; }
  cplx& operator[](std::size_t n) noexcept { return psi_[n]; }

  /// |psi|^2 at every point.
  RealField density() const;
  double max_abs() const noexcept;

 private:
  ComplexField psi_;
  double hbar_ = 1.0;
};

inline void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (&a != &b && !a.same_shape(b)) {
    throw DimensionError(std::string(what) + ": fields live on different grids");
  }
}

}  // namespace qhd2d
