#include "qhd2d/spectral.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <tuple>

namespace qhd2d {

namespace {

// FFTW's planner is not re-entrant; execution of an existing plan on new arrays is.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(int nx, int ny, int sign) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(nx, ny, sign);
    if (auto it = plans_.find(key); it != plans_.end()) {
      return it->second;
    }
    std::vector<cplx> scratch(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft_2d(ny, nx, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

  PlanCache(const PlanCache&) = delete;
  PlanCache& operator=(const PlanCache&) = delete;

 private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [key, plan] : plans_) {
      fftw_destroy_plan(plan);
    }
  }

  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

void execute(std::vector<cplx>& data, int nx, int ny, int sign) {
  fftw_plan plan = PlanCache::instance().get(nx, ny, sign);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
}

std::vector<cplx> copy_values(const ComplexField& f) { return {f.values().begin(), f.values().end()}; }

// Applies a spectral multiplier m(kx_index, ky_index) to f.
template <class Multiplier>
ComplexField apply_multiplier(const ComplexField& f, Multiplier&& m) {
  const Grid& g = f.grid();
  auto data = copy_values(f);
  execute(data, g.nx, g.ny, FFTW_FORWARD);
  const double norm = 1.0 / static_cast<double>(g.size());
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      data[g.index(i, j)] *= m(i, j) * norm;
    }
  }
  execute(data, g.nx, g.ny, FFTW_BACKWARD);
  return ComplexField(f.grid_ptr(), std::move(data));
}

}  // namespace

ComplexField fft_forward(const ComplexField& f) {
  auto data = copy_values(f);
  execute(data, f.grid().nx, f.grid().ny, FFTW_FORWARD);
  return ComplexField(f.grid_ptr(), std::move(data));
}

ComplexField fft_inverse(const ComplexField& spectrum) {
  auto data = copy_values(spectrum);
  const Grid& g = spectrum.grid();
  execute(data, g.nx, g.ny, FFTW_BACKWARD);
  const double norm = 1.0 / static_cast<double>(g.size());
  for (auto& v : data) {
    v *= norm;
  }
  return ComplexField(spectrum.grid_ptr(), std::move(data));
}

void fft_forward_inplace(std::vector<cplx>& data, int nx, int ny) {
  if (data.size() != static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny)) {
    throw DimensionError("transform buffer length does not match its shape");
  }
  execute(data, nx, ny, FFTW_FORWARD);
}

void fft_inverse_inplace(std::vector<cplx>& data, int nx, int ny) {
  if (data.size() != static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny)) {
    throw DimensionError("transform buffer length does not match its shape");
  }
  execute(data, nx, ny, FFTW_BACKWARD);
  const double norm = 1.0 / static_cast<double>(data.size());
  for (auto& v : data) {
    v *= norm;
  }
}

ComplexField to_complex(const RealField& f) {
  std::vector<cplx> data(f.values().begin(), f.values().end());
  return ComplexField(f.grid_ptr(), std::move(data));
}

RealField real_part(const ComplexField& f, double tol) {
  RealField out(f.grid_ptr());
  double scale = 0.0;
  double residue = 0.0;
  for (std::size_t n = 0; n < f.size(); ++n) {
    out[n] = f[n].real();
    scale = std::max(scale, std::abs(f[n]));
    residue = std::max(residue, std::abs(f[n].imag()));
  }
  if (residue > tol * scale && residue > 1e-300) {
    throw InputError("imaginary residue " + std::to_string(residue) + " exceeds tolerance for a real result");
  }
  return out;
}

ComplexField derivative(const ComplexField& f, int axis) {
  const Grid& g = f.grid();
  if (axis == 0) {
    return apply_multiplier(f, [&](int i, int) { return cplx(0.0, g.kx_odd(i)); });
  }
  return apply_multiplier(f, [&](int, int j) { return cplx(0.0, g.ky_odd(j)); });
}

RealField derivative(const RealField& f, int axis) {
  // Nyquist derivative is zeroed, so the multiplier is Hermitian and the
  // imaginary part is rounding noise only.
  const ComplexField d = derivative(to_complex(f), axis);
  RealField out(f.grid_ptr());
  for (std::size_t n = 0; n < d.size(); ++n) {
    out[n] = d[n].real();
  }
  return out;
}

ComplexVectorField gradient(const ComplexField& f) { return {derivative(f, 0), derivative(f, 1)}; }

VectorField gradient(const RealField& f) { return {derivative(f, 0), derivative(f, 1)}; }

ComplexField laplacian(const ComplexField& f) {
  const Grid& g = f.grid();
  return apply_multiplier(f, [&](int i, int j) {
    const double kx = g.kx[static_cast<std::size_t>(i)];
    const double ky = g.ky[static_cast<std::size_t>(j)];
    return cplx(-(kx * kx + ky * ky), 0.0);
  });
}

RealField laplacian(const RealField& f) {
  const ComplexField l = laplacian(to_complex(f));
  RealField out(f.grid_ptr());
  for (std::size_t n = 0; n < l.size(); ++n) {
    out[n] = l[n].real();
  }
  return out;
}

RealField divergence(const VectorField& v) {
  require_same_grid(v.x.grid(), v.y.grid(), "divergence");
  const RealField dx = derivative(v.x, 0);
  const RealField dy = derivative(v.y, 1);
  RealField out(v.x.grid_ptr());
  for (std::size_t n = 0; n < out.size(); ++n) {
    out[n] = dx[n] + dy[n];
  }
  return out;
}

RealField curl(const VectorField& v) {
  require_same_grid(v.x.grid(), v.y.grid(), "curl");
  const RealField dxvy = derivative(v.y, 0);
  const RealField dyvx = derivative(v.x, 1);
  RealField out(v.x.grid_ptr());
  for (std::size_t n = 0; n < out.size(); ++n) {
    out[n] = dxvy[n] - dyvx[n];
  }
  return out;
}

double integrate(const RealField& f) {
  const auto v = f.values();
  return std::accumulate(v.begin(), v.end(), 0.0) * f.grid().cell_area();
}

cplx integrate(const ComplexField& f) {
  const auto v = f.values();
  return std::accumulate(v.begin(), v.end(), cplx(0.0, 0.0)) * f.grid().cell_area();
}

cplx inner(const ComplexField& f, const ComplexField& g) {
  require_same_grid(f.grid(), g.grid(), "inner");
  cplx s(0.0, 0.0);
  for (std::size_t n = 0; n < f.size(); ++n) {
    s += std::conj(f[n]) * g[n];
  }
  return s * f.grid().cell_area();
}

double inner(const RealField& f, const RealField& g) {
  require_same_grid(f.grid(), g.grid(), "inner");
  double s = 0.0;
  for (std::size_t n = 0; n < f.size(); ++n) {
    s += f[n] * g[n];
  }
  return s * f.grid().cell_area();
}

double norm_l2(const ComplexField& f) {
  double s = 0.0;
  for (const auto& v : f.values()) {
    s += std::norm(v);
  }
  return std::sqrt(s * f.grid().cell_area());
}

double norm_l2(const RealField& f) {
  double s = 0.0;
  for (const auto& v : f.values()) {
    s += v * v;
  }
  return std::sqrt(s * f.grid().cell_area());
}

double norm_l2(const VectorField& v) { return std::hypot(norm_l2(v.x), norm_l2(v.y)); }

double norm_l2(const ComplexVectorField& v) { return std::hypot(norm_l2(v.x), norm_l2(v.y)); }

double max_abs(const RealField& f) {
  double m = 0.0;
  for (const auto& v : f.values()) {
    m = std::max(m, std::abs(v));
  }
  return m;
}

double max_abs(const ComplexField& f) {
  double m = 0.0;
  for (const auto& v : f.values()) {
    m = std::max(m, std::abs(v));
  }
  return m;
}

}  // namespace qhd2d
