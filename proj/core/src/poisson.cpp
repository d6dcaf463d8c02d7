#include "qhd2d/poisson.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <tuple>

#include "qhd2d/spectral.hpp"

namespace qhd2d {

namespace {

constexpr double kInvTwoPi = 0.5 / std::numbers::pi;

// Spectra of the log and Hardy kernels on the (2nx, 2ny) padded lattice.
struct PaddedKernels {
  int px = 0;
  int py = 0;
  std::vector<cplx> log_hat;
  std::vector<cplx> hardy_x_hat;
  std::vector<cplx> hardy_y_hat;
};

// Lattice displacement for padded index m on a period of 2n.
int displacement(int m, int n) noexcept { return m < n ? m : m - 2 * n; }

std::shared_ptr<const PaddedKernels> padded_kernels(const Grid& g) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, double, double>, std::shared_ptr<const PaddedKernels>> cache;

  const auto key = std::make_tuple(g.nx, g.ny, g.lx, g.ly);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) {
      return it->second;
    }
  }

  auto k = std::make_shared<PaddedKernels>();
  k->px = 2 * g.nx;
  k->py = 2 * g.ny;
  const std::size_t total = static_cast<std::size_t>(k->px) * static_cast<std::size_t>(k->py);
  k->log_hat.assign(total, cplx{});
  k->hardy_x_hat.assign(total, cplx{});
  k->hardy_y_hat.assign(total, cplx{});
  const double h = std::sqrt(g.cell_area());
  const double da = g.cell_area();
  for (int j = 0; j < k->py; ++j) {
    const double ry = displacement(j, g.ny) * g.dy;
    for (int i = 0; i < k->px; ++i) {
      const double rx = displacement(i, g.nx) * g.dx;
      const std::size_t n = static_cast<std::size_t>(i) + static_cast<std::size_t>(k->px) * static_cast<std::size_t>(j);
      k->log_hat[n] = log_kernel(rx, ry, h) * da;
      const double r2 = rx * rx + ry * ry;
      if (r2 > 0.0) {
        k->hardy_x_hat[n] = -kInvTwoPi * rx / r2 * da;
        k->hardy_y_hat[n] = -kInvTwoPi * ry / r2 * da;
      }
    }
  }
  fft_forward_inplace(k->log_hat, k->px, k->py);
  fft_forward_inplace(k->hardy_x_hat, k->px, k->py);
  fft_forward_inplace(k->hardy_y_hat, k->px, k->py);

  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.emplace(key, std::move(k));
  return it->second;
}

std::vector<cplx> pad(const RealField& f, int px, int py) {
  const Grid& g = f.grid();
  std::vector<cplx> out(static_cast<std::size_t>(px) * static_cast<std::size_t>(py), cplx{});
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      out[static_cast<std::size_t>(i) + static_cast<std::size_t>(px) * static_cast<std::size_t>(j)] = f(i, j);
    }
  }
  return out;
}

// Circular convolution of the padded source with a precomputed kernel spectrum, truncated back.
RealField convolve(const std::vector<cplx>& source_hat, const std::vector<cplx>& kernel_hat, const GridPtr& grid,
                   int px, int py) {
  std::vector<cplx> prod(source_hat.size());
  for (std::size_t n = 0; n < prod.size(); ++n) {
    prod[n] = source_hat[n] * kernel_hat[n];
  }
  fft_inverse_inplace(prod, px, py);
  RealField out(grid);
  for (int j = 0; j < grid->ny; ++j) {
    for (int i = 0; i < grid->nx; ++i) {
      out(i, j) = prod[static_cast<std::size_t>(i) + static_cast<std::size_t>(px) * static_cast<std::size_t>(j)].real();
    }
  }
  return out;
}

RealField source_of(const RealField& rho, const RealField* doping) {
  if (rho.grid().size() == 0) {
    throw DimensionError("empty density field");
  }
  RealField src = rho;
  if (doping != nullptr) {
    require_same_grid(rho.grid(), doping->grid(), "poisson::solve");
    for (std::size_t n = 0; n < src.size(); ++n) {
      src[n] -= (*doping)[n];
    }
  }
  return src;
}

void guard_oracle(const Grid& g) {
  if (g.size() > kOracleMaxPoints) {
    throw RefusalError("quadrature oracle refuses grids larger than 128x128 (got " + std::to_string(g.nx) + "x" +
                       std::to_string(g.ny) + ")");
  }
}

RealField periodic_potential(const RealField& src) {
  const Grid& g = src.grid();
  ComplexField hat = fft_forward(to_complex(src));
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const double kx = g.kx[static_cast<std::size_t>(i)];
      const double ky = g.ky[static_cast<std::size_t>(j)];
      const double k2 = kx * kx + ky * ky;
      hat(i, j) = (k2 > 0.0) ? hat(i, j) / k2 : cplx(0.0, 0.0);
    }
  }
  const ComplexField v = fft_inverse(hat);
  RealField out(src.grid_ptr());
  for (std::size_t n = 0; n < out.size(); ++n) {
    out[n] = v[n].real();
  }
  return out;
}

// Kernel values for every lattice displacement (di, dj) in (-n, n), evaluated once.
class DisplacementTable {
 public:
  DisplacementTable(const Grid& g, double self_value, bool log_weights)
      : wx_(2 * g.nx - 1), nx_(g.nx), ny_(g.ny), values_(static_cast<std::size_t>(wx_) * static_cast<std::size_t>(2 * g.ny - 1)) {
    for (int dj = -(g.ny - 1); dj < g.ny; ++dj) {
      for (int di = -(g.nx - 1); di < g.nx; ++di) {
        const double rx = di * g.dx;
        const double ry = dj * g.dy;
        const double r2 = rx * rx + ry * ry;
        at(di, dj) = (r2 == 0.0) ? self_value : (log_weights ? 0.5 * std::log(r2) : -kInvTwoPi * 0.5 * std::log(r2));
      }
    }
  }
  double& at(int di, int dj) noexcept {
    return values_[static_cast<std::size_t>(di + nx_ - 1) + static_cast<std::size_t>(wx_) * static_cast<std::size_t>(dj + ny_ - 1)];
  }
  double at(int di, int dj) const noexcept {
    return values_[static_cast<std::size_t>(di + nx_ - 1) + static_cast<std::size_t>(wx_) * static_cast<std::size_t>(dj + ny_ - 1)];
  }

 private:
  int wx_;
  int nx_;
  int ny_;
  std::vector<double> values_;
};

RealField oracle_potential(const RealField& src) {
  const Grid& g = src.grid();
  guard_oracle(g);
  const double h = std::sqrt(g.cell_area());
  const double da = g.cell_area();
  const DisplacementTable kernel(g, log_kernel(0.0, 0.0, h), false);
  RealField v(src.grid_ptr());
  for (int tj = 0; tj < g.ny; ++tj) {
    for (int ti = 0; ti < g.nx; ++ti) {
      double acc = 0.0;
      for (int sj = 0; sj < g.ny; ++sj) {
        for (int si = 0; si < g.nx; ++si) {
          acc += kernel.at(ti - si, tj - sj) * src(si, sj);
        }
      }
      v(ti, tj) = acc * da;
    }
  }
  return v;
}

bool has_net_charge(const RealField* doping) {
  if (doping == nullptr) {
    return false;
  }
  const double total = integrate(*doping);
  double scale = 0.0;
  for (double c : doping->values()) {
    scale += std::abs(c);
  }
  scale *= doping->grid().cell_area();
  return std::abs(total) > 1e-12 * std::max(scale, 1e-300);
}

}  // namespace

std::string to_string(PoissonMode mode) {
  switch (mode) {
    case PoissonMode::periodic_zero_mean:
      return "periodic_zero_mean";
    case PoissonMode::free_space_padded:
      return "free_space_padded";
    case PoissonMode::quadrature_oracle:
      return "quadrature_oracle";
  }
  return "unknown";
}

PoissonMode parse_poisson_mode(std::string_view text) {
  if (text == "periodic_zero_mean" || text == "periodic") {
    return PoissonMode::periodic_zero_mean;
  }
  if (text == "free_space_padded" || text == "free_space") {
    return PoissonMode::free_space_padded;
  }
  if (text == "quadrature_oracle" || text == "oracle") {
    return PoissonMode::quadrature_oracle;
  }
  throw ConfigError("unknown Poisson mode '" + std::string(text) +
                    "' (expected periodic_zero_mean, free_space_padded or quadrature_oracle)");
}

double log_kernel(double rx, double ry, double h) noexcept {
  const double r2 = rx * rx + ry * ry;
  if (r2 == 0.0) {
    return -kInvTwoPi * (std::log(h) - 1.5);
  }
  return -kInvTwoPi * 0.5 * std::log(r2);
}

PoissonSolution solve(const RealField& rho, const RealField* doping, PoissonMode mode) {
  RealField src = source_of(rho, doping);
  PoissonSolution out;
  switch (mode) {
    case PoissonMode::periodic_zero_mean:
      // Dropping the k = 0 mode removes the source mean.
      out.v = periodic_potential(src);
      break;
    case PoissonMode::free_space_padded: {
      const auto k = padded_kernels(src.grid());
      auto hat = pad(src, k->px, k->py);
      fft_forward_inplace(hat, k->px, k->py);
      out.v = convolve(hat, k->log_hat, src.grid_ptr(), k->px, k->py);
      out.doping_mean_warning = has_net_charge(doping);
      break;
    }
    case PoissonMode::quadrature_oracle:
      out.v = oracle_potential(src);
      out.doping_mean_warning = has_net_charge(doping);
      break;
  }
  return out;
}

VectorField grad_v(const RealField& rho, const RealField* doping, PoissonMode mode) {
  RealField src = source_of(rho, doping);
  const Grid& g = src.grid();
  switch (mode) {
    case PoissonMode::periodic_zero_mean:
      return gradient(periodic_potential(src));
    case PoissonMode::free_space_padded: {
      const auto k = padded_kernels(g);
      auto hat = pad(src, k->px, k->py);
      fft_forward_inplace(hat, k->px, k->py);
      return {convolve(hat, k->hardy_x_hat, src.grid_ptr(), k->px, k->py),
              convolve(hat, k->hardy_y_hat, src.grid_ptr(), k->px, k->py)};
    }
    case PoissonMode::quadrature_oracle: {
      guard_oracle(g);
      const double da = g.cell_area();
      VectorField out{RealField(src.grid_ptr()), RealField(src.grid_ptr())};
      for (int tj = 0; tj < g.ny; ++tj) {
        for (int ti = 0; ti < g.nx; ++ti) {
          double ax = 0.0;
          double ay = 0.0;
          for (int sj = 0; sj < g.ny; ++sj) {
            const double ry = (tj - sj) * g.dy;
            for (int si = 0; si < g.nx; ++si) {
              const double rx = (ti - si) * g.dx;
              const double r2 = rx * rx + ry * ry;
              if (r2 == 0.0) {
                continue;
              }
              const double w = src(si, sj) / r2;
              ax += rx * w;
              ay += ry * w;
            }
          }
          out.x(ti, tj) = -kInvTwoPi * ax * da;
          out.y(ti, tj) = -kInvTwoPi * ay * da;
        }
      }
      return out;
    }
  }
  throw ConfigError("unknown Poisson mode");
}

PotentialEnergy potential_energy(const RealField& rho, const RealField& v) {
  require_same_grid(rho.grid(), v.grid(), "potential_energy");
  PotentialEnergy e;
  e.half_v_rho = 0.5 * inner(v, rho);
  const VectorField gv = gradient(v);
  const double n = norm_l2(gv);
  e.half_grad_v_sq = 0.5 * n * n;
  return e;
}

double log_interaction_oracle(const RealField& f) {
  const Grid& g = f.grid();
  guard_oracle(g);
  const double self = std::log(std::sqrt(g.cell_area())) - 1.5;
  const double da = g.cell_area();
  const DisplacementTable logs(g, self, true);
  double acc = 0.0;
  for (int aj = 0; aj < g.ny; ++aj) {
    for (int ai = 0; ai < g.nx; ++ai) {
      const double fa = f(ai, aj);
      if (fa == 0.0) {
        continue;
      }
      double row = 0.0;
      for (int bj = 0; bj < g.ny; ++bj) {
        for (int bi = 0; bi < g.nx; ++bi) {
          row += logs.at(ai - bi, aj - bj) * f(bi, bj);
        }
      }
      acc += fa * row;
    }
  }
  return acc * da * da;
}

double log_interaction_fast(const RealField& f) {
  // sum f_i (G * f)_i dA with G = -(1/2pi) log  =>  sum f f log = -2 pi int f V.
  const RealField v = solve(f, PoissonMode::free_space_padded).v;
  return -2.0 * std::numbers::pi * inner(f, v);
}

}  // namespace qhd2d
