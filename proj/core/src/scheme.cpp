#include "qhd2d/scheme.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>

#include "qhd2d/propagator.hpp"
#include "qhd2d/spectral.hpp"

namespace qhd2d {

namespace {

std::string num(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

bool divides(double span, double dt) {
  const double ratio = span / dt;
  return std::abs(ratio - std::round(ratio)) <= 1e-9 * std::max(1.0, std::abs(ratio));
}

double diff_l2(const RealField& a, const RealField& b) {
  double acc = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) {
    acc += (a[n] - b[n]) * (a[n] - b[n]);
  }
  return std::sqrt(acc * a.grid().cell_area());
}

}  // namespace

void SchemeConfig::validate() const {
  step.validate();
  const double dt = step.dt;
  if (!(dt > 0.0)) {
    throw ConfigError("time.dt must be positive for the scheme (got " + num(dt) + ")");
  }
  if (!(tau >= dt)) {
    throw ConfigError("time.tau (" + num(tau) + ") must be >= time.dt (" + num(dt) + ")");
  }
  if (!divides(tau, dt)) {
    throw ConfigError("time.tau (" + num(tau) + ") must be an integer multiple of time.dt (" + num(dt) + ")");
  }
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) {
    throw ConfigError("time.t_max must be non-negative and finite");
  }
  if (!divides(t_max, dt)) {
    throw ConfigError("time.t_max (" + num(t_max) + ") must be an integer multiple of time.dt (" + num(dt) + ")");
  }
  if (collision_on && !(tau < 1.0)) {
    throw ConfigError("time.tau must be < 1 when collisions are on (got " + num(tau) + ")");
  }
  if (diagnostics_cadence < 0 || snapshot_every < 0) {
    throw ConfigError("cadences must be non-negative");
  }
}

int SchemeConfig::steps_per_strip() const { return step_count(tau, step.dt); }

int SchemeConfig::strip_count() const {
  return static_cast<int>(std::floor(t_max / tau + 1e-9));
}

int SchemeConfig::trailing_steps() const {
  return step_count(t_max, step.dt) - strip_count() * steps_per_strip();
}

SchemeResult run(const WaveField& psi0, const SchemeConfig& cfg) {
  cfg.validate();
  const int per_strip = cfg.steps_per_strip();
  const int strips = cfg.strip_count();
  const int trailing = cfg.trailing_steps();
  const double dt = cfg.step.dt;
  const double reference = psi0.max_abs();
  const double eps = cfg.vacuum_eps.value_or(default_vacuum_eps(psi0));

  SchemeResult out;
  out.psi = psi0;
  out.trajectory.tau = cfg.tau;
  out.trajectory.snapshot_dt = cfg.snapshot_every * dt;
  out.trajectory.collisional = cfg.collision_on;
  out.trajectory.params = cfg.step;
  if (cfg.snapshot_every > 0) {
    out.trajectory.snapshots.push_back({0.0, Side::interior, psi0});
  }

  auto segment = [&](int k, int steps, double t0) {
    const int first_global = (k - 1) * per_strip;
    PropagateOptions opt;
    opt.t0 = t0;
    opt.diagnostics_cadence = cfg.diagnostics_cadence;
    opt.reference_max = reference;
    if (cfg.snapshot_every > 0) {
      opt.observer = [&, first_global, steps](double t, const WaveField& psi) {
        const int s = static_cast<int>(std::lround((t - t0) / dt));
        if (s == steps && cfg.collision_on && steps == per_strip) {
          return;  // the boundary is stored with both one-sided values below
        }
        if ((first_global + s) % cfg.snapshot_every == 0) {
          out.trajectory.snapshots.push_back({t, Side::interior, psi});
        }
      };
    }
    try {
      PropagationResult pr = propagate(out.psi, steps * dt, cfg.step, opt);
      const bool skip_first = !out.records.empty();
      for (std::size_t i = skip_first ? 1 : 0; i < pr.records.size(); ++i) {
        out.records.push_back(pr.records[i]);
        out.record_strip.push_back(k - 1);
      }
      out.psi = std::move(pr.psi);
    } catch (const BlowUpError& e) {
      throw BlowUpError(std::string(e.what()) + " (strip " + std::to_string(k) + ")", e.last_good_time(), k);
    }
  };

  for (int k = 1; k <= strips; ++k) {
    const double t_start = (k - 1) * cfg.tau;
    const double t_end = k * cfg.tau;
    segment(k, per_strip, t_start);

    const DiagnosticsRecord pre = record(out.psi, cfg.step, t_end);
    StripRecord sr;
    sr.k = k;
    sr.t = t_end;
    sr.energy_pre = pre.energy_wave;
    if (cfg.collision_on) {
      if (cfg.snapshot_every > 0) {
        out.trajectory.snapshots.push_back({t_end, Side::before_update, out.psi});
      }
      auto [updated, rep] = collision_update(out.psi, cfg.tau, eps);
      sr.mass_pre = rep.mass_before;
      sr.mass_post = rep.mass_after;
      sr.j_l2_pre = rep.j_l2_before;
      sr.j_l2_post = rep.j_l2_after;
      sr.lambda_l2_pre = rep.lambda_l2_before;
      sr.update_grad_residual = rep.grad_residual;
      out.psi = std::move(updated);
      const DiagnosticsRecord post = record(out.psi, cfg.step, t_end);
      sr.energy_post = post.energy_wave;
      if (cfg.diagnostics_cadence > 0) {
        out.records.push_back(post);
        out.record_strip.push_back(k);
      }
      if (cfg.snapshot_every > 0) {
        out.trajectory.snapshots.push_back({t_end, Side::after_update, out.psi});
      }
    } else {
      sr.mass_pre = sr.mass_post = pre.mass;
      sr.j_l2_pre = sr.j_l2_post = norm_l2(moments(out.psi, eps).j);
      sr.lambda_l2_pre = pre.lambda_l2;
      sr.energy_post = pre.energy_wave;
    }
    out.strips.push_back(sr);
  }
  if (trailing > 0) {
    segment(strips + 1, trailing, strips * cfg.tau);
  }
  return out;
}

EnergyInequalityReport energy_inequality(const SchemeResult& result, double tau, double e0, double slack) {
  std::vector<double> dissipation(result.strips.size() + 1, 0.0);
  for (std::size_t k = 0; k < result.strips.size(); ++k) {
    const double l = result.strips[k].lambda_l2_pre;
    dissipation[k + 1] = dissipation[k] + l * l;
  }
  EnergyInequalityReport rep;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < result.records.size(); ++i) {
    const int n = std::min<int>(result.record_strip[i], static_cast<int>(result.strips.size()));
    const double bound = -0.5 * tau * dissipation[static_cast<std::size_t>(n)] + (1.0 + tau) * e0 + slack;
    const double margin = bound - result.records[i].energy_hydro;
    if (margin < rep.worst_margin) {
      rep.worst_margin = margin;
      rep.worst_t = result.records[i].t;
    }
    ++rep.checked;
  }
  if (rep.checked == 0) {
    rep.worst_margin = 0.0;
  }
  rep.holds = rep.worst_margin >= 0.0;
  return rep;
}

std::vector<TauStudyRow> tau_convergence_study(const WaveField& psi0, const SchemeConfig& base,
                                               std::span<const double> taus, int jobs) {
  if (taus.empty()) {
    throw ConfigError("tau study needs at least one tau");
  }
  for (std::size_t i = 1; i < taus.size(); ++i) {
    if (!(taus[i] < taus[i - 1])) {
      throw ConfigError("tau study: taus must be strictly decreasing");
    }
  }
  // Every tau and tau/2, shared entries run once.
  std::vector<double> run_taus;
  auto slot_of = [&](double t) {
    for (std::size_t i = 0; i < run_taus.size(); ++i) {
      if (std::abs(run_taus[i] - t) <= 1e-12 * t) {
        return i;
      }
    }
    run_taus.push_back(t);
    return run_taus.size() - 1;
  };
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (double t : taus) {
    const std::size_t a = slot_of(t);
    pairs.emplace_back(a, slot_of(0.5 * t));
  }
  std::vector<SchemeConfig> cfgs;
  for (double t : run_taus) {
    SchemeConfig c = base;
    c.tau = t;
    c.diagnostics_cadence = 0;
    c.snapshot_every = 0;
    c.validate();
    cfgs.push_back(c);
  }

  std::vector<WaveField> finals(cfgs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < cfgs.size(); i = next++) {
      try {
        finals[i] = run(psi0, cfgs[i]).psi;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) {
          failure = std::current_exception();
        }
      }
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(cfgs.size())));
  std::vector<std::thread> pool;
  for (int w = 1; w < threads; ++w) {
    pool.emplace_back(worker);
  }
  worker();
  for (auto& t : pool) {
    t.join();
  }
  if (failure) {
    std::rethrow_exception(failure);
  }

  std::vector<TauStudyRow> rows;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const HydroMoments a = moments(finals[pairs[i].first]);
    const HydroMoments b = moments(finals[pairs[i].second]);
    TauStudyRow row;
    row.tau = taus[i];
    row.rho_diff = diff_l2(a.rho, b.rho);
    row.j_diff = std::hypot(diff_l2(a.j.x, b.j.x), diff_l2(a.j.y, b.j.y));
    row.ratio = rows.empty() ? std::numeric_limits<double>::quiet_NaN() : rows.back().rho_diff / row.rho_diff;
    row.momentum_norm = std::hypot(integrate(a.j.x), integrate(a.j.y));
    row.momentum_norm_half = std::hypot(integrate(b.j.x), integrate(b.j.y));
    rows.push_back(row);
  }
  return rows;
}

void write_strip_csv(std::ostream& out, std::span<const StripRecord> strips) {
  const auto old_precision = out.precision(17);
  out << "k,t,mass_pre,mass_post,j_l2_pre,j_l2_post,lambda_l2_pre,energy_pre,energy_post,update_grad_residual\n";
  for (const auto& s : strips) {
    out << s.k << ',' << s.t << ',' << s.mass_pre << ',' << s.mass_post << ',' << s.j_l2_pre << ',' << s.j_l2_post
        << ',' << s.lambda_l2_pre << ',' << s.energy_pre << ',' << s.energy_post << ',' << s.update_grad_residual
        << '\n';
  }
  out.precision(old_precision);
}

void write_tau_study_csv(std::ostream& out, std::span<const TauStudyRow> rows) {
  const auto old_precision = out.precision(17);
  out << "tau,rho_diff,j_diff,ratio,momentum_norm,momentum_norm_half\n";
  for (const auto& r : rows) {
    out << r.tau << ',' << r.rho_diff << ',' << r.j_diff << ',' << r.ratio << ',' << r.momentum_norm << ','
        << r.momentum_norm_half << '\n';
  }
  out.precision(old_precision);
}

}  // namespace qhd2d
