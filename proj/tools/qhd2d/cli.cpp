#include "qhd2d/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <utility>

#include "qhd2d/config.hpp"
#include "qhd2d/diagnostics.hpp"
#include "qhd2d/initial_conditions.hpp"
#include "qhd2d/poisson.hpp"
#include "qhd2d/propagator.hpp"
#include "qhd2d/scheme.hpp"
#include "qhd2d/snapshot_io.hpp"
#include "qhd2d/verify.hpp"

namespace qhd2d::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string config_path;
  int jobs = 1;
  std::string taus = "0.1,0.05,0.025";
  std::vector<std::pair<std::string, std::string>> overrides;
};

// Pulls "--section.key=value" flags out of args; the rest is left for CLI11.
std::vector<std::string> split_overrides(const std::vector<std::string>& args, Options& opt) {
  std::vector<std::string> rest;
  for (const auto& a : args) {
    if (a.rfind("--", 0) == 0) {
      const auto eq = a.find('=');
      const auto dot = a.find('.');
      if (eq != std::string::npos && dot != std::string::npos && dot < eq) {
        opt.overrides.emplace_back(a.substr(2, eq - 2), a.substr(eq + 1));
        continue;
      }
    }
    rest.push_back(a);
  }
  return rest;
}

SimConfig resolve_config(const Options& opt) {
  SimConfig cfg = opt.config_path.empty() ? SimConfig{} : load_config(opt.config_path);
  for (const auto& [key, value] : opt.overrides) {
    apply_override(cfg, key, value);
  }
  validate_config(cfg);
  return cfg;
}

std::vector<double> parse_taus(const std::string& text) {
  std::vector<double> taus;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      taus.push_back(std::stod(item, &used));
      if (used != item.size()) {
        throw std::invalid_argument(item);
      }
    } catch (const std::exception&) {
      throw ConfigError("--taus: cannot parse '" + item + "'");
    }
  }
  if (taus.empty()) {
    throw ConfigError("--taus: empty list");
  }
  return taus;
}

// Output directory with the resolved config copy written next to the data.
fs::path prepare_out_dir(const SimConfig& cfg) {
  const fs::path dir = resolve_out_dir(cfg);
  fs::create_directories(dir);
  std::ofstream(dir / "config.resolved.ini") << serialize_config(cfg);
  return dir;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw InputError("cannot write '" + path.string() + "'");
  }
  return out;
}

int cmd_run(const Options& opt, std::ostream& err) {
  const SimConfig cfg = resolve_config(opt);
  const GridPtr grid = make_grid(cfg.grid);
  const WaveField psi0 = make_initial_condition(cfg.ic, grid, cfg.physics.hbar);
  const SchemeConfig scheme = to_scheme_config(cfg, grid);
  const fs::path dir = prepare_out_dir(cfg);

  const SchemeResult res = run(psi0, scheme);
  {
    auto out = open_out(dir / "diagnostics.csv");
    write_diagnostics_csv(out, res.records);
  }
  {
    auto out = open_out(dir / "strips.csv");
    write_strip_csv(out, res.strips);
  }
  int index = 0;
  for (const auto& snap : res.trajectory.snapshots) {
    std::ostringstream name;
    name << "snapshot_" << std::setw(5) << std::setfill('0') << index++;
    if (snap.side == Side::before_update) {
      name << "_pre";
    } else if (snap.side == Side::after_update) {
      name << "_post";
    }
    write_snapshot(dir / (name.str() + ".bin"), snap.psi, snap.t);
  }
  write_snapshot(dir / "final.bin", res.psi, cfg.time.t_max);
  err << "run: " << res.strips.size() << " strips, outputs in " << dir.string() << "\n";
  return kOk;
}

int cmd_collisionless(const Options& opt, std::ostream& err) {
  const SimConfig cfg = resolve_config(opt);
  const GridPtr grid = make_grid(cfg.grid);
  const WaveField psi0 = make_initial_condition(cfg.ic, grid, cfg.physics.hbar);
  const StepParams params = to_step_params(cfg, grid);
  const fs::path dir = prepare_out_dir(cfg);

  PropagateOptions po;
  po.diagnostics_cadence = cfg.output.cadence;
  int index = 0;
  if (cfg.output.snapshot_every > 0) {
    write_snapshot(dir / "snapshot_00000.bin", psi0, 0.0);
    ++index;
    po.observer = [&, step = 0](double t, const WaveField& psi) mutable {
      if (++step % cfg.output.snapshot_every == 0) {
        std::ostringstream name;
        name << "snapshot_" << std::setw(5) << std::setfill('0') << index++ << ".bin";
        write_snapshot(dir / name.str(), psi, t);
      }
    };
  }
  const PropagationResult res = propagate(psi0, cfg.time.t_max, params, po);
  {
    auto out = open_out(dir / "diagnostics.csv");
    write_diagnostics_csv(out, res.records);
  }
  write_snapshot(dir / "final.bin", res.psi, cfg.time.t_max);
  err << "collisionless: " << res.steps << " steps, outputs in " << dir.string() << "\n";
  return kOk;
}

int cmd_tau_study(const Options& opt, std::ostream& err) {
  const SimConfig cfg = resolve_config(opt);
  const GridPtr grid = make_grid(cfg.grid);
  const WaveField psi0 = make_initial_condition(cfg.ic, grid, cfg.physics.hbar);
  const SchemeConfig base = to_scheme_config(cfg, grid);
  const std::vector<double> taus = parse_taus(opt.taus);
  const fs::path dir = prepare_out_dir(cfg);

  const auto rows = tau_convergence_study(psi0, base, taus, opt.jobs);
  auto out = open_out(dir / "tau_study.csv");
  write_tau_study_csv(out, rows);
  err << "tau-study: " << rows.size() << " rows, outputs in " << dir.string() << "\n";
  return kOk;
}

int cmd_verify(const Options& opt, std::ostream& out, std::ostream& err) {
  const SimConfig cfg = resolve_config(opt);
  const auto checks = run_verify_suite(cfg.physics.hbar, cfg.physics.p);
  bool all = true;
  const auto old_precision = out.precision(6);
  for (const auto& c : checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << " value=" << std::scientific << c.value
        << " threshold=" << c.threshold << std::defaultfloat << "\n";
    all = all && c.passed;
  }
  out.precision(old_precision);
  if (!all) {
    err << "verify: at least one check failed\n";
    return kVerifyFailed;
  }
  return kOk;
}

int cmd_poisson_bench(const Options& opt, std::ostream& err) {
  const SimConfig cfg = resolve_config(opt);
  const GridPtr grid = make_grid(cfg.grid);
  const WaveField psi0 = make_initial_condition(cfg.ic, grid, cfg.physics.hbar);
  const RealField rho = psi0.density();
  const fs::path dir = prepare_out_dir(cfg);

  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  const RealField fast = solve(rho, PoissonMode::free_space_padded).v;
  const auto t1 = clock::now();
  const RealField oracle = solve(rho, PoissonMode::quadrature_oracle).v;
  const auto t2 = clock::now();

  double worst = 0.0;
  for (std::size_t n = 0; n < rho.size(); ++n) {
    worst = std::max(worst, std::abs(fast[n] - oracle[n]));
  }
  auto out = open_out(dir / "poisson_bench.csv");
  out.precision(17);
  out << "nx,ny,max_abs_diff\n" << grid->nx << ',' << grid->ny << ',' << worst << '\n';
  const auto ms = [](auto d) { return std::chrono::duration<double, std::milli>(d).count(); };
  err << "poisson-bench: max |fast - oracle| = " << worst << ", fast " << ms(t1 - t0) << " ms, oracle "
      << ms(t2 - t1) << " ms\n";
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  std::vector<std::string> rest = split_overrides(args, opt);

  CLI::App app{"qhd2d: 2D quantum hydrodynamics simulator"};
  app.require_subcommand(1);
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "INI-style config file");
  };
  CLI::App* run_cmd = app.add_subcommand("run", "fractional-step scheme with collision updates");
  CLI::App* free_cmd = app.add_subcommand("collisionless", "split-step NLS-Poisson propagation only");
  CLI::App* study_cmd = app.add_subcommand("tau-study", "self-convergence over strip lengths");
  CLI::App* verify_cmd = app.add_subcommand("verify", "identity and inequality suite");
  CLI::App* bench_cmd = app.add_subcommand("poisson-bench", "free-space fast path against the oracle");
  for (CLI::App* sub : {run_cmd, free_cmd, study_cmd, verify_cmd, bench_cmd}) {
    add_common(sub);
  }
  study_cmd->add_option("--jobs", opt.jobs, "worker threads")->check(CLI::PositiveNumber);
  study_cmd->add_option("--taus", opt.taus, "comma separated, strictly decreasing");

  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kValidation;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(opt, err);
    if (free_cmd->parsed()) return cmd_collisionless(opt, err);
    if (study_cmd->parsed()) return cmd_tau_study(opt, err);
    if (verify_cmd->parsed()) return cmd_verify(opt, out, err);
    if (bench_cmd->parsed()) return cmd_poisson_bench(opt, err);
  } catch (const BlowUpError& e) {
    err << "blow-up: " << e.what() << " (last good t=" << e.last_good_time() << ")\n";
    return kBlowUp;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  }
  err << app.help();
  return kValidation;
}

}  // namespace qhd2d::cli
