#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "couette/errors.hpp"
#include "couette/export.hpp"
#include "couette/heat_layer.hpp"
#include "couette/interior_euler.hpp"
#include "couette/orr_sommerfeld.hpp"
#include "couette/rayleigh_shooting.hpp"
#include "couette/rayleigh_spectral.hpp"

namespace fs = std::filesystem;
using namespace couette;

namespace {

constexpr int kExitUnstable = 0;
constexpr int kExitUsage = 2;
constexpr int kExitStable = 3;
constexpr int kExitNumerical = 4;

struct RunConfig {
  double t = 0.0;
  double t_min = 0.5;
  double t_max = 16.0;
  double t_step = 0.1;
  double alpha = 1.0;
  double alpha_ray = kDefaultAlphaRay;
  double Y0 = 30.0;
  double h = 0.02;
  double dt = 1e-3;
  std::string convention = "wall-anchored";
  std::vector<double> nu_hat = kDefaultNuHat;
  std::string out = ".";
  std::string seed = "matrix";
  double c_re = 0.0;
  double c_im = 0.0;
  int jobs = 1;
  int steps = 30000;
  std::string config;
};

std::string format_complex(Complex c) {
  char buffer[96];
  std::snprintf(buffer, sizeof buffer, "%.12g%+.12gi", c.real(), c.imag());
  return buffer;
}

void add_common(CLI::App* cmd, RunConfig& cfg, double default_h) {
  cmd->add_option("--alpha", cfg.alpha, "interior wavenumber")->capture_default_str();
  cmd->add_option("--alpha-ray", cfg.alpha_ray, "boundary-layer wavenumber")
      ->capture_default_str();
  cmd->add_option("--Y0", cfg.Y0, "truncation height")->capture_default_str();
  cmd->add_option("--h", cfg.h, "grid step")->default_str(format_double(default_h));
  cmd->add_option("--dt", cfg.dt, "Crank-Nicolson time step")->capture_default_str();
  cmd->add_option("--convention", cfg.convention, "wall-anchored | claim-literal")
      ->check(CLI::IsMember({"wall-anchored", "claim-literal"}))
      ->capture_default_str();
  cmd->add_option("--out", cfg.out, "output directory (created if absent)")
      ->capture_default_str();
  cmd->add_option("--config", cfg.config, "JSON file whose keys mirror the long flags");
}

void add_time(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--t", cfg.t, "time");
}

void add_seed(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--seed", cfg.seed, "matrix | explicit")
      ->check(CLI::IsMember({"matrix", "explicit"}))
      ->capture_default_str();
  cmd->add_option("--c-re", cfg.c_re, "explicit seed, real part");
  cmd->add_option("--c-im", cfg.c_im, "explicit seed, imaginary part");
  cmd->add_option("--steps", cfg.steps, "RK4 steps over [0, Y0]")->capture_default_str();
}

// Fills options that were not given on the command line from a JSON object.
void apply_config_file(CLI::App* cmd, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  const nlohmann::json doc = nlohmann::json::parse(in);
  if (!doc.is_object()) throw std::invalid_argument("config file must hold a JSON object");
  for (const auto& [key, value] : doc.items()) {
    CLI::Option* opt = nullptr;
    try {
      opt = cmd->get_option("--" + key);
    } catch (const CLI::OptionNotFound&) {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
    if (opt->count() > 0 || key == "config") continue;
    auto add = [&](const nlohmann::json& v) {
      opt->add_result(v.is_string() ? v.get<std::string>() : v.dump());
    };
    if (value.is_array()) {
      for (const auto& v : value) add(v);
    } else {
      add(value);
    }
    opt->run_callback();
  }
}

void require_positive(const char* name, double value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument(std::string("--") + name + " must be positive");
  }
}

void validate(const RunConfig& cfg) {
  require_positive("alpha", cfg.alpha);
  require_positive("alpha-ray", cfg.alpha_ray);
  require_positive("Y0", cfg.Y0);
  require_positive("h", cfg.h);
  require_positive("dt", cfg.dt);
  require_positive("t-step", cfg.t_step);
  for (double nu : cfg.nu_hat) require_positive("nu-hat", nu);
  if (cfg.jobs < 1) throw std::invalid_argument("--jobs must be at least 1");
  if (cfg.steps < 1) throw std::invalid_argument("--steps must be at least 1");
  if (cfg.t_max < cfg.t_min) throw std::invalid_argument("--t-max must be >= --t-min");
}

fs::path output_dir(const RunConfig& cfg) {
  fs::path dir(cfg.out);
  fs::create_directories(dir);
  return dir;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

HalfLineGrid grid_of(const RunConfig& cfg) { return HalfLineGrid{cfg.Y0, cfg.h}; }

RunParameters base_parameters(const RunConfig& cfg) {
  return {{"alpha", format_double(cfg.alpha)},
          {"alpha_ray", format_double(cfg.alpha_ray)},
          {"Y0", format_double(cfg.Y0)},
          {"h", format_double(cfg.h)},
          {"convention", cfg.convention}};
}

RayleighProblem problem_at(const RunConfig& cfg) {
  return {cfg.alpha_ray, build_profile(cfg.t, grid_of(cfg),
                                       convention_from_string(cfg.convention),
                                       TimeTrace::wall(cfg.alpha))};
}

int cmd_profile(const RunConfig& cfg) {
  const HalfLineGrid grid = grid_of(cfg);
  const Profile profile =
      build_profile(cfg.t, grid, convention_from_string(cfg.convention), TimeTrace::wall(cfg.alpha));
  const HeatSolution cn = solve_heat_cn(TimeTrace::wall(cfg.alpha), grid, cfg.t, cfg.dt);
  const double wall = profile.convention == Convention::WallAnchored
                          ? -trace_phi(cfg.t, cfg.alpha)
                          : trace_phi(cfg.t, cfg.alpha);
  const double cn_gap = (cn.w.array() + wall - profile.V.array()).abs().maxCoeff();

  const fs::path path = output_dir(cfg) / "profile.csv";
  std::ofstream out = open_output(path);
  write_profile_csv(out, profile, {{"alpha", format_double(cfg.alpha)}});

  std::printf("far-field V(Y0) = %.12g\n", profile.far_field);
  std::printf("V range = [%.6g, %.6g]\n", profile.min(), profile.max());
  std::printf("max |V_cn - V| = %.3g (dt = %g)\n", cn_gap, cfg.dt);
  std::printf("wrote %s\n", path.string().c_str());
  return 0;
}

int cmd_spectrum(const RunConfig& cfg) {
  const RayleighProblem problem = problem_at(cfg);
  const Spectrum spectrum = compute_spectrum(assemble_rayleigh_matrix(problem));
  const fs::path path = output_dir(cfg) / "spectrum.csv";
  RunParameters params{{"t", format_double(cfg.t)}};
  for (auto& p : base_parameters(cfg)) params.push_back(p);
  std::ofstream out = open_output(path);
  write_spectrum_csv(out, spectrum, params);

  const std::optional<Complex> c = most_unstable(spectrum);
  if (c) {
    std::printf("UNSTABLE c=%s\n", format_complex(*c).c_str());
    return kExitUnstable;
  }
  std::printf("STABLE\n");
  return kExitStable;
}

// Seed for Newton: explicit value or the most unstable matrix eigenvalue.
std::optional<Complex> seed_of(const RunConfig& cfg, const RayleighProblem& problem) {
  if (cfg.seed == "explicit") return Complex(cfg.c_re, cfg.c_im);
  return most_unstable(compute_spectrum(assemble_rayleigh_matrix(problem)));
}

int cmd_shoot(const RunConfig& cfg) {
  const RayleighProblem problem = problem_at(cfg);
  const std::optional<Complex> seed = seed_of(cfg, problem);
  if (!seed) {
    std::printf("STABLE\n");
    return kExitStable;
  }
  ShootingConfig shooting;
  shooting.Y0 = cfg.Y0;
  shooting.steps = cfg.steps;
  const EigenPair pair = newton_refine(*seed, problem, shooting);

  RunParameters params{{"t", format_double(cfg.t)}};
  for (auto& p : base_parameters(cfg)) params.push_back(p);
  params.push_back({"seed", cfg.seed});
  params.push_back({"steps", std::to_string(cfg.steps)});
  const fs::path dir = output_dir(cfg);
  {
    std::ofstream out = open_output(dir / "eigenpair.csv");
    write_eigenpair_csv(out, pair, params);
  }
  {
    std::ofstream out = open_output(dir / "eigenvalue.json");
    out << eigenpair_summary(pair, params).dump(2) << '\n';
  }
  std::printf("seed c=%s\n", format_complex(*seed).c_str());
  std::printf("|psi(0,c)| = %.3e after %d Newton steps\n", pair.psi0_residual, pair.iterations);
  if (std::abs(pair.c.imag()) > kUnstableThreshold) {
    std::printf("UNSTABLE c=%s\n", format_complex(pair.c).c_str());
    return kExitUnstable;
  }
  std::printf("STABLE c=%s\n", format_complex(pair.c).c_str());
  return kExitStable;
}

int cmd_sweep(const RunConfig& cfg) {
  std::vector<double> times;
  const auto n = static_cast<long>(std::floor((cfg.t_max - cfg.t_min) / cfg.t_step + 1e-9));
  for (long i = 0; i <= n; ++i) times.push_back(cfg.t_min + static_cast<double>(i) * cfg.t_step);

  SweepOptions options;
  options.alpha = cfg.alpha;
  options.alpha_ray = cfg.alpha_ray;
  options.grid = grid_of(cfg);
  options.convention = convention_from_string(cfg.convention);
  options.jobs = cfg.jobs;
  const SweepResult sweep = sweep_growth(times, options);

  RunParameters params{{"t_min", format_double(cfg.t_min)},
                       {"t_max", format_double(cfg.t_max)},
                       {"t_step", format_double(cfg.t_step)}};
  for (auto& p : base_parameters(cfg)) params.push_back(p);
  const fs::path path = output_dir(cfg) / "sweep.csv";
  std::ofstream out = open_output(path);
  write_sweep_csv(out, sweep, params);

  const SweepPoint* best = nullptr;
  int failures = 0;
  for (const SweepPoint& point : sweep.points) {
    if (!point.error.empty()) {
      std::fprintf(stderr, "t=%g failed: %s\n", point.t, point.error.c_str());
      ++failures;
      continue;
    }
    if (!best || point.im_c_max > best->im_c_max) best = &point;
  }
  if (!best) {
    std::fprintf(stderr, "every sweep point failed\n");
    return kExitNumerical;
  }
  std::printf("%zu points, %d failed\n", sweep.points.size(), failures);
  if (!best->c) {
    std::printf("STABLE\n");
    return kExitStable;
  }
  std::printf("max Im c = %.6g at t = %.6g\n", best->im_c_max, best->t);
  std::printf("UNSTABLE c=%s\n", format_complex(*best->c).c_str());
  return kExitUnstable;
}

int cmd_os(const RunConfig& cfg) {
  const RayleighProblem problem = problem_at(cfg);
  const std::optional<Complex> seed = seed_of(cfg, problem);
  if (!seed) {
    std::printf("STABLE\n");
    return kExitStable;
  }
  ShootingConfig shooting;
  shooting.Y0 = cfg.Y0;
  shooting.steps = cfg.steps;
  const EigenPair pair = newton_refine(*seed, problem, shooting);

  CompoundConfig compound;
  compound.Y0 = cfg.Y0;
  compound.steps = cfg.steps;
  const ExpansionReport report = expansion_study(problem, pair.c, cfg.nu_hat, compound);

  RunParameters params{{"t", format_double(cfg.t)}};
  for (auto& p : base_parameters(cfg)) params.push_back(p);
  params.push_back({"steps", std::to_string(cfg.steps)});
  const fs::path path = output_dir(cfg) / "expansion.json";
  std::ofstream out = open_output(path);
  out << expansion_to_json(report, params).dump(2) << '\n';

  std::printf("c_Ray = %s\n", format_complex(pair.c).c_str());
  for (std::size_t i = 0; i < report.nu_hat.size(); ++i) {
    std::printf("nu_hat = %-10g c_OS = %s  |c_OS - c_Ray| = %.6e\n", report.nu_hat[i],
                format_complex(report.c_os[i]).c_str(), std::abs(report.c_os[i] - pair.c));
  }
  std::printf("fitted exponent = %.6f\n", report.fitted_exponent);
  std::printf("gamma = %s\n", format_complex(report.gamma).c_str());
  std::printf("UNSTABLE c=%s\n", format_complex(pair.c).c_str());
  return kExitUnstable;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Couette boundary-layer profile and Rayleigh / Orr-Sommerfeld stability"};
  app.require_subcommand(1);
  // "-h" would clash with the grid-step flag --h.
  app.set_help_flag("--help", "print this help and exit");
  app.set_version_flag("--version", "couette 1.0");

  RunConfig cfg;
  CLI::App* profile = app.add_subcommand("profile", "write profile.csv at time t");
  add_common(profile, cfg, 0.01);
  add_time(profile, cfg);

  CLI::App* spectrum = app.add_subcommand("spectrum", "Rayleigh matrix spectrum at time t");
  add_common(spectrum, cfg, 0.02);
  add_time(spectrum, cfg);

  CLI::App* shoot = app.add_subcommand("shoot", "Newton shooting for the unstable eigenpair");
  add_common(shoot, cfg, 0.02);
  add_time(shoot, cfg);
  add_seed(shoot, cfg);

  CLI::App* sweep = app.add_subcommand("sweep", "max Im c over a range of times");
  add_common(sweep, cfg, 0.04);
  sweep->add_option("--t-min", cfg.t_min)->capture_default_str();
  sweep->add_option("--t-max", cfg.t_max)->capture_default_str();
  sweep->add_option("--t-step", cfg.t_step)->capture_default_str();
  sweep->add_option("--jobs", cfg.jobs, "worker threads")->capture_default_str();

  CLI::App* os = app.add_subcommand("os", "Orr-Sommerfeld eigenvalues and nu_hat scaling");
  add_common(os, cfg, 0.02);
  add_time(os, cfg);
  add_seed(os, cfg);
  os->add_option("--nu-hat", cfg.nu_hat, "viscosity values")->expected(1, -1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  CLI::App* cmd = app.get_subcommands().front();
  try {
    if (!cfg.config.empty()) apply_config_file(cmd, cfg.config);
    // All subcommands share cfg.h, so the per-command default is applied here.
    if (cmd->get_option("--h")->count() == 0) {
      cfg.h = cmd == profile ? 0.01 : cmd == sweep ? 0.04 : 0.02;
    }
    if (cmd != sweep && cmd->get_option("--t")->count() == 0) {
      throw CLI::RequiredError("--t");
    }
    if (cmd != sweep) require_positive("t", cfg.t);
    validate(cfg);
    if ((cmd == shoot || cmd == os) && cfg.seed == "explicit" &&
        cmd->get_option("--c-re")->count() + cmd->get_option("--c-im")->count() == 0) {
      throw std::invalid_argument("--seed explicit needs --c-re and/or --c-im");
    }
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << '\n' << cmd->help();
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (cmd == profile) return cmd_profile(cfg);
    if (cmd == spectrum) return cmd_spectrum(cfg);
    if (cmd == shoot) return cmd_shoot(cfg);
    if (cmd == sweep) return cmd_sweep(cfg);
    return cmd_os(cfg);
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}
