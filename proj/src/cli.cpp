#include "pumpprobe/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "pumpprobe/config.hpp"
#include "pumpprobe/constants.hpp"
#include "pumpprobe/csv.hpp"
#include "pumpprobe/models.hpp"
#include "pumpprobe/solve.hpp"
#include "pumpprobe/spectroscopy.hpp"
#include "pumpprobe/svg_plot.hpp"
#include "pumpprobe/term_algebra.hpp"
#include "pumpprobe/time_domain.hpp"

namespace pumpprobe {

namespace {

using constants::two_pi;

int default_jobs() {
  if (const char* env = std::getenv("PUMPPROBE_JOBS")) {
    const int jobs = std::atoi(env);
    if (jobs > 0) return jobs;
  }
  return 0;  // leave the choice to OpenMP
}

struct CommonArgs {
  std::string config_path;
  int orders = 0;  // 0: take the config's value
  std::string builder = "numeric";
  double condition_limit = 1e12;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("config", args.config_path, "system definition file")
      ->required();
  cmd->add_option("-k,--orders", args.orders,
                  "harmonic truncation order (default: config value)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--builder", args.builder,
                  "linear-system builder: numeric or symbolic")
      ->check(CLI::IsMember({"numeric", "symbolic"}));
  cmd->add_option("--condition-limit", args.condition_limit,
                  "condition-number limit for the reduced system");
}

SolveOptions solve_options(const CommonArgs& args) {
  SolveOptions opts;
  opts.condition_limit = args.condition_limit;
  opts.builder = args.builder == "symbolic" ? BuilderKind::Symbolic
                                            : BuilderKind::Numeric;
  return opts;
}

int effective_orders(const CommonArgs& args, const Config& config) {
  const int orders = args.orders > 0 ? args.orders : config.sweep.max_order;
  if (orders < 1)
    throw std::runtime_error("orders must be >= 1");
  return orders;
}

int cmd_solve(const CommonArgs& args, const std::string& dump_path) {
  const Config config = parse_config_file(args.config_path);
  if (!dump_path.empty()) {
    std::ofstream out(dump_path);
    if (!out)
      throw std::runtime_error("cannot open " + dump_path);
    out << dump_config(config);
    std::cout << "wrote expanded config to " << dump_path << "\n";
    return 0;
  }
  const int orders = effective_orders(args, config);
  const Solution sol = solve(config.system, orders, solve_options(args));

  const int n = config.system.n_levels;
  std::cout << "system: " << config.model << ", levels: " << n
            << ", orders: " << orders
            << ", beat: " << config.system.beat / two_pi << " Hz\n";
  std::cout.precision(12);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = -orders; k <= orders; ++k) {
        const std::complex<double> v = sol.rho.harmonic(k)(i, j);
        std::cout << "rho[" << i + 1 << "," << j + 1 << "][" << k
                  << "] = " << v.real() << (v.imag() < 0 ? " - " : " + ")
                  << std::abs(v.imag()) << "i\n";
      }
  std::cout << "trace defect:       " << trace_defect(sol.rho) << "\n";
  std::cout << "hermiticity defect: " << hermiticity_defect(sol.rho) << "\n";
  std::cout << "residual:           " << sol.residual << "\n";
  std::cout << "condition estimate: " << sol.condition << "\n";
  return 0;
}

struct SweepArgs {
  CommonArgs common;
  int points = 0;
  int velocity_groups = 0;
  double temperature_k = 0.0;
  int jobs = default_jobs();
  std::string out_path;
  std::string plot_path;
  bool serial = false;
  int digits = 17;
};

SweepRequest build_request(const Config& config, const SweepArgs& args,
                           std::vector<double>& axis_hz) {
  SweepRequest request;
  const SweepSettings& s = config.sweep;
  const int points = args.points > 0 ? args.points : s.points;
  if (points < 2) throw std::runtime_error("sweep needs at least 2 points");
  axis_hz = linspace(s.min_hz, s.max_hz, points);
  request.detunings.reserve(points);
  for (double x : axis_hz)
    request.detunings.push_back(two_pi * (s.center_hz + x));

  request.max_order = effective_orders(args.common, config);
  if (!config.has_medium)
    throw std::runtime_error("sweep needs a [medium] section");
  request.medium = config.medium;
  if (args.temperature_k > 0.0) request.medium.temperature = args.temperature_k;
  if (config.probe_pairs.empty())
    throw std::runtime_error("sweep needs probe pairs ([probe] section)");
  request.pairs = config.probe_pairs;
  request.probe_rabi = config.probe_rabi;
  request.solve = solve_options(args.common);
  request.jobs = args.jobs;

  const int groups =
      args.velocity_groups > 0 ? args.velocity_groups : s.velocity_groups;
  request.velocity = make_velocity_grid(request.medium.mass,
                                        request.medium.temperature, groups);
  return request;
}

int cmd_sweep(const SweepArgs& args) {
  const Config config = parse_config_file(args.common.config_path);
  std::vector<double> axis_hz;
  const SweepRequest request = build_request(config, args, axis_hz);
  const SpecBuilder builder = make_builder(config);
  const SpectrumResult result =
      args.serial ? sweep_serial(builder, request) : sweep(builder, request);

  if (result.failed > 0)
    std::cerr << "warning: " << result.failed << " of "
              << result.points.size() << " points failed\n";
  const int n = config.system.n_levels;
  if (args.out_path.empty()) {
    std::cout << spectrum_csv(axis_hz, result, n, args.digits);
  } else {
    write_spectrum_csv(args.out_path, axis_hz, result, n, args.digits);
    std::cout << "wrote " << result.points.size() << " rows to "
              << args.out_path << "\n";
  }
  if (!args.plot_path.empty()) {
    write_spectrum_svg(args.plot_path, axis_hz, result,
                       "probe spectrum (" + config.model + ")");
    std::cout << "wrote plot to " << args.plot_path << "\n";
  }
  return 0;
}

struct ValidateArgs {
  CommonArgs common;
  double tolerance = 1e-3;  // oracle comparison
  double matrix_tolerance = 1e-12;
  double solution_tolerance = 1e-10;
};

int cmd_validate(const ValidateArgs& args) {
  const Config config = parse_config_file(args.common.config_path);
  const int orders = effective_orders(args.common, config);
  const SystemSpec& spec = config.system;

  const LinearSystem numeric = assemble_m(spec, orders);
  const LinearSystem symbolic = assemble_m_symbolic(spec, orders);
  const double m_scale = numeric.m.cwiseAbs().maxCoeff();
  const double m_dev =
      (numeric.m - symbolic.m).cwiseAbs().maxCoeff() /
      (m_scale > 0.0 ? m_scale : 1.0);

  SolveOptions opts = solve_options(args.common);
  opts.builder = BuilderKind::Numeric;
  const Solution a = solve_system(numeric, opts);
  const Solution b = solve_system(symbolic, opts);
  const Eigen::VectorXcd va = flatten(a.rho), vb = flatten(b.rho);
  const double sol_dev =
      (va - vb).cwiseAbs().maxCoeff() / va.cwiseAbs().maxCoeff();

  std::cout.precision(6);
  std::cout << "matrix deviation (numeric vs term algebra):   " << m_dev
            << " (tolerance " << args.matrix_tolerance << ")\n";
  std::cout << "solution deviation (numeric vs term algebra): " << sol_dev
            << " (tolerance " << args.solution_tolerance << ")\n";

  double oracle_dev = 0.0;
  bool oracle_ran = false;
  if (spec.beat != 0.0) {
    SteadyStateOptions ss;
    ss.settle_tol = args.tolerance * 1e-3;
    const DensityHarmonics ref = steady_state_harmonics(spec, orders, ss);
    double scale = 0.0, dev = 0.0;
    for (int k = -orders; k <= orders; ++k) {
      scale = std::max(scale, a.rho.harmonic(k).cwiseAbs().maxCoeff());
      dev = std::max(dev, (a.rho.harmonic(k) - ref.harmonic(k))
                              .cwiseAbs()
                              .maxCoeff());
    }
    oracle_dev = dev / (scale > 0.0 ? scale : 1.0);
    oracle_ran = true;
    std::cout << "oracle deviation (time-domain integration):   "
              << oracle_dev << " (tolerance " << args.tolerance << ")\n";
  } else {
    std::cout << "oracle deviation: skipped (zero beat frequency has no"
                 " beat period)\n";
  }

  const bool pass = m_dev <= args.matrix_tolerance &&
                    sol_dev <= args.solution_tolerance &&
                    (!oracle_ran || oracle_dev <= args.tolerance);
  std::cout << (pass ? "validate: PASS\n" : "validate: FAIL\n");
  return pass ? 0 : 1;
}

struct ConvergenceArgs {
  CommonArgs common;
  int max_orders = 3;
  int points = 0;
  int jobs = default_jobs();
  std::string out_path;
};

int cmd_convergence(const ConvergenceArgs& args) {
  const Config config = parse_config_file(args.common.config_path);
  SweepArgs sweep_args;
  sweep_args.common = args.common;
  sweep_args.points = args.points;
  sweep_args.jobs = args.jobs;
  std::vector<double> axis_hz;
  SweepRequest request = build_request(config, sweep_args, axis_hz);
  const ConvergenceResult conv =
      k_convergence(make_builder(config), request, args.max_orders);

  std::cout << "order   max |chi_K - chi_{K-1}|\n";
  std::cout.precision(6);
  for (std::size_t i = 0; i < conv.deviation.size(); ++i)
    std::cout << i + 2 << "       " << conv.deviation[i] << "\n";
  if (!args.out_path.empty()) {
    for (std::size_t i = 0; i < conv.per_order.size(); ++i) {
      const std::string path =
          args.out_path + ".k" + std::to_string(i + 1) + ".csv";
      write_spectrum_csv(path, axis_hz, conv.per_order[i],
                         config.system.n_levels);
      std::cout << "wrote " << path << "\n";
    }
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"pseudo-steady-state solver for pump-probe driven N-level"
               " systems"};
  app.require_subcommand(1);

  CommonArgs solve_args;
  std::string dump_path;
  CLI::App* solve_cmd = app.add_subcommand(
      "solve", "solve one operating point and print the harmonics");
  add_common(solve_cmd, solve_args);
  solve_cmd->add_option("--dump-config", dump_path,
                        "write the expanded system definition and exit");

  SweepArgs sweep_args;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "sweep the probe detuning and write a spectrum");
  add_common(sweep_cmd, sweep_args.common);
  sweep_cmd->add_option("--points", sweep_args.points,
                        "detuning points (default: config value)");
  sweep_cmd->add_option("--velocity-groups", sweep_args.velocity_groups,
                        "velocity groups for Doppler averaging");
  sweep_cmd->add_option("--temperature-k", sweep_args.temperature_k,
                        "override the medium temperature");
  sweep_cmd->add_option("--jobs", sweep_args.jobs,
                        "worker threads (default: $PUMPPROBE_JOBS or all)");
  sweep_cmd->add_option("--out", sweep_args.out_path, "CSV output path");
  sweep_cmd->add_option("--plot", sweep_args.plot_path, "SVG plot path");
  sweep_cmd->add_flag("--serial", sweep_args.serial,
                      "use the serial reference sweep");
  sweep_cmd->add_option("--digits", sweep_args.digits,
                        "significant digits in the CSV");

  ValidateArgs validate_args;
  CLI::App* validate_cmd = app.add_subcommand(
      "validate",
      "cross-check the numeric builder, the term-algebra builder, and the"
      " time-domain oracle");
  add_common(validate_cmd, validate_args.common);
  validate_cmd->add_option("--tolerance", validate_args.tolerance,
                           "relative tolerance for the oracle comparison");

  ConvergenceArgs conv_args;
  CLI::App* conv_cmd = app.add_subcommand(
      "convergence", "compare spectra across harmonic truncation orders");
  add_common(conv_cmd, conv_args.common);
  conv_cmd->add_option("--max-orders", conv_args.max_orders,
                       "highest truncation order to include");
  conv_cmd->add_option("--points", conv_args.points, "detuning points");
  conv_cmd->add_option("--jobs", conv_args.jobs, "worker threads");
  conv_cmd->add_option("--out", conv_args.out_path,
                       "per-order CSV path prefix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(solve_args, dump_path);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_args);
    if (validate_cmd->parsed()) return cmd_validate(validate_args);
    if (conv_cmd->parsed()) return cmd_convergence(conv_args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace pumpprobe
