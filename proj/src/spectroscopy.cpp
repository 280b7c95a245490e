#include "pumpprobe/spectroscopy.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pumpprobe/constants.hpp"

namespace pumpprobe {

using std::complex;

void MediumParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0))
      throw std::invalid_argument(std::string("MediumParams: ") + name +
                                  " must be positive");
  };
  positive(number_density, "number_density");
  positive(saturation_intensity, "saturation_intensity");
  positive(natural_linewidth, "natural_linewidth");
  positive(light_speed, "light_speed");
  positive(wavevector, "wavevector");
  positive(mass, "mass");
  positive(temperature, "temperature");
}

complex<double> susceptibility(const DensityHarmonics& rho,
                               const MediumParams& medium, double probe_rabi,
                               const std::vector<CoherencePair>& pairs) {
  if (pairs.empty())
    throw std::invalid_argument("susceptibility: empty coherence pair list");
  if (!(probe_rabi > 0.0))
    throw std::invalid_argument("susceptibility: probe Rabi must be > 0");
  complex<double> sum = 0.0;
  for (const CoherencePair& p : pairs)
    sum += p.weight * rho.harmonic(-1)(p.upper, p.lower);
  const double half_gamma = 0.5 * medium.natural_linewidth;
  // The sign pairs with the +Omega/2 coupling convention of the Hamiltonian
  // builder, making Im chi positive for an absorbing medium (an undriven
  // ground-state atom) and -Im chi the probe gain.
  const double prefactor = -constants::hbar * medium.light_speed *
                           medium.number_density * half_gamma * half_gamma /
                           (medium.saturation_intensity * probe_rabi);
  return prefactor * sum;
}

VelocityGrid make_velocity_grid(double mass, double temperature, int groups,
                                double span_sigmas) {
  if (groups < 1)
    throw std::invalid_argument("make_velocity_grid: groups must be >= 1");
  VelocityGrid grid;
  if (groups == 1) {
    grid.velocities = {0.0};
    grid.weights = {1.0};
    return grid;
  }
  if (!(mass > 0.0) || !(temperature > 0.0))
    throw std::invalid_argument(
        "make_velocity_grid: mass and temperature must be positive");
  const double sigma = std::sqrt(2.0 * constants::boltzmann * temperature /
                                 mass);
  grid.velocities = linspace(-span_sigmas * sigma, span_sigmas * sigma, groups);
  grid.weights.resize(groups);
  double norm = 0.0;
  for (int g = 0; g < groups; ++g) {
    const double v = grid.velocities[g];
    grid.weights[g] = std::exp(-v * v / (sigma * sigma));
    norm += grid.weights[g];
  }
  for (double& w : grid.weights) w /= norm;
  return grid;
}

std::vector<double> linspace(double lo, double hi, int points) {
  if (points < 2)
    throw std::invalid_argument("linspace: need at least 2 points");
  std::vector<double> xs(points);
  const double step = (hi - lo) / (points - 1);
  for (int i = 0; i < points; ++i) xs[i] = lo + step * i;
  xs.back() = hi;
  return xs;
}

namespace {

struct CellResult {
  complex<double> chi{0.0, 0.0};
  Eigen::VectorXd populations;
  double residual = 0.0;
  double condition = 0.0;
  bool ok = false;
  std::string error;
};

CellResult solve_cell(const SpecBuilder& builder, const SweepRequest& request,
                      double detuning, double velocity) {
  CellResult cell;
  try {
    const SystemSpec spec =
        builder(detuning, request.medium.wavevector * velocity);
    const Solution sol = solve(spec, request.max_order, request.solve);
    cell.chi = susceptibility(sol.rho, request.medium, request.probe_rabi,
                              request.pairs);
    const int n = sol.rho.n_levels();
    cell.populations.resize(n);
    for (int l = 0; l < n; ++l)
      cell.populations(l) = sol.rho.harmonic(0)(l, l).real();
    cell.residual = sol.residual;
    cell.condition = sol.condition;
    cell.ok = true;
  } catch (const std::exception& e) {
    cell.ok = false;
    cell.error = e.what();
  }
  return cell;
}

SpectrumResult run_sweep(const SpecBuilder& builder,
                         const SweepRequest& request, bool parallel) {
  if (request.detunings.empty())
    throw std::invalid_argument("sweep: empty detuning axis");
  request.medium.validate();
  VelocityGrid velocity = request.velocity;
  if (velocity.velocities.empty()) {
    velocity.velocities = {0.0};
    velocity.weights = {1.0};
  }
  if (velocity.velocities.size() != velocity.weights.size())
    throw std::invalid_argument("sweep: velocity grid size mismatch");

  const int n_det = static_cast<int>(request.detunings.size());
  const int n_vel = static_cast<int>(velocity.velocities.size());
  const int n_cells = n_det * n_vel;
  std::vector<CellResult> cells(n_cells);

#ifdef _OPENMP
  const int threads =
      parallel ? std::max(1, request.jobs > 0 ? request.jobs
                                              : omp_get_max_threads())
               : 1;
#pragma omp parallel for schedule(dynamic) num_threads(threads) \
    if (parallel && threads > 1)
  for (int c = 0; c < n_cells; ++c) {
    cells[c] = solve_cell(builder, request, request.detunings[c / n_vel],
                          velocity.velocities[c % n_vel]);
  }
#else
  (void)parallel;
  for (int c = 0; c < n_cells; ++c) {
    cells[c] = solve_cell(builder, request, request.detunings[c / n_vel],
                          velocity.velocities[c % n_vel]);
  }
#endif

  SpectrumResult result;
  result.points.resize(n_det);
  // Velocity averaging runs in fixed grid order per detuning point, so the
  // output does not depend on the number of workers.
  for (int d = 0; d < n_det; ++d) {
    SweepPoint& pt = result.points[d];
    pt.detuning = request.detunings[d];
    Eigen::VectorXd pops;
    bool first = true;
    for (int g = 0; g < n_vel; ++g) {
      const CellResult& cell = cells[d * n_vel + g];
      if (!cell.ok) {
        pt.ok = false;
        if (pt.error.empty()) pt.error = cell.error;
        continue;
      }
      const double w = velocity.weights[g];
      pt.chi += w * cell.chi;
      if (first) {
        pops = w * cell.populations;
        first = false;
      } else {
        pops += w * cell.populations;
      }
      pt.residual = std::max(pt.residual, cell.residual);
      pt.condition = std::max(pt.condition, cell.condition);
    }
    if (!pt.ok) {
      ++result.failed;
      continue;
    }
    pt.populations.assign(pops.data(), pops.data() + pops.size());
  }

  if (result.failed * 100 > n_det) {
    std::string first_error = "?";
    for (const SweepPoint& p : result.points)
      if (!p.ok) {
        first_error = p.error;
        break;
      }
    throw std::runtime_error("sweep: " + std::to_string(result.failed) +
                             " of " + std::to_string(n_det) +
                             " detuning points failed (first error: " +
                             first_error + ")");
  }
  return result;
}

}  // namespace

SpectrumResult sweep(const SpecBuilder& builder, const SweepRequest& request) {
  return run_sweep(builder, request, true);
}

SpectrumResult sweep_serial(const SpecBuilder& builder,
                            const SweepRequest& request) {
  return run_sweep(builder, request, false);
}

ConvergenceResult k_convergence(const SpecBuilder& builder,
                                SweepRequest request, int max_order_limit) {
  if (max_order_limit < 1)
    throw std::invalid_argument("k_convergence: max_order_limit must be >= 1");
  ConvergenceResult out;
  for (int order = 1; order <= max_order_limit; ++order) {
    request.max_order = order;
    out.per_order.push_back(sweep(builder, request));
  }
  for (int order = 2; order <= max_order_limit; ++order) {
    const SpectrumResult& a = out.per_order[order - 2];
    const SpectrumResult& b = out.per_order[order - 1];
    double dev = 0.0;
    for (std::size_t i = 0; i < a.points.size(); ++i)
      dev = std::max(dev, std::abs(a.points[i].chi - b.points[i].chi));
    out.deviation.push_back(dev);
  }
  return out;
}

}  // namespace pumpprobe
