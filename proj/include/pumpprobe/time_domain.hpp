// time_domain.hpp — direct integration of the time-dependent Liouville
// equation, used as an independent verification path for the harmonic solver.

#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "pumpprobe/harmonics.hpp"
#include "pumpprobe/system_spec.hpp"

namespace pumpprobe {

// Uniformly sampled density-matrix trajectory; states[s] is rho at times[s].
struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::MatrixXcd> states;
  double dt = 0.0;
};

class SettleError : public std::runtime_error {
 public:
  SettleError(const std::string& what, double drift)
      : std::runtime_error(what), drift_(drift) {}
  double drift() const { return drift_; }

 private:
  double drift_ = 0.0;
};

// Step size resolving the fastest scale of the system: 0.01 times the
// shortest period set by the beat, the Hamiltonian entries, or the source
// rates.
double default_time_step(const SystemSpec& spec);

// Fixed-step RK4 integration of d rho/dt = -i(H(t) rho - rho H(t)^dagger)
// + rho_s, starting from all population in level 0. Throws on non-finite
// values with a hint to reduce dt.
Trajectory integrate(const SystemSpec& spec, double t_end, double dt);

// Projects the harmonic components out of a settled trajectory covering a
// whole number of beat periods: rho^k = (1/T) integral rho(t) e^{-ik delta t}
// over the last period, by the periodic trapezoid rule on the uniform grid.
// If the trajectory covers at least two periods, the drift between the last
// two is measured and a SettleError is raised above drift_tol.
DensityHarmonics extract_harmonics(const Trajectory& trajectory, double beat,
                                   int max_order, double drift_tol = 1e-6);

struct SteadyStateOptions {
  double dt = 0.0;           // 0: default_time_step
  double settle_tol = 1e-6;  // max elementwise drift between periods
  double max_time = 0.0;     // 0: generous default from decay and beat scales
  int min_samples_per_period = 64;
};

// Integrates period by period until the trajectory repeats within
// settle_tol, then extracts the harmonics from the final period.
DensityHarmonics steady_state_harmonics(const SystemSpec& spec, int max_order,
                                        const SteadyStateOptions& options = {});

}  // namespace pumpprobe
