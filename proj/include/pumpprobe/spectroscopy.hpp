// spectroscopy.hpp — observables derived from the density harmonics: probe
// susceptibility, detuning sweeps with Doppler averaging, and convergence
// studies over the harmonic truncation order.

#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "pumpprobe/harmonics.hpp"
#include "pumpprobe/solve.hpp"
#include "pumpprobe/system_spec.hpp"

namespace pumpprobe {

struct MediumParams {
  double number_density = 0.0;        // m^-3
  double saturation_intensity = 0.0;  // W/m^2
  double natural_linewidth = 0.0;     // rad/s
  double light_speed = 299792458.0;   // m/s
  double wavevector = 0.0;            // rad/m
  double mass = 0.0;                  // kg
  double temperature = 0.0;           // K

  void validate() const;  // all entries must be positive
};

// One probe-driven coherence rho^{-1}_{upper,lower} entering the
// susceptibility sum, weighted by its relative dipole element.
struct CoherencePair {
  int upper = 0;
  int lower = 0;
  double weight = 1.0;
};

// chi = hbar c0 n0 / (I_sat Omega_s) * (Gamma/2)^2 * sum_w rho^{-1}.
std::complex<double> susceptibility(const DensityHarmonics& rho,
                                    const MediumParams& medium,
                                    double probe_rabi,
                                    const std::vector<CoherencePair>& pairs);

// Thermal velocity grid: uniform over ±span_sigmas * sigma with
// sigma = sqrt(2 kB T / m); weights proportional to exp(-v^2/sigma^2),
// normalized to sum to one over the sampled grid.
struct VelocityGrid {
  std::vector<double> velocities;  // m/s
  std::vector<double> weights;
};

VelocityGrid make_velocity_grid(double mass, double temperature, int groups,
                                double span_sigmas = 5.0);

// Builds the spec for one grid cell: `beat` is the swept value, `doppler` the
// k*v detuning shift (rad/s) the builder applies to its optical transitions.
using SpecBuilder = std::function<SystemSpec(double beat, double doppler)>;

struct SweepPoint {
  double detuning = 0.0;  // swept beat value, rad/s
  std::complex<double> chi{0.0, 0.0};
  std::vector<double> populations;  // velocity-averaged rho^0_{ll}
  double residual = 0.0;            // worst over velocity groups
  double condition = 0.0;           // worst over velocity groups
  bool ok = true;
  std::string error;
};

struct SpectrumResult {
  std::vector<SweepPoint> points;
  int failed = 0;
};

struct SweepRequest {
  std::vector<double> detunings;  // swept beat values, rad/s
  int max_order = 1;
  MediumParams medium;
  double probe_rabi = 0.0;
  std::vector<CoherencePair> pairs;
  VelocityGrid velocity;  // empty -> single group at v = 0
  SolveOptions solve;
  int jobs = 0;  // 0: OpenMP default
};

// Evenly spaced detuning axis, inclusive of both ends.
std::vector<double> linspace(double lo, double hi, int points);

// Solves every (detuning, velocity) cell and averages chi and populations
// over the velocity groups in fixed order; per-cell failures are recorded
// and the sweep continues, but more than 1% failed points raises an error.
// The OpenMP variant distributes cells over threads; results are identical
// to sweep_serial bit for bit regardless of the worker count.
SpectrumResult sweep(const SpecBuilder& builder, const SweepRequest& request);
SpectrumResult sweep_serial(const SpecBuilder& builder,
                            const SweepRequest& request);

struct ConvergenceResult {
  std::vector<SpectrumResult> per_order;  // index 0 is max_order = 1
  // Sup-norm |chi_K - chi_{K-1}| over the detuning axis, for K = 2.. .
  std::vector<double> deviation;
};

ConvergenceResult k_convergence(const SpecBuilder& builder,
                                SweepRequest request, int max_order_limit);

}  // namespace pumpprobe
