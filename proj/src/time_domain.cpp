#include "pumpprobe/time_domain.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "pumpprobe/hamiltonian.hpp"

namespace pumpprobe {

using std::complex;
using Matrix = Eigen::MatrixXcd;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Rhs {
  Matrix h0, h_plus, h_minus;
  std::vector<SourceChannel> sources;
  double beat = 0.0;
  int n = 0;

  explicit Rhs(const SystemSpec& spec)
      : sources(spec.sources), beat(spec.beat), n(spec.n_levels) {
    const HamiltonianDecomposition h = build_hamiltonian(spec);
    h0 = h.h0;
    h_plus = h.h_plus;
    h_minus = h.h_minus;
  }

  Matrix operator()(double t, const Matrix& rho) const {
    const complex<double> phase(0.0, beat * t);
    const Matrix h = h0 + std::exp(phase) * h_plus + std::exp(-phase) * h_minus;
    Matrix d = complex<double>(0.0, -1.0) * (h * rho - rho * h.adjoint());
    for (const SourceChannel& ch : sources)
      d(ch.to, ch.to) += ch.rate * rho(ch.from, ch.from);
    return d;
  }
};

Matrix rk4_step(const Rhs& f, double t, double dt, const Matrix& rho) {
  const Matrix k1 = f(t, rho);
  const Matrix k2 = f(t + 0.5 * dt, rho + (0.5 * dt) * k1);
  const Matrix k3 = f(t + 0.5 * dt, rho + (0.5 * dt) * k2);
  const Matrix k4 = f(t + dt, rho + dt * k3);
  return rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Matrix ground_state(int n) {
  Matrix rho = Matrix::Zero(n, n);
  rho(0, 0) = 1.0;
  return rho;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

double default_time_step(const SystemSpec& spec) {
  const HamiltonianDecomposition h = build_hamiltonian(spec);
  const double h_scale = (h.h0.cwiseAbs() + h.h_plus.cwiseAbs() +
                          h.h_minus.cwiseAbs())
                             .rowwise()
                             .sum()
                             .maxCoeff();
  double fastest = h_scale;
  for (const SourceChannel& ch : spec.sources)
    fastest = std::max(fastest, ch.rate);
  fastest = std::max(fastest, std::abs(spec.beat));
  if (fastest <= 0.0) return 1.0;
  return 0.01 * kTwoPi / fastest;
}

Trajectory integrate(const SystemSpec& spec, double t_end, double dt) {
  spec.validate();
  if (!(dt > 0.0) || !(t_end >= 0.0))
    throw std::invalid_argument("integrate: need dt > 0 and t_end >= 0");
  const Rhs f(spec);
  const int steps = static_cast<int>(std::llround(std::ceil(t_end / dt)));

  Trajectory traj;
  traj.dt = dt;
  traj.times.reserve(steps + 1);
  traj.states.reserve(steps + 1);
  Matrix rho = ground_state(spec.n_levels);
  traj.times.push_back(0.0);
  traj.states.push_back(rho);
  for (int s = 0; s < steps; ++s) {
    const double t = s * dt;
    rho = rk4_step(f, t, dt, rho);
    if (s % 64 == 0 && !rho.allFinite())
      throw std::runtime_error(
          "integrate: non-finite density matrix at t = " + std::to_string(t) +
          "; reduce dt");
    traj.times.push_back(t + dt);
    traj.states.push_back(rho);
  }
  if (!rho.allFinite())
    throw std::runtime_error("integrate: non-finite density matrix at t_end;"
                             " reduce dt");
  return traj;
}

DensityHarmonics extract_harmonics(const Trajectory& trajectory, double beat,
                                   int max_order, double drift_tol) {
  if (beat == 0.0)
    throw std::invalid_argument("extract_harmonics: beat must be nonzero");
  if (trajectory.states.empty() || trajectory.dt <= 0.0)
    throw std::invalid_argument("extract_harmonics: empty trajectory");
  const double period = kTwoPi / std::abs(beat);
  const double per_count = period / trajectory.dt;
  const int samples = static_cast<int>(std::llround(per_count));
  if (samples < 2 || std::abs(per_count - samples) > 1e-6 * per_count)
    throw std::invalid_argument(
        "extract_harmonics: time step does not divide the beat period");
  const int total = static_cast<int>(trajectory.states.size());
  if (total < samples)
    throw std::invalid_argument(
        "extract_harmonics: trajectory shorter than one beat period");

  if (total >= 2 * samples) {
    double drift = 0.0;
    for (int s = total - samples; s < total; ++s)
      drift = std::max(drift, max_abs_diff(trajectory.states[s],
                                           trajectory.states[s - samples]));
    if (drift > drift_tol)
      throw SettleError("extract_harmonics: period-to-period drift " +
                            std::to_string(drift) + " above threshold " +
                            std::to_string(drift_tol),
                        drift);
  }

  const int n = static_cast<int>(trajectory.states.back().rows());
  DensityHarmonics rho(n, max_order);
  // Uniform samples over one period: the rectangle rule is the periodic
  // trapezoid rule and is spectrally accurate here.
  const int start = total - samples;
  for (int k = -max_order; k <= max_order; ++k) {
    Matrix acc = Matrix::Zero(n, n);
    for (int s = 0; s < samples; ++s) {
      const double t = trajectory.times[start + s];
      acc += std::exp(complex<double>(0.0, -k * beat * t)) *
             trajectory.states[start + s];
    }
    rho.harmonic(k) = acc / static_cast<double>(samples);
  }
  return rho;
}

DensityHarmonics steady_state_harmonics(const SystemSpec& spec, int max_order,
                                        const SteadyStateOptions& options) {
  spec.validate();
  if (spec.beat == 0.0)
    throw std::invalid_argument(
        "steady_state_harmonics: beat must be nonzero for harmonic"
        " extraction");
  const double period = kTwoPi / std::abs(spec.beat);
  const double target = options.dt > 0.0 ? options.dt : default_time_step(spec);
  const int samples = std::max(options.min_samples_per_period,
                               static_cast<int>(std::ceil(period / target)));
  const double dt = period / samples;

  double max_time = options.max_time;
  if (max_time <= 0.0) {
    double slowest = std::abs(spec.beat);
    for (const SourceChannel& ch : spec.sources)
      if (ch.rate > 0.0) slowest = std::min(slowest, ch.rate);
    max_time = std::max(100.0 / slowest, 200.0 * period);
  }

  const Rhs f(spec);
  const int n = spec.n_levels;
  std::vector<Matrix> prev(samples), cur(samples);
  Matrix rho = ground_state(n);
  long long step = 0;
  double t = 0.0;
  double drift = std::numeric_limits<double>::infinity();
  int periods = 0;
  while (true) {
    for (int s = 0; s < samples; ++s) {
      cur[s] = rho;
      rho = rk4_step(f, static_cast<double>(step) * dt, dt, rho);
      ++step;
    }
    t = static_cast<double>(step) * dt;
    if (!rho.allFinite())
      throw std::runtime_error(
          "steady_state_harmonics: non-finite state; reduce dt");
    ++periods;
    if (periods >= 2) {
      drift = 0.0;
      for (int s = 0; s < samples; ++s)
        drift = std::max(drift, max_abs_diff(cur[s], prev[s]));
      if (drift < options.settle_tol) break;
    }
    if (t >= max_time)
      throw SettleError(
          "steady_state_harmonics: no settling within " +
              std::to_string(max_time) + " s; drift " + std::to_string(drift),
          drift);
    std::swap(prev, cur);
  }

  Trajectory last;
  last.dt = dt;
  last.times.resize(samples);
  last.states.resize(samples);
  const double t0 = t - samples * dt;
  for (int s = 0; s < samples; ++s) {
    last.times[s] = t0 + s * dt;
    last.states[s] = cur[s];
  }
  return extract_harmonics(last, spec.beat, max_order,
                           std::numeric_limits<double>::infinity());
}

}  // namespace pumpprobe
