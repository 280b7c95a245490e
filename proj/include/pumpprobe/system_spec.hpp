// system_spec.hpp — physical description of an N-level system driven at two
// optical frequencies (pump + probe) on shared transitions.

#pragma once

#include <complex>
#include <vector>

namespace pumpprobe {

// Whether a coupling sits in the time-independent part of the rotating-frame
// Hamiltonian or carries the residual beat-note factor e^{±i delta t}.
enum class HarmonicTag { Static, Beat };

struct Coupling {
  int level_i = 0;
  int level_j = 0;
  double rabi = 0.0;  // Rabi frequency, rad/s
  HarmonicTag tag = HarmonicTag::Static;
};

// Population influx rate*rho_{from,from} into rho_{to,to}, modelling decay
// and repump channels that keep the system closed.
struct SourceChannel {
  int from = 0;
  int to = 0;
  double rate = 0.0;  // rad/s
};

// Rotating-frame description of the driven system. Level indices are 0-based.
// diagonal_terms[l] holds the full rotating-frame diagonal entry in rad/s:
// detuning terms on the real axis (e.g. -2*Delta) and -linewidth on the
// imaginary axis. The builder halves everything when forming the matrices
// that act in the commutator.
struct SystemSpec {
  int n_levels = 0;
  std::vector<std::complex<double>> diagonal_terms;
  std::vector<Coupling> couplings;
  std::vector<SourceChannel> sources;
  double beat = 0.0;  // probe minus pump angular frequency difference, rad/s

  // Structural validation; throws std::invalid_argument naming the offending
  // entry. Trace preservation is a property of diagonals + sources together
  // and is checked separately (closure_defect).
  void validate() const;
};

// Worst per-level mismatch (rad/s) between the decay rate encoded on the
// diagonal and the total source outflow of that level. Zero for a closed
// system; a nonzero value means the steady state will not preserve trace.
double closure_defect(const SystemSpec& spec);

}  // namespace pumpprobe
