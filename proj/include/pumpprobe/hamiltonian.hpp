// hamiltonian.hpp — decomposition of the rotating-frame Hamiltonian into
// static and beat-note parts.

#pragma once

#include <Eigen/Dense>

#include "pumpprobe/system_spec.hpp"

namespace pumpprobe {

// The triple H = h0 + h_plus e^{+i delta t} + h_minus e^{-i delta t}.
// Entries are in rad/s with hbar set to 1; the conventional hbar/2 prefactor
// is absorbed, so the matrices act directly in -i(H rho - rho H^dagger).
// h_minus is always the adjoint of h_plus; h0 is Hermitian apart from the
// decay terms on its diagonal.
struct HamiltonianDecomposition {
  Eigen::MatrixXcd h0;
  Eigen::MatrixXcd h_plus;
  Eigen::MatrixXcd h_minus;
};

HamiltonianDecomposition build_hamiltonian(const SystemSpec& spec);

}  // namespace pumpprobe
