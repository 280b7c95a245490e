// assemble.hpp — numeric construction of the time-independent linear system
// by unit-vector probing, and the closed-system reduction that removes its
// null space.

#pragma once

#include <Eigen/Dense>

#include "pumpprobe/hamiltonian.hpp"
#include "pumpprobe/system_spec.hpp"

namespace pumpprobe {

// Square system M a = 0 over the stacked harmonics; singular by construction
// because the 2K+1 trace constraints are not yet applied.
struct LinearSystem {
  Eigen::MatrixXcd m;
  int n_levels = 0;
  int max_order = 0;
};

// Nonsingular system m a' = b of size (2K+1)(N^2-1) obtained by folding the
// trace constraints into the diagonal columns and dropping the redundant
// last block of equations.
struct ReducedSystem {
  Eigen::MatrixXcd m;
  Eigen::VectorXcd b;
  int n_levels = 0;
  int max_order = 0;
};

// The three commutator responses to a unit matrix at (i,j):
//   q0      = h0 e_ij      - e_ij h0^dagger
//   q_plus  = h_plus e_ij  - e_ij h_plus
//   q_minus = h_minus e_ij - e_ij h_minus
// These are the only matrices needed to fill the columns belonging to element
// (i,j), for every harmonic.
struct ProbeMatrices {
  Eigen::MatrixXcd q0;
  Eigen::MatrixXcd q_plus;
  Eigen::MatrixXcd q_minus;
};

ProbeMatrices probe_matrices(const HamiltonianDecomposition& h, int i, int j);

// Fills M column by column: probing rho^k_{ij} = 1 scatters -i*q0 into the
// same-harmonic rows, -i*q_plus into harmonic k+1, -i*q_minus into k-1
// (contributions beyond ±max_order are dropped), adds the -i*k*beat shift on
// the probed diagonal entry, and adds source rates into the rows of the
// receiving populations when a population is probed.
LinearSystem assemble_m(const SystemSpec& spec, int max_order);

ReducedSystem reduce(const LinearSystem& system);

}  // namespace pumpprobe
