#include "pumpprobe/hamiltonian.hpp"

namespace pumpprobe {

HamiltonianDecomposition build_hamiltonian(const SystemSpec& spec) {
  spec.validate();
  const int n = spec.n_levels;
  HamiltonianDecomposition h;
  h.h0 = Eigen::MatrixXcd::Zero(n, n);
  h.h_plus = Eigen::MatrixXcd::Zero(n, n);
  h.h_minus = Eigen::MatrixXcd::Zero(n, n);

  for (int l = 0; l < n; ++l) h.h0(l, l) = 0.5 * spec.diagonal_terms[l];

  for (const Coupling& c : spec.couplings) {
    const double half = 0.5 * c.rabi;
    if (c.tag == HarmonicTag::Static) {
      h.h0(c.level_i, c.level_j) += half;
      h.h0(c.level_j, c.level_i) += half;
    } else {
      h.h_plus(c.level_i, c.level_j) += half;
      h.h_minus(c.level_j, c.level_i) += half;
    }
  }
  return h;
}

}  // namespace pumpprobe
