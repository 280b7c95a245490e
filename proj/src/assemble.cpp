#include "pumpprobe/assemble.hpp"

#include <complex>
#include <stdexcept>

#include "pumpprobe/harmonics.hpp"

namespace pumpprobe {

using std::complex;

ProbeMatrices probe_matrices(const HamiltonianDecomposition& h, int i, int j) {
  const int n = static_cast<int>(h.h0.rows());
  if (i < 0 || i >= n || j < 0 || j >= n)
    throw std::out_of_range("probe_matrices: element (" + std::to_string(i) +
                            "," + std::to_string(j) + ") outside " +
                            std::to_string(n) + "-level system");
  ProbeMatrices q;
  q.q0 = Eigen::MatrixXcd::Zero(n, n);
  q.q_plus = Eigen::MatrixXcd::Zero(n, n);
  q.q_minus = Eigen::MatrixXcd::Zero(n, n);
  // h e_ij places column i of h into column j; e_ij h places row j of h into
  // row i. Only column j and row i of each Q are populated.
  q.q0.col(j) += h.h0.col(i);
  q.q0.row(i) -= h.h0.adjoint().row(j);
  q.q_plus.col(j) += h.h_plus.col(i);
  q.q_plus.row(i) -= h.h_plus.row(j);
  q.q_minus.col(j) += h.h_minus.col(i);
  q.q_minus.row(i) -= h.h_minus.row(j);
  return q;
}

LinearSystem assemble_m(const SystemSpec& spec, int max_order) {
  if (max_order < 1)
    throw std::invalid_argument("assemble_m: max_order must be >= 1");
  const HamiltonianDecomposition h = build_hamiltonian(spec);
  const int n = spec.n_levels;
  const int dim = harmonic_count(max_order) * n * n;
  const complex<double> mi(0.0, -1.0);

  LinearSystem sys;
  sys.n_levels = n;
  sys.max_order = max_order;
  sys.m = Eigen::MatrixXcd::Zero(dim, dim);

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const ProbeMatrices q = probe_matrices(h, i, j);
      for (int k = -max_order; k <= max_order; ++k) {
        const int col = vec_index(i, j, k, n, max_order);
        for (int x = 0; x < n; ++x) {
          for (int y = 0; y < n; ++y) {
            if (q.q0(x, y) != 0.0)
              sys.m(vec_index(x, y, k, n, max_order), col) += mi * q.q0(x, y);
            if (k + 1 <= max_order && q.q_plus(x, y) != 0.0)
              sys.m(vec_index(x, y, k + 1, n, max_order), col) +=
                  mi * q.q_plus(x, y);
            if (k - 1 >= -max_order && q.q_minus(x, y) != 0.0)
              sys.m(vec_index(x, y, k - 1, n, max_order), col) +=
                  mi * q.q_minus(x, y);
          }
        }
        // Floquet shift from the time derivative of rho^k e^{ik delta t}.
        sys.m(col, col) += mi * static_cast<double>(k) * spec.beat;
        if (i == j) {
          for (const SourceChannel& ch : spec.sources)
            if (ch.from == i)
              sys.m(vec_index(ch.to, ch.to, k, n, max_order), col) += ch.rate;
        }
      }
    }
  }
  return sys;
}

ReducedSystem reduce(const LinearSystem& system) {
  const int n = system.n_levels;
  const int kmax = system.max_order;
  const int block = harmonic_count(kmax);
  const int dim = block * n * n;
  const int rdim = dim - block;
  if (system.m.rows() != dim || system.m.cols() != dim)
    throw std::invalid_argument("reduce: matrix size does not match metadata");

  ReducedSystem red;
  red.n_levels = n;
  red.max_order = kmax;
  // The (N-1,N-1) block is the last one, so dropping its rows and columns is
  // a corner view.
  red.m = system.m.topLeftCorner(rdim, rdim);
  for (int l = 0; l + 1 < n; ++l) {
    for (int k = -kmax; k <= kmax; ++k) {
      const int diag_col = vec_index(l, l, k, n, kmax);
      const int last_col = vec_index(n - 1, n - 1, k, n, kmax);
      red.m.col(diag_col) -= system.m.col(last_col).head(rdim);
    }
  }
  red.b = -system.m.col(vec_index(n - 1, n - 1, 0, n, kmax)).head(rdim);
  return red;
}

}  // namespace pumpprobe
