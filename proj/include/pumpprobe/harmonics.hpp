// harmonics.hpp — harmonic-index bookkeeping and the flattening between
// density-matrix harmonics and the stacked unknown vector.

#pragma once

#include <Eigen/Dense>
#include <vector>

namespace pumpprobe {

// Number of retained harmonics 0, ±1, ..., ±max_order.
constexpr int harmonic_count(int max_order) { return 2 * max_order + 1; }

// Offset of harmonic k inside one (i,j) block. Per-block ordering is
// 0, +1, -1, +2, -2, ..., +K, -K: lower order first, the negative harmonic
// following the positive one.
int harmonic_offset(int k, int max_order);

// Position of rho^k_{ij} in the stacked vector. Blocks are row-major over
// (i,j); indices are 0-based, so the result lies in [0, (2K+1)N^2).
int vec_index(int i, int j, int k, int n_levels, int max_order);

struct FlatIndex {
  int i = 0;
  int j = 0;
  int k = 0;
};

// Inverse of vec_index.
FlatIndex vec_unindex(int pos, int n_levels, int max_order);

// The set of harmonic components {rho^k} of the pseudo-steady-state density
// matrix, k = 0, ±1, ..., ±max_order.
class DensityHarmonics {
 public:
  DensityHarmonics() = default;
  DensityHarmonics(int n_levels, int max_order);

  int n_levels() const { return n_levels_; }
  int max_order() const { return max_order_; }

  const Eigen::MatrixXcd& harmonic(int k) const;
  Eigen::MatrixXcd& harmonic(int k);

 private:
  int n_levels_ = 0;
  int max_order_ = 0;
  std::vector<Eigen::MatrixXcd> mats_;  // indexed by harmonic_offset
};

// Stack all harmonics into one vector of length (2K+1)N^2 and back.
// The two are exact inverses.
Eigen::VectorXcd flatten(const DensityHarmonics& rho);
DensityHarmonics unflatten(const Eigen::VectorXcd& a, int n_levels,
                           int max_order);

// |tr rho^0 - 1| and max over k != 0 of |tr rho^k|; both vanish for a
// physical closed-system solution.
double trace_defect(const DensityHarmonics& rho);

// max over k of the elementwise norm of rho^{-k} - (rho^k)^dagger.
double hermiticity_defect(const DensityHarmonics& rho);

}  // namespace pumpprobe
