#include "pumpprobe/harmonics.hpp"

#include <stdexcept>
#include <string>

namespace pumpprobe {

namespace {

void check_order(int max_order) {
  if (max_order < 0)
    throw std::invalid_argument("max_order must be >= 0, got " +
                                std::to_string(max_order));
}

void check_harmonic(int k, int max_order) {
  if (k > max_order || k < -max_order)
    throw std::out_of_range("harmonic index " + std::to_string(k) +
                            " outside [-" + std::to_string(max_order) + "," +
                            std::to_string(max_order) + "]");
}

void check_level(int l, int n_levels) {
  if (l < 0 || l >= n_levels)
    throw std::out_of_range("level index " + std::to_string(l) +
                            " outside [0," + std::to_string(n_levels - 1) +
                            "]");
}

}  // namespace

int harmonic_offset(int k, int max_order) {
  check_order(max_order);
  check_harmonic(k, max_order);
  if (k == 0) return 0;
  return k > 0 ? 2 * k - 1 : -2 * k;
}

int vec_index(int i, int j, int k, int n_levels, int max_order) {
  check_level(i, n_levels);
  check_level(j, n_levels);
  return (i * n_levels + j) * harmonic_count(max_order) +
         harmonic_offset(k, max_order);
}

FlatIndex vec_unindex(int pos, int n_levels, int max_order) {
  check_order(max_order);
  const int block_size = harmonic_count(max_order);
  const int dim = block_size * n_levels * n_levels;
  if (pos < 0 || pos >= dim)
    throw std::out_of_range("vector position " + std::to_string(pos) +
                            " outside [0," + std::to_string(dim - 1) + "]");
  const int block = pos / block_size;
  const int off = pos % block_size;
  FlatIndex idx;
  idx.i = block / n_levels;
  idx.j = block % n_levels;
  idx.k = (off == 0) ? 0 : (off % 2 == 1 ? (off + 1) / 2 : -off / 2);
  return idx;
}

DensityHarmonics::DensityHarmonics(int n_levels, int max_order)
    : n_levels_(n_levels), max_order_(max_order) {
  check_order(max_order);
  if (n_levels < 1)
    throw std::invalid_argument("n_levels must be >= 1");
  mats_.assign(harmonic_count(max_order),
               Eigen::MatrixXcd::Zero(n_levels, n_levels));
}

const Eigen::MatrixXcd& DensityHarmonics::harmonic(int k) const {
  return mats_[harmonic_offset(k, max_order_)];
}

Eigen::MatrixXcd& DensityHarmonics::harmonic(int k) {
  return mats_[harmonic_offset(k, max_order_)];
}

Eigen::VectorXcd flatten(const DensityHarmonics& rho) {
  const int n = rho.n_levels();
  const int kmax = rho.max_order();
  Eigen::VectorXcd a(harmonic_count(kmax) * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = -kmax; k <= kmax; ++k)
        a(vec_index(i, j, k, n, kmax)) = rho.harmonic(k)(i, j);
  return a;
}

DensityHarmonics unflatten(const Eigen::VectorXcd& a, int n_levels,
                           int max_order) {
  const int dim = harmonic_count(max_order) * n_levels * n_levels;
  if (a.size() != dim)
    throw std::invalid_argument("unflatten: vector length " +
                                std::to_string(a.size()) + " != " +
                                std::to_string(dim));
  DensityHarmonics rho(n_levels, max_order);
  for (int pos = 0; pos < dim; ++pos) {
    const FlatIndex idx = vec_unindex(pos, n_levels, max_order);
    rho.harmonic(idx.k)(idx.i, idx.j) = a(pos);
  }
  return rho;
}

double trace_defect(const DensityHarmonics& rho) {
  double worst = std::abs(rho.harmonic(0).trace() - 1.0);
  for (int k = 1; k <= rho.max_order(); ++k) {
    worst = std::max(worst, std::abs(rho.harmonic(k).trace()));
    worst = std::max(worst, std::abs(rho.harmonic(-k).trace()));
  }
  return worst;
}

double hermiticity_defect(const DensityHarmonics& rho) {
  double worst = 0.0;
  for (int k = 0; k <= rho.max_order(); ++k) {
    const Eigen::MatrixXcd diff =
        rho.harmonic(-k) - rho.harmonic(k).adjoint();
    worst = std::max(worst, diff.cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace pumpprobe
