// term_algebra.hpp — independent symbolic-style construction of the harmonic
// linear system. Density-matrix entries are opaque unknowns, the beat factors
// Y = e^{+i delta t} and Z = e^{-i delta t} are tracked as exponent pairs, and
// coefficient extraction turns the expanded equations into the same matrix the
// numeric path assembles. Exists as a cross-check oracle, not a fast path.

#pragma once

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "pumpprobe/assemble.hpp"
#include "pumpprobe/system_spec.hpp"

namespace pumpprobe {

// Linear combination of unknowns (identified by their stacked-vector
// position) plus a constant. Unknowns never multiply unknowns in this
// problem: the Hamiltonian is known, only rho is unknown.
struct LinearExpr {
  std::map<int, std::complex<double>> coeffs;
  std::complex<double> constant{0.0, 0.0};

  bool is_zero() const { return coeffs.empty() && constant == 0.0; }

  void add(const LinearExpr& other);
  void add_term(int unknown, std::complex<double> coefficient);
  void scale(std::complex<double> factor);
  // Drop exact-zero coefficients.
  void prune();
};

// Polynomial in Y and Z with LinearExpr coefficients. Keys are exponent
// pairs (y_power, z_power); since Y*Z = 1, keys are kept normalized with
// min(y_power, z_power) = 0, which merges Y^m Z into Y^{m-1} automatically.
class HarmonicPoly {
 public:
  using Key = std::pair<int, int>;

  static HarmonicPoly constant(std::complex<double> value);
  // The unknown at stacked position `id`, multiplied by Y^k (k>0) or
  // Z^{-k} (k<0).
  static HarmonicPoly unknown(int id, int harmonic);

  bool has_unknowns() const;
  bool empty() const { return groups_.empty(); }

  const std::map<Key, LinearExpr>& groups() const { return groups_; }

  // Coefficient group of the monomial carrying harmonic k (Y^k or Z^{-k});
  // zero expression if absent.
  LinearExpr group(int harmonic) const;

  void add(const HarmonicPoly& other);
  void scale(std::complex<double> factor);
  void add_scaled_term(Key key, const LinearExpr& expr,
                       std::complex<double> factor);

  // Re-applies the Y*Z = 1 folding; idempotent (construction already keeps
  // keys normalized).
  HarmonicPoly normalized() const;

  // Drops monomials faster than e^{±i max_order delta t}.
  void truncate(int max_order);

  // Product with YZ reduction applied at multiply time and powers above
  // max_order dropped. Throws std::logic_error if both factors carry
  // unknowns.
  static HarmonicPoly multiply(const HarmonicPoly& a, const HarmonicPoly& b,
                               int max_order);

 private:
  std::map<Key, LinearExpr> groups_;
};

// The right-hand side -i(H rho - rho H^dagger) + rho_s as an N x N matrix of
// harmonic polynomials over the rho^k_{ij} unknowns, truncated at max_order.
std::vector<std::vector<HarmonicPoly>> symbolic_rhs(const SystemSpec& spec,
                                                    int max_order);

// Subtracts the time-derivative terms i k delta rho^k from each entry and
// splits every entry into its 2K+1 harmonic groups, ordered like the stacked
// vector. Each returned expression equated to zero is one row of the system.
std::vector<LinearExpr> extract_equations(
    const std::vector<std::vector<HarmonicPoly>>& rhs, const SystemSpec& spec,
    int max_order);

// Coefficient extraction: M[row][col] is the coefficient of unknown col in
// equation row. (The constants, negated, would form B; they are identically
// zero for this problem class, which is asserted.)
LinearSystem equations_to_matrix(const std::vector<LinearExpr>& equations,
                                 int n_levels, int max_order);

// Convenience composition of the three steps above.
LinearSystem assemble_m_symbolic(const SystemSpec& spec, int max_order);

}  // namespace pumpprobe
