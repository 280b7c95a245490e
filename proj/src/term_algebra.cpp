#include "pumpprobe/term_algebra.hpp"

#include <stdexcept>

#include "pumpprobe/hamiltonian.hpp"
#include "pumpprobe/harmonics.hpp"

namespace pumpprobe {

using std::complex;

void LinearExpr::add(const LinearExpr& other) {
  for (const auto& [id, c] : other.coeffs) add_term(id, c);
  constant += other.constant;
}

void LinearExpr::add_term(int unknown, complex<double> coefficient) {
  auto it = coeffs.find(unknown);
  if (it == coeffs.end()) {
    if (coefficient != 0.0) coeffs.emplace(unknown, coefficient);
    return;
  }
  it->second += coefficient;
  if (it->second == 0.0) coeffs.erase(it);
}

void LinearExpr::scale(complex<double> factor) {
  if (factor == 0.0) {
    coeffs.clear();
    constant = 0.0;
    return;
  }
  for (auto& [id, c] : coeffs) c *= factor;
  constant *= factor;
}

void LinearExpr::prune() {
  for (auto it = coeffs.begin(); it != coeffs.end();)
    it = (it->second == 0.0) ? coeffs.erase(it) : std::next(it);
}

namespace {

HarmonicPoly::Key normalize_key(HarmonicPoly::Key key) {
  const int common = std::min(key.first, key.second);
  return {key.first - common, key.second - common};
}

}  // namespace

HarmonicPoly HarmonicPoly::constant(complex<double> value) {
  HarmonicPoly p;
  if (value != 0.0) {
    LinearExpr e;
    e.constant = value;
    p.add_scaled_term({0, 0}, e, 1.0);
  }
  return p;
}

HarmonicPoly HarmonicPoly::unknown(int id, int harmonic) {
  HarmonicPoly p;
  LinearExpr e;
  e.add_term(id, 1.0);
  const Key key =
      harmonic >= 0 ? Key{harmonic, 0} : Key{0, -harmonic};
  p.add_scaled_term(key, e, 1.0);
  return p;
}

bool HarmonicPoly::has_unknowns() const {
  for (const auto& [key, expr] : groups_)
    if (!expr.coeffs.empty()) return true;
  return false;
}

LinearExpr HarmonicPoly::group(int harmonic) const {
  const Key key = harmonic >= 0 ? Key{harmonic, 0} : Key{0, -harmonic};
  auto it = groups_.find(key);
  return it == groups_.end() ? LinearExpr{} : it->second;
}

void HarmonicPoly::add(const HarmonicPoly& other) {
  for (const auto& [key, expr] : other.groups_) add_scaled_term(key, expr, 1.0);
}

void HarmonicPoly::scale(complex<double> factor) {
  for (auto& [key, expr] : groups_) expr.scale(factor);
  for (auto it = groups_.begin(); it != groups_.end();)
    it = it->second.is_zero() ? groups_.erase(it) : std::next(it);
}

void HarmonicPoly::add_scaled_term(Key key, const LinearExpr& expr,
                                   complex<double> factor) {
  LinearExpr scaled = expr;
  scaled.scale(factor);
  if (scaled.is_zero()) return;
  const Key norm = normalize_key(key);
  LinearExpr& slot = groups_[norm];
  slot.add(scaled);
  if (slot.is_zero()) groups_.erase(norm);
}

HarmonicPoly HarmonicPoly::normalized() const {
  HarmonicPoly out;
  for (const auto& [key, expr] : groups_) out.add_scaled_term(key, expr, 1.0);
  return out;
}

void HarmonicPoly::truncate(int max_order) {
  for (auto it = groups_.begin(); it != groups_.end();) {
    const int power = std::max(it->first.first, it->first.second);
    it = (power > max_order) ? groups_.erase(it) : std::next(it);
  }
}

HarmonicPoly HarmonicPoly::multiply(const HarmonicPoly& a,
                                    const HarmonicPoly& b, int max_order) {
  if (a.has_unknowns() && b.has_unknowns())
    throw std::logic_error(
        "HarmonicPoly::multiply: product of two unknown-bearing polynomials");
  HarmonicPoly out;
  for (const auto& [ka, ea] : a.groups_) {
    for (const auto& [kb, eb] : b.groups_) {
      const Key key = normalize_key({ka.first + kb.first, ka.second + kb.second});
      if (std::max(key.first, key.second) > max_order) continue;
      if (ea.coeffs.empty()) {
        out.add_scaled_term(key, eb, ea.constant);
      } else {
        out.add_scaled_term(key, ea, eb.constant);
      }
    }
  }
  return out;
}

std::vector<std::vector<HarmonicPoly>> symbolic_rhs(const SystemSpec& spec,
                                                    int max_order) {
  if (max_order < 1)
    throw std::invalid_argument("symbolic_rhs: max_order must be >= 1");
  const HamiltonianDecomposition h = build_hamiltonian(spec);
  const int n = spec.n_levels;
  const complex<double> mi(0.0, -1.0);

  // H and H^dagger as constant polynomials; H^dagger = h0^dagger + h_plus Y +
  // h_minus Z since (h_plus)^dagger = h_minus.
  std::vector<std::vector<HarmonicPoly>> ham(n, std::vector<HarmonicPoly>(n));
  std::vector<std::vector<HarmonicPoly>> ham_dag(n,
                                                 std::vector<HarmonicPoly>(n));
  std::vector<std::vector<HarmonicPoly>> rho(n, std::vector<HarmonicPoly>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      HarmonicPoly& hij = ham[i][j];
      hij = HarmonicPoly::constant(h.h0(i, j));
      LinearExpr p, m;
      p.constant = h.h_plus(i, j);
      m.constant = h.h_minus(i, j);
      hij.add_scaled_term({1, 0}, p, 1.0);
      hij.add_scaled_term({0, 1}, m, 1.0);

      HarmonicPoly& dij = ham_dag[i][j];
      dij = HarmonicPoly::constant(std::conj(h.h0(j, i)));
      dij.add_scaled_term({1, 0}, p, 1.0);
      dij.add_scaled_term({0, 1}, m, 1.0);

      for (int k = -max_order; k <= max_order; ++k)
        rho[i][j].add(HarmonicPoly::unknown(
            vec_index(i, j, k, n, max_order), k));
    }
  }

  std::vector<std::vector<HarmonicPoly>> rhs(n, std::vector<HarmonicPoly>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      HarmonicPoly entry;
      for (int l = 0; l < n; ++l) {
        entry.add(HarmonicPoly::multiply(ham[i][l], rho[l][j], max_order));
        HarmonicPoly right =
            HarmonicPoly::multiply(rho[i][l], ham_dag[l][j], max_order);
        right.scale(-1.0);
        entry.add(right);
      }
      entry.scale(mi);
      if (i == j) {
        for (const SourceChannel& ch : spec.sources) {
          if (ch.to != i) continue;
          HarmonicPoly src = rho[ch.from][ch.from];
          src.scale(ch.rate);
          entry.add(src);
        }
      }
      entry.truncate(max_order);
      rhs[i][j] = std::move(entry);
    }
  }
  return rhs;
}

std::vector<LinearExpr> extract_equations(
    const std::vector<std::vector<HarmonicPoly>>& rhs, const SystemSpec& spec,
    int max_order) {
  const int n = spec.n_levels;
  if (static_cast<int>(rhs.size()) != n)
    throw std::invalid_argument("extract_equations: matrix size mismatch");
  const complex<double> i_unit(0.0, 1.0);
  std::vector<LinearExpr> equations(harmonic_count(max_order) * n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      HarmonicPoly entry = rhs[i][j];
      // Subtract the derivative terms i k delta rho^k Y^k (signed k).
      for (int k = -max_order; k <= max_order; ++k) {
        if (k == 0) continue;
        HarmonicPoly d =
            HarmonicPoly::unknown(vec_index(i, j, k, n, max_order), k);
        d.scale(-i_unit * static_cast<double>(k) * spec.beat);
        entry.add(d);
      }
      for (int k = -max_order; k <= max_order; ++k)
        equations[vec_index(i, j, k, n, max_order)] = entry.group(k);
    }
  }
  return equations;
}

LinearSystem equations_to_matrix(const std::vector<LinearExpr>& equations,
                                 int n_levels, int max_order) {
  const int dim = harmonic_count(max_order) * n_levels * n_levels;
  if (static_cast<int>(equations.size()) != dim)
    throw std::invalid_argument("equations_to_matrix: expected " +
                                std::to_string(dim) + " equations, got " +
                                std::to_string(equations.size()));
  LinearSystem sys;
  sys.n_levels = n_levels;
  sys.max_order = max_order;
  sys.m = Eigen::MatrixXcd::Zero(dim, dim);
  for (int row = 0; row < dim; ++row) {
    for (const auto& [id, c] : equations[row].coeffs) {
      if (id < 0 || id >= dim)
        throw std::invalid_argument("equations_to_matrix: unknown id " +
                                    std::to_string(id) + " outside [0," +
                                    std::to_string(dim - 1) + "]");
      sys.m(row, id) = c;
    }
    if (equations[row].constant != 0.0)
      throw std::invalid_argument(
          "equations_to_matrix: nonzero constant in equation " +
          std::to_string(row));
  }
  return sys;
}

LinearSystem assemble_m_symbolic(const SystemSpec& spec, int max_order) {
  return equations_to_matrix(
      extract_equations(symbolic_rhs(spec, max_order), spec, max_order),
      spec.n_levels, max_order);
}

}  // namespace pumpprobe
