#include <doctest.h>

#include <random>

#include "pumpprobe/harmonics.hpp"
#include "pumpprobe/models.hpp"
#include "pumpprobe/term_algebra.hpp"
#include "../support/test_support.hpp"

using namespace pumpprobe;

namespace {

constexpr double two_pi = 6.283185307179586;

bool same_groups(const HarmonicPoly& a, const HarmonicPoly& b) {
  if (a.groups().size() != b.groups().size()) return false;
  for (const auto& [key, expr] : a.groups()) {
    const auto it = b.groups().find(key);
    if (it == b.groups().end()) return false;
    if (expr.coeffs != it->second.coeffs) return false;
    if (expr.constant != it->second.constant) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE_BEGIN("term_algebra");

TEST_CASE("YZ folding happens at construction and is idempotent") {
  HarmonicPoly p;
  LinearExpr e;
  e.add_term(4, {1.0, 0.0});
  p.add_scaled_term({3, 1}, e, 1.0);  // Y^3 Z folds into Y^2
  REQUIRE(p.groups().size() == 1);
  CHECK(p.groups().begin()->first == HarmonicPoly::Key{2, 0});
  CHECK(same_groups(p, p.normalized()));
  CHECK(same_groups(p.normalized(), p.normalized().normalized()));
}

TEST_CASE("grouped monomials merge: Y^m Z lands on Y^{m-1}") {
  HarmonicPoly p;
  LinearExpr e1, e2;
  e1.add_term(0, {2.0, 0.0});
  e2.add_term(1, {0.0, 3.0});
  p.add_scaled_term({1, 0}, e1, 1.0);
  p.add_scaled_term({2, 1}, e2, 1.0);
  REQUIRE(p.groups().size() == 1);
  const LinearExpr merged = p.group(1);
  CHECK(merged.coeffs.at(0) == std::complex<double>(2.0, 0.0));
  CHECK(merged.coeffs.at(1) == std::complex<double>(0.0, 3.0));
}

TEST_CASE("products of two unknown-bearing polynomials are rejected") {
  const HarmonicPoly u = HarmonicPoly::unknown(0, 1);
  CHECK_THROWS_AS(HarmonicPoly::multiply(u, u, 3), std::logic_error);
}

TEST_CASE("multiplication truncates powers beyond the kept order") {
  const HarmonicPoly u = HarmonicPoly::unknown(2, 2);   // Y^2
  const HarmonicPoly c = HarmonicPoly::constant(1.0);
  HarmonicPoly y1;
  LinearExpr one;
  one.constant = 1.0;
  y1.add_scaled_term({1, 0}, one, 1.0);  // the factor Y
  CHECK(HarmonicPoly::multiply(u, y1, 2).empty());      // Y^3 dropped at K=2
  CHECK(!HarmonicPoly::multiply(u, c, 2).empty());
}

TEST_CASE("two-level stationary group reproduces the hand expansion") {
  models::TwoLevelParams params;
  params.gamma = two_pi * 1e7;
  params.pump_rate = two_pi * 2e6;
  params.rabi_pump = two_pi * 36e6;
  params.rabi_probe = two_pi * 6e6;
  params.beat = two_pi * 1e7;
  const SystemSpec spec = models::two_level(params);
  const auto rhs = symbolic_rhs(spec, 1);

  // Stationary part of the (1,1) entry, expanded by hand from the
  // pseudo-commutator plus the source row:
  //   -Gamma_op rho^0_11 - i p (rho^0_21 - rho^0_12)
  //   + i s (rho^1_12 - rho^-1_21 ... with s on the beat entries)
  //   + Gamma rho^0_22
  const double p = 0.5 * params.rabi_pump;
  const double s = 0.5 * params.rabi_probe;
  const LinearExpr g0 = rhs[0][0].group(0);
  const std::complex<double> i_unit(0.0, 1.0);
  CHECK(g0.coeffs.at(vec_index(0, 0, 0, 2, 1)) ==
        std::complex<double>(-params.pump_rate, 0.0));
  CHECK(g0.coeffs.at(vec_index(1, 0, 0, 2, 1)) == -i_unit * p);
  CHECK(g0.coeffs.at(vec_index(0, 1, 0, 2, 1)) == i_unit * p);
  CHECK(g0.coeffs.at(vec_index(0, 1, 1, 2, 1)) == i_unit * s);
  CHECK(g0.coeffs.at(vec_index(1, 0, -1, 2, 1)) == -i_unit * s);
  CHECK(g0.coeffs.at(vec_index(1, 1, 0, 2, 1)) ==
        std::complex<double>(params.gamma, 0.0));
  CHECK(g0.constant == std::complex<double>(0.0, 0.0));
  CHECK(g0.coeffs.size() == 6);
}

TEST_CASE("zero Hamiltonian and sources give the zero polynomial matrix") {
  SystemSpec spec;
  spec.n_levels = 2;
  spec.diagonal_terms = {{0.0, 0.0}, {0.0, 0.0}};
  spec.beat = two_pi * 1e6;
  const auto rhs = symbolic_rhs(spec, 2);
  for (const auto& row : rhs)
    for (const HarmonicPoly& entry : row) CHECK(entry.empty());
}

TEST_CASE("probe-only coupling fills the second harmonic from rho^1 alone") {
  SystemSpec spec;
  spec.n_levels = 2;
  spec.diagonal_terms = {{0.0, 0.0}, {0.0, 0.0}};
  spec.couplings = {{0, 1, two_pi * 6e6, HarmonicTag::Beat}};
  spec.beat = two_pi * 1e7;
  const auto rhs = symbolic_rhs(spec, 2);
  const LinearExpr y2 = rhs[0][1].group(2);
  REQUIRE(!y2.coeffs.empty());
  const double s = 0.5 * two_pi * 6e6;
  // -i [h_plus rho^1 - rho^1 h_plus]_{12}: only rho^1 unknowns survive.
  for (const auto& [id, coeff] : y2.coeffs) {
    const FlatIndex idx = vec_unindex(id, 2, 2);
    CHECK(idx.k == 1);
    CHECK(std::abs(std::abs(coeff) - s) < 1e-9);
  }
}

TEST_CASE("truncation leaves no group beyond the kept order") {
  std::mt19937 rng(13);
  for (int kmax : {1, 2, 3}) {
    const SystemSpec spec = testing::random_closed_spec(rng, 3);
    const auto rhs = symbolic_rhs(spec, kmax);
    for (const auto& row : rhs)
      for (const HarmonicPoly& entry : row)
        for (const auto& [key, expr] : entry.groups())
          CHECK(std::max(key.first, key.second) <= kmax);
  }
}

TEST_CASE("extraction yields one ordered equation per unknown") {
  models::TwoLevelParams p;
  p.gamma = two_pi * 1e7;
  p.rabi_pump = two_pi * 36e6;
  p.rabi_probe = two_pi * 6e6;
  p.beat = two_pi * 1e7;
  const SystemSpec spec = models::two_level(p);
  const auto equations = extract_equations(symbolic_rhs(spec, 1), spec, 1);
  REQUIRE(equations.size() == 12);

  // The first-harmonic equation of the (1,1) entry carries -i beat rho^1_11.
  const LinearExpr& eq = equations[vec_index(0, 0, 1, 2, 1)];
  const auto it = eq.coeffs.find(vec_index(0, 0, 1, 2, 1));
  REQUIRE(it != eq.coeffs.end());
  CHECK(it->second.imag() == doctest::Approx(-spec.beat));

  const SystemSpec three = models::lambda_three_level([] {
    models::LambdaParams l;
    l.gamma = two_pi * 6e6;
    l.gamma_ground = two_pi * 1e4;
    l.rabi_pump = two_pi * 8e6;
    l.rabi_probe = two_pi * 5e5;
    l.ground_splitting = two_pi * 3e9;
    l.beat = two_pi * 1e6;
    return l;
  }());
  CHECK(extract_equations(symbolic_rhs(three, 1), three, 1).size() == 27);
}

TEST_CASE("unknown support matches the numeric sparsity pattern") {
  std::mt19937 rng(37);
  const SystemSpec spec = testing::random_closed_spec(rng, 3);
  const LinearSystem numeric = assemble_m(spec, 1);
  const auto equations = extract_equations(symbolic_rhs(spec, 1), spec, 1);
  for (int row = 0; row < numeric.m.rows(); ++row) {
    for (int col = 0; col < numeric.m.cols(); ++col) {
      const bool numeric_nz = std::abs(numeric.m(row, col)) > 0.0;
      const bool symbolic_nz =
          equations[row].coeffs.find(col) != equations[row].coeffs.end();
      CHECK(numeric_nz == symbolic_nz);
    }
  }
}

TEST_CASE("coefficient extraction fills the matrix and rejects bad ids") {
  const std::vector<LinearExpr> zeros(12);
  const LinearSystem sys = equations_to_matrix(zeros, 2, 1);
  CHECK(sys.m.cwiseAbs().maxCoeff() == 0.0);

  std::vector<LinearExpr> bad(12);
  bad[0].add_term(99, 1.0);
  CHECK_THROWS_AS(equations_to_matrix(bad, 2, 1), std::invalid_argument);
}

TEST_CASE("band-block structure: harmonics couple only to their neighbours") {
  std::mt19937 rng(41);
  const SystemSpec spec = testing::random_closed_spec(rng, 2);
  const LinearSystem sys = assemble_m_symbolic(spec, 3);
  REQUIRE(sys.m.rows() == 28);
  for (int r = 0; r < sys.m.rows(); ++r) {
    for (int c = 0; c < sys.m.cols(); ++c) {
      if (std::abs(sys.m(r, c)) == 0.0) continue;
      const FlatIndex row = vec_unindex(r, 2, 3);
      const FlatIndex col = vec_unindex(c, 2, 3);
      CHECK(std::abs(row.k - col.k) <= 1);
    }
  }
}

TEST_CASE("term-algebra and numeric builders agree across random systems") {
  std::mt19937 rng(53);
  for (int n : {2, 3, 4}) {
    for (int kmax : {1, 2, 3}) {
      const SystemSpec spec = testing::random_closed_spec(rng, n);
      const LinearSystem a = assemble_m(spec, kmax);
      const LinearSystem b = assemble_m_symbolic(spec, kmax);
      const double scale = a.m.cwiseAbs().maxCoeff();
      CHECK((a.m - b.m).cwiseAbs().maxCoeff() <= 1e-12 * scale);
    }
  }
}

TEST_CASE("the builders also agree at the full sixteen-level size") {
  const models::DipoleTable table = models::DipoleTable::load(
      testing::source_dir() + "/data/rb87_d1_dipoles.dat");
  models::Rb87D1Params p;
  p.pump_detuning = 30.0 * p.gamma;
  p.pump_rabi_scale = 10.0 * p.gamma;
  p.probe_rabi_scale = 0.1 * p.gamma;
  p.beat = -p.ground_splitting;
  const SystemSpec spec = models::rb87_d1_sixteen_level(p, table);
  const LinearSystem a = assemble_m(spec, 1);
  const LinearSystem b = assemble_m_symbolic(spec, 1);
  REQUIRE(a.m.rows() == 768);
  const double scale = a.m.cwiseAbs().maxCoeff();
  CHECK((a.m - b.m).cwiseAbs().maxCoeff() <= 1e-12 * scale);
}

TEST_SUITE_END();
