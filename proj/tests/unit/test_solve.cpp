#include <doctest.h>

#include <random>

#include "pumpprobe/models.hpp"
#include "pumpprobe/solve.hpp"
#include "../support/test_support.hpp"

using namespace pumpprobe;

namespace {

constexpr double two_pi = 6.283185307179586;

models::TwoLevelParams strong_pump_params() {
  models::TwoLevelParams p;
  p.gamma = two_pi * 1e7;
  p.rabi_pump = two_pi * 36e6;
  p.rabi_probe = two_pi * 6e6;
  p.beat = two_pi * 2e7;
  return p;
}

double max_harmonic_mag(const DensityHarmonics& rho, bool skip_zero) {
  double worst = 0.0;
  for (int k = -rho.max_order(); k <= rho.max_order(); ++k) {
    if (skip_zero && k == 0) continue;
    worst = std::max(worst, rho.harmonic(k).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace

TEST_SUITE_BEGIN("solve");

TEST_CASE("undriven atom decays to the ground state") {
  models::TwoLevelParams p;
  p.gamma = two_pi * 1e7;
  p.beat = two_pi * 1e6;
  const Solution sol = solve(models::two_level(p), 1);
  CHECK(sol.rho.harmonic(0)(0, 0).real() == doctest::Approx(1.0));
  CHECK(std::abs(sol.rho.harmonic(0)(1, 1)) == doctest::Approx(0.0));
  CHECK(max_harmonic_mag(sol.rho, true) == doctest::Approx(0.0));
}

TEST_CASE("pump-only two-level matches the saturated closed form") {
  models::TwoLevelParams p;
  p.gamma = two_pi * 1e7;
  p.rabi_pump = two_pi * 13e6;
  p.beat = two_pi * 4e6;
  const Solution sol = solve(models::two_level(p), 2);
  const double gamma2 = p.gamma * p.gamma;
  const double rabi2 = p.rabi_pump * p.rabi_pump;
  const double expected = (rabi2 / 4.0) / (gamma2 / 4.0 + rabi2 / 2.0);
  CHECK(std::abs(sol.rho.harmonic(0)(1, 1).real() - expected) < 1e-10);
  CHECK(std::abs(sol.rho.harmonic(0)(1, 1).imag()) < 1e-12);
  CHECK(max_harmonic_mag(sol.rho, true) < 1e-12);
}

TEST_CASE("physical invariants hold across random closed systems") {
  std::mt19937 rng(101);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + trial % 3;
    const int kmax = 1 + trial % 3;
    const SystemSpec spec = testing::random_closed_spec(rng, n);
    const Solution sol = solve(spec, kmax);
    CHECK(trace_defect(sol.rho) < 1e-10);
    CHECK(hermiticity_defect(sol.rho) < 1e-10);
    CHECK(sol.residual < 1e-9);
  }
}

TEST_CASE("harmonic sectors vanish without a beat coupling") {
  std::mt19937 rng(7);
  const SystemSpec spec = testing::random_closed_spec(rng, 3, false);
  const Solution sol = solve(spec, 2);
  CHECK(max_harmonic_mag(sol.rho, true) < 1e-12);
}

TEST_CASE("weak probe responds linearly while populations stay put") {
  models::TwoLevelParams base = strong_pump_params();
  auto probe_solution = [&](double scale) {
    models::TwoLevelParams p = base;
    p.rabi_probe = scale * base.rabi_probe;
    return solve(models::two_level(p), 1);
  };
  const Solution a = probe_solution(1e-3);
  const Solution b = probe_solution(2e-3);
  const std::complex<double> ca = a.rho.harmonic(-1)(1, 0);
  const std::complex<double> cb = b.rho.harmonic(-1)(1, 0);
  CHECK(std::abs(cb / ca - 2.0) < 1e-3);
  const double pop_change =
      (a.rho.harmonic(0) - b.rho.harmonic(0)).cwiseAbs().maxCoeff();
  CHECK(pop_change < 1e-3 * a.rho.harmonic(0).cwiseAbs().maxCoeff());
}

TEST_CASE("flipping every Rabi sign is a gauge choice") {
  auto flipped = [](SystemSpec spec) {
    for (Coupling& c : spec.couplings) c.rabi = -c.rabi;
    return spec;
  };
  std::mt19937 rng(19);
  for (int trial = 0; trial < 6; ++trial) {
    const SystemSpec spec = testing::random_closed_spec(rng, 2 + trial % 3);
    const int kmax = 1 + trial % 2;
    const Solution a = solve(spec, kmax);
    const Solution b = solve(flipped(spec), kmax);
    for (int k = -kmax; k <= kmax; ++k) {
      CHECK((a.rho.harmonic(k).cwiseAbs() - b.rho.harmonic(k).cwiseAbs())
                .cwiseAbs()
                .maxCoeff() < 1e-12);
    }
    CHECK((a.rho.harmonic(0).diagonal() - b.rho.harmonic(0).diagonal())
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
}

TEST_CASE("degenerate pump and probe keep the system well posed") {
  models::TwoLevelParams p = strong_pump_params();
  p.beat = 0.0;
  const Solution sol = solve(models::two_level(p), 1);
  CHECK(trace_defect(sol.rho) < 1e-10);
  CHECK(hermiticity_defect(sol.rho) < 1e-10);
  CHECK(sol.residual < 1e-9);
}

TEST_CASE("an open system is rejected") {
  // Pure decay with no source channels: the reduced matrix stays well
  // conditioned, but the reconstructed solution violates the eliminated
  // trace rows, which the residual check turns into a diagnostic error.
  SystemSpec spec = models::two_level(strong_pump_params());
  spec.sources.clear();
  CHECK_THROWS_WITH_AS(solve(spec, 1), doctest::Contains("closed"),
                       SolveError);
}

TEST_CASE("numeric and symbolic builders give the same solution") {
  std::mt19937 rng(3);
  const SystemSpec spec = testing::random_closed_spec(rng, 3);
  SolveOptions numeric, symbolic;
  numeric.builder = BuilderKind::Numeric;
  symbolic.builder = BuilderKind::Symbolic;
  const Solution a = solve(spec, 2, numeric);
  const Solution b = solve(spec, 2, symbolic);
  const Eigen::VectorXcd va = flatten(a.rho), vb = flatten(b.rho);
  CHECK((va - vb).cwiseAbs().maxCoeff() / va.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_SUITE_END();
