#include <doctest.h>

#include <fstream>

#include "pumpprobe/assemble.hpp"
#include "pumpprobe/models.hpp"
#include "pumpprobe/solve.hpp"
#include "pumpprobe/time_domain.hpp"
#include "../support/test_support.hpp"

using namespace pumpprobe;

namespace {

constexpr double two_pi = 6.283185307179586;

std::string dipole_path() {
  return testing::source_dir() + "/data/rb87_d1_dipoles.dat";
}

models::Rb87D1Params rb87_operating_point() {
  models::Rb87D1Params p;
  p.pump_detuning = 30.0 * p.gamma;
  p.pump_rabi_scale = 10.0 * p.gamma;
  p.probe_rabi_scale = 0.1 * p.gamma;
  p.beat = -p.ground_splitting;
  return p;
}

}  // namespace

TEST_SUITE_BEGIN("models");

TEST_CASE("every preset is structurally valid and closed") {
  models::TwoLevelParams two;
  two.gamma = two_pi * 1e7;
  two.pump_rate = two_pi * 1e6;
  two.rabi_pump = two_pi * 36e6;
  two.rabi_probe = two_pi * 6e6;
  two.beat = two_pi * 1e7;

  models::LambdaParams lam;
  lam.gamma = two_pi * 6e6;
  lam.gamma_ground = two_pi * 1e4;
  lam.rabi_pump = two_pi * 8e6;
  lam.rabi_probe = two_pi * 5e5;
  lam.ground_splitting = two_pi * 6.8e9;
  lam.beat = -lam.ground_splitting;

  models::FourLevelParams four;
  four.gamma = lam.gamma;
  four.gamma_ground = lam.gamma_ground;
  four.rabi_pump = lam.rabi_pump;
  four.rabi_probe = lam.rabi_probe;
  four.ground_splitting = lam.ground_splitting;
  four.excited_splitting = two_pi * 814.5e6;
  four.beat = lam.beat;

  const models::DipoleTable table = models::DipoleTable::load(dipole_path());

  for (const SystemSpec& spec :
       {models::two_level(two), models::lambda_three_level(lam),
        models::four_level(four),
        models::rb87_d1_sixteen_level(rb87_operating_point(), table)}) {
    CHECK_NOTHROW(spec.validate());
    CHECK(closure_defect(spec) < 1e-6 * two_pi * 1e7);
  }
}

TEST_CASE("preset dynamics preserve the trace over a short run") {
  models::LambdaParams lam;
  lam.gamma = two_pi * 6e6;
  lam.gamma_ground = two_pi * 1e4;
  lam.rabi_pump = two_pi * 1e7;
  lam.rabi_probe = two_pi * 5e4;
  lam.ground_splitting = two_pi * 6.834682610904e9;
  lam.beat = -lam.ground_splitting;

  models::FourLevelParams four;
  four.gamma = lam.gamma;
  four.gamma_ground = lam.gamma_ground;
  four.rabi_pump = lam.rabi_pump;
  four.rabi_probe = lam.rabi_probe;
  four.ground_splitting = lam.ground_splitting;
  four.excited_splitting = two_pi * 814.5e6;
  four.beat = lam.beat;

  models::TwoLevelParams two;
  two.gamma = two_pi * 1e7;
  two.pump_rate = two_pi * 1e6;
  two.rabi_pump = two_pi * 36e6;
  two.rabi_probe = two_pi * 6e6;
  two.beat = two_pi * 2e7;

  const models::DipoleTable table = models::DipoleTable::load(dipole_path());
  for (const SystemSpec& spec :
       {models::two_level(two), models::lambda_three_level(lam),
        models::four_level(four),
        models::rb87_d1_sixteen_level(rb87_operating_point(), table)}) {
    const double dt = default_time_step(spec);
    const Trajectory traj = integrate(spec, 2000.0 * dt, dt);
    CHECK(std::abs(traj.states.back().trace() - 1.0) < 1e-8);
    CHECK((traj.states.back() - traj.states.back().adjoint())
              .cwiseAbs()
              .maxCoeff() < 1e-8);
  }
}

TEST_CASE("lambda collapses onto the two-level system when one leg is cut") {
  // Cut the pump leg to level 0, stop the ground mixing, and give level 0 a
  // pure drain so it empties: what remains is the driven 1-2 subsystem plus
  // a spectator, matching the two-level system element for element.
  models::LambdaParams lam;
  lam.gamma = two_pi * 1e7;
  lam.gamma_ground = 0.0;
  lam.rabi_pump = two_pi * 36e6;
  lam.rabi_probe = two_pi * 6e6;
  lam.ground_splitting = two_pi * 6.8e9;
  lam.pump_detuning = two_pi * 5e6;
  lam.beat = two_pi * 2e7;

  SystemSpec cut = models::lambda_three_level(lam);
  cut.couplings.erase(cut.couplings.begin());  // the 0-2 pump leg
  const double drain = two_pi * 1e6;
  cut.diagonal_terms[0] -= std::complex<double>(0.0, drain);
  cut.sources = {{2, 1, lam.gamma}, {0, 1, drain}};

  models::TwoLevelParams two;
  two.gamma = lam.gamma;
  two.rabi_pump = lam.rabi_pump;
  two.rabi_probe = lam.rabi_probe;
  two.pump_detuning = lam.pump_detuning;
  two.beat = lam.beat;

  const Solution a = solve(cut, 1);
  const Solution b = solve(models::two_level(two), 1);
  for (int k = -1; k <= 1; ++k) {
    CHECK(std::abs(a.rho.harmonic(k)(1, 1) - b.rho.harmonic(k)(0, 0)) < 1e-10);
    CHECK(std::abs(a.rho.harmonic(k)(2, 2) - b.rho.harmonic(k)(1, 1)) < 1e-10);
    CHECK(std::abs(a.rho.harmonic(k)(2, 1) - b.rho.harmonic(k)(1, 0)) < 1e-10);
    CHECK(std::abs(a.rho.harmonic(k)(0, 0)) < 1e-12);  // spectator empty
  }
}

TEST_CASE("sixteen-level unknown vector has the expected length") {
  const models::DipoleTable table = models::DipoleTable::load(dipole_path());
  const SystemSpec spec =
      models::rb87_d1_sixteen_level(rb87_operating_point(), table);
  CHECK(spec.n_levels == 16);
  CHECK(assemble_m(spec, 1).m.rows() == 768);
}

TEST_CASE("undriven sixteen-level settles into a uniform ground mixture") {
  const models::DipoleTable table = models::DipoleTable::load(dipole_path());
  models::Rb87D1Params p = rb87_operating_point();
  p.pump_rabi_scale = 0.0;
  p.probe_rabi_scale = 0.0;
  p.beat = two_pi * 1e6;
  const Solution sol =
      solve(models::rb87_d1_sixteen_level(p, table), 1);
  for (int l = 0; l < 8; ++l)
    CHECK(sol.rho.harmonic(0)(l, l).real() ==
          doctest::Approx(1.0 / 8.0).epsilon(1e-9));
  for (int l = 8; l < 16; ++l)
    CHECK(std::abs(sol.rho.harmonic(0)(l, l)) < 1e-12);
  for (int k : {-1, 1})
    CHECK(sol.rho.harmonic(k).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("dipole table rows are complete and self-consistent") {
  const models::DipoleTable table = models::DipoleTable::load(dipole_path());
  CHECK(table.rows.size() == 36);
  // Branching ratios must sum to one per excited sublevel.
  for (int e = 8; e < 16; ++e) {
    double sum = 0.0;
    for (const auto& row : table.rows)
      if (row.excited == models::rb87_level_label(e)) sum += row.branching;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
  // Branching tracks the squared relative elements.
  for (const auto& row : table.rows)
    CHECK(row.branching > 0.0);
  const auto* stretched = table.find("S2m+2", "P1m+1");
  REQUIRE(stretched != nullptr);
  CHECK(stretched->element == doctest::Approx(1.0));
  CHECK(stretched->branching == doctest::Approx(0.5));
}

TEST_CASE("a missing dipole entry names the transition") {
  models::DipoleTable table = models::DipoleTable::load(dipole_path());
  std::erase_if(table.rows, [](const models::DipoleTable::Row& row) {
    return row.ground == "S1m+0" && row.excited == "P2m+0";
  });
  CHECK_THROWS_WITH_AS(
      models::rb87_d1_sixteen_level(rb87_operating_point(), table),
      doctest::Contains("S1m+0 -> P2m+0"), std::runtime_error);
}

TEST_CASE("table loading reports unreadable input") {
  CHECK_THROWS_AS(models::DipoleTable::load("/nonexistent/table.dat"),
                  std::runtime_error);
  const std::string bad = "/tmp/pumpprobe_bad_table.dat";
  std::ofstream(bad) << "S1m-1 P1m-1 not_a_number 0.5\n";
  CHECK_THROWS_WITH_AS(models::DipoleTable::load(bad),
                       doctest::Contains(":1:"), std::runtime_error);
}

TEST_CASE("rescaled branching columns are renormalized by the builder") {
  const models::DipoleTable table = models::DipoleTable::load(dipole_path());
  models::DipoleTable doubled = table;
  for (auto& row : doubled.rows) row.branching *= 2.0;
  const models::Rb87D1Params p = rb87_operating_point();
  const SystemSpec a = models::rb87_d1_sixteen_level(p, table);
  const SystemSpec b = models::rb87_d1_sixteen_level(p, doubled);
  REQUIRE(a.sources.size() == b.sources.size());
  for (std::size_t s = 0; s < a.sources.size(); ++s)
    CHECK(a.sources[s].rate == doctest::Approx(b.sources[s].rate));
}

TEST_CASE("sublevel labels round-trip through their indices") {
  for (int l = 0; l < 16; ++l)
    CHECK(models::rb87_level_index(models::rb87_level_label(l)) == l);
  CHECK(models::rb87_level_label(0) == "S1m-1");
  CHECK(models::rb87_level_label(7) == "S2m+2");
  CHECK(models::rb87_level_label(8) == "P1m-1");
  CHECK(models::rb87_level_label(15) == "P2m+2");
  CHECK_THROWS_AS(models::rb87_level_index("S3m+0"), std::invalid_argument);
}

TEST_CASE("model bundles apply the beat and Doppler shift consistently") {
  models::TwoLevelParams p;
  p.gamma = two_pi * 1e7;
  p.rabi_pump = two_pi * 36e6;
  p.rabi_probe = two_pi * 6e6;
  const models::ModelSystem model = models::two_level_model(p);
  const double beat = two_pi * 5e6, shift = two_pi * 2e8;
  const SystemSpec spec = model.builder(beat, shift);
  CHECK(spec.beat == beat);
  CHECK(spec.diagonal_terms[1].real() == doctest::Approx(-2.0 * shift));
  CHECK(spec.diagonal_terms[0].real() == 0.0);
  REQUIRE(model.probe_pairs.size() == 1);
  CHECK(model.probe_pairs[0].upper == 1);
  CHECK(model.probe_pairs[0].lower == 0);
}

TEST_SUITE_END();
