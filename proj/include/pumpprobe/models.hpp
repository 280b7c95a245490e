// models.hpp — ready-made system builders: driven two-level atom, Lambda and
// four-level Raman configurations, and the 16-sublevel Rb-87 D1 manifold.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pumpprobe/spectroscopy.hpp"
#include "pumpprobe/system_spec.hpp"

namespace pumpprobe::models {

// Two-level atom driven by a strong pump and a probe on the same transition,
// with optional incoherent excitation (pump_rate) from ground to excited.
struct TwoLevelParams {
  double gamma = 0.0;           // excited-state decay, rad/s
  double pump_rate = 0.0;       // incoherent ground->excited rate, rad/s
  double rabi_pump = 0.0;       // rad/s
  double rabi_probe = 0.0;      // rad/s
  double pump_detuning = 0.0;   // pump vs atomic resonance, rad/s
  double beat = 0.0;            // probe minus pump, rad/s
};

SystemSpec two_level(const TwoLevelParams& p);

// Lambda system: ground levels 0/1 split by `ground_splitting`, excited
// level 2. The pump couples both legs; the probe runs on the 1<->2 leg.
struct LambdaParams {
  double gamma = 0.0;             // excited decay, branches Γ/2 per ground level
  double gamma_ground = 0.0;      // ground-state cross relaxation, rad/s
  double rabi_pump = 0.0;
  double rabi_probe = 0.0;
  double ground_splitting = 0.0;  // rad/s
  double pump_detuning = 0.0;     // pump vs the 1<->2 leg, rad/s
  double beat = 0.0;
};

SystemSpec lambda_three_level(const LambdaParams& p);

// Four-level system: the Lambda system with a second excited level at
// `excited_splitting` above the first; pump couples all four optical legs,
// probe couples level 1 to both excited levels.
struct FourLevelParams {
  double gamma = 0.0;
  double gamma_ground = 0.0;
  double rabi_pump = 0.0;
  double rabi_probe = 0.0;
  double ground_splitting = 0.0;
  double excited_splitting = 0.0;
  double pump_detuning = 0.0;
  double beat = 0.0;
};

SystemSpec four_level(const FourLevelParams& p);

// Relative dipole matrix elements and branching ratios for the allowed D1
// Zeeman transitions, loaded from the bundled data file. Rows are keyed by
// sublevel labels of the form S<F>m<mF> / P<F>m<mF>.
struct DipoleTable {
  struct Row {
    std::string ground;
    std::string excited;
    double element = 0.0;    // signed, relative scale
    double branching = 0.0;  // fraction of the excited sublevel's decay
  };
  std::vector<Row> rows;

  static DipoleTable load(const std::string& path);
  const Row* find(const std::string& ground, const std::string& excited) const;
};

// Sixteen-level Rb-87 D1 model: 5S1/2 F=1,2 and 5P1/2 F'=1,2 with all Zeeman
// sublevels. The pump couples every allowed sigma+/- transition from both
// ground manifolds; the probe couples the F=2 ground manifold to both excited
// manifolds. Cross-linear polarization is encoded as opposite sigma+/sigma-
// signs for the pump and equal signs for the probe.
struct Rb87D1Params {
  double gamma = 2.0 * 3.14159265358979323846 * 5.746e6;  // D1 linewidth
  double pump_detuning = 0.0;      // vs the F=2 -> F'=2 transition, rad/s
  double pump_rabi_scale = 0.0;    // multiplies the relative dipole elements
  double probe_rabi_scale = 0.0;   // same, for the probe couplings
  double ground_splitting = 2.0 * 3.14159265358979323846 * 6.834682610904e9;
  double excited_splitting = 2.0 * 3.14159265358979323846 * 814.5e6;
  double cross_relaxation = 2.0 * 3.14159265358979323846 * 1.0e6;
  double beat = 0.0;
};

SystemSpec rb87_d1_sixteen_level(const Rb87D1Params& p,
                                 const DipoleTable& table);

// Probe-driven coherences with their signed dipole weights, for the
// susceptibility sum.
std::vector<CoherencePair> rb87_d1_probe_pairs(const DipoleTable& table);

// Sublevel label <-> level index (0..15) in the order
// S1m-1..S1m+1, S2m-2..S2m+2, P1m-1..P1m+1, P2m-2..P2m+2.
int rb87_level_index(const std::string& label);
std::string rb87_level_label(int index);

// A system packaged for detuning sweeps: the builder maps (swept beat value,
// Doppler shift k*v) to a concrete spec, with the probe geometry needed to
// evaluate the susceptibility.
struct ModelSystem {
  std::function<SystemSpec(double beat, double doppler)> builder;
  std::vector<CoherencePair> probe_pairs;
  double probe_rabi = 0.0;
};

ModelSystem two_level_model(TwoLevelParams p);
ModelSystem lambda_three_level_model(LambdaParams p);
ModelSystem four_level_model(FourLevelParams p);
ModelSystem rb87_d1_model(Rb87D1Params p, DipoleTable table);

}  // namespace pumpprobe::models
