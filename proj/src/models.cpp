#include "pumpprobe/models.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pumpprobe::models {

using std::complex;

SystemSpec two_level(const TwoLevelParams& p) {
  SystemSpec spec;
  spec.n_levels = 2;
  spec.diagonal_terms = {complex<double>(0.0, -p.pump_rate),
                         complex<double>(-2.0 * p.pump_detuning, -p.gamma)};
  spec.couplings = {{0, 1, p.rabi_pump, HarmonicTag::Static},
                    {0, 1, p.rabi_probe, HarmonicTag::Beat}};
  spec.sources = {{1, 0, p.gamma}, {0, 1, p.pump_rate}};
  spec.beat = p.beat;
  return spec;
}

SystemSpec lambda_three_level(const LambdaParams& p) {
  SystemSpec spec;
  spec.n_levels = 3;
  spec.diagonal_terms = {
      complex<double>(-2.0 * p.ground_splitting, -p.gamma_ground),
      complex<double>(0.0, -p.gamma_ground),
      complex<double>(-2.0 * p.pump_detuning, -p.gamma)};
  spec.couplings = {{0, 2, p.rabi_pump, HarmonicTag::Static},
                    {1, 2, p.rabi_pump, HarmonicTag::Static},
                    {1, 2, p.rabi_probe, HarmonicTag::Beat}};
  // Excited decay branches evenly into the two ground levels; the ground
  // levels cross-relax into each other.
  spec.sources = {{2, 0, 0.5 * p.gamma},
                  {2, 1, 0.5 * p.gamma},
                  {1, 0, p.gamma_ground},
                  {0, 1, p.gamma_ground}};
  spec.beat = p.beat;
  return spec;
}

SystemSpec four_level(const FourLevelParams& p) {
  SystemSpec spec;
  spec.n_levels = 4;
  spec.diagonal_terms = {
      complex<double>(-2.0 * p.ground_splitting, -p.gamma_ground),
      complex<double>(0.0, -p.gamma_ground),
      complex<double>(-2.0 * p.pump_detuning, -p.gamma),
      complex<double>(-2.0 * (p.pump_detuning - p.excited_splitting),
                      -p.gamma)};
  spec.couplings = {{0, 2, p.rabi_pump, HarmonicTag::Static},
                    {0, 3, p.rabi_pump, HarmonicTag::Static},
                    {1, 2, p.rabi_pump, HarmonicTag::Static},
                    {1, 3, p.rabi_pump, HarmonicTag::Static},
                    {1, 2, p.rabi_probe, HarmonicTag::Beat},
                    {1, 3, p.rabi_probe, HarmonicTag::Beat}};
  spec.sources = {{2, 0, 0.5 * p.gamma}, {2, 1, 0.5 * p.gamma},
                  {3, 0, 0.5 * p.gamma}, {3, 1, 0.5 * p.gamma},
                  {1, 0, p.gamma_ground}, {0, 1, p.gamma_ground}};
  spec.beat = p.beat;
  return spec;
}

DipoleTable DipoleTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("DipoleTable: cannot open " + path);
  DipoleTable table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    Row row;
    if (!(ss >> row.ground)) continue;  // blank line
    if (!(ss >> row.excited >> row.element >> row.branching))
      throw std::runtime_error("DipoleTable: " + path + ":" +
                               std::to_string(line_no) + ": malformed row");
    table.rows.push_back(std::move(row));
  }
  if (table.rows.empty())
    throw std::runtime_error("DipoleTable: " + path + " holds no rows");
  return table;
}

const DipoleTable::Row* DipoleTable::find(const std::string& ground,
                                          const std::string& excited) const {
  for (const Row& r : rows)
    if (r.ground == ground && r.excited == excited) return &r;
  return nullptr;
}

namespace {

struct Sublevel {
  int f = 0;
  int m = 0;
  bool excited = false;
};

// Level order: S1m-1..S1m+1, S2m-2..S2m+2, P1m-1..P1m+1, P2m-2..P2m+2.
std::vector<Sublevel> rb87_levels() {
  std::vector<Sublevel> levels;
  for (int m = -1; m <= 1; ++m) levels.push_back({1, m, false});
  for (int m = -2; m <= 2; ++m) levels.push_back({2, m, false});
  for (int m = -1; m <= 1; ++m) levels.push_back({1, m, true});
  for (int m = -2; m <= 2; ++m) levels.push_back({2, m, true});
  return levels;
}

std::string sublevel_label(const Sublevel& s) {
  return std::string(s.excited ? "P" : "S") + std::to_string(s.f) + "m" +
         (s.m >= 0 ? "+" : "") + std::to_string(s.m);
}

bool transition_allowed(const Sublevel& g, const Sublevel& e) {
  if (std::abs(g.f - e.f) > 1) return false;
  if (std::abs(g.m - e.m) > 1) return false;
  if (g.f == e.f && g.m == 0 && e.m == 0) return false;
  return true;
}

// Cross-linear pump/probe: the pump carries opposite signs on its sigma+ and
// sigma- components, the probe equal signs; common phases are absorbed into
// the Rabi scales.
double pump_polarization_sign(int delta_m) { return delta_m > 0 ? -1.0 : 1.0; }
double probe_polarization_sign(int /*delta_m*/) { return 1.0; }

}  // namespace

int rb87_level_index(const std::string& label) {
  const auto levels = rb87_levels();
  for (int i = 0; i < static_cast<int>(levels.size()); ++i)
    if (sublevel_label(levels[i]) == label) return i;
  throw std::invalid_argument("rb87_level_index: unknown sublevel " + label);
}

std::string rb87_level_label(int index) {
  const auto levels = rb87_levels();
  if (index < 0 || index >= static_cast<int>(levels.size()))
    throw std::out_of_range("rb87_level_label: index " +
                            std::to_string(index));
  return sublevel_label(levels[index]);
}

SystemSpec rb87_d1_sixteen_level(const Rb87D1Params& p,
                                 const DipoleTable& table) {
  const auto levels = rb87_levels();
  const int n = static_cast<int>(levels.size());
  SystemSpec spec;
  spec.n_levels = n;
  spec.beat = p.beat;
  spec.diagonal_terms.resize(n);

  // Ground F=1 sits ground_splitting below F=2 (the frame reference); the
  // excited manifolds carry the pump detuning, with F'=1 excited_splitting
  // below F'=2.
  for (int l = 0; l < n; ++l) {
    const Sublevel& s = levels[l];
    if (!s.excited) {
      const double detuning = (s.f == 1) ? -2.0 * p.ground_splitting : 0.0;
      // Collisional mixing drains each sublevel toward every partner in the
      // other hyperfine manifold.
      const int partners = (s.f == 1) ? 5 : 3;
      spec.diagonal_terms[l] =
          complex<double>(detuning, -partners * p.cross_relaxation);
    } else {
      const double detuning =
          (s.f == 2) ? -2.0 * p.pump_detuning
                     : -2.0 * (p.pump_detuning + p.excited_splitting);
      spec.diagonal_terms[l] = complex<double>(detuning, -p.gamma);
    }
  }

  // Branching ratios are normalized per excited sublevel before scaling by
  // the decay rate, so slightly rescaled tables stay trace preserving.
  std::vector<double> branching_sum(n, 0.0);
  for (int e = 8; e < n; ++e) {
    for (int g = 0; g < 8; ++g) {
      if (!transition_allowed(levels[g], levels[e])) continue;
      const DipoleTable::Row* row =
          table.find(sublevel_label(levels[g]), sublevel_label(levels[e]));
      if (row == nullptr)
        throw std::runtime_error(
            "rb87_d1_sixteen_level: dipole table has no entry for allowed "
            "transition " +
            sublevel_label(levels[g]) + " -> " + sublevel_label(levels[e]));
      branching_sum[e] += row->branching;
    }
    if (!(branching_sum[e] > 0.0))
      throw std::runtime_error(
          "rb87_d1_sixteen_level: excited sublevel " +
          sublevel_label(levels[e]) + " has no decay channel in the table");
  }

  for (int g = 0; g < 8; ++g) {
    for (int e = 8; e < n; ++e) {
      if (!transition_allowed(levels[g], levels[e])) continue;
      const DipoleTable::Row* row =
          table.find(sublevel_label(levels[g]), sublevel_label(levels[e]));
      const int delta_m = levels[e].m - levels[g].m;
      spec.sources.push_back({e, g, p.gamma * row->branching /
                                        branching_sum[e]});
      if (delta_m == 0) continue;  // fields carry no pi component
      const double pump_rabi =
          p.pump_rabi_scale * row->element * pump_polarization_sign(delta_m);
      if (pump_rabi != 0.0)
        spec.couplings.push_back({g, e, pump_rabi, HarmonicTag::Static});
      if (levels[g].f == 2) {
        const double probe_rabi = p.probe_rabi_scale * row->element *
                                  probe_polarization_sign(delta_m);
        if (probe_rabi != 0.0)
          spec.couplings.push_back({g, e, probe_rabi, HarmonicTag::Beat});
      }
    }
  }

  // Ground-state cross relaxation between every F=1 / F=2 sublevel pair.
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (levels[a].excited || levels[b].excited) continue;
      if (levels[a].f == 1 && levels[b].f == 2) {
        spec.sources.push_back({a, b, p.cross_relaxation});
        spec.sources.push_back({b, a, p.cross_relaxation});
      }
    }
  }
  return spec;
}

std::vector<CoherencePair> rb87_d1_probe_pairs(const DipoleTable& table) {
  const auto levels = rb87_levels();
  std::vector<CoherencePair> pairs;
  for (int g = 0; g < static_cast<int>(levels.size()); ++g) {
    if (levels[g].excited || levels[g].f != 2) continue;
    for (int e = 0; e < static_cast<int>(levels.size()); ++e) {
      if (!levels[e].excited) continue;
      const int delta_m = levels[e].m - levels[g].m;
      if (std::abs(delta_m) != 1) continue;
      if (!transition_allowed(levels[g], levels[e])) continue;
      const DipoleTable::Row* row =
          table.find(sublevel_label(levels[g]), sublevel_label(levels[e]));
      if (row == nullptr)
        throw std::runtime_error(
            "rb87_d1_probe_pairs: dipole table has no entry for " +
            sublevel_label(levels[g]) + " -> " + sublevel_label(levels[e]));
      pairs.push_back(
          {e, g, row->element * probe_polarization_sign(delta_m)});
    }
  }
  return pairs;
}

ModelSystem two_level_model(TwoLevelParams p) {
  ModelSystem model;
  model.probe_rabi = p.rabi_probe;
  model.probe_pairs = {{1, 0, 1.0}};
  model.builder = [p](double beat, double doppler) {
    TwoLevelParams q = p;
    q.beat = beat;
    SystemSpec spec = two_level(q);
    spec.diagonal_terms[1] -= 2.0 * doppler;
    return spec;
  };
  return model;
}

ModelSystem lambda_three_level_model(LambdaParams p) {
  ModelSystem model;
  model.probe_rabi = p.rabi_probe;
  model.probe_pairs = {{2, 1, 1.0}};
  model.builder = [p](double beat, double doppler) {
    LambdaParams q = p;
    q.beat = beat;
    SystemSpec spec = lambda_three_level(q);
    spec.diagonal_terms[2] -= 2.0 * doppler;
    return spec;
  };
  return model;
}

ModelSystem four_level_model(FourLevelParams p) {
  ModelSystem model;
  model.probe_rabi = p.rabi_probe;
  model.probe_pairs = {{2, 1, 1.0}, {3, 1, 1.0}};
  model.builder = [p](double beat, double doppler) {
    FourLevelParams q = p;
    q.beat = beat;
    SystemSpec spec = four_level(q);
    spec.diagonal_terms[2] -= 2.0 * doppler;
    spec.diagonal_terms[3] -= 2.0 * doppler;
    return spec;
  };
  return model;
}

ModelSystem rb87_d1_model(Rb87D1Params p, DipoleTable table) {
  ModelSystem model;
  model.probe_rabi = p.probe_rabi_scale;
  model.probe_pairs = rb87_d1_probe_pairs(table);
  model.builder = [p, table = std::move(table)](double beat, double doppler) {
    Rb87D1Params q = p;
    q.beat = beat;
    SystemSpec spec = rb87_d1_sixteen_level(q, table);
    for (int l = 8; l < 16; ++l) spec.diagonal_terms[l] -= 2.0 * doppler;
    return spec;
  };
  return model;
}

}  // namespace pumpprobe::models
