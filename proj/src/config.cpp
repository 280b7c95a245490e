#include "pumpprobe/config.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "pumpprobe/constants.hpp"
#include "pumpprobe/models.hpp"

namespace pumpprobe {

namespace {

using constants::two_pi;

struct Line {
  int number = 0;
  std::string key;
  std::vector<std::string> values;
};

struct Section {
  std::string name;
  int line = 0;
  std::vector<Line> lines;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<Section> tokenize(std::istream& in, const std::string& where) {
  std::vector<Section> sections;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(where, line_no, "malformed section header");
      sections.push_back({trim(line.substr(1, line.size() - 2)), line_no, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(where, line_no, "expected key = value");
    if (sections.empty())
      throw ConfigError(where, line_no, "entry before any [section]");
    Line entry;
    entry.number = line_no;
    entry.key = trim(line.substr(0, eq));
    std::istringstream vs(line.substr(eq + 1));
    std::string tok;
    while (vs >> tok) entry.values.push_back(tok);
    if (entry.key.empty() || entry.values.empty())
      throw ConfigError(where, line_no, "empty key or value");
    sections.back().lines.push_back(std::move(entry));
  }
  return sections;
}

double parse_number(const std::string& where, const Line& line,
                    const std::string& token) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    throw ConfigError(where, line.number,
                      "key '" + line.key + "': '" + token +
                          "' is not a number");
  }
  if (used != token.size())
    throw ConfigError(where, line.number,
                      "key '" + line.key + "': trailing characters in '" +
                          token + "'");
  return v;
}

int parse_int(const std::string& where, const Line& line,
              const std::string& token) {
  const double v = parse_number(where, line, token);
  const int i = static_cast<int>(std::llround(v));
  if (v != static_cast<double>(i))
    throw ConfigError(where, line.number,
                      "key '" + line.key + "': expected an integer, got '" +
                          token + "'");
  return i;
}

// Keys come in _hz / _rad_per_s pairs; returns the value in rad/s.
class KeyReader {
 public:
  KeyReader(const std::string& where, const Section& section)
      : where_(where), section_(section) {}

  std::optional<double> angular(const std::string& stem) {
    std::optional<double> out;
    for (const Line& line : section_.lines) {
      if (line.key == stem + "_hz")
        assign(out, line, two_pi * single(line));
      else if (line.key == stem + "_rad_per_s")
        assign(out, line, single(line));
    }
    return out;
  }

  std::optional<double> plain(const std::string& key) {
    std::optional<double> out;
    for (const Line& line : section_.lines)
      if (line.key == key) assign(out, line, single(line));
    return out;
  }

  std::optional<int> integer(const std::string& key) {
    std::optional<int> out;
    for (const Line& line : section_.lines)
      if (line.key == key) {
        if (out)
          throw ConfigError(where_, line.number, "duplicate key '" + key + "'");
        if (line.values.size() != 1)
          throw ConfigError(where_, line.number,
                            "key '" + key + "' takes one value");
        out = parse_int(where_, line, line.values[0]);
      }
    return out;
  }

  std::optional<std::string> text(const std::string& key) {
    std::optional<std::string> out;
    for (const Line& line : section_.lines)
      if (line.key == key) {
        if (out)
          throw ConfigError(where_, line.number, "duplicate key '" + key + "'");
        if (line.values.size() != 1)
          throw ConfigError(where_, line.number,
                            "key '" + key + "' takes one value");
        out = line.values[0];
      }
    return out;
  }

  double require_angular(const std::string& stem) {
    auto v = angular(stem);
    if (!v)
      throw ConfigError(where_, section_.line,
                        "[" + section_.name + "] is missing key '" + stem +
                            "_hz'");
    return *v;
  }

 private:
  double single(const Line& line) {
    if (line.values.size() != 1)
      throw ConfigError(where_, line.number,
                        "key '" + line.key + "' takes one value");
    return parse_number(where_, line, line.values[0]);
  }

  void assign(std::optional<double>& slot, const Line& line, double value) {
    if (slot)
      throw ConfigError(where_, line.number,
                        "key '" + line.key + "' given twice (or in both"
                        " units)");
    slot = value;
  }

  const std::string& where_;
  const Section& section_;
};

void parse_system_section(const std::string& where, const Section& section,
                          Config& config) {
  KeyReader reader(where, section);
  auto levels = reader.integer("levels");
  if (!levels)
    throw ConfigError(where, section.line, "[system] is missing 'levels'");
  SystemSpec& spec = config.system;
  spec.n_levels = *levels;
  spec.beat = reader.angular("delta").value_or(0.0);

  for (const Line& line : section.lines) {
    const bool hz = line.key.ends_with("_hz");
    const double unit = hz ? two_pi : 1.0;
    if (line.key == "level_hz" || line.key == "level_rad_per_s") {
      if (line.values.size() != 2 && line.values.size() != 3)
        throw ConfigError(where, line.number,
                          "level line takes: detuning linewidth [doppler]");
      const double det = parse_number(where, line, line.values[0]) * unit;
      const double lw = parse_number(where, line, line.values[1]) * unit;
      spec.diagonal_terms.emplace_back(-2.0 * det, -lw);
      if (line.values.size() == 3 &&
          parse_int(where, line, line.values[2]) != 0)
        config.doppler_levels.push_back(
            static_cast<int>(spec.diagonal_terms.size()) - 1);
    } else if (line.key == "coupling_hz" || line.key == "coupling_rad_per_s") {
      if (line.values.size() != 4)
        throw ConfigError(where, line.number,
                          "coupling line takes: i j rabi static|beat");
      Coupling c;
      c.level_i = parse_int(where, line, line.values[0]) - 1;
      c.level_j = parse_int(where, line, line.values[1]) - 1;
      c.rabi = parse_number(where, line, line.values[2]) * unit;
      if (line.values[3] == "static")
        c.tag = HarmonicTag::Static;
      else if (line.values[3] == "beat")
        c.tag = HarmonicTag::Beat;
      else
        throw ConfigError(where, line.number,
                          "coupling tag must be 'static' or 'beat', got '" +
                              line.values[3] + "'");
      spec.couplings.push_back(c);
    } else if (line.key == "source_hz" || line.key == "source_rad_per_s") {
      if (line.values.size() != 3)
        throw ConfigError(where, line.number,
                          "source line takes: from to rate");
      SourceChannel ch;
      ch.from = parse_int(where, line, line.values[0]) - 1;
      ch.to = parse_int(where, line, line.values[1]) - 1;
      ch.rate = parse_number(where, line, line.values[2]) * unit;
      spec.sources.push_back(ch);
    } else if (line.key != "levels" && line.key != "delta_hz" &&
               line.key != "delta_rad_per_s") {
      throw ConfigError(where, line.number,
                        "unknown [system] key '" + line.key + "'");
    }
  }
  if (static_cast<int>(spec.diagonal_terms.size()) != spec.n_levels)
    throw ConfigError(where, section.line,
                      "[system] declares " + std::to_string(spec.n_levels) +
                          " levels but lists " +
                          std::to_string(spec.diagonal_terms.size()));
}

void parse_model_section(const std::string& where, const Section& section,
                         const std::string& base_dir, Config& config) {
  KeyReader reader(where, section);
  auto preset = reader.text("preset");
  if (!preset)
    throw ConfigError(where, section.line, "[model] is missing 'preset'");
  config.model = *preset;

  auto excited_levels = [&config](std::initializer_list<int> levels) {
    config.doppler_levels.assign(levels);
  };

  if (*preset == "two_level") {
    models::TwoLevelParams p;
    p.gamma = reader.require_angular("gamma");
    p.pump_rate = reader.angular("pump_rate").value_or(0.0);
    p.rabi_pump = reader.require_angular("omega_p");
    p.rabi_probe = reader.require_angular("omega_s");
    p.pump_detuning = reader.angular("pump_detuning").value_or(0.0);
    p.beat = reader.angular("delta").value_or(0.0);
    config.system = models::two_level(p);
    config.probe_pairs = {{1, 0, 1.0}};
    config.probe_rabi = p.rabi_probe;
    excited_levels({1});
  } else if (*preset == "lambda" || *preset == "four_level") {
    models::FourLevelParams p;
    p.gamma = reader.require_angular("gamma");
    p.gamma_ground = reader.angular("gamma_g").value_or(0.0);
    p.rabi_pump = reader.require_angular("omega_p");
    p.rabi_probe = reader.require_angular("omega_s");
    p.ground_splitting = reader.require_angular("ground_splitting");
    p.pump_detuning = reader.angular("pump_detuning").value_or(0.0);
    p.beat = reader.angular("delta").value_or(0.0);
    if (*preset == "lambda") {
      models::LambdaParams l;
      l.gamma = p.gamma;
      l.gamma_ground = p.gamma_ground;
      l.rabi_pump = p.rabi_pump;
      l.rabi_probe = p.rabi_probe;
      l.ground_splitting = p.ground_splitting;
      l.pump_detuning = p.pump_detuning;
      l.beat = p.beat;
      config.system = models::lambda_three_level(l);
      config.probe_pairs = {{2, 1, 1.0}};
      excited_levels({2});
    } else {
      p.excited_splitting = reader.require_angular("excited_splitting");
      config.system = models::four_level(p);
      config.probe_pairs = {{2, 1, 1.0}, {3, 1, 1.0}};
      excited_levels({2, 3});
    }
    config.probe_rabi = p.rabi_probe;
  } else if (*preset == "rb87_d1") {
    models::Rb87D1Params p;
    if (auto v = reader.angular("gamma")) p.gamma = *v;
    p.pump_detuning = reader.require_angular("pump_detuning");
    p.pump_rabi_scale = reader.require_angular("pump_scale");
    p.probe_rabi_scale = reader.require_angular("probe_scale");
    if (auto v = reader.angular("ground_splitting")) p.ground_splitting = *v;
    if (auto v = reader.angular("excited_splitting")) p.excited_splitting = *v;
    if (auto v = reader.angular("cross_relaxation")) p.cross_relaxation = *v;
    p.beat = reader.angular("delta").value_or(0.0);
    auto table_path = reader.text("dipole_table");
    if (!table_path)
      throw ConfigError(where, section.line,
                        "[model] rb87_d1 needs 'dipole_table'");
    std::filesystem::path path(*table_path);
    if (path.is_relative()) path = std::filesystem::path(base_dir) / path;
    const models::DipoleTable table = models::DipoleTable::load(path.string());
    config.system = models::rb87_d1_sixteen_level(p, table);
    config.probe_pairs = models::rb87_d1_probe_pairs(table);
    config.probe_rabi = p.probe_rabi_scale;
    config.doppler_levels.clear();
    for (int l = 8; l < 16; ++l) config.doppler_levels.push_back(l);
  } else {
    throw ConfigError(where, section.line,
                      "unknown preset '" + *preset + "'");
  }
}

void parse_medium_section(const std::string& where, const Section& section,
                          Config& config) {
  KeyReader reader(where, section);
  MediumParams& m = config.medium;
  if (auto v = reader.plain("number_density_per_m3")) m.number_density = *v;
  if (auto v = reader.plain("saturation_intensity_w_per_m2"))
    m.saturation_intensity = *v;
  if (auto v = reader.angular("linewidth")) m.natural_linewidth = *v;
  if (auto v = reader.plain("light_speed_m_per_s")) m.light_speed = *v;
  if (auto v = reader.plain("wavevector_rad_per_m")) m.wavevector = *v;
  if (auto v = reader.plain("wavelength_nm")) {
    if (m.wavevector != 0.0)
      throw ConfigError(where, section.line,
                        "give wavelength_nm or wavevector_rad_per_m, not both");
    m.wavevector = two_pi / (*v * 1e-9);
  }
  if (auto v = reader.plain("mass_kg")) m.mass = *v;
  if (auto v = reader.plain("mass_amu")) {
    if (m.mass != 0.0)
      throw ConfigError(where, section.line,
                        "give mass_amu or mass_kg, not both");
    m.mass = *v * constants::atomic_mass_unit;
  }
  if (auto v = reader.plain("temperature_k")) m.temperature = *v;
  config.has_medium = true;
}

void parse_probe_section(const std::string& where, const Section& section,
                         Config& config) {
  KeyReader reader(where, section);
  if (auto v = reader.angular("rabi")) config.probe_rabi = *v;
  bool cleared = false;
  for (const Line& line : section.lines) {
    if (line.key != "pair") continue;
    if (line.values.size() != 2 && line.values.size() != 3)
      throw ConfigError(where, line.number,
                        "pair line takes: upper lower [weight]");
    if (!cleared) {
      config.probe_pairs.clear();  // explicit pairs replace preset defaults
      cleared = true;
    }
    CoherencePair p;
    p.upper = parse_int(where, line, line.values[0]) - 1;
    p.lower = parse_int(where, line, line.values[1]) - 1;
    p.weight = line.values.size() == 3
                   ? parse_number(where, line, line.values[2])
                   : 1.0;
    config.probe_pairs.push_back(p);
  }
}

void parse_sweep_section(const std::string& where, const Section& section,
                         Config& config) {
  KeyReader reader(where, section);
  SweepSettings& s = config.sweep;
  if (auto v = reader.plain("min_hz")) s.min_hz = *v;
  if (auto v = reader.plain("max_hz")) s.max_hz = *v;
  if (auto v = reader.plain("center_hz")) s.center_hz = *v;
  if (auto v = reader.integer("points")) s.points = *v;
  if (auto v = reader.integer("orders")) s.max_order = *v;
  if (auto v = reader.integer("velocity_groups")) s.velocity_groups = *v;
}

}  // namespace

Config parse_config(std::istream& in, const std::string& name,
                    const std::string& base_dir) {
  const std::vector<Section> sections = tokenize(in, name);
  Config config;
  config.model = "system";
  bool saw_system = false, saw_model = false;
  for (const Section& section : sections) {
    if (section.name == "system") {
      if (saw_model)
        throw ConfigError(name, section.line,
                          "[system] and [model] are mutually exclusive");
      saw_system = true;
      parse_system_section(name, section, config);
    } else if (section.name == "model") {
      if (saw_system)
        throw ConfigError(name, section.line,
                          "[system] and [model] are mutually exclusive");
      saw_model = true;
      parse_model_section(name, section, base_dir, config);
    } else if (section.name == "medium") {
      parse_medium_section(name, section, config);
    } else if (section.name == "probe") {
      parse_probe_section(name, section, config);
    } else if (section.name == "sweep") {
      parse_sweep_section(name, section, config);
    } else {
      throw ConfigError(name, section.line,
                        "unknown section [" + section.name + "]");
    }
  }
  if (!saw_system && !saw_model)
    throw ConfigError(name, 1, "config needs a [system] or [model] section");
  try {
    config.system.validate();
  } catch (const std::exception& e) {
    throw ConfigError(name, 1, e.what());
  }
  return config;
}

Config parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  const std::string dir = std::filesystem::path(path).parent_path().string();
  return parse_config(in, path, dir.empty() ? "." : dir);
}

namespace {

std::string num(double v) {
  std::ostringstream ss;
  ss.precision(17);
  ss << v;
  return ss.str();
}

}  // namespace

std::string dump_config(const Config& config) {
  std::ostringstream out;
  const SystemSpec& spec = config.system;
  out << "# expanded system definition";
  if (config.model != "system") out << " (preset: " << config.model << ")";
  out << "\n[system]\n";
  out << "levels = " << spec.n_levels << "\n";
  out << "delta_rad_per_s = " << num(spec.beat) << "\n";
  for (int l = 0; l < spec.n_levels; ++l) {
    const bool doppler =
        std::find(config.doppler_levels.begin(), config.doppler_levels.end(),
                  l) != config.doppler_levels.end();
    out << "level_rad_per_s = " << num(-0.5 * spec.diagonal_terms[l].real())
        << " " << num(-spec.diagonal_terms[l].imag()) << " "
        << (doppler ? 1 : 0) << "\n";
  }
  for (const Coupling& c : spec.couplings)
    out << "coupling_rad_per_s = " << c.level_i + 1 << " " << c.level_j + 1
        << " " << num(c.rabi) << " "
        << (c.tag == HarmonicTag::Static ? "static" : "beat") << "\n";
  for (const SourceChannel& ch : spec.sources)
    out << "source_rad_per_s = " << ch.from + 1 << " " << ch.to + 1 << " "
        << num(ch.rate) << "\n";

  if (config.has_medium) {
    const MediumParams& m = config.medium;
    out << "\n[medium]\n";
    out << "number_density_per_m3 = " << num(m.number_density) << "\n";
    out << "saturation_intensity_w_per_m2 = " << num(m.saturation_intensity)
        << "\n";
    out << "linewidth_rad_per_s = " << num(m.natural_linewidth) << "\n";
    out << "light_speed_m_per_s = " << num(m.light_speed) << "\n";
    out << "wavevector_rad_per_m = " << num(m.wavevector) << "\n";
    out << "mass_kg = " << num(m.mass) << "\n";
    out << "temperature_k = " << num(m.temperature) << "\n";
  }

  out << "\n[probe]\n";
  out << "rabi_rad_per_s = " << num(config.probe_rabi) << "\n";
  for (const CoherencePair& p : config.probe_pairs)
    out << "pair = " << p.upper + 1 << " " << p.lower + 1 << " "
        << num(p.weight) << "\n";

  out << "\n[sweep]\n";
  out << "min_hz = " << num(config.sweep.min_hz) << "\n";
  out << "max_hz = " << num(config.sweep.max_hz) << "\n";
  out << "center_hz = " << num(config.sweep.center_hz) << "\n";
  out << "points = " << config.sweep.points << "\n";
  out << "orders = " << config.sweep.max_order << "\n";
  out << "velocity_groups = " << config.sweep.velocity_groups << "\n";
  return out.str();
}

SpecBuilder make_builder(const Config& config) {
  return [system = config.system,
          doppler = config.doppler_levels](double beat, double shift) {
    SystemSpec spec = system;
    spec.beat = beat;
    for (int l : doppler) spec.diagonal_terms[l] -= 2.0 * shift;
    return spec;
  };
}

}  // namespace pumpprobe
