// config.hpp — parsing and writing of system definition files: sectioned
// key/value text describing the driven system, the medium, the probe
// geometry, and sweep settings. Frequencies carry their unit in the key name
// (*_hz cyclic, *_rad_per_s angular).

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "pumpprobe/spectroscopy.hpp"
#include "pumpprobe/system_spec.hpp"

namespace pumpprobe {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& where, int line, const std::string& what)
      : std::runtime_error(where + ":" + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_ = 0;
};

struct SweepSettings {
  double min_hz = 0.0;
  double max_hz = 0.0;
  // The swept beat value is 2*pi*(center_hz + x) with x the CSV axis value.
  double center_hz = 0.0;
  int points = 201;
  int max_order = 1;
  int velocity_groups = 1;
};

struct Config {
  std::string model;  // preset name, or "system" for a raw description
  SystemSpec system;
  std::vector<int> doppler_levels;  // diagonals shifted by -2 k v
  bool has_medium = false;
  MediumParams medium;
  std::vector<CoherencePair> probe_pairs;
  double probe_rabi = 0.0;  // rad/s
  SweepSettings sweep;
};

// base_dir resolves relative data paths (e.g. the dipole table).
Config parse_config(std::istream& in, const std::string& name,
                    const std::string& base_dir = ".");
Config parse_config_file(const std::string& path);

// Fully expanded form; parsing the dump yields an identical Config (presets
// are written out as raw systems, in rad/s keys so values survive exactly).
std::string dump_config(const Config& config);

// Sweep builder for the configured system: sets the beat and applies the
// Doppler shift to the flagged levels.
SpecBuilder make_builder(const Config& config);

}  // namespace pumpprobe
