#include "pumpprobe/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace pumpprobe {

namespace {

std::string format(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

}  // namespace

std::string spectrum_csv(const std::vector<double>& axis_hz,
                         const SpectrumResult& result, int n_levels,
                         int digits) {
  if (axis_hz.size() != result.points.size())
    throw std::invalid_argument("spectrum_csv: axis length mismatch");
  std::string out = "detuning_hz,chi_real,chi_imag,gain";
  for (int l = 1; l <= n_levels; ++l)
    out += ",pop_" + std::to_string(l);
  out += "\n";
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    const SweepPoint& p = result.points[i];
    out += format(axis_hz[i], digits);
    if (p.ok) {
      out += "," + format(p.chi.real(), digits);
      out += "," + format(p.chi.imag(), digits);
      out += "," + format(-p.chi.imag(), digits);
      for (double pop : p.populations) out += "," + format(pop, digits);
    } else {
      for (int c = 0; c < 3 + n_levels; ++c) out += ",nan";
    }
    out += "\n";
  }
  return out;
}

void write_spectrum_csv(const std::string& path,
                        const std::vector<double>& axis_hz,
                        const SpectrumResult& result, int n_levels,
                        int digits) {
  std::ofstream file(path);
  if (!file)
    throw std::runtime_error("cannot open output file " + path);
  file << spectrum_csv(axis_hz, result, n_levels, digits);
  if (!file)
    throw std::runtime_error("failed writing " + path);
}

}  // namespace pumpprobe
