// csv.hpp — tabular spectrum output.

#pragma once

#include <string>
#include <vector>

#include "pumpprobe/spectroscopy.hpp"

namespace pumpprobe {

// Columns: detuning_hz, chi_real, chi_imag, gain (= -chi_imag), then one
// population column per level. axis_hz supplies the detuning column (the
// user-facing axis, before the sweep center offset). '.' decimal separator,
// header row always present. `digits` controls the significant digits.
std::string spectrum_csv(const std::vector<double>& axis_hz,
                         const SpectrumResult& result, int n_levels,
                         int digits = 17);

void write_spectrum_csv(const std::string& path,
                        const std::vector<double>& axis_hz,
                        const SpectrumResult& result, int n_levels,
                        int digits = 17);

}  // namespace pumpprobe
