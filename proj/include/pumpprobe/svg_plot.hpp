// svg_plot.hpp — static line plot of a spectrum (gain and dispersion versus
// detuning in MHz) as a standalone SVG file.

#pragma once

#include <string>
#include <vector>

#include "pumpprobe/spectroscopy.hpp"

namespace pumpprobe {

std::string spectrum_svg(const std::vector<double>& axis_hz,
                         const SpectrumResult& result,
                         const std::string& title);

void write_spectrum_svg(const std::string& path,
                        const std::vector<double>& axis_hz,
                        const SpectrumResult& result,
                        const std::string& title);

}  // namespace pumpprobe
