#include "pumpprobe/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pumpprobe {

namespace {

constexpr double kWidth = 860.0;
constexpr double kHeight = 560.0;
constexpr double kMarginL = 80.0;
constexpr double kMarginR = 30.0;
constexpr double kMarginT = 50.0;
constexpr double kMarginB = 60.0;

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(6);
  ss << v;
  return ss.str();
}

// Round tick step to 1/2/5 times a power of ten.
double tick_step(double span) {
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  const double nice = frac < 1.5 ? 1.0 : frac < 3.5 ? 2.0 : frac < 7.5 ? 5.0
                                                                       : 10.0;
  return nice * mag;
}

}  // namespace

std::string spectrum_svg(const std::vector<double>& axis_hz,
                         const SpectrumResult& result,
                         const std::string& title) {
  if (axis_hz.size() != result.points.size() || axis_hz.empty())
    throw std::invalid_argument("spectrum_svg: axis length mismatch");

  std::vector<double> xs, gain, dispersion;
  for (std::size_t i = 0; i < axis_hz.size(); ++i) {
    if (!result.points[i].ok) continue;
    xs.push_back(axis_hz[i] * 1e-6);  // MHz
    gain.push_back(-result.points[i].chi.imag());
    dispersion.push_back(result.points[i].chi.real());
  }
  if (xs.size() < 2)
    throw std::invalid_argument("spectrum_svg: fewer than two valid points");

  double xmin = *std::min_element(xs.begin(), xs.end());
  double xmax = *std::max_element(xs.begin(), xs.end());
  double ymin = std::min(*std::min_element(gain.begin(), gain.end()),
                         *std::min_element(dispersion.begin(),
                                           dispersion.end()));
  double ymax = std::max(*std::max_element(gain.begin(), gain.end()),
                         *std::max_element(dispersion.begin(),
                                           dispersion.end()));
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) {
    ymax += 1.0;
    ymin -= 1.0;
  }
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  const double plot_w = kWidth - kMarginL - kMarginR;
  const double plot_h = kHeight - kMarginT - kMarginB;
  auto px = [&](double x) {
    return kMarginL + (x - xmin) / (xmax - xmin) * plot_w;
  };
  auto py = [&](double y) {
    return kMarginT + (ymax - y) / (ymax - ymin) * plot_h;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"28\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"18\">" << title
      << "</text>\n";

  // Frame and ticks.
  svg << "<rect x=\"" << kMarginL << "\" y=\"" << kMarginT << "\" width=\""
      << plot_w << "\" height=\"" << plot_h
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  const double xstep = tick_step(xmax - xmin);
  for (double x = std::ceil(xmin / xstep) * xstep; x <= xmax + 1e-9 * xstep;
       x += xstep) {
    svg << "<line x1=\"" << px(x) << "\" y1=\"" << kMarginT + plot_h
        << "\" x2=\"" << px(x) << "\" y2=\"" << kMarginT + plot_h + 6
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << px(x) << "\" y=\"" << kMarginT + plot_h + 22
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"12\">" << fmt(x) << "</text>\n";
  }
  const double ystep = tick_step(ymax - ymin);
  for (double y = std::ceil(ymin / ystep) * ystep; y <= ymax + 1e-9 * ystep;
       y += ystep) {
    svg << "<line x1=\"" << kMarginL - 6 << "\" y1=\"" << py(y) << "\" x2=\""
        << kMarginL << "\" y2=\"" << py(y) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << kMarginL - 10 << "\" y=\"" << py(y) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
        << "font-size=\"12\">" << fmt(y) << "</text>\n";
  }
  svg << "<text x=\"" << kMarginL + plot_w / 2 << "\" y=\"" << kHeight - 14
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"14\">Detuning (MHz)</text>\n";

  auto polyline = [&](const std::vector<double>& ys, const char* color) {
    svg << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i)
      svg << px(xs[i]) << "," << py(ys[i]) << " ";
    svg << "\"/>\n";
  };
  polyline(gain, "#c0392b");
  polyline(dispersion, "#2471a3");

  svg << "<text x=\"" << kMarginL + 12 << "\" y=\"" << kMarginT + 20
      << "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#c0392b\">"
      << "gain (-Im chi)</text>\n";
  svg << "<text x=\"" << kMarginL + 12 << "\" y=\"" << kMarginT + 38
      << "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#2471a3\">"
      << "Re chi</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

void write_spectrum_svg(const std::string& path,
                        const std::vector<double>& axis_hz,
                        const SpectrumResult& result,
                        const std::string& title) {
  std::ofstream file(path);
  if (!file)
    throw std::runtime_error("cannot open output file " + path);
  file << spectrum_svg(axis_hz, result, title);
  if (!file)
    throw std::runtime_error("failed writing " + path);
}

}  // namespace pumpprobe
