#include "stmas/export.hpp"

#include <algorithm>
#include <string_view>

namespace stmas {

namespace {

void write_list(std::ostream &out, const std::vector<double> &values) {
  for (std::size_t i = 0; i < values.size(); ++i)
    out << (i ? "," : "") << format_double(values[i]);
}

} // namespace

void write_spectrum_csv(std::ostream &out, const Spectrum2D &spec) {
  out << "# f2_hz: ";
  write_list(out, spec.f2_axis_hz);
  out << "\n# f1_hz: ";
  write_list(out, spec.f1_axis_hz);
  out << '\n';
  for (std::size_t r = 0; r < spec.rows; ++r) {
    for (std::size_t c = 0; c < spec.cols; ++c)
      out << (c ? "," : "") << format_double(spec(r, c));
    out << '\n';
  }
}

void write_projection_csv(std::ostream &out, const Projection1D &proj) {
  out << "hz,value\n";
  for (std::size_t i = 0; i < proj.values.size(); ++i)
    out << format_double(proj.axis_hz[i]) << ',' << format_double(proj.values[i]) << '\n';
}

std::string render_ascii(const Spectrum2D &spec, std::size_t width, std::size_t height) {
  constexpr std::string_view ramp = " .:-=+*#";
  if (spec.rows == 0 || spec.cols == 0 || width == 0 || height == 0)
    return {};
  width = std::min(width, spec.cols);
  height = std::min(height, spec.rows);

  // Max-pool into cells so narrow ridges survive the downsampling.
  std::vector<double> cells(width * height, 0.0);
  for (std::size_t r = 0; r < spec.rows; ++r) {
    const std::size_t cy = r * height / spec.rows;
    for (std::size_t c = 0; c < spec.cols; ++c) {
      const std::size_t cx = c * width / spec.cols;
      auto &cell = cells[cy * width + cx];
      cell = std::max(cell, spec(r, c));
    }
  }
  const double peak = *std::max_element(cells.begin(), cells.end());

  std::string out;
  out.reserve((width + 1) * height);
  for (std::size_t y = height; y-- > 0;) {
    for (std::size_t x = 0; x < width; ++x) {
      const double level = peak > 0.0 ? cells[y * width + x] / peak : 0.0;
      auto idx = static_cast<std::size_t>(level * static_cast<double>(ramp.size()));
      out.push_back(ramp[std::min(idx, ramp.size() - 1)]);
    }
    out.push_back('\n');
  }
  return out;
}

} // namespace stmas
