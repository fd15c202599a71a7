#pragma once

#include "stmas/spectrum.hpp"

#include <ostream>
#include <string>

namespace stmas {

/// `# f2_hz: ...` and `# f1_hz: ...` header lines, then one row of F2
/// magnitudes per F1 bin. Shortest round-trip number formatting.
void write_spectrum_csv(std::ostream &out, const Spectrum2D &spec);

/// `hz,value` header, then one line per bin.
void write_projection_csv(std::ostream &out, const Projection1D &proj);

/// Coarse contour map with an 8-level ramp, F1 increasing upward.
std::string render_ascii(const Spectrum2D &spec, std::size_t width = 72, std::size_t height = 24);

} // namespace stmas
