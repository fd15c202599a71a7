#pragma once

#include "stmas/pulse_program.hpp"
#include "stmas/rational.hpp"
#include "stmas/rotations.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace stmas {

using complexd = std::complex<double>;

struct PowderOrientation {
  double beta_r = 0.0;
  double weight = 1.0;
};

/// Crystallite orientations for an axially symmetric EFG; only beta_R matters.
struct PowderGrid {
  std::vector<PowderOrientation> orientations;
};

/// Gauss-Legendre nodes in cos(beta_R) on [0, 1], weights summing to 1.
PowderGrid powder_orientations(int n);

/// Row-major complex grid; rows index t1 (or F1), columns t2 (or F2).
class ComplexGrid {
public:
  ComplexGrid() = default;
  ComplexGrid(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  complexd &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const complexd &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<complexd> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const complexd> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::vector<complexd> &values() { return data_; }
  const std::vector<complexd> &values() const { return data_; }

  friend bool operator==(const ComplexGrid &, const ComplexGrid &) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<complexd> data_;
};

struct Interferogram2D {
  ComplexGrid data; // td_f1 x td_f2
  double dwell_f2 = 0.0;
  double dwell_f1 = 0.0;
  double ref_hz = 0.0;
};

/// Route as seen by the synthesizer: t1 transition and complex weight.
struct WeightedRoute {
  TransitionLabel t1_branch;
  complexd weight{1.0, 0.0};
};

/// The program's routes weighted by amplitude times the number of scans
/// (complete_cycles x acquisitions_per_cycle). Routes the phase cycle does
/// not admit keep their slot with weight exactly zero.
std::vector<WeightedRoute> gated_routes(const PulseProgram &prog, std::int64_t complete_cycles = 1);

/// s(t1, t2) = sum_r w_r sum_o weight_o exp(-2 pi i nu_r(o) t1) exp(-2 pi i nu_CT(o) t2)
/// with nu = first + second order shift at spinning angle chi. Orientations
/// are accumulated sequentially, so results are reproducible bit for bit.
/// Throws std::invalid_argument if a branch is not a transition of the spin.
Interferogram2D synthesize_interferogram(const PulseProgram &prog,
                                         std::span<const WeightedRoute> routes,
                                         const PowderGrid &grid, double chi = magic_angle());

/// t1 x F2 data: the t2 dimension transformed, t1 still in time.
struct MixedDomain2D {
  ComplexGrid data;
  std::vector<double> f2_axis_hz;
  double dwell_f1 = 0.0;
  double ref_hz = 0.0;
};

/// Magnitude spectrum, rows F1 x columns F2, zero frequency centered.
struct Spectrum2D {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;
  std::vector<double> f2_axis_hz;
  std::vector<double> f1_axis_hz;
  double ref_hz = 0.0;

  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

/// Centered bin frequencies (k - floor(n/2)) sw / n.
std::vector<double> frequency_axis(std::size_t n, double sw_hz);

/// Exponential apodization exp(-pi lb t) along t2, then DFT along t2.
MixedDomain2D transform_f2(const Interferogram2D &fid, double lb_f2);
/// Multiplies each (f2, t1) sample by exp(+2 pi i R f2 t1).
void shear_in_place(MixedDomain2D &mixed, const Rational &ratio);
/// Apodization along t1, DFT along t1, magnitude.
Spectrum2D transform_f1(const MixedDomain2D &mixed, double lb_f1);

Spectrum2D spectrum_from_interferogram(const Interferogram2D &fid, double lb_f2, double lb_f1);
Spectrum2D shear_spectrum(const Interferogram2D &fid, const Rational &ratio, double lb_f2,
                          double lb_f1);

enum class Axis { F1, F2 };
enum class ProjectionKind {
  magnitude, // sum of |S|
  energy     // sum of |S|^2
};

struct Projection1D {
  std::vector<double> values;
  std::vector<double> axis_hz;
  double ref_hz = 0.0;

  double bin_width_hz() const;
};

/// Projection onto `axis`, summing over the other one.
Projection1D axis_projection(const Spectrum2D &spec, Axis axis,
                             ProjectionKind kind = ProjectionKind::magnitude);

double integral_2d(const Spectrum2D &spec);

struct PeakWidth {
  double hz = 0.0;
  double ppm = 0.0;
};

double hz_to_ppm(double hz, double ref_hz);

/// Full width at half maximum of the global maximum, with linear
/// interpolation at both half-height crossings. Throws std::domain_error
/// for an all-zero or flat projection, or when a crossing falls off the edge.
PeakWidth fwhm_of_projection(const Projection1D &proj);

enum class LineMode { absorption, magnitude };

/// 1D processing of a single FID: apodize, DFT, center. Absorption keeps
/// the real part (the FID is taken to be in phase at t = 0).
Projection1D spectrum_1d(std::span<const complexd> fid, double sw_hz, double lb_hz, double ref_hz,
                         LineMode mode);

/// Mask over a Spectrum2D grid (rows F1, cols F2) following the ridge
/// traced by a t1 branch observed on the CT in t2, after shearing by
/// `ratio`. In each F2 column the bins whose F1 offset d from the ridge
/// satisfies min_offset <= |d| <= max_offset are set. Aliasing wraps like
/// the DFT does.
using BinMask = std::vector<char>;
BinMask ridge_window(const PulseProgram &prog, TransitionLabel t1_branch, const Rational &ratio,
                     int min_offset, int max_offset, double chi = magic_angle());

/// Clears every bin of `mask` that is set in `other`.
void subtract_mask(BinMask &mask, const BinMask &other);

double window_integral(const Spectrum2D &spec, const BinMask &mask);

/// Window integral above the local background: in each F2 column the mean
/// of the `flank` bins is subtracted from every `ridge` bin. Columns with
/// no flank bins are taken as background-free.
double ridge_integral(const Spectrum2D &spec, const BinMask &ridge, const BinMask &flank);

} // namespace stmas
