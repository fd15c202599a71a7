#include "stmas/spectrum.hpp"

#include "fft.hpp"
#include "stmas/quadrupolar.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stmas {

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double> &x, std::vector<double> &w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 1; i <= half; ++i) {
    double z = std::cos(kPi * (i - 0.25) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15)
        break;
    }
    // One more derivative at the converged node for the weight.
    double p1 = 1.0, p2 = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
    }
    pp = n * (z * p1 - p2) / (z * z - 1.0);
    x[i - 1] = -z;
    x[n - i] = z;
    w[i - 1] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - i] = w[i - 1];
  }
  if (n % 2 == 1)
    x[half - 1] = 0.0;
}

// Moves zero frequency to index floor(n/2).
template <typename T> void center_zero(std::span<T> v) {
  std::rotate(v.begin(), v.begin() + (v.size() - v.size() / 2), v.end());
}

std::vector<double> apodization(std::size_t n, double dwell, double lb_hz) {
  if (lb_hz < 0.0)
    throw std::invalid_argument("line broadening must be non-negative");
  std::vector<double> a(n);
  for (std::size_t k = 0; k < n; ++k)
    a[k] = std::exp(-kPi * lb_hz * static_cast<double>(k) * dwell);
  return a;
}

std::size_t wrap_bin(double freq, std::size_t n, double bin_width) {
  const auto raw = static_cast<long long>(std::llround(freq / bin_width)) +
                   static_cast<long long>(n / 2);
  const auto len = static_cast<long long>(n);
  return static_cast<std::size_t>(((raw % len) + len) % len);
}

} // namespace

PowderGrid powder_orientations(int n) {
  if (n < 1)
    throw std::invalid_argument("powder grid needs at least one orientation");
  std::vector<double> x, w;
  gauss_legendre(n, x, w);
  PowderGrid grid;
  grid.orientations.reserve(n);
  double total = 0.0;
  for (int i = 0; i < n; ++i)
    total += w[i];
  for (int i = 0; i < n; ++i) {
    const double cos_beta = 0.5 * (x[i] + 1.0);
    grid.orientations.push_back({std::acos(cos_beta), w[i] / total});
  }
  return grid;
}

std::vector<WeightedRoute> gated_routes(const PulseProgram &prog, std::int64_t complete_cycles) {
  if (complete_cycles < 1)
    throw std::invalid_argument("at least one complete phase cycle is required");
  const double scans =
      static_cast<double>(complete_cycles) * static_cast<double>(acquisitions_per_cycle(prog.cycle));
  std::vector<WeightedRoute> out;
  out.reserve(prog.routes.size());
  for (const Route &r : prog.routes) {
    const bool survives = r.dp.size() == prog.cycle.pulses.size() &&
                          pathway_survival(r.dp, prog.cycle) == 1.0;
    out.push_back({r.t1_branch, survives ? complexd{r.amplitude * scans, 0.0} : complexd{}});
  }
  return out;
}

Interferogram2D synthesize_interferogram(const PulseProgram &prog,
                                         std::span<const WeightedRoute> routes,
                                         const PowderGrid &grid, double chi) {
  const SpinSystem sys = prog.system();
  const auto &acq = prog.acquisition;
  const std::size_t n1 = static_cast<std::size_t>(acq.td_f1);
  const std::size_t n2 = static_cast<std::size_t>(acq.td_f2);

  Interferogram2D fid{ComplexGrid(n1, n2), 1.0 / acq.sw_f2_hz, 1.0 / acq.sw_f1_hz, acq.ref_hz};

  std::vector<Transition> branches;
  for (const auto &r : routes)
    branches.push_back(representative_transition(prog.spin, r.t1_branch));
  const Transition ct = representative_transition(prog.spin, TransitionLabel{0});
  if (routes.empty())
    return fid;

  std::vector<complexd> t1_trace(n1);
  std::vector<complexd> t2_trace(n2);
  for (const PowderOrientation &o : grid.orientations) {
    const double nu_ct = transition_frequency(sys, ct, o.beta_r, chi);
    for (std::size_t j = 0; j < n2; ++j)
      t2_trace[j] = std::polar(1.0, -2.0 * kPi * nu_ct * static_cast<double>(j) * fid.dwell_f2);

    std::fill(t1_trace.begin(), t1_trace.end(), complexd{});
    for (std::size_t r = 0; r < routes.size(); ++r) {
      const double nu = transition_frequency(sys, branches[r], o.beta_r, chi);
      const complexd amp = routes[r].weight * o.weight;
      for (std::size_t k = 0; k < n1; ++k)
        t1_trace[k] += amp * std::polar(1.0, -2.0 * kPi * nu * static_cast<double>(k) * fid.dwell_f1);
    }

    for (std::size_t k = 0; k < n1; ++k) {
      const complexd a = t1_trace[k];
      auto row = fid.data.row(k);
      for (std::size_t j = 0; j < n2; ++j)
        row[j] += a * t2_trace[j];
    }
  }
  return fid;
}

std::vector<double> frequency_axis(std::size_t n, double sw_hz) {
  std::vector<double> axis(n);
  const auto center = static_cast<long long>(n / 2);
  for (std::size_t k = 0; k < n; ++k)
    axis[k] = static_cast<double>(static_cast<long long>(k) - center) * sw_hz / static_cast<double>(n);
  return axis;
}

MixedDomain2D transform_f2(const Interferogram2D &fid, double lb_f2) {
  const std::size_t n1 = fid.data.rows();
  const std::size_t n2 = fid.data.cols();
  MixedDomain2D mixed{fid.data, frequency_axis(n2, 1.0 / fid.dwell_f2), fid.dwell_f1, fid.ref_hz};
  const auto apod = apodization(n2, fid.dwell_f2, lb_f2);
  for (std::size_t k = 0; k < n1; ++k) {
    auto row = mixed.data.row(k);
    for (std::size_t j = 0; j < n2; ++j)
      row[j] *= apod[j];
  }
  detail::dft_many(mixed.data.values().data(), n2, n1, 1, n2);
  for (std::size_t k = 0; k < n1; ++k)
    center_zero(mixed.data.row(k));
  return mixed;
}

void shear_in_place(MixedDomain2D &mixed, const Rational &ratio) {
  const double r = ratio.to_double();
  for (std::size_t k = 0; k < mixed.data.rows(); ++k) {
    const double t1 = static_cast<double>(k) * mixed.dwell_f1;
    auto row = mixed.data.row(k);
    for (std::size_t j = 0; j < row.size(); ++j)
      row[j] *= std::polar(1.0, 2.0 * kPi * r * mixed.f2_axis_hz[j] * t1);
  }
}

Spectrum2D transform_f1(const MixedDomain2D &mixed, double lb_f1) {
  const std::size_t n1 = mixed.data.rows();
  const std::size_t n2 = mixed.data.cols();
  ComplexGrid work = mixed.data;
  const auto apod = apodization(n1, mixed.dwell_f1, lb_f1);
  for (std::size_t k = 0; k < n1; ++k)
    for (auto &v : work.row(k))
      v *= apod[k];
  detail::dft_many(work.values().data(), n1, n2, n2, 1);

  Spectrum2D spec;
  spec.rows = n1;
  spec.cols = n2;
  spec.f2_axis_hz = mixed.f2_axis_hz;
  spec.f1_axis_hz = frequency_axis(n1, 1.0 / mixed.dwell_f1);
  spec.ref_hz = mixed.ref_hz;
  spec.data.resize(n1 * n2);
  for (std::size_t k = 0; k < n1; ++k) {
    const std::size_t dest = (k + n1 / 2) % n1;
    for (std::size_t j = 0; j < n2; ++j)
      spec.data[dest * n2 + j] = std::abs(work(k, j));
  }
  return spec;
}

Spectrum2D spectrum_from_interferogram(const Interferogram2D &fid, double lb_f2, double lb_f1) {
  return transform_f1(transform_f2(fid, lb_f2), lb_f1);
}

Spectrum2D shear_spectrum(const Interferogram2D &fid, const Rational &ratio, double lb_f2,
                          double lb_f1) {
  MixedDomain2D mixed = transform_f2(fid, lb_f2);
  shear_in_place(mixed, ratio);
  return transform_f1(mixed, lb_f1);
}

double Projection1D::bin_width_hz() const {
  if (axis_hz.size() < 2)
    return 0.0;
  return std::abs(axis_hz[1] - axis_hz[0]);
}

Projection1D axis_projection(const Spectrum2D &spec, Axis axis, ProjectionKind kind) {
  Projection1D proj;
  proj.ref_hz = spec.ref_hz;
  const bool onto_f1 = axis == Axis::F1;
  proj.axis_hz = onto_f1 ? spec.f1_axis_hz : spec.f2_axis_hz;
  proj.values.assign(onto_f1 ? spec.rows : spec.cols, 0.0);
  for (std::size_t r = 0; r < spec.rows; ++r) {
    for (std::size_t c = 0; c < spec.cols; ++c) {
      const double v = spec(r, c);
      proj.values[onto_f1 ? r : c] += kind == ProjectionKind::energy ? v * v : v;
    }
  }
  return proj;
}

double integral_2d(const Spectrum2D &spec) {
  double total = 0.0;
  for (double v : spec.data)
    total += v;
  return total;
}

double hz_to_ppm(double hz, double ref_hz) { return hz / ref_hz * 1e6; }

PeakWidth fwhm_of_projection(const Projection1D &proj) {
  const auto &v = proj.values;
  if (v.empty())
    throw std::domain_error("empty projection");
  const auto peak_it = std::max_element(v.begin(), v.end());
  const double peak = *peak_it;
  if (!(peak > 0.0))
    throw std::domain_error("projection has no positive maximum");
  const double half_height = 0.5 * peak;
  const std::size_t peak_idx = static_cast<std::size_t>(peak_it - v.begin());

  std::size_t left = peak_idx;
  while (left > 0 && v[left - 1] > half_height)
    --left;
  if (left == 0)
    throw std::domain_error("peak does not fall to half height on the low side");
  std::size_t right = peak_idx;
  while (right + 1 < v.size() && v[right + 1] > half_height)
    ++right;
  if (right + 1 == v.size())
    throw std::domain_error("peak does not fall to half height on the high side");

  // Crossings between (left-1, left) and (right, right+1).
  const double x_left =
      static_cast<double>(left - 1) + (half_height - v[left - 1]) / (v[left] - v[left - 1]);
  const double x_right =
      static_cast<double>(right) + (v[right] - half_height) / (v[right] - v[right + 1]);
  const double hz = (x_right - x_left) * proj.bin_width_hz();
  return {hz, hz_to_ppm(hz, proj.ref_hz)};
}

Projection1D spectrum_1d(std::span<const complexd> fid, double sw_hz, double lb_hz, double ref_hz,
                         LineMode mode) {
  const std::size_t n = fid.size();
  const auto apod = apodization(n, 1.0 / sw_hz, lb_hz);
  std::vector<complexd> work(fid.begin(), fid.end());
  for (std::size_t k = 0; k < n; ++k)
    work[k] *= apod[k];
  detail::dft_many(work.data(), n, 1, 1, n);
  center_zero(std::span<complexd>(work));

  Projection1D out;
  out.axis_hz = frequency_axis(n, sw_hz);
  out.ref_hz = ref_hz;
  out.values.resize(n);
  for (std::size_t k = 0; k < n; ++k)
    out.values[k] = mode == LineMode::absorption ? work[k].real() : std::abs(work[k]);
  return out;
}

BinMask ridge_window(const PulseProgram &prog, TransitionLabel t1_branch, const Rational &ratio,
                     int min_offset, int max_offset, double chi) {
  const SpinSystem sys = prog.system();
  const auto &acq = prog.acquisition;
  const auto n1 = static_cast<std::size_t>(acq.td_f1);
  const auto n2 = static_cast<std::size_t>(acq.td_f2);
  const double bin1 = acq.sw_f1_hz / static_cast<double>(n1);
  const double bin2 = acq.sw_f2_hz / static_cast<double>(n2);
  const Transition t1 = representative_transition(prog.spin, t1_branch);
  const Transition ct = representative_transition(prog.spin, TransitionLabel{0});
  const double r = ratio.to_double();
  const auto rows = static_cast<long long>(n1);

  BinMask mask(n1 * n2, 0);
  // Dense uniform sampling in cos(beta): consecutive ridge points land far
  // closer together than a bin.
  constexpr int kSamples = 16384;
  for (int s = 0; s <= kSamples; ++s) {
    const double beta = std::acos(static_cast<double>(s) / kSamples);
    const double f2 = transition_frequency(sys, ct, beta, chi);
    const double f1 = transition_frequency(sys, t1, beta, chi) - r * f2;
    const std::size_t col = wrap_bin(f2, n2, bin2);
    const auto row0 = static_cast<long long>(wrap_bin(f1, n1, bin1));
    for (long long d = -max_offset; d <= max_offset; ++d) {
      if (std::abs(d) < min_offset)
        continue;
      const auto row = static_cast<std::size_t>(((row0 + d) % rows + rows) % rows);
      mask[row * n2 + col] = 1;
    }
  }
  return mask;
}

void subtract_mask(BinMask &mask, const BinMask &other) {
  if (mask.size() != other.size())
    throw std::invalid_argument("mask sizes differ");
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (other[i])
      mask[i] = 0;
}

double window_integral(const Spectrum2D &spec, const BinMask &mask) {
  if (mask.size() != spec.data.size())
    throw std::invalid_argument("mask does not match spectrum size");
  double total = 0.0;
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i])
      total += spec.data[i];
  return total;
}

double ridge_integral(const Spectrum2D &spec, const BinMask &ridge, const BinMask &flank) {
  if (ridge.size() != spec.data.size() || flank.size() != spec.data.size())
    throw std::invalid_argument("mask does not match spectrum size");
  double total = 0.0;
  for (std::size_t c = 0; c < spec.cols; ++c) {
    double flank_sum = 0.0, ridge_sum = 0.0;
    std::size_t flank_n = 0, ridge_n = 0;
    for (std::size_t r = 0; r < spec.rows; ++r) {
      const std::size_t i = r * spec.cols + c;
      if (ridge[i]) {
        ridge_sum += spec.data[i];
        ++ridge_n;
      } else if (flank[i]) {
        flank_sum += spec.data[i];
        ++flank_n;
      }
    }
    if (ridge_n == 0)
      continue;
    const double background = flank_n ? flank_sum / static_cast<double>(flank_n) : 0.0;
    total += ridge_sum - background * static_cast<double>(ridge_n);
  }
  return total;
}

} // namespace stmas
