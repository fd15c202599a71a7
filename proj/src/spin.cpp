#include "stmas/spin.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace stmas {

namespace {

// CODATA 2018 exact values.
constexpr double kPlanck = 6.62607015e-34;
constexpr double kBoltzmann = 1.380649e-23;

std::optional<int> parse_int(std::string_view text) {
  if (!text.empty() && text.front() == '+')
    text.remove_prefix(1);
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    return std::nullopt;
  return value;
}

} // namespace

std::string to_string(HalfInt h) {
  if (h.twice % 2 == 0)
    return std::to_string(h.twice / 2);
  return std::to_string(h.twice) + "/2";
}

std::optional<HalfInt> parse_half_int(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    auto whole = parse_int(text);
    if (!whole)
      return std::nullopt;
    return HalfInt{2 * *whole};
  }
  auto num = parse_int(text.substr(0, slash));
  auto den = parse_int(text.substr(slash + 1));
  if (!num || !den)
    return std::nullopt;
  if (*den == 1)
    return HalfInt{2 * *num};
  if (*den != 2)
    return std::nullopt;
  return HalfInt{*num};
}

std::string to_string(TransitionLabel label) {
  if (label.is_central())
    return "CT";
  return "ST" + std::to_string(label.satellite);
}

std::optional<TransitionLabel> parse_transition_label(std::string_view text) {
  if (text == "CT")
    return TransitionLabel{0};
  if (text.size() < 3 || text.substr(0, 2) != "ST")
    return std::nullopt;
  auto k = parse_int(text.substr(2));
  if (!k || *k < 1 || text[2] == '+')
    return std::nullopt;
  return TransitionLabel{*k};
}

std::vector<HalfInt> SpinSystem::levels() const {
  std::vector<HalfInt> out;
  out.reserve(spin_.twice + 1);
  for (int m = -spin_.twice; m <= spin_.twice; m += 2)
    out.push_back(HalfInt{m});
  return out;
}

bool SpinSystem::has_level(HalfInt m) const {
  return std::abs(m.twice) <= spin_.twice && (m.twice - spin_.twice) % 2 == 0;
}

bool is_half_integer_quadrupolar(HalfInt spin) {
  return spin.twice >= 3 && spin.twice % 2 == 1;
}

SpinSystem build_spin_system(HalfInt spin, double larmor_hz, double quadrupole_hz) {
  if (spin.twice < 2)
    throw std::invalid_argument("spin " + to_string(spin) +
                                " has no quadrupole moment; S >= 1 required");
  if (!(larmor_hz > 0.0) || !std::isfinite(larmor_hz))
    throw std::invalid_argument("Larmor frequency must be positive");
  if (!(quadrupole_hz >= 0.0) || !std::isfinite(quadrupole_hz))
    throw std::invalid_argument("quadrupole frequency must be non-negative");
  return SpinSystem(spin, larmor_hz, quadrupole_hz);
}

bool label_exists(HalfInt spin, TransitionLabel label) {
  // STk needs a level at k + 1/2.
  return is_half_integer_quadrupolar(spin) && label.satellite >= 0 &&
         2 * label.satellite + 1 <= spin.twice;
}

Transition representative_transition(HalfInt spin, TransitionLabel label) {
  if (!label_exists(spin, label))
    throw std::invalid_argument(to_string(label) + " does not exist for spin " +
                                to_string(spin));
  int k = label.satellite;
  if (k == 0)
    return {HalfInt{1}, HalfInt{-1}, label};
  return {HalfInt{2 * k + 1}, HalfInt{2 * k - 1}, label};
}

std::vector<Transition> transitions(const SpinSystem &sys) {
  HalfInt spin = sys.spin();
  if (!is_half_integer_quadrupolar(spin))
    throw std::invalid_argument("transition catalog requires a half-integer spin");
  std::vector<Transition> out;
  out.reserve(spin.twice);
  out.push_back(representative_transition(spin, TransitionLabel{0}));
  for (int k = 1; 2 * k + 1 <= spin.twice; ++k) {
    Transition upper = representative_transition(spin, TransitionLabel{k});
    out.push_back(upper);
    out.push_back({-upper.n, -upper.m, upper.label});
  }
  return out;
}

std::vector<double> boltzmann_populations(const SpinSystem &sys, double temperature_k) {
  if (!(temperature_k > 0.0))
    throw std::invalid_argument("temperature must be positive");
  // E_m = -m h nu0, so p_m ~ exp(m x) with x = h nu0 / kT.
  const double x = kPlanck * sys.larmor_hz() / (kBoltzmann * temperature_k);
  const auto levels = sys.levels();
  const double top = sys.spin().value() * x;
  std::vector<double> p;
  p.reserve(levels.size());
  double total = 0.0;
  for (HalfInt m : levels) {
    p.push_back(std::exp(m.value() * x - top));
    total += p.back();
  }
  for (double &v : p)
    v /= total;
  return p;
}

int coherence_order(HalfInt m, HalfInt n) { return (m.twice - n.twice) / 2; }

std::complex<double> z_rotation_phase_factor(int order, double phi) {
  return std::polar(1.0, -static_cast<double>(order) * phi);
}

} // namespace stmas
