#pragma once

#include <complex>
#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stmas {

/// Angular momentum quantum number stored as twice its value so that
/// half-integers stay exact (5/2 -> twice == 5).
struct HalfInt {
  int twice = 0;

  constexpr double value() const { return 0.5 * twice; }
  constexpr HalfInt operator-() const { return HalfInt{-twice}; }
  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;
};

constexpr HalfInt half(int twice) { return HalfInt{twice}; }

/// "5/2", "-1/2", "1" ... ; canonical text of a HalfInt.
std::string to_string(HalfInt h);
/// Accepts "p/2" or an integer; nullopt otherwise.
std::optional<HalfInt> parse_half_int(std::string_view text);

/// CT (satellite == 0) or STk (satellite == k).
struct TransitionLabel {
  int satellite = 0;

  bool is_central() const { return satellite == 0; }
  friend constexpr auto operator<=>(TransitionLabel, TransitionLabel) = default;
};

std::string to_string(TransitionLabel label);
std::optional<TransitionLabel> parse_transition_label(std::string_view text);

/// Single-quantum transition between adjacent levels, m == n + 1.
struct Transition {
  HalfInt m;
  HalfInt n;
  TransitionLabel label;

  friend constexpr bool operator==(const Transition &, const Transition &) = default;
};

class SpinSystem {
public:
  HalfInt spin() const { return spin_; }
  double larmor_hz() const { return larmor_hz_; }
  double quadrupole_hz() const { return quadrupole_hz_; }
  double eta() const { return 0.0; }

  /// {-S, -S+1, ..., +S}
  std::vector<HalfInt> levels() const;
  bool has_level(HalfInt m) const;
  /// Largest coherence order reachable, 2S.
  int max_coherence_order() const { return spin_.twice; }

  friend SpinSystem build_spin_system(HalfInt spin, double larmor_hz, double quadrupole_hz);

private:
  SpinSystem(HalfInt spin, double larmor_hz, double quadrupole_hz)
      : spin_(spin), larmor_hz_(larmor_hz), quadrupole_hz_(quadrupole_hz) {}

  HalfInt spin_;
  double larmor_hz_;
  double quadrupole_hz_;
};

/// Half-integer and at least 3/2: the spins experiments can be run on.
bool is_half_integer_quadrupolar(HalfInt spin);

/// Throws std::invalid_argument unless 2S is an integer, S >= 1,
/// larmor_hz > 0 and quadrupole_hz >= 0. Integer spins are accepted here
/// (levels, populations and shifts are defined) but have no transition
/// catalog.
SpinSystem build_spin_system(HalfInt spin, double larmor_hz, double quadrupole_hz);

/// All 2S adjacent-level transitions: CT first, then each STk as the
/// (+k+1/2, +k-1/2) member followed by its (-k+1/2, -k-1/2) partner.
/// Throws std::invalid_argument for integer spins (no central transition).
std::vector<Transition> transitions(const SpinSystem &sys);

/// The positive-m member of a transition class, the one used as a t1 branch.
/// Throws std::invalid_argument if the label does not exist for the spin.
Transition representative_transition(HalfInt spin, TransitionLabel label);
bool label_exists(HalfInt spin, TransitionLabel label);

/// Zeeman-only Boltzmann occupation, indexed like levels() (ascending m).
std::vector<double> boltzmann_populations(const SpinSystem &sys, double temperature_k);

/// p = m - n
int coherence_order(HalfInt m, HalfInt n);

/// Phase acquired by a coherence of order p under a z-rotation by phi: e^{-i p phi}.
std::complex<double> z_rotation_phase_factor(int order, double phi);

} // namespace stmas
