#pragma once

#include "stmas/spin.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace stmas {

/// One phase-cycled pulse. Its phases are the uniform grid 2 pi k / n_phases.
struct PulseSpec {
  std::string id;
  int n_phases = 1;
  int dp_desired = 0;

  friend bool operator==(const PulseSpec &, const PulseSpec &) = default;
};

struct CycleSpec {
  std::vector<PulseSpec> pulses;
  int acquisition_order = -1;

  std::vector<int> desired_dp() const;
  friend bool operator==(const CycleSpec &, const CycleSpec &) = default;
};

/// A pathway through the pulse train. Coherence starts at 0 before the
/// first pulse; the order after pulse i is the running sum of dp[0..i].
struct CoherencePathway {
  std::vector<int> dp;
  std::optional<TransitionLabel> t1_branch;
  double amplitude = 1.0;
};

/// {dp : dp == dp_desired (mod n)} within [p_min, p_max], ascending.
std::vector<int> selected_order_set(int dp_desired, int n, int p_min, int p_max);

/// -sum dp_i phi_i reduced into [0, 2 pi). Throws std::invalid_argument on length mismatch.
double receiver_phase(std::span<const int> dp, std::span<const double> phases);

/// |mean over every phase combination of exp(-i[sum dp_i phi_i + phi_R])| with
/// phi_R taken from the cycle's desired dp. Phases are accumulated as exact
/// integer fractions of a turn, so a surviving pathway returns exactly 1.
/// Throws std::invalid_argument on length mismatch.
double pathway_survival(std::span<const int> dp, const CycleSpec &cycle);

/// Congruence form of the same question: dp_i == desired_i (mod N_i) for all i.
bool admitted_by_cycle(std::span<const int> dp, const CycleSpec &cycle);

/// Order reached after the last pulse.
int final_order(std::span<const int> dp);
/// Running order stays within [-max_order, max_order] after every pulse.
bool within_bounds(std::span<const int> dp, int max_order);

/// Every dp vector admitted by the cycle whose running order stays within
/// [-max_order, max_order] and ends at the acquisition order, in
/// lexicographic order. max_order defaults to 2S.
std::vector<std::vector<int>> enumerate_surviving_pathways(const CycleSpec &cycle, HalfInt spin,
                                                           std::optional<int> max_order = {});

/// Every in-bounds dp vector ending at the acquisition order, regardless of
/// phase cycling (lexicographic).
std::vector<std::vector<int>> enumerate_in_bounds_pathways(std::size_t n_pulses,
                                                           int acquisition_order, int max_order);

/// Product of the phase counts.
std::int64_t acquisitions_per_cycle(const CycleSpec &cycle);

} // namespace stmas
