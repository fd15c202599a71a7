#include "stmas/coherence.hpp"

#include "stmas/rotations.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace stmas {

namespace {

int floor_mod(int a, int n) {
  const int r = a % n;
  return r < 0 ? r + n : r;
}

void require_same_length(std::size_t a, std::size_t b, const char *what) {
  if (a != b)
    throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(b) +
                                " entries, got " + std::to_string(a));
}

void enumerate(const CycleSpec *cycle, std::size_t n_pulses, int target, int max_order,
               std::vector<int> &prefix, int order, std::vector<std::vector<int>> &out) {
  const std::size_t i = prefix.size();
  if (i == n_pulses) {
    if (order == target)
      out.push_back(prefix);
    return;
  }
  // Remaining pulses can move the order by any amount, so only the bound prunes.
  for (int next = -max_order; next <= max_order; ++next) {
    const int dp = next - order;
    if (cycle) {
      const PulseSpec &p = cycle->pulses[i];
      if (floor_mod(dp - p.dp_desired, p.n_phases) != 0)
        continue;
    }
    if (i + 1 == n_pulses && next != target)
      continue;
    prefix.push_back(dp);
    enumerate(cycle, n_pulses, target, max_order, prefix, next, out);
    prefix.pop_back();
  }
}

} // namespace

std::vector<int> CycleSpec::desired_dp() const {
  std::vector<int> out;
  out.reserve(pulses.size());
  for (const auto &p : pulses)
    out.push_back(p.dp_desired);
  return out;
}

std::vector<int> selected_order_set(int dp_desired, int n, int p_min, int p_max) {
  if (n < 1)
    throw std::invalid_argument("phase count must be positive");
  std::vector<int> out;
  for (int dp = p_min; dp <= p_max; ++dp)
    if (floor_mod(dp - dp_desired, n) == 0)
      out.push_back(dp);
  return out;
}

double receiver_phase(std::span<const int> dp, std::span<const double> phases) {
  require_same_length(phases.size(), dp.size(), "receiver_phase");
  double phase = 0.0;
  for (std::size_t i = 0; i < dp.size(); ++i)
    phase -= dp[i] * phases[i];
  const double turn = 2.0 * kPi;
  phase = std::fmod(phase, turn);
  if (phase < 0.0)
    phase += turn;
  if (phase >= turn)
    phase = 0.0;
  return phase;
}

double pathway_survival(std::span<const int> dp, const CycleSpec &cycle) {
  require_same_length(dp.size(), cycle.pulses.size(), "pathway_survival");

  // Per pulse i and phase index k, the pathway picks up -dp_i phi_k and the
  // receiver adds +desired_i phi_k. Work in units of 1/L of a turn.
  std::int64_t turn = 1;
  for (const auto &p : cycle.pulses) {
    if (p.n_phases < 1)
      throw std::invalid_argument("phase count must be positive");
    turn = std::lcm(turn, static_cast<std::int64_t>(p.n_phases));
  }
  if (turn > (1 << 24))
    throw std::invalid_argument("phase cycle too fine for exact accumulation");

  const std::size_t n = dp.size();
  std::vector<std::int64_t> step(n);
  for (std::size_t i = 0; i < n; ++i) {
    const PulseSpec &p = cycle.pulses[i];
    step[i] = floor_mod(dp[i] - p.dp_desired, p.n_phases) * (turn / p.n_phases);
  }

  std::vector<std::int64_t> histogram(static_cast<std::size_t>(turn), 0);
  std::vector<int> index(n, 0);
  std::int64_t residue = 0;
  std::int64_t combos = 0;
  while (true) {
    ++histogram[static_cast<std::size_t>(residue)];
    ++combos;
    std::size_t i = 0;
    for (; i < n; ++i) {
      residue = (residue + step[i]) % turn;
      if (++index[i] < cycle.pulses[i].n_phases)
        break;
      index[i] = 0; // wrapped; N_i steps of step[i] is a whole number of turns
    }
    if (i == n)
      break;
  }

  std::complex<double> sum{0.0, 0.0};
  for (std::int64_t r = 0; r < turn; ++r) {
    const auto count = histogram[static_cast<std::size_t>(r)];
    if (count == 0)
      continue;
    const double phase = -2.0 * kPi * static_cast<double>(r) / static_cast<double>(turn);
    sum += static_cast<double>(count) *
           (r == 0 ? std::complex<double>{1.0, 0.0} : std::polar(1.0, phase));
  }
  return std::abs(sum) / static_cast<double>(combos);
}

bool admitted_by_cycle(std::span<const int> dp, const CycleSpec &cycle) {
  require_same_length(dp.size(), cycle.pulses.size(), "admitted_by_cycle");
  for (std::size_t i = 0; i < dp.size(); ++i) {
    const PulseSpec &p = cycle.pulses[i];
    if (floor_mod(dp[i] - p.dp_desired, p.n_phases) != 0)
      return false;
  }
  return true;
}

int final_order(std::span<const int> dp) { return std::accumulate(dp.begin(), dp.end(), 0); }

bool within_bounds(std::span<const int> dp, int max_order) {
  int order = 0;
  for (int d : dp) {
    order += d;
    if (std::abs(order) > max_order)
      return false;
  }
  return true;
}

std::vector<std::vector<int>> enumerate_surviving_pathways(const CycleSpec &cycle, HalfInt spin,
                                                           std::optional<int> max_order) {
  const int bound = max_order.value_or(spin.twice);
  std::vector<std::vector<int>> out;
  if (cycle.pulses.empty() || bound < 0 || std::abs(cycle.acquisition_order) > bound)
    return out;
  std::vector<int> prefix;
  enumerate(&cycle, cycle.pulses.size(), cycle.acquisition_order, bound, prefix, 0, out);
  return out;
}

std::vector<std::vector<int>> enumerate_in_bounds_pathways(std::size_t n_pulses,
                                                           int acquisition_order, int max_order) {
  std::vector<std::vector<int>> out;
  if (n_pulses == 0 || max_order < 0 || std::abs(acquisition_order) > max_order)
    return out;
  std::vector<int> prefix;
  enumerate(nullptr, n_pulses, acquisition_order, max_order, prefix, 0, out);
  return out;
}

std::int64_t acquisitions_per_cycle(const CycleSpec &cycle) {
  std::int64_t total = 1;
  for (const auto &p : cycle.pulses)
    total *= p.n_phases;
  return total;
}

} // namespace stmas
