#pragma once

// Helpers shared by the unit tests and the acceptance runner.

#include "stmas/coherence.hpp"
#include "stmas/pulse_program.hpp"
#include "stmas/rotations.hpp"

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace testing {

inline std::filesystem::path source_dir() { return STMAS_SOURCE_DIR; }

inline std::string read_text(const std::filesystem::path &p) {
  std::ifstream in(p, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot read " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline stmas::PulseProgram default_program() {
  auto parsed = stmas::parse_program(read_text(source_dir() / "programs" / "stmas_1q.pp"));
  if (!parsed.ok())
    throw std::runtime_error("shipped program does not parse");
  return *parsed.program;
}

// Explicit phase sum over every combination of the cycle's phases, in
// floating radians: |mean exp(-i (sum dp_i phi_i + phi_R))| with the
// receiver following the desired dp. Sums are cached per residue key
// (dp_i - desired_i mod N_i), which is all the sum depends on.
class BruteForceSurvival {
public:
  explicit BruteForceSurvival(const stmas::CycleSpec &cycle) : cycle_(cycle) {}

  double operator()(const std::vector<int> &dp) {
    const auto desired = cycle_.desired_dp();
    const std::size_t n = cycle_.pulses.size();
    std::vector<int> key(n);
    for (std::size_t i = 0; i < n; ++i) {
      const int N = cycle_.pulses[i].n_phases;
      key[i] = ((dp[i] - desired[i]) % N + N) % N;
    }
    for (const auto &[k, v] : cache_)
      if (k == key)
        return v;
    const double v = phase_sum(dp, desired);
    cache_.emplace_back(key, v);
    return v;
  }

private:
  double phase_sum(const std::vector<int> &dp, const std::vector<int> &desired) const {
    const std::size_t n = cycle_.pulses.size();
    // Per-pulse factor tables exp(-i dp phi) and exp(+i desired phi)
    // (the latter is the receiver's share), combined by an odometer
    // over prefix products.
    std::vector<std::vector<std::complex<double>>> table(n);
    for (std::size_t i = 0; i < n; ++i) {
      const int N = cycle_.pulses[i].n_phases;
      for (int k = 0; k < N; ++k) {
        const double phi = 2.0 * stmas::kPi * k / N;
        const double total = dp[i] * phi - desired[i] * phi;
        table[i].push_back(std::polar(1.0, -total));
      }
    }
    std::vector<int> digit(n, 0);
    std::vector<std::complex<double>> prefix(n + 1, 1.0);
    for (std::size_t i = 0; i < n; ++i)
      prefix[i + 1] = prefix[i] * table[i][0];
    std::complex<double> sum = 0.0;
    long long combos = 0;
    while (true) {
      sum += prefix[n];
      ++combos;
      std::size_t i = n;
      while (i > 0) {
        --i;
        if (++digit[i] < cycle_.pulses[i].n_phases)
          break;
        digit[i] = 0;
        if (i == 0) {
          i = n + 1;
          break;
        }
      }
      if (i == n + 1)
        break;
      for (std::size_t j = i; j < n; ++j)
        prefix[j + 1] = prefix[j] * table[j][digit[j]];
    }
    return std::abs(sum) / static_cast<double>(combos);
  }

  stmas::CycleSpec cycle_;
  std::vector<std::pair<std::vector<int>, double>> cache_;
};

// Random in-bounds walk from order 0 that ends at `target`.
inline std::vector<int> random_pathway(std::mt19937_64 &rng, std::size_t n_pulses, int target,
                                       int max_order) {
  std::uniform_int_distribution<int> order(-max_order, max_order);
  std::vector<int> dp(n_pulses);
  int p = 0;
  for (std::size_t i = 0; i + 1 < n_pulses; ++i) {
    const int next = order(rng);
    dp[i] = next - p;
    p = next;
  }
  dp[n_pulses - 1] = target - p;
  return dp;
}

// Valid program with random content; exercises every field of the format.
inline stmas::PulseProgram random_program(std::mt19937_64 &rng) {
  using namespace stmas;
  auto uniform = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  auto integer = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  PulseProgram prog;
  prog.spin = HalfInt{2 * integer(1, 4) + 1};
  const int max_order = prog.spin.twice;
  prog.larmor_hz = std::pow(10.0, uniform(6.0, 9.0));
  prog.nuq_hz = integer(0, 5) == 0 ? 0.0 : std::pow(10.0, uniform(3.0, 7.0));
  prog.acquisition.spin_rate_hz = integer(0, 3) == 0 ? 0.0 : uniform(1e3, 7e4);
  prog.acquisition.sw_f2_hz = uniform(1e3, 1e6);
  prog.acquisition.sw_f1_hz = uniform(1e2, 1e5);
  prog.acquisition.td_f2 = integer(2, 8192);
  prog.acquisition.td_f1 = integer(2, 1024);
  prog.acquisition.ref_hz = integer(0, 1) ? prog.larmor_hz : uniform(1e6, 1e9);

  const int n_pulses = integer(1, 6);
  for (int i = 0; i < n_pulses; ++i)
    prog.cycle.pulses.push_back({"p" + std::to_string(i + 1) + (integer(0, 1) ? "_x" : ""),
                                 integer(1, 8), integer(-max_order, max_order)});
  prog.cycle.acquisition_order = integer(-max_order, max_order);

  const int n_routes = integer(0, 4);
  for (int r = 0; r < n_routes; ++r) {
    Route route;
    route.name = "route" + std::to_string(r);
    route.dp = random_pathway(rng, prog.cycle.pulses.size(), prog.cycle.acquisition_order, max_order);
    route.t1_branch = TransitionLabel{integer(0, (max_order - 1) / 2)};
    route.amplitude = uniform(-1.0, 1.0);
    prog.routes.push_back(route);
  }
  return prog;
}

} // namespace testing
