#include "stmas/coherence.hpp"
#include "stmas/rotations.hpp"

#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace stmas;

namespace {

CycleSpec cycle_of(std::vector<int> n, std::vector<int> desired, int acq) {
  CycleSpec c;
  for (std::size_t i = 0; i < n.size(); ++i)
    c.pulses.push_back({"p" + std::to_string(i + 1), n[i], desired[i]});
  c.acquisition_order = acq;
  return c;
}

const CycleSpec kDefault = cycle_of({4, 4, 1, 1, 4}, {+1, -1, 0, 0, -1}, -1);

CycleSpec random_cycle(std::mt19937_64 &rng, int max_order, int max_phases) {
  std::uniform_int_distribution<int> pulses(1, 5), phases(1, max_phases), acq(-max_order, max_order);
  const int n = pulses(rng);
  const int target = acq(rng);
  const auto desired = testing::random_pathway(rng, n, target, max_order);
  std::vector<int> ns(n);
  for (int &v : ns)
    v = phases(rng);
  return cycle_of(ns, desired, target);
}

} // namespace

TEST_CASE("selected order sets") {
  CHECK(selected_order_set(+1, 1, -2, 2) == std::vector<int>{-2, -1, 0, 1, 2});
  CHECK(selected_order_set(+1, 2, -3, 3) == std::vector<int>{-3, -1, 1, 3});
  CHECK(selected_order_set(-1, 4, -5, 5) == std::vector<int>{-5, -1, 3});
  // The four-phase set by congruence: ..., -7, -3, +1, +5, ...
  CHECK(selected_order_set(+1, 4, -8, 8) == std::vector<int>{-7, -3, 1, 5});
}

TEST_CASE("receiver phase") {
  const std::vector<int> dp{+1, -1, 0, 0, -1};
  const double pi = kPi;
  CHECK(receiver_phase(dp, std::vector<double>{pi / 2, 0, 0, 0, 0}) == doctest::Approx(3 * pi / 2));
  CHECK(receiver_phase(dp, std::vector<double>{0, pi / 2, 0, 0, pi}) == doctest::Approx(3 * pi / 2));
  CHECK(receiver_phase(dp, std::vector<double>(5, 0.0)) == 0.0);
  for (double a : {0.1, 2.0, 5.0, -7.0}) {
    const double r = receiver_phase(dp, std::vector<double>{a, 2 * a, a, 0, -a});
    CHECK(r >= 0.0);
    CHECK(r < 2 * pi);
  }
  CHECK_THROWS_AS(receiver_phase(dp, std::vector<double>{0.0}), std::invalid_argument);
}

TEST_CASE("pathway survival examples") {
  CHECK(pathway_survival(std::vector<int>{+1, -1, 0, 0, -1}, kDefault) == 1.0);
  CHECK(std::abs(pathway_survival(std::vector<int>{+2, -2, 0, 0, -1}, kDefault)) < 1e-12);
  CHECK(pathway_survival(std::vector<int>{+5, -5, 0, 0, -1}, kDefault) == 1.0);
  CHECK(pathway_survival(std::vector<int>{+1, +1, -2, 0, -1}, kDefault) < 1e-12);
  CHECK_THROWS_AS(pathway_survival(std::vector<int>{+1, -1}, kDefault), std::invalid_argument);
}

TEST_CASE("acquisitions per cycle") {
  CHECK(acquisitions_per_cycle(kDefault) == 64);
  CHECK(acquisitions_per_cycle(cycle_of({4, 4, 1, 1, 8}, {1, -1, 0, 0, -1}, -1)) == 128);
  CHECK(acquisitions_per_cycle(cycle_of({1, 1, 1, 1, 1}, {1, -1, 0, 0, -1}, -1)) == 1);
}

TEST_CASE("enumeration on the default cycle") {
  const auto paths = enumerate_surviving_pathways(kDefault, half(5));
  const std::vector<int> leak{+1, +1, -2, 0, -1};
  CHECK(std::find(paths.begin(), paths.end(), leak) == paths.end());
  CHECK(std::is_sorted(paths.begin(), paths.end()));

  auto reduced = kDefault;
  reduced.pulses[1].n_phases = 1;
  const auto open = enumerate_surviving_pathways(reduced, half(5));
  CHECK(std::find(open.begin(), open.end(), leak) != open.end());
  reduced.pulses[1].n_phases = 2;
  const auto two = enumerate_surviving_pathways(reduced, half(5));
  CHECK(std::find(two.begin(), two.end(), leak) != two.end());

  const auto none = cycle_of({1, 1, 1, 1, 1}, {1, -1, 0, 0, -1}, -1);
  CHECK(enumerate_surviving_pathways(none, half(5)) == enumerate_in_bounds_pathways(5, -1, 5));
}

TEST_CASE("bounds helpers") {
  CHECK(final_order(std::vector<int>{1, 1, -2, 0, -1}) == -1);
  CHECK(within_bounds(std::vector<int>{1, 1, -2, 0, -1}, 2));
  CHECK_FALSE(within_bounds(std::vector<int>{1, 1, -2, 0, -1}, 1));
  const auto all = enumerate_in_bounds_pathways(2, 0, 1);
  CHECK(all == std::vector<std::vector<int>>{{-1, 1}, {0, 0}, {1, -1}});
}

TEST_CASE("brute-force phase sums agree with the congruence rule") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> spin_pick(0, 1);
  for (int trial = 0; trial < 120; ++trial) {
    const int max_order = spin_pick(rng) ? 5 : 3;
    const auto cycle = random_cycle(rng, max_order, 8);
    testing::BruteForceSurvival oracle(cycle);
    for (const auto &dp :
         enumerate_in_bounds_pathways(cycle.pulses.size(), cycle.acquisition_order, max_order)) {
      const double brute = oracle(dp);
      const double exact = pathway_survival(dp, cycle);
      CHECK(std::abs(brute - exact) < 1e-10);
      CHECK((exact < 1e-10 || exact == 1.0));
      CHECK((exact == 1.0) == admitted_by_cycle(dp, cycle));
    }
  }
}

TEST_CASE("enumerator is sound and complete") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 80; ++trial) {
    const int max_order = trial % 2 ? 5 : 3;
    auto cycle = random_cycle(rng, max_order, 4);
    if (acquisitions_per_cycle(cycle) > 256)
      continue;
    std::vector<std::vector<int>> expected;
    for (const auto &dp :
         enumerate_in_bounds_pathways(cycle.pulses.size(), cycle.acquisition_order, max_order))
      if (pathway_survival(dp, cycle) > 0.5)
        expected.push_back(dp);
    CHECK(enumerate_surviving_pathways(cycle, HalfInt{max_order}) == expected);
  }
}

TEST_CASE("refining a phase grid never admits more pathways") {
  // Only N -> kN nests the admitted sets; 2 -> 3 phases lets an offset of 3 in.
  const auto two = cycle_of({2}, {1}, 1);
  const auto three = cycle_of({3}, {1}, 1);
  CHECK_FALSE(admitted_by_cycle(std::vector<int>{4}, two));
  CHECK(admitted_by_cycle(std::vector<int>{4}, three));

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> factor(2, 3);
  for (int trial = 0; trial < 60; ++trial) {
    const auto cycle = random_cycle(rng, 5, 4);
    auto bigger = cycle;
    std::uniform_int_distribution<std::size_t> which(0, cycle.pulses.size() - 1);
    auto &pulse = bigger.pulses[which(rng)];
    pulse.n_phases *= factor(rng);
    const auto small_set = enumerate_surviving_pathways(cycle, half(5));
    const auto big_set = enumerate_surviving_pathways(bigger, half(5));
    const std::set<std::vector<int>> allowed(small_set.begin(), small_set.end());
    for (const auto &dp : big_set)
      CHECK(allowed.contains(dp));
  }
}
