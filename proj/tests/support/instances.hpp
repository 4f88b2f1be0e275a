// Copyright 2026 The capmix Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CAPMIX_TESTS_SUPPORT_INSTANCES_HPP
#define CAPMIX_TESTS_SUPPORT_INSTANCES_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "capmix/mixing.hpp"

// Hand-rolled generators for randomized instances. Every generator is driven
// by an explicit seed so a failing case can be replayed from its index.

namespace capmix::testing {

struct Limits {
  std::size_t max_states = 3;
  std::size_t max_dimension = 3;
  std::size_t max_members = 3;
  int max_coordinate = 10;
};

struct Instance {
  Act act;
  ProbabilityVector p;
  std::uint64_t seed;
};

inline std::size_t draw(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline Being random_being(std::mt19937_64& rng, std::size_t dim, int max_coordinate) {
  std::uniform_int_distribution<int> coord(0, max_coordinate);
  std::vector<double> c(dim);
  for (auto& x : c) x = coord(rng);
  return Being(std::move(c));
}

inline CapabilitySet random_set(std::mt19937_64& rng, std::size_t dim, std::size_t members,
                                int max_coordinate) {
  std::vector<Being> beings;
  for (std::size_t n = 0; n < members; ++n) {
    beings.push_back(random_being(rng, dim, max_coordinate));
  }
  return CapabilitySet(std::move(beings));
}

// Uniform on the simplex via normalized exponentials; the last entry absorbs
// the rounding so the sum is exact to within a few ulps.
inline ProbabilityVector random_probabilities(std::mt19937_64& rng, std::size_t states) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> w(states);
  double total = 0.0;
  for (auto& x : w) total += (x = e(rng));
  double running = 0.0;
  for (std::size_t l = 0; l + 1 < states; ++l) running += (w[l] /= total);
  w.back() = std::max(0.0, 1.0 - running);
  return ProbabilityVector(std::move(w));
}

inline Instance random_instance(std::uint64_t seed, const Limits& lim = {}) {
  std::mt19937_64 rng(seed);
  const std::size_t states = draw(rng, 1, lim.max_states);
  const std::size_t dim = draw(rng, 1, lim.max_dimension);
  std::vector<CapabilitySet> sets;
  for (std::size_t l = 0; l < states; ++l) {
    sets.push_back(random_set(rng, dim, draw(rng, 1, lim.max_members), lim.max_coordinate));
  }
  return Instance{Act("random_" + std::to_string(seed), std::move(sets)),
                  random_probabilities(rng, states), seed};
}

// Instance whose act is pointwise dominated by a second act: every member of
// the upper act's sets is a lower member raised by a random non-negative step.
inline std::pair<Instance, Act> random_dominated_pair(std::uint64_t seed, const Limits& lim = {}) {
  Instance base = random_instance(seed, lim);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<int> step(0, 3);
  std::vector<CapabilitySet> upper;
  for (const auto& set : base.act.sets()) {
    std::vector<Being> raised;
    for (const auto& b : set) {
      std::vector<double> c(b.begin(), b.end());
      for (auto& x : c) x += step(rng);
      raised.emplace_back(std::move(c));
    }
    if (draw(rng, 0, 1) == 1) {
      raised.push_back(random_being(rng, base.act.dimension(), lim.max_coordinate));
    }
    upper.emplace_back(std::move(raised));
  }
  Act up("upper_" + std::to_string(seed), std::move(upper));
  return {std::move(base), std::move(up)};
}

struct ShiftInstance {
  Instance base;
  std::size_t from;
  std::size_t to;
  double mass;
};

// At least two states, with the `to` state's set covering the `from` state's
// set so that moving probability mass towards it is a meaningful test.
inline ShiftInstance random_shift_instance(std::uint64_t seed, const Limits& lim = {}) {
  std::mt19937_64 rng(seed);
  const std::size_t states = draw(rng, 2, std::max<std::size_t>(2, lim.max_states));
  const std::size_t dim = draw(rng, 1, lim.max_dimension);
  std::vector<CapabilitySet> sets;
  for (std::size_t l = 0; l < states; ++l) {
    sets.push_back(random_set(rng, dim, draw(rng, 1, lim.max_members), lim.max_coordinate));
  }
  const std::size_t from = draw(rng, 0, states - 1);
  std::size_t to = draw(rng, 0, states - 2);
  if (to >= from) ++to;
  std::uniform_int_distribution<int> step(0, 3);
  std::vector<Being> raised;
  for (const auto& b : sets[from]) {
    std::vector<double> c(b.begin(), b.end());
    for (auto& x : c) x += step(rng);
    raised.emplace_back(std::move(c));
  }
  if (draw(rng, 0, 1) == 1) raised.push_back(random_being(rng, dim, lim.max_coordinate));
  sets[to] = CapabilitySet(std::move(raised));
  ProbabilityVector p = random_probabilities(rng, states);
  const double mass = p[from] * std::uniform_real_distribution<double>(0.1, 1.0)(rng);
  return ShiftInstance{Instance{Act("shift_" + std::to_string(seed), std::move(sets)),
                                std::move(p), seed},
                       from, to, mass};
}

// One-dimensional act with a single being per state.
inline Instance random_scalar_instance(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t states = draw(rng, 1, 4);
  std::uniform_real_distribution<double> value(0.0, 100.0);
  std::vector<CapabilitySet> sets;
  for (std::size_t l = 0; l < states; ++l) sets.push_back(CapabilitySet{Being{value(rng)}});
  return Instance{Act("scalar_" + std::to_string(seed), std::move(sets)),
                  random_probabilities(rng, states), seed};
}

}  // namespace capmix::testing

#endif  // CAPMIX_TESTS_SUPPORT_INSTANCES_HPP
