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

#ifndef CAPMIX_MIXING_HPP
#define CAPMIX_MIXING_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "capmix/error.hpp"
#include "capmix/geometry.hpp"

namespace capmix {

inline constexpr std::uint64_t kDefaultCap = 10'000'000;
inline constexpr std::uint64_t kDefaultGridCap = 1'000'000;

/// Subjective probabilities over states: non-negative, summing to one within
/// kTolerance. Never renormalized.
class ProbabilityVector {
 public:
  explicit ProbabilityVector(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw ProbabilityError("probability vector is empty");
    double sum = 0.0;
    for (std::size_t l = 0; l < probs_.size(); ++l) {
      if (!std::isfinite(probs_[l]) || probs_[l] < 0.0) {
        throw ProbabilityError("probability of state " + std::to_string(l + 1) +
                               " must be finite and non-negative");
      }
      sum += probs_[l];
    }
    if (std::abs(sum - 1.0) > kTolerance) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.12g", sum);
      throw ProbabilityError(std::string("probabilities sum to ") + buf);
    }
  }
  ProbabilityVector(std::initializer_list<double> probs)
      : ProbabilityVector(std::vector<double>(probs)) {}

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t l) const { return probs_[l]; }
  std::span<const double> values() const noexcept { return probs_; }

  friend bool operator==(const ProbabilityVector&, const ProbabilityVector&) = default;

 private:
  std::vector<double> probs_;
};

/// A policy choice: one capability set per state of the world.
class Act {
 public:
  Act(std::string label, std::vector<CapabilitySet> per_state)
      : label_(std::move(label)), per_state_(std::move(per_state)) {
    if (per_state_.empty()) throw DomainError("act '" + label_ + "' has no states");
    const std::size_t dim = per_state_.front().dimension();
    for (const auto& s : per_state_) detail::require_same_dimension(dim, s.dimension());
  }

  const std::string& label() const noexcept { return label_; }
  std::size_t states() const noexcept { return per_state_.size(); }
  std::size_t dimension() const noexcept { return per_state_.front().dimension(); }
  const CapabilitySet& operator[](std::size_t l) const { return per_state_[l]; }
  std::span<const CapabilitySet> sets() const noexcept { return per_state_; }

  friend bool operator==(const Act&, const Act&) = default;

 private:
  std::string label_;
  std::vector<CapabilitySet> per_state_;
};

/// One anchor per state plus a total order over states. `adjusted` holds the
/// cumulative meets actually aggregated, indexed by state.
struct ChainCertificate {
  std::vector<std::size_t> selection;  // member index of each anchor in its set
  std::vector<Being> anchors;          // z_l, by state
  std::vector<std::size_t> order;      // states from lowest to highest
  std::vector<Being> adjusted;         // b_l, by state

  // Position of state `l` in the order (0 = lowest).
  std::size_t rank(std::size_t l) const {
    return static_cast<std::size_t>(std::find(order.begin(), order.end(), l) - order.begin());
  }

  friend bool operator==(const ChainCertificate&, const ChainCertificate&) = default;
};

/// Builds the certificate for a fixed selection and order. The top of the
/// chain keeps its anchor; each lower state takes the meet of its anchor with
/// the state just above it, so adjusted[order[k]] is the meet of anchors
/// order[k..L-1].
inline ChainCertificate make_chain(std::vector<Being> anchors, std::vector<std::size_t> order,
                                   std::vector<std::size_t> selection = {}) {
  const std::size_t states = anchors.size();
  if (states == 0) throw DomainError("chain needs at least one state");
  common_dimension(anchors);
  std::vector<bool> seen(states, false);
  if (order.size() != states) throw DomainError("order must list every state once");
  for (std::size_t l : order) {
    if (l >= states || seen[l]) throw DomainError("order must list every state once");
    seen[l] = true;
  }
  if (selection.empty()) selection.assign(states, 0);

  std::vector<std::optional<Being>> adjusted(states);
  adjusted[order.back()] = anchors[order.back()];
  for (std::size_t k = states - 1; k-- > 0;) {
    adjusted[order[k]] = meet(anchors[order[k]], *adjusted[order[k + 1]]);
  }
  ChainCertificate cert{std::move(selection), std::move(anchors), std::move(order), {}};
  for (auto& b : adjusted) cert.adjusted.push_back(std::move(*b));
  return cert;
}

/// Probability-weighted aggregate of the certificate's adjusted beings.
inline Being chain_value(const ChainCertificate& cert, const ProbabilityVector& p) {
  if (cert.adjusted.size() != p.size()) {
    throw DimensionError("certificate has " + std::to_string(cert.adjusted.size()) +
                         " states but probability vector has " + std::to_string(p.size()));
  }
  std::vector<double> sum(cert.adjusted.front().dimension(), 0.0);
  for (std::size_t l = 0; l < p.size(); ++l) {
    for (std::size_t h = 0; h < sum.size(); ++h) sum[h] += p[l] * cert.adjusted[l][h];
  }
  return Being(std::move(sum));
}

enum class MixKind { Average, AveragePF, Expected };

inline std::string_view to_string(MixKind k) noexcept {
  switch (k) {
    case MixKind::Average: return "average";
    case MixKind::AveragePF: return "average_pf";
    case MixKind::Expected: return "expected";
  }
  return "?";
}

struct MixedPoint {
  Being point;
  std::vector<std::size_t> selection;  // member index chosen in each state
  std::optional<ChainCertificate> chain;
};

struct MixedSet {
  MixKind kind;
  std::vector<MixedPoint> points;  // lexicographic order

  std::vector<Being> beings() const {
    std::vector<Being> out;
    out.reserve(points.size());
    for (const auto& mp : points) out.push_back(mp.point);
    return out;
  }
};

struct MixOptions {
  std::uint64_t cap = kDefaultCap;
};

namespace detail {

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) noexcept {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

inline void require_matching(const Act& act, const ProbabilityVector& p) {
  if (act.states() != p.size()) {
    throw ProbabilityError("act '" + act.label() + "' has " + std::to_string(act.states()) +
                           " states but " + std::to_string(p.size()) + " probabilities");
  }
}

inline void require_within_cap(std::uint64_t count, std::uint64_t cap, const char* what) {
  if (count > cap) {
    throw CapacityError(std::string(what) + " requires " +
                        (count == std::numeric_limits<std::uint64_t>::max()
                             ? std::string("more than 2^64")
                             : std::to_string(count)) +
                        " evaluations, above the cap of " + std::to_string(cap));
  }
}

// Advances a mixed-radix counter; false once it wraps around.
inline bool next_combination(std::vector<std::size_t>& digits, std::span<const std::size_t> radix) {
  for (std::size_t k = digits.size(); k-- > 0;) {
    if (++digits[k] < radix[k]) return true;
    digits[k] = 0;
  }
  return false;
}

}  // namespace detail

/// Every probability-weighted combination taking one being per state,
/// near-duplicates removed, sorted lexicographically. No Pareto filtering.
inline MixedSet average_set(const Act& act, const ProbabilityVector& p, MixOptions opts = {}) {
  detail::require_matching(act, p);
  const std::size_t states = act.states();
  const std::size_t dim = act.dimension();

  std::vector<std::size_t> radix(states);
  std::uint64_t count = 1;
  for (std::size_t l = 0; l < states; ++l) {
    radix[l] = act[l].size();
    count = detail::saturating_mul(count, radix[l]);
  }
  detail::require_within_cap(count, opts.cap, "average set");

  std::vector<std::vector<double>> values;
  std::vector<std::vector<std::size_t>> selections;
  values.reserve(count);
  selections.reserve(count);
  std::vector<std::size_t> digits(states, 0);
  do {
    std::vector<double> v(dim, 0.0);
    for (std::size_t l = 0; l < states; ++l) {
      const Being& b = act[l][digits[l]];
      for (std::size_t h = 0; h < dim; ++h) v[h] += p[l] * b[h];
    }
    values.push_back(std::move(v));
    selections.push_back(digits);
  } while (detail::next_combination(digits, radix));

  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return detail::lex_less(values[a], values[b]);
  });

  // Near-duplicates have first coordinates within kTolerance, so only the tail
  // of the kept list inside that window needs checking.
  MixedSet out{MixKind::Average, {}};
  for (std::size_t idx : order) {
    const auto& v = values[idx];
    bool dup = false;
    for (std::size_t k = out.points.size(); k-- > 0;) {
      const auto kept = out.points[k].point.coords();
      if (kept[0] < v[0] - kTolerance) break;
      if (detail::near(kept, v)) {
        dup = true;
        break;
      }
    }
    if (!dup) out.points.push_back(MixedPoint{Being(v), selections[idx], std::nullopt});
  }
  return out;
}

/// Pareto frontier of the average set.
inline MixedSet average_pf(const Act& act, const ProbabilityVector& p, MixOptions opts = {}) {
  MixedSet all = average_set(act, p, opts);
  const std::vector<Being> pts = all.beings();
  MixedSet out{MixKind::AveragePF, {}};
  for (std::size_t idx : pareto_indices(pts)) out.points.push_back(std::move(all.points[idx]));
  return out;
}

/// Number of chain evaluations expected_set will perform.
inline std::uint64_t expected_set_evaluations(const Act& act) {
  std::uint64_t count = 1;
  for (const auto& set : act.sets()) {
    count = detail::saturating_mul(count, pareto_indices(set.beings()).size());
  }
  for (std::uint64_t k = 2; k <= act.states(); ++k) count = detail::saturating_mul(count, k);
  return count;
}

/// The expected capability set: Pareto frontier of chain values over every
/// selection of one anchor per state and every total order of the states.
///
/// For a fixed selection and order, the cumulative-meet assignment is the
/// componentwise-greatest feasible choice of per-state beings, so this
/// enumeration reaches exactly the optimum set of the finite-set MI-MOLP.
/// Anchors are restricted to each state's own frontier, which leaves the
/// result unchanged because the chain value is monotone in every anchor.
inline MixedSet expected_set(const Act& act, const ProbabilityVector& p, MixOptions opts = {}) {
  detail::require_matching(act, p);
  detail::require_within_cap(expected_set_evaluations(act), opts.cap, "expected set");
  const std::size_t states = act.states();
  const std::size_t dim = act.dimension();

  std::vector<std::vector<std::size_t>> candidates(states);
  std::vector<std::size_t> radix(states);
  for (std::size_t l = 0; l < states; ++l) {
    candidates[l] = pareto_indices(act[l].beings());
    radix[l] = candidates[l].size();
  }

  struct Choice {
    std::vector<std::size_t> selection;
    std::vector<std::size_t> order;
  };
  detail::OnlineFrontier<Choice> frontier;

  std::vector<std::size_t> digits(states, 0);
  std::vector<std::size_t> selection(states);
  std::vector<std::span<const double>> anchor(states);
  std::vector<double> adjusted(states * dim);
  std::vector<double> value(dim);
  do {
    for (std::size_t l = 0; l < states; ++l) {
      selection[l] = candidates[l][digits[l]];
      anchor[l] = act[l][selection[l]].coords();
    }
    std::vector<std::size_t> order(states);
    std::iota(order.begin(), order.end(), std::size_t{0});
    do {
      // Adjacent equal anchors give the same adjusted beings in either order.
      bool redundant = false;
      for (std::size_t k = 0; k + 1 < states && !redundant; ++k) {
        redundant = order[k] > order[k + 1] &&
                    std::equal(anchor[order[k]].begin(), anchor[order[k]].end(),
                               anchor[order[k + 1]].begin());
      }
      if (redundant) continue;

      const std::size_t top = order.back();
      std::copy(anchor[top].begin(), anchor[top].end(), adjusted.begin() + top * dim);
      for (std::size_t k = states - 1; k-- > 0;) {
        const std::size_t l = order[k];
        const std::size_t above = order[k + 1];
        for (std::size_t h = 0; h < dim; ++h) {
          adjusted[l * dim + h] = std::min(anchor[l][h], adjusted[above * dim + h]);
        }
      }
      std::fill(value.begin(), value.end(), 0.0);
      for (std::size_t l = 0; l < states; ++l) {
        for (std::size_t h = 0; h < dim; ++h) value[h] += p[l] * adjusted[l * dim + h];
      }
      frontier.offer(value, [&] { return Choice{selection, order}; });
    } while (std::next_permutation(order.begin(), order.end()));
  } while (detail::next_combination(digits, radix));

  MixedSet out{MixKind::Expected, {}};
  for (auto& entry : std::move(frontier).take_sorted()) {
    std::vector<Being> anchors;
    for (std::size_t l = 0; l < states; ++l) anchors.push_back(act[l][entry.payload.selection[l]]);
    ChainCertificate cert =
        make_chain(std::move(anchors), entry.payload.order, entry.payload.selection);
    out.points.push_back(
        MixedPoint{Being(std::move(entry.coords)), entry.payload.selection, std::move(cert)});
  }
  return out;
}

struct SandwichReport {
  bool holds = true;
  std::vector<Being> above_union;        // mix points outside the union region
  std::vector<Being> uncovered_corners;  // intersection corners no mix point dominates
};

/// Checks that the mix lies between the intersection and the union of the
/// states' dominated regions.
inline SandwichReport sandwich_check(std::span<const Being> mix, const Act& act) {
  SandwichReport report;
  for (const auto& b : mix) {
    detail::require_same_dimension(b.dimension(), act.dimension());
    if (!in_union_region(b, act.sets())) report.above_union.push_back(b);
  }
  for (const auto& corner : intersection_corners(act.sets())) {
    if (!dominated_by_any(corner, mix)) report.uncovered_corners.push_back(corner);
  }
  report.holds = report.above_union.empty() && report.uncovered_corners.empty();
  return report;
}

inline SandwichReport sandwich_check(const MixedSet& mix, const Act& act) {
  const auto pts = mix.beings();
  return sandwich_check(pts, act);
}

/// Grid oracle for the expected set, independent of the chain construction.
///
/// Every per-state being is drawn from the grid whose h-th axis holds the
/// h-th coordinates occurring anywhere in the act; candidates must lie in
/// their state's dominated region and the tuple must be pairwise comparable.
/// Feasible tuples are aggregated and Pareto-filtered. `grid_cap` bounds the
/// per-state grid size. Meant for tiny instances.
inline std::vector<Being> brute_force_expected(const Act& act, const ProbabilityVector& p,
                                               std::uint64_t grid_cap = kDefaultGridCap) {
  detail::require_matching(act, p);
  const std::size_t states = act.states();
  const std::size_t dim = act.dimension();

  std::vector<std::vector<double>> axis(dim);
  for (const auto& set : act.sets()) {
    for (const auto& b : set) {
      for (std::size_t h = 0; h < dim; ++h) axis[h].push_back(b[h]);
    }
  }
  std::uint64_t grid = 1;
  std::vector<std::size_t> radix(dim);
  for (std::size_t h = 0; h < dim; ++h) {
    std::sort(axis[h].begin(), axis[h].end());
    axis[h].erase(std::unique(axis[h].begin(), axis[h].end()), axis[h].end());
    radix[h] = axis[h].size();
    grid = detail::saturating_mul(grid, radix[h]);
  }
  detail::require_within_cap(grid, grid_cap, "brute-force grid");

  std::vector<std::vector<std::vector<double>>> feasible(states);
  std::vector<std::size_t> digits(dim, 0);
  do {
    std::vector<double> g(dim);
    for (std::size_t h = 0; h < dim; ++h) g[h] = axis[h][digits[h]];
    for (std::size_t l = 0; l < states; ++l) {
      const auto members = act[l].beings();
      const bool inside = std::any_of(members.begin(), members.end(), [&](const Being& z) {
        return detail::weakly_above(z.coords(), g);
      });
      if (inside) feasible[l].push_back(g);
    }
  } while (detail::next_combination(digits, radix));

  detail::OnlineFrontier<char> frontier;
  std::vector<const std::vector<double>*> chosen(states, nullptr);
  std::vector<double> value(dim);

  auto comparable = [](const std::vector<double>& a, const std::vector<double>& b) {
    return detail::weakly_above(a, b) || detail::weakly_above(b, a);
  };
  auto descend = [&](auto&& self, std::size_t l) -> void {
    if (l == states) {
      std::fill(value.begin(), value.end(), 0.0);
      for (std::size_t s = 0; s < states; ++s) {
        for (std::size_t h = 0; h < dim; ++h) value[h] += p[s] * (*chosen[s])[h];
      }
      frontier.offer(value, [] { return char{}; });
      return;
    }
    for (const auto& cand : feasible[l]) {
      bool ok = true;
      for (std::size_t s = 0; s < l && ok; ++s) ok = comparable(cand, *chosen[s]);
      if (!ok) continue;
      chosen[l] = &cand;
      self(self, l + 1);
    }
  };
  descend(descend, 0);

  std::vector<Being> out;
  for (auto& entry : std::move(frontier).take_sorted()) out.emplace_back(std::move(entry.coords));
  return out;
}

}  // namespace capmix

#endif  // CAPMIX_MIXING_HPP
