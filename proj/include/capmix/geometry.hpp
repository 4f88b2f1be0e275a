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

#ifndef CAPMIX_GEOMETRY_HPP
#define CAPMIX_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "capmix/error.hpp"

namespace capmix {

// Absolute per-coordinate tolerance used by every comparison in the library.
inline constexpr double kTolerance = 1e-9;

/// One attainable welfare bundle: a point of the non-negative orthant.
class Being {
 public:
  explicit Being(std::vector<double> coords) : coords_(std::move(coords)) {
    for (std::size_t h = 0; h < coords_.size(); ++h) {
      if (!std::isfinite(coords_[h]) || coords_[h] < 0.0) {
        throw DomainError("coordinate " + std::to_string(h + 1) +
                          " must be finite and non-negative");
      }
    }
  }
  Being(std::initializer_list<double> coords) : Being(std::vector<double>(coords)) {}

  std::size_t dimension() const noexcept { return coords_.size(); }
  double operator[](std::size_t h) const { return coords_[h]; }
  std::span<const double> coords() const noexcept { return coords_; }
  auto begin() const noexcept { return coords_.begin(); }
  auto end() const noexcept { return coords_.end(); }

  // Exact equality; use approx_equal for tolerance-aware comparison.
  friend bool operator==(const Being&, const Being&) = default;

 private:
  std::vector<double> coords_;
};

namespace detail {

inline void require_same_dimension(std::size_t a, std::size_t b) {
  if (a != b) {
    throw DimensionError("dimension mismatch: " + std::to_string(a) + " vs " +
                         std::to_string(b));
  }
}

inline bool weakly_above(std::span<const double> a, std::span<const double> b,
                         double eps = kTolerance) noexcept {
  for (std::size_t h = 0; h < a.size(); ++h) {
    if (a[h] < b[h] - eps) return false;
  }
  return true;
}

inline bool strictly_above(std::span<const double> a, std::span<const double> b,
                           double eps = kTolerance) noexcept {
  bool better = false;
  for (std::size_t h = 0; h < a.size(); ++h) {
    if (a[h] < b[h] - eps) return false;
    if (a[h] > b[h] + eps) better = true;
  }
  return better;
}

inline bool near(std::span<const double> a, std::span<const double> b,
                 double eps = kTolerance) noexcept {
  for (std::size_t h = 0; h < a.size(); ++h) {
    if (std::abs(a[h] - b[h]) > eps) return false;
  }
  return true;
}

inline bool lex_less(std::span<const double> a, std::span<const double> b) noexcept {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Incrementally maintained epsilon Pareto frontier over raw coordinate rows.
// Points equal within tolerance keep the lexicographically smaller one; an
// exact repeat keeps the first inserted (and its payload).
template <class Payload>
class OnlineFrontier {
 public:
  struct Entry {
    std::vector<double> coords;
    Payload payload;
  };

  // `make_payload` is only invoked when the point is accepted.
  template <class MakePayload>
  bool offer(std::span<const double> p, MakePayload&& make_payload) {
    for (auto& e : entries_) {
      if (near(e.coords, p)) {
        if (lex_less(p, e.coords)) {
          e.coords.assign(p.begin(), p.end());
          e.payload = make_payload();
          return true;
        }
        return false;
      }
      if (strictly_above(e.coords, p)) return false;
    }
    std::erase_if(entries_, [&](const Entry& e) { return strictly_above(p, e.coords); });
    entries_.push_back(Entry{std::vector<double>(p.begin(), p.end()), make_payload()});
    return true;
  }

  // Entries sorted lexicographically by coordinates.
  std::vector<Entry> take_sorted() && {
    std::sort(entries_.begin(), entries_.end(),
              [](const Entry& a, const Entry& b) { return lex_less(a.coords, b.coords); });
    return std::move(entries_);
  }

  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::vector<Entry> entries_;
};

}  // namespace detail

inline bool approx_equal(const Being& a, const Being& b, double eps = kTolerance) {
  detail::require_same_dimension(a.dimension(), b.dimension());
  return detail::near(a.coords(), b.coords(), eps);
}

inline bool lex_less(const Being& a, const Being& b) noexcept {
  return detail::lex_less(a.coords(), b.coords());
}

/// True iff `a` is at least as good as `b` in every dimension (b <= a).
inline bool weak_dominates(const Being& a, const Being& b) {
  detail::require_same_dimension(a.dimension(), b.dimension());
  return detail::weakly_above(a.coords(), b.coords());
}

/// Weak dominance plus at least one coordinate better by more than kTolerance.
inline bool strictly_dominates(const Being& a, const Being& b) {
  detail::require_same_dimension(a.dimension(), b.dimension());
  return detail::strictly_above(a.coords(), b.coords());
}

inline Being meet(const Being& a, const Being& b) {
  detail::require_same_dimension(a.dimension(), b.dimension());
  std::vector<double> out(a.dimension());
  for (std::size_t h = 0; h < out.size(); ++h) out[h] = std::min(a[h], b[h]);
  return Being(std::move(out));
}

inline std::size_t common_dimension(std::span<const Being> points) {
  if (points.empty()) throw DomainError("empty point list");
  const std::size_t dim = points.front().dimension();
  for (const auto& p : points) detail::require_same_dimension(dim, p.dimension());
  return dim;
}

/// Indices of the Pareto-optimal points, ordered lexicographically by the
/// points they designate. Near-duplicates collapse onto the lexicographically
/// smallest representative (the earliest index on exact ties).
inline std::vector<std::size_t> pareto_indices(std::span<const Being> points) {
  common_dimension(points);
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return lex_less(points[a], points[b]);
  });

  std::vector<std::size_t> frontier;
  for (std::size_t idx : order) {
    const auto p = points[idx].coords();
    const bool covered = std::any_of(frontier.begin(), frontier.end(), [&](std::size_t f) {
      const auto q = points[f].coords();
      return detail::near(q, p) || detail::strictly_above(q, p);
    });
    if (covered) continue;
    std::erase_if(frontier, [&](std::size_t f) {
      return detail::strictly_above(p, points[f].coords());
    });
    frontier.push_back(idx);
  }
  return frontier;
}

inline std::vector<Being> pareto_frontier(std::span<const Being> points) {
  std::vector<Being> out;
  for (std::size_t idx : pareto_indices(points)) out.push_back(points[idx]);
  return out;
}

/// A finite, non-empty set of beings sharing one dimension. Members equal
/// within kTolerance are collapsed on construction (first occurrence kept).
class CapabilitySet {
 public:
  explicit CapabilitySet(std::vector<Being> beings, std::optional<std::string> label = std::nullopt)
      : label_(std::move(label)) {
    if (beings.empty()) throw DomainError("capability set must be non-empty");
    const std::size_t dim = common_dimension(beings);
    if (dim == 0) throw DimensionError("capability set beings must have dimension >= 1");
    for (auto& b : beings) {
      const bool dup = std::any_of(beings_.begin(), beings_.end(),
                                   [&](const Being& kept) { return approx_equal(kept, b); });
      if (!dup) beings_.push_back(std::move(b));
    }
  }
  CapabilitySet(std::initializer_list<Being> beings) : CapabilitySet(std::vector<Being>(beings)) {}

  std::size_t dimension() const noexcept { return beings_.front().dimension(); }
  std::size_t size() const noexcept { return beings_.size(); }
  const Being& operator[](std::size_t n) const { return beings_[n]; }
  std::span<const Being> beings() const noexcept { return beings_; }
  auto begin() const noexcept { return beings_.begin(); }
  auto end() const noexcept { return beings_.end(); }
  const std::optional<std::string>& label() const noexcept { return label_; }

  friend bool operator==(const CapabilitySet&, const CapabilitySet&) = default;

 private:
  std::vector<Being> beings_;
  std::optional<std::string> label_;
};

/// True iff some member of `points` weakly dominates `b`.
inline bool dominated_by_any(const Being& b, std::span<const Being> points) {
  return std::any_of(points.begin(), points.end(),
                     [&](const Being& q) { return weak_dominates(q, b); });
}

/// Membership of `b` in A - R^h_+.
inline bool in_dominated_region(const Being& b, const CapabilitySet& set) {
  detail::require_same_dimension(b.dimension(), set.dimension());
  return dominated_by_any(b, set.beings());
}

inline bool in_union_region(const Being& b, std::span<const CapabilitySet> sets) {
  if (sets.empty()) throw DomainError("empty list of capability sets");
  return std::any_of(sets.begin(), sets.end(),
                     [&](const CapabilitySet& s) { return in_dominated_region(b, s); });
}

inline bool in_intersection_region(const Being& b, std::span<const CapabilitySet> sets) {
  if (sets.empty()) throw DomainError("empty list of capability sets");
  return std::all_of(sets.begin(), sets.end(),
                     [&](const CapabilitySet& s) { return in_dominated_region(b, s); });
}

/// Maximal points of the intersection of the sets' dominated regions: the
/// Pareto frontier of all componentwise minima taking one member per set.
/// The meet is monotone, so the product is folded one set at a time with a
/// frontier reduction after each step.
inline std::vector<Being> intersection_corners(std::span<const CapabilitySet> sets) {
  if (sets.empty()) throw DomainError("empty list of capability sets");
  const std::size_t dim = sets.front().dimension();
  for (const auto& s : sets) detail::require_same_dimension(dim, s.dimension());

  std::vector<Being> corners = pareto_frontier(sets.front().beings());
  for (std::size_t l = 1; l < sets.size(); ++l) {
    std::vector<Being> next;
    next.reserve(corners.size() * sets[l].size());
    for (const auto& c : corners) {
      for (const auto& z : sets[l]) next.push_back(meet(c, z));
    }
    corners = pareto_frontier(next);
  }
  return corners;
}

enum class PreferenceVerdict { StrictlyPreferred, AtLeastAsGood, Equivalent, Incomparable };

enum class Preferred { First, Second, Neither };

struct SetComparison {
  PreferenceVerdict verdict;
  // Which operand the verdict favours; Neither for Equivalent/Incomparable.
  Preferred preferred;

  friend bool operator==(const SetComparison&, const SetComparison&) = default;
};

inline std::string_view to_string(PreferenceVerdict v) noexcept {
  switch (v) {
    case PreferenceVerdict::StrictlyPreferred: return "StrictlyPreferred";
    case PreferenceVerdict::AtLeastAsGood: return "AtLeastAsGood";
    case PreferenceVerdict::Equivalent: return "Equivalent";
    case PreferenceVerdict::Incomparable: return "Incomparable";
  }
  return "?";
}

inline std::string_view to_string(Preferred p) noexcept {
  switch (p) {
    case Preferred::First: return "first";
    case Preferred::Second: return "second";
    case Preferred::Neither: return "neither";
  }
  return "?";
}

namespace detail {

// "upper" is at least as good as "lower": every member of lower lies in upper - R^h_+.
inline bool covers(std::span<const Being> upper, std::span<const Being> lower) {
  return std::all_of(lower.begin(), lower.end(),
                     [&](const Being& b) { return dominated_by_any(b, upper); });
}

// Some member of upper is not weakly dominated by any member of lower.
inline bool escapes(std::span<const Being> upper, std::span<const Being> lower) {
  return std::any_of(upper.begin(), upper.end(),
                     [&](const Being& b) { return !dominated_by_any(b, lower); });
}

}  // namespace detail

/// Set preference for a known state of nature. The strongest applicable
/// relation is reported together with the operand it favours.
inline SetComparison compare_beings(std::span<const Being> first, std::span<const Being> second) {
  detail::require_same_dimension(common_dimension(first), common_dimension(second));
  const bool second_covers = detail::covers(second, first);
  const bool first_covers = detail::covers(first, second);
  if (second_covers && first_covers) return {PreferenceVerdict::Equivalent, Preferred::Neither};
  if (second_covers) {
    return {detail::escapes(second, first) ? PreferenceVerdict::StrictlyPreferred
                                           : PreferenceVerdict::AtLeastAsGood,
            Preferred::Second};
  }
  if (first_covers) {
    return {detail::escapes(first, second) ? PreferenceVerdict::StrictlyPreferred
                                           : PreferenceVerdict::AtLeastAsGood,
            Preferred::First};
  }
  return {PreferenceVerdict::Incomparable, Preferred::Neither};
}

inline SetComparison compare_sets(const CapabilitySet& first, const CapabilitySet& second) {
  return compare_beings(first.beings(), second.beings());
}

// True iff the comparison says `favoured` is at least as good as the other operand.
inline bool at_least_as_good(const SetComparison& c, Preferred favoured) noexcept {
  if (c.verdict == PreferenceVerdict::Equivalent) return true;
  return c.preferred == favoured && (c.verdict == PreferenceVerdict::StrictlyPreferred ||
                                     c.verdict == PreferenceVerdict::AtLeastAsGood);
}

}  // namespace capmix

#endif  // CAPMIX_GEOMETRY_HPP
