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

#ifndef CAPMIX_PROPERTIES_HPP
#define CAPMIX_PROPERTIES_HPP

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "capmix/error.hpp"
#include "capmix/geometry.hpp"
#include "capmix/mixing.hpp"

// Executable checks of the axioms and properties the two mixing procedures
// are meant to satisfy (or, for the average mix, known to violate).

namespace capmix {

enum class Mix { Expected, Average };

inline std::string_view to_string(Mix m) noexcept {
  return m == Mix::Expected ? "expected" : "average";
}

struct Violation {
  Being point;
  std::string reason;
};

struct PropertyReport {
  PropertyReport(std::string id, std::string inst, std::optional<Mix> m)
      : property_id(std::move(id)), instance(std::move(inst)), mix(m) {}

  std::string property_id;
  std::string instance;
  std::optional<Mix> mix;
  bool applicable = true;
  bool holds = true;  // always equals violations.empty()
  std::vector<Violation> violations;
  std::vector<std::string> details;

  void violate(Being point, std::string reason) {
    violations.push_back(Violation{std::move(point), std::move(reason)});
    holds = false;
  }
};

namespace property_id {
inline constexpr std::string_view kConsistency = "consistency";
inline constexpr std::string_view kSureDominationUpper = "sure-domination-upper";
inline constexpr std::string_view kSureDominationLower = "sure-domination-lower";
inline constexpr std::string_view kLinearity = "linearity";
inline constexpr std::string_view kMonotonicitySets = "monotonicity-sets";
inline constexpr std::string_view kMonotonicityProbs = "monotonicity-probs";
inline constexpr std::string_view kExpectedBelowAverage = "expected-below-average";
inline constexpr std::string_view kAxioms = "axioms";
}  // namespace property_id

inline constexpr std::string_view kAllProperties[] = {
    property_id::kConsistency,         property_id::kSureDominationUpper,
    property_id::kSureDominationLower, property_id::kLinearity,
    property_id::kMonotonicitySets,    property_id::kMonotonicityProbs,
    property_id::kExpectedBelowAverage, property_id::kAxioms,
};

inline MixedSet mix_of(const Act& act, const ProbabilityVector& p, Mix mix, MixOptions opts = {}) {
  return mix == Mix::Expected ? expected_set(act, p, opts) : average_set(act, p, opts);
}

inline std::string format_point(const Being& b) {
  std::string out = "(";
  for (std::size_t h = 0; h < b.dimension(); ++h) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", b[h]);
    out += (h ? ", " : "") + std::string(buf);
  }
  return out + ")";
}

/// Every being of the act moved by `offset`, dimension by dimension.
inline Act shift_act(const Act& act, std::span<const double> offset) {
  detail::require_same_dimension(act.dimension(), offset.size());
  std::vector<CapabilitySet> sets;
  for (const auto& set : act.sets()) {
    std::vector<Being> moved;
    for (const auto& b : set) {
      std::vector<double> c(b.begin(), b.end());
      for (std::size_t h = 0; h < c.size(); ++h) c[h] += offset[h];
      moved.emplace_back(std::move(c));
    }
    sets.emplace_back(std::move(moved), set.label());
  }
  return Act(act.label(), std::move(sets));
}

/// Every being of the act multiplied by positive per-dimension factors.
inline Act scale_act(const Act& act, std::span<const double> factors) {
  detail::require_same_dimension(act.dimension(), factors.size());
  for (double f : factors) {
    if (!(f > 0.0)) throw PreconditionError("scale factors must be strictly positive");
  }
  std::vector<CapabilitySet> sets;
  for (const auto& set : act.sets()) {
    std::vector<Being> scaled;
    for (const auto& b : set) {
      std::vector<double> c(b.begin(), b.end());
      for (std::size_t h = 0; h < c.size(); ++h) c[h] *= factors[h];
      scaled.emplace_back(std::move(c));
    }
    sets.emplace_back(std::move(scaled), set.label());
  }
  return Act(act.label(), std::move(sets));
}

/// Consistency with expected utility: singleton one-dimensional sets mix to
/// the scalar expectation under both procedures.
inline PropertyReport check_consistency(const Act& act, const ProbabilityVector& p,
                                        MixOptions opts = {}) {
  if (act.dimension() != 1) throw PreconditionError("consistency check needs one dimension");
  for (const auto& set : act.sets()) {
    if (set.size() != 1) throw PreconditionError("consistency check needs singleton sets");
  }
  detail::require_matching(act, p);
  PropertyReport r{std::string(property_id::kConsistency), act.label(), std::nullopt};
  double expectation = 0.0;
  for (std::size_t l = 0; l < act.states(); ++l) expectation += p[l] * act[l][0][0];
  r.details.push_back("scalar expectation " + format_point(Being{expectation}));

  for (Mix mix : {Mix::Expected, Mix::Average}) {
    const auto pts = mix_of(act, p, mix, opts).beings();
    if (pts.size() != 1) {
      for (const auto& b : pts) {
        r.violate(b, std::string(to_string(mix)) + " mix has " + std::to_string(pts.size()) +
                         " points instead of one");
      }
      continue;
    }
    if (std::abs(pts[0][0] - expectation) > kTolerance) {
      r.violate(pts[0], std::string(to_string(mix)) + " mix differs from the scalar expectation");
    }
  }
  return r;
}

/// Mix points must lie in the union of the states' dominated regions.
inline PropertyReport check_sure_domination_upper(const Act& act, const ProbabilityVector& p,
                                                  Mix mix, MixOptions opts = {}) {
  PropertyReport r{std::string(property_id::kSureDominationUpper), act.label(), mix};
  for (const auto& b : mix_of(act, p, mix, opts).beings()) {
    if (!in_union_region(b, act.sets())) {
      r.violate(b, "not weakly dominated by any being of any state");
    }
  }
  return r;
}

/// Every maximal point of the intersection region must be dominated by the mix.
inline PropertyReport check_sure_domination_lower(std::span<const Being> mix_points,
                                                  const Act& act) {
  PropertyReport r{std::string(property_id::kSureDominationLower), act.label(), std::nullopt};
  for (const auto& corner : intersection_corners(act.sets())) {
    bool witnessed = false;
    for (const auto& b : mix_points) {
      if (weak_dominates(b, corner)) {
        r.details.push_back("corner " + format_point(corner) + " witnessed by " + format_point(b));
        witnessed = true;
        break;
      }
    }
    if (!witnessed) r.violate(corner, "intersection corner not dominated by the mix");
  }
  return r;
}

inline PropertyReport check_sure_domination_lower(const MixedSet& mix, const Act& act) {
  const auto pts = mix.beings();
  PropertyReport r = check_sure_domination_lower(pts, act);
  r.mix = mix.kind == MixKind::Expected ? Mix::Expected : Mix::Average;
  return r;
}

namespace detail {

// Reports points of `lhs` missing from `rhs` and vice versa.
inline void compare_point_sets(PropertyReport& r, std::span<const Being> lhs,
                               std::span<const Being> rhs, const std::string& what) {
  auto contains = [](std::span<const Being> pts, const Being& b) {
    return std::any_of(pts.begin(), pts.end(), [&](const Being& q) { return approx_equal(q, b); });
  };
  for (const auto& b : lhs) {
    if (!contains(rhs, b)) r.violate(b, what + ": present in the mix of the transformed act only");
  }
  for (const auto& b : rhs) {
    if (!contains(lhs, b)) r.violate(b, what + ": present in the transformed mix only");
  }
}

}  // namespace detail

/// Mixing commutes with a shift and with a positive per-dimension scaling.
inline PropertyReport check_linearity(const Act& act, const ProbabilityVector& p,
                                      std::span<const double> shift, std::span<const double> scale,
                                      Mix mix, MixOptions opts = {}) {
  detail::require_same_dimension(act.dimension(), shift.size());
  detail::require_same_dimension(act.dimension(), scale.size());
  for (double f : scale) {
    if (!(f > 0.0)) throw PreconditionError("scale factors must be strictly positive");
  }
  PropertyReport r{std::string(property_id::kLinearity), act.label(), mix};
  const auto base = mix_of(act, p, mix, opts).beings();

  std::vector<Being> shifted_base, scaled_base;
  for (const auto& b : base) {
    std::vector<double> s(b.begin(), b.end()), m(b.begin(), b.end());
    for (std::size_t h = 0; h < s.size(); ++h) {
      s[h] += shift[h];
      m[h] *= scale[h];
    }
    shifted_base.emplace_back(std::move(s));
    scaled_base.emplace_back(std::move(m));
  }
  detail::compare_point_sets(r, mix_of(shift_act(act, shift), p, mix, opts).beings(),
                             shifted_base, "addition");
  detail::compare_point_sets(r, mix_of(scale_act(act, scale), p, mix, opts).beings(),
                             scaled_base, "multiplication");
  return r;
}

/// True iff every set of `lower` lies in the dominated region of the
/// matching set of `upper`.
inline bool act_dominated_by(const Act& lower, const Act& upper) {
  if (lower.states() != upper.states()) {
    throw DimensionError("acts have different numbers of states");
  }
  for (std::size_t l = 0; l < lower.states(); ++l) {
    if (!detail::covers(upper[l].beings(), lower[l].beings())) return false;
  }
  return true;
}

/// If A_l lies below B_l in every state, the A-mix lies below the B-mix.
inline PropertyReport check_monotonicity_sets(const Act& lower, const Act& upper,
                                              const ProbabilityVector& p, Mix mix,
                                              MixOptions opts = {}) {
  PropertyReport r{std::string(property_id::kMonotonicitySets),
                   lower.label() + " vs " + upper.label(), mix};
  if (!act_dominated_by(lower, upper)) {
    r.applicable = false;
    r.details.push_back("not applicable: some state of " + lower.label() +
                        " is not dominated by " + upper.label());
    return r;
  }
  const auto upper_pts = mix_of(upper, p, mix, opts).beings();
  for (const auto& b : mix_of(lower, p, mix, opts).beings()) {
    if (!dominated_by_any(b, upper_pts)) {
      r.violate(b, "not dominated by the mix of " + upper.label());
    }
  }
  return r;
}

/// Probability vector with `mass` moved from state `from` to state `to`.
inline ProbabilityVector shift_probability(const ProbabilityVector& p, std::size_t from,
                                           std::size_t to, double mass) {
  if (from >= p.size() || to >= p.size()) throw PreconditionError("state index out of range");
  if (from == to) throw PreconditionError("probability shift needs two distinct states");
  if (!(mass > 0.0) || mass > p[from] + kTolerance) {
    throw PreconditionError("shifted mass must lie in (0, p(from)]");
  }
  std::vector<double> q(p.values().begin(), p.values().end());
  q[from] = std::max(0.0, q[from] - mass);
  q[to] += mass;
  return ProbabilityVector(std::move(q));
}

/// Moving mass towards a state whose set dominates another's must not
/// shrink the mix.
inline PropertyReport check_monotonicity_probs(const Act& act, const ProbabilityVector& p,
                                               std::size_t from, std::size_t to, double mass,
                                               Mix mix, MixOptions opts = {}) {
  detail::require_matching(act, p);
  const ProbabilityVector shifted = shift_probability(p, from, to, mass);
  PropertyReport r{std::string(property_id::kMonotonicityProbs), act.label(), mix};
  r.details.push_back("mass " + format_point(Being{mass}) + " moved from state " +
                      std::to_string(from + 1) + " to state " + std::to_string(to + 1));
  if (!detail::covers(act[to].beings(), act[from].beings())) {
    r.applicable = false;
    r.details.push_back("not applicable: state " + std::to_string(from + 1) +
                        " is not dominated by state " + std::to_string(to + 1));
    return r;
  }
  const auto after = mix_of(act, shifted, mix, opts).beings();
  for (const auto& b : mix_of(act, p, mix, opts).beings()) {
    if (!dominated_by_any(b, after)) {
      r.violate(b, "not dominated by the mix after the probability shift");
    }
  }
  return r;
}

/// The expected set lies below the average set.
inline PropertyReport check_expected_below_average(const Act& act, const ProbabilityVector& p,
                                                   MixOptions opts = {}) {
  PropertyReport r{std::string(property_id::kExpectedBelowAverage), act.label(), Mix::Expected};
  const auto average = average_set(act, p, opts).beings();
  for (const auto& b : expected_set(act, p, opts).beings()) {
    auto it = std::find_if(average.begin(), average.end(),
                           [&](const Being& a) { return weak_dominates(a, b); });
    if (it == average.end()) {
      r.violate(b, "not dominated by any average point");
    } else {
      r.details.push_back(format_point(b) + " dominated by " + format_point(*it));
    }
  }
  return r;
}

/// Greater choice: the union of two states' sets is at least as good as each.
/// Fewer choice: each set is at least as good as the corners of the
/// intersection of the two dominated regions.
inline PropertyReport run_axiom_illustrations(const Act& act) {
  PropertyReport r{std::string(property_id::kAxioms), act.label(), std::nullopt};
  auto name = [](std::size_t l) { return "A" + std::to_string(l + 1); };
  for (std::size_t l = 0; l < act.states(); ++l) {
    for (std::size_t lp = l + 1; lp < act.states(); ++lp) {
      std::vector<Being> joined(act[l].begin(), act[l].end());
      joined.insert(joined.end(), act[lp].begin(), act[lp].end());
      const CapabilitySet union_set(std::move(joined));
      for (std::size_t s : {l, lp}) {
        const SetComparison c = compare_sets(act[s], union_set);
        r.details.push_back(name(l) + " u " + name(lp) + " over " + name(s) + ": " +
                            std::string(to_string(c.verdict)));
        if (!at_least_as_good(c, Preferred::Second)) {
          r.violate(act[s][0], "greater choice: union not at least as good as " + name(s));
        }
      }
      const std::vector<CapabilitySet> pair{act[l], act[lp]};
      const auto corners = intersection_corners(pair);
      for (std::size_t s : {l, lp}) {
        const SetComparison c = compare_beings(corners, act[s].beings());
        r.details.push_back(name(s) + " over corners of " + name(l) + " n " + name(lp) + ": " +
                            std::string(to_string(c.verdict)));
        if (!at_least_as_good(c, Preferred::Second)) {
          r.violate(corners.front(), "fewer choice: " + name(s) + " not at least as good");
        }
      }
    }
  }
  return r;
}

}  // namespace capmix

#endif  // CAPMIX_PROPERTIES_HPP
