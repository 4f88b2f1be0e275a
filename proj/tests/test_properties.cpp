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

#include <vector>

#include <gtest/gtest.h>

#include "capmix/properties.hpp"
#include "support/instances.hpp"
#include "support/oracles.hpp"

namespace capmix {
namespace {

Act example2() {
  return Act("f", {CapabilitySet{{2, 7}, {3, 4}}, CapabilitySet{{4, 3}, {7, 2}}});
}

Act counterexample() { return Act("f", {CapabilitySet{{0, 1}}, CapabilitySet{{0, 1}, {1, 0}}}); }

const std::vector<double> kOnes3{1, 1, 1}, kTwos3{2, 2, 2};

std::span<const double> ones(std::size_t dim) { return std::span(kOnes3).first(dim); }
std::span<const double> twos(std::size_t dim) { return std::span(kTwos3).first(dim); }

TEST(ConsistencyTest, ScalarActsGiveTheExpectation) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto inst = testing::random_scalar_instance(seed);
    const auto r = check_consistency(inst.act, inst.p);
    EXPECT_TRUE(r.holds) << "seed " << seed;
  }
}

TEST(ConsistencyTest, PreconditionsAreChecked) {
  EXPECT_THROW(check_consistency(example2(), {0.5, 0.5}), PreconditionError);
  const Act wide("w", {CapabilitySet{Being{1}, Being{2}}});
  EXPECT_THROW(check_consistency(wide, {1.0}), PreconditionError);
}

TEST(SureDominationTest, AverageEscapesUnionOnTwoStateExample) {
  const auto r = check_sure_domination_upper(example2(), {0.5, 0.5}, Mix::Average);
  EXPECT_FALSE(r.holds);
  bool found = false;
  for (const auto& v : r.violations) found = found || approx_equal(v.point, Being{4.5, 4.5});
  EXPECT_TRUE(found);
  EXPECT_TRUE(check_sure_domination_upper(example2(), {0.5, 0.5}, Mix::Expected).holds);
}

TEST(SureDominationTest, LandGrantAverageEscapesUnion) {
  std::vector<Being> valley, terrace;
  for (int x = 0; x <= 10; ++x) {
    valley.push_back(Being{double(x), 0});
    terrace.push_back(Being{0, double(x)});
  }
  const Act act("grant", {CapabilitySet(valley), CapabilitySet(terrace)});
  const auto r = check_sure_domination_upper(act, {0.5, 0.5}, Mix::Average);
  EXPECT_FALSE(r.holds);
  bool found = false;
  for (const auto& v : r.violations) found = found || approx_equal(v.point, Being{5, 5});
  EXPECT_TRUE(found);
  EXPECT_EQ(expected_set(act, {0.5, 0.5}).beings(), (std::vector<Being>{{0, 5}, {5, 0}}));
  EXPECT_TRUE(check_sure_domination_upper(act, {0.5, 0.5}, Mix::Expected).holds);
}

TEST(MonotonicityProbsTest, AverageShrinksOnCounterexample) {
  const Act act = counterexample();
  const ProbabilityVector p{0.5, 0.5};
  EXPECT_EQ(average_set(act, p).beings(), (std::vector<Being>{{0, 1}, {0.5, 0.5}}));
  EXPECT_EQ(average_set(act, shift_probability(p, 0, 1, 0.25)).beings(),
            (std::vector<Being>{{0, 1}, {0.75, 0.25}}));
  const auto avg = check_monotonicity_probs(act, p, 0, 1, 0.25, Mix::Average);
  EXPECT_TRUE(avg.applicable);
  EXPECT_FALSE(avg.holds);
  ASSERT_EQ(avg.violations.size(), 1u);
  EXPECT_TRUE(approx_equal(avg.violations[0].point, Being{0.5, 0.5}));
  EXPECT_TRUE(check_monotonicity_probs(act, p, 0, 1, 0.25, Mix::Expected).holds);
}

TEST(MonotonicityProbsTest, NotApplicableWithoutDomination) {
  const auto r = check_monotonicity_probs(example2(), {0.5, 0.5}, 0, 1, 0.25, Mix::Expected);
  EXPECT_FALSE(r.applicable);
  EXPECT_TRUE(r.holds);
  EXPECT_THROW(check_monotonicity_probs(example2(), {0.5, 0.5}, 0, 1, 0.75, Mix::Expected),
               PreconditionError);
}

TEST(PropertySuiteTest, ExpectedMixSatisfiesEveryProperty) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto inst = testing::random_instance(seed);
    const std::size_t dim = inst.act.dimension();
    EXPECT_TRUE(check_sure_domination_upper(inst.act, inst.p, Mix::Expected).holds) << seed;
    EXPECT_TRUE(
        check_sure_domination_lower(expected_set(inst.act, inst.p), inst.act).holds)
        << seed;
    EXPECT_TRUE(
        check_linearity(inst.act, inst.p, ones(dim), twos(dim), Mix::Expected).holds)
        << seed;
    EXPECT_TRUE(check_expected_below_average(inst.act, inst.p).holds) << seed;
    EXPECT_TRUE(run_axiom_illustrations(inst.act).holds) << seed;
  }
}

TEST(PropertySuiteTest, AverageMixKeepsLowerBoundAndLinearity) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto inst = testing::random_instance(seed);
    const std::size_t dim = inst.act.dimension();
    EXPECT_TRUE(check_sure_domination_lower(average_set(inst.act, inst.p), inst.act).holds)
        << seed;
    EXPECT_TRUE(
        check_linearity(inst.act, inst.p, ones(dim), twos(dim), Mix::Average).holds)
        << seed;
  }
}

TEST(PropertySuiteTest, MonotonicityInSetsForBothMixes) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto [inst, upper] = testing::random_dominated_pair(seed);
    for (Mix mix : {Mix::Expected, Mix::Average}) {
      const auto r = check_monotonicity_sets(inst.act, upper, inst.p, mix);
      EXPECT_TRUE(r.applicable) << seed;
      EXPECT_TRUE(r.holds) << seed;
    }
  }
}

TEST(PropertySuiteTest, MonotonicityInProbabilitiesForExpectedMix) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto s = testing::random_shift_instance(seed);
    const auto r = check_monotonicity_probs(s.base.act, s.base.p, s.from, s.to, s.mass,
                                            Mix::Expected);
    EXPECT_TRUE(r.applicable) << seed;
    EXPECT_TRUE(r.holds) << seed;
  }
}

TEST(PropertySuiteTest, ExpectedPointsAreMixturesOfAveragePoints) {
  // Oracle route: every expected point is dominated by some naive average point.
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto inst = testing::random_instance(seed);
    const auto avg = testing::naive_average(inst.act, inst.p);
    for (const auto& b : expected_set(inst.act, inst.p).beings()) {
      const auto pb = testing::coords(b);
      bool dominated = false;
      for (const auto& a : avg) dominated = dominated || testing::geq(a, pb);
      EXPECT_TRUE(dominated) << "seed " << seed;
    }
  }
}

TEST(AxiomTest, GreaterAndFewerChoiceOnWorkedExample) {
  const auto r = run_axiom_illustrations(example2());
  EXPECT_TRUE(r.holds);
  EXPECT_FALSE(r.details.empty());
}

TEST(TransformTest, ShiftAndScaleActs) {
  const auto shifted = shift_act(example2(), std::vector{1.0, 1.0});
  EXPECT_EQ(shifted[0][0], (Being{3, 8}));
  const auto scaled = scale_act(example2(), std::vector{2.0, 0.5});
  EXPECT_EQ(scaled[1][1], (Being{14, 1}));
  EXPECT_THROW(scale_act(example2(), std::vector{0.0, 1.0}), PreconditionError);
}

}  // namespace
}  // namespace capmix
