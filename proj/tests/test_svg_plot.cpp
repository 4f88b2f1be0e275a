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

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "capmix/svg_plot.hpp"

namespace capmix {
namespace {

const std::filesystem::path kGolden = std::filesystem::path(CAPMIX_DATA_DIR) / "golden";

struct SvgSummary {
  std::size_t mix_points = 0;
  std::size_t state_points = 0;
  std::vector<std::pair<std::string, std::string>> staircases;  // region, vertices
};

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) {
    ++n;
  }
  return n;
}

SvgSummary summarize(const std::string& svg) {
  SvgSummary s;
  s.mix_points = count(svg, "class=\"mix-point\"");
  s.state_points = count(svg, "class=\"state-point\"");
  const std::regex stair(
      R"re(<polyline class="staircase" data-region="([a-z]+)" data-vertices="([^"]*)")re");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), stair); it != std::sregex_iterator();
       ++it) {
    s.staircases.emplace_back((*it)[1], (*it)[2]);
  }
  return s;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Act example2() {
  return Act("f", {CapabilitySet{{2, 7}, {3, 4}}, CapabilitySet{{4, 3}, {7, 2}}});
}

TEST(StaircaseTest, OutlineOfDominatedRegion) {
  const std::vector<Being> pts{{3, 4}, {2, 7}, {7, 2}, {4, 3}, {1, 1}};
  const auto v = staircase(pts);
  const std::vector<Vertex> want{{0, 7}, {2, 7}, {2, 4}, {3, 4}, {3, 3},
                                 {4, 3}, {4, 2}, {7, 2}, {7, 0}};
  EXPECT_EQ(v, want);
}

TEST(StaircaseTest, PointsOnTheAxes) {
  const std::vector<Being> pts{{0, 5}, {5, 0}};
  EXPECT_EQ(staircase(pts), (std::vector<Vertex>{{0, 5}, {0, 0}, {5, 0}}));
}

TEST(SvgTest, ExpectedMixOnTwoStateExample) {
  const Act act = example2();
  const auto mix = expected_set(act, {0.5, 0.5}).beings();
  const auto s = summarize(render_svg(act, mix, {"two states", "expected", {"s1", "s2"}, {}}));
  EXPECT_EQ(s.mix_points, 4u);
  EXPECT_EQ(s.state_points, 4u);
  ASSERT_EQ(s.staircases.size(), 2u);
  EXPECT_EQ(s.staircases[0].first, "union");
  EXPECT_EQ(s.staircases[0].second, "0,7 2,7 2,4 3,4 3,3 4,3 4,2 7,2 7,0");
  EXPECT_EQ(s.staircases[1].first, "intersection");
  EXPECT_EQ(s.staircases[1].second, "0,3 3,3 3,0");
}

TEST(SvgTest, MatchesGoldenStructure) {
  const Act act = example2();
  const auto mix = expected_set(act, {0.5, 0.5}).beings();
  const auto rendered = summarize(render_svg(act, mix, {"two states", "expected", {}, {}}));
  const auto golden = summarize(slurp(kGolden / "example2_expected.svg"));
  EXPECT_EQ(rendered.mix_points, golden.mix_points);
  EXPECT_EQ(rendered.state_points, golden.state_points);
  EXPECT_EQ(rendered.staircases, golden.staircases);
}

TEST(SvgTest, EscapesLabelsAndRejectsOtherDimensions) {
  const Act act = example2();
  const auto svg = render_svg(act, {}, {"a < b & c", "mix", {}, {}});
  EXPECT_NE(svg.find("a &lt; b &amp; c"), std::string::npos);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  const Act flat("f", {CapabilitySet{Being{1}}});
  EXPECT_THROW(render_svg(flat, {}, {}), DimensionError);
}

}  // namespace
}  // namespace capmix
