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

#ifndef CAPMIX_SVG_PLOT_HPP
#define CAPMIX_SVG_PLOT_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "capmix/error.hpp"
#include "capmix/geometry.hpp"
#include "capmix/mixing.hpp"

namespace capmix {

struct Vertex {
  double x;
  double y;

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Outline of the dominated region of a 2-D point set, clipped to the first
/// quadrant: starts on the y axis, alternates horizontal and vertical steps
/// through the frontier points, ends on the x axis.
inline std::vector<Vertex> staircase(std::span<const Being> points) {
  if (common_dimension(points) != 2) throw DimensionError("staircase needs 2-D points");
  const std::vector<Being> front = pareto_frontier(points);  // x ascending, y descending
  std::vector<Vertex> out;
  out.push_back({0.0, front.front()[1]});
  for (std::size_t i = 0; i < front.size(); ++i) {
    out.push_back({front[i][0], front[i][1]});
    const double next_y = i + 1 < front.size() ? front[i + 1][1] : 0.0;
    out.push_back({front[i][0], next_y});
  }
  // Drop the corner repeated when a point already sits on an axis.
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct PlotLabels {
  std::string title;
  std::string mix_label = "mix";
  std::vector<std::string> state_labels;
  std::vector<std::string> criteria;
};

namespace detail {

inline std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

inline std::string px(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

inline std::string escape_xml(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Unit steps while they stay readable, otherwise 1/2/5 x 10^k.
inline double grid_step(double extent) {
  if (extent <= 25.0) return 1.0;
  const double raw = extent / 20.0;
  const double base = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * base >= raw) return m * base;
  }
  return 10.0 * base;
}

}  // namespace detail

/// SVG figure of a 2-D act and one mix: state beings, the union and
/// intersection staircases of the states' dominated regions, the mix's
/// dominated region and one marker per mix point. Axes extend 10% past the
/// largest coordinate.
inline std::string render_svg(const Act& act, std::span<const Being> mix,
                              const PlotLabels& labels = {}) {
  if (act.dimension() != 2) {
    throw DimensionError("plots need dimension 2, scenario has " +
                         std::to_string(act.dimension()));
  }
  constexpr double kWidth = 720, kHeight = 520;
  constexpr double kLeft = 60, kRight = 220, kTop = 40, kBottom = 50;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  double max_x = 0.0, max_y = 0.0;
  auto grow = [&](const Being& b) {
    max_x = std::max(max_x, b[0]);
    max_y = std::max(max_y, b[1]);
  };
  for (const auto& set : act.sets()) std::for_each(set.begin(), set.end(), grow);
  std::for_each(mix.begin(), mix.end(), grow);
  const double x_end = max_x > 0.0 ? 1.1 * max_x : 1.0;
  const double y_end = max_y > 0.0 ? 1.1 * max_y : 1.0;

  auto sx = [&](double x) { return kLeft + x / x_end * plot_w; };
  auto sy = [&](double y) { return kTop + plot_h - y / y_end * plot_h; };
  auto screen = [&](const std::vector<Vertex>& vs) {
    std::string out;
    for (const auto& v : vs) {
      out += (out.empty() ? "" : " ") + detail::px(sx(v.x)) + "," + detail::px(sy(v.y));
    }
    return out;
  };
  auto data = [](const std::vector<Vertex>& vs) {
    std::string out;
    for (const auto& v : vs) {
      out += (out.empty() ? "" : " ") + detail::num(v.x) + "," + detail::num(v.y);
    }
    return out;
  };
  auto state_name = [&](std::size_t l) {
    return l < labels.state_labels.size() ? labels.state_labels[l] : "s" + std::to_string(l + 1);
  };

  std::vector<Being> all;
  for (const auto& set : act.sets()) all.insert(all.end(), set.begin(), set.end());
  const auto union_outline = staircase(all);
  const auto corners = intersection_corners(act.sets());
  const auto inter_outline = staircase(corners);

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
     << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<title>" << detail::escape_xml(labels.title) << "</title>\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" fill=\"white\"/>\n";

  os << "<g class=\"grid\" stroke=\"#e4e4e4\" stroke-width=\"1\">\n";
  const double xs = detail::grid_step(x_end), ys = detail::grid_step(y_end);
  for (double x = xs; x <= x_end + 1e-12; x += xs) {
    os << "<line x1=\"" << detail::px(sx(x)) << "\" y1=\"" << detail::px(sy(0)) << "\" x2=\""
       << detail::px(sx(x)) << "\" y2=\"" << detail::px(sy(y_end)) << "\"/>\n";
  }
  for (double y = ys; y <= y_end + 1e-12; y += ys) {
    os << "<line x1=\"" << detail::px(sx(0)) << "\" y1=\"" << detail::px(sy(y)) << "\" x2=\""
       << detail::px(sx(x_end)) << "\" y2=\"" << detail::px(sy(y)) << "\"/>\n";
  }
  os << "</g>\n";

  auto region = [&](const std::vector<Vertex>& outline) {
    std::vector<Vertex> closed = outline;
    closed.push_back({0.0, 0.0});
    return screen(closed);
  };
  os << "<polygon class=\"region\" data-region=\"union\" fill=\"#d9d9d9\" points=\""
     << region(union_outline) << "\"/>\n";
  os << "<polygon class=\"region\" data-region=\"intersection\" fill=\"#a6a6a6\" points=\""
     << region(inter_outline) << "\"/>\n";
  if (!mix.empty()) {
    os << "<polygon class=\"mix-region\" fill=\"#4f81bd\" fill-opacity=\"0.25\" points=\""
       << region(staircase(mix)) << "\"/>\n";
  }
  os << "<polyline class=\"staircase\" data-region=\"union\" data-vertices=\""
     << data(union_outline)
     << "\" fill=\"none\" stroke=\"#555555\" stroke-dasharray=\"6,3\" points=\""
     << screen(union_outline) << "\"/>\n";
  os << "<polyline class=\"staircase\" data-region=\"intersection\" data-vertices=\""
     << data(inter_outline)
     << "\" fill=\"none\" stroke=\"#222222\" stroke-dasharray=\"2,2\" points=\""
     << screen(inter_outline) << "\"/>\n";

  os << "<g class=\"axes\" stroke=\"black\">\n";
  os << "<line x1=\"" << detail::px(sx(0)) << "\" y1=\"" << detail::px(sy(0)) << "\" x2=\""
     << detail::px(sx(x_end)) << "\" y2=\"" << detail::px(sy(0)) << "\"/>\n";
  os << "<line x1=\"" << detail::px(sx(0)) << "\" y1=\"" << detail::px(sy(0)) << "\" x2=\""
     << detail::px(sx(0)) << "\" y2=\"" << detail::px(sy(y_end)) << "\"/>\n";
  os << "</g>\n<g class=\"ticks\" text-anchor=\"middle\">\n";
  for (double x = 0; x <= x_end + 1e-12; x += xs) {
    os << "<text x=\"" << detail::px(sx(x)) << "\" y=\"" << detail::px(sy(0) + 16) << "\">"
       << detail::num(x) << "</text>\n";
  }
  for (double y = ys; y <= y_end + 1e-12; y += ys) {
    os << "<text x=\"" << detail::px(sx(0) - 14) << "\" y=\"" << detail::px(sy(y) + 4) << "\">"
       << detail::num(y) << "</text>\n";
  }
  os << "</g>\n";
  const std::string x_label = labels.criteria.size() == 2 ? labels.criteria[0] : "Criterion 1";
  const std::string y_label = labels.criteria.size() == 2 ? labels.criteria[1] : "Criterion 2";
  os << "<text x=\"" << detail::px(kLeft + plot_w / 2) << "\" y=\"" << detail::px(kHeight - 10)
     << "\" text-anchor=\"middle\">" << detail::escape_xml(x_label) << "</text>\n";
  const std::string mid_y = detail::px(kTop + plot_h / 2);
  os << "<text x=\"16\" y=\"" << mid_y << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << mid_y << ")\">" << detail::escape_xml(y_label) << "</text>\n";

  static constexpr std::string_view kStateColours[] = {"#000000", "#7f3f00", "#00607f",
                                                       "#5f007f"};
  for (std::size_t l = 0; l < act.states(); ++l) {
    const std::string_view colour = kStateColours[l % std::size(kStateColours)];
    for (const auto& b : act[l]) {
      const double cx = sx(b[0]), cy = sy(b[1]);
      std::string shape;
      if (l % 2 == 0) {  // triangle
        shape = "M" + detail::px(cx) + "," + detail::px(cy - 6) + " L" + detail::px(cx + 5.5) +
                "," + detail::px(cy + 4) + " L" + detail::px(cx - 5.5) + "," +
                detail::px(cy + 4) + " Z";
      } else {  // square
        shape = "M" + detail::px(cx - 4.5) + "," + detail::px(cy - 4.5) + " h9 v9 h-9 Z";
      }
      os << "<path class=\"state-point\" data-state=\"" << detail::escape_xml(state_name(l))
         << "\" data-coords=\"" << detail::num(b[0]) << "," << detail::num(b[1]) << "\" fill=\""
         << colour << "\" d=\"" << shape << "\"/>\n";
    }
  }
  for (const auto& b : mix) {
    os << "<circle class=\"mix-point\" data-coords=\"" << detail::num(b[0]) << ","
       << detail::num(b[1]) << "\" cx=\"" << detail::px(sx(b[0])) << "\" cy=\""
       << detail::px(sy(b[1]))
       << "\" r=\"4\" fill=\"#4f81bd\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
  }

  const double lx = kWidth - kRight + 20;
  double ly = kTop + 10;
  os << "<g class=\"legend\">\n";
  for (std::size_t l = 0; l < act.states(); ++l, ly += 20) {
    os << "<text x=\"" << detail::px(lx) << "\" y=\"" << detail::px(ly) << "\">"
       << (l % 2 == 0 ? "▲ " : "■ ") << detail::escape_xml(state_name(l)) << "</text>\n";
  }
  os << "<text x=\"" << detail::px(lx) << "\" y=\"" << detail::px(ly) << "\">● "
     << detail::escape_xml(labels.mix_label) << "</text>\n";
  ly += 30;
  auto swatch = [&](const char* fill, const char* opacity, const char* text) {
    os << "<rect x=\"" << detail::px(lx) << "\" y=\"" << detail::px(ly - 10)
       << "\" width=\"12\" height=\"12\" fill=\"" << fill << "\" fill-opacity=\"" << opacity
       << "\"/>\n";
    os << "<text x=\"" << detail::px(lx + 18) << "\" y=\"" << detail::px(ly) << "\">" << text
       << "</text>\n";
    ly += 20;
  };
  swatch("#d9d9d9", "1", "union region");
  swatch("#a6a6a6", "1", "intersection region");
  if (!mix.empty()) swatch("#4f81bd", "0.25", "mix region");
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace capmix

#endif  // CAPMIX_SVG_PLOT_HPP
