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

#ifndef CAPMIX_COMMANDS_HPP
#define CAPMIX_COMMANDS_HPP

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "capmix/error.hpp"
#include "capmix/milp_export.hpp"
#include "capmix/mixing.hpp"
#include "capmix/properties.hpp"
#include "capmix/scenario.hpp"
#include "capmix/svg_plot.hpp"

// Implementation of the `capmix` subcommands, independent of argument parsing.

namespace capmix::cli {

enum ExitCode : int { kOk = 0, kViolation = 1, kInputError = 2 };

inline constexpr std::string_view kCommands[] = {"average", "expected",    "pf",  "compare",
                                                 "check",   "export-milp", "plot"};

struct Options {
  std::string command;
  std::filesystem::path scenario;
  std::optional<std::string> act;
  std::vector<std::string> acts;
  std::optional<Mix> mix;
  std::optional<std::string> property;
  bool strict = false;
  std::optional<std::filesystem::path> out;
  std::optional<std::uint64_t> cap;
};

/// --cap wins over CAPMIX_CAP, which wins over the built-in default.
inline std::uint64_t resolve_cap(const Options& opts) {
  if (opts.cap) return *opts.cap;
  if (const char* env = std::getenv("CAPMIX_CAP"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) {
      throw DomainError(std::string("CAPMIX_CAP must be a positive integer, got '") + env + "'");
    }
    return v;
  }
  return kDefaultCap;
}

inline std::optional<Mix> parse_mix(std::string_view s) {
  if (s == "expected") return Mix::Expected;
  if (s == "average") return Mix::Average;
  return std::nullopt;
}

namespace detail {

inline std::vector<const Act*> selected_acts(const Scenario& s, const Options& opts) {
  std::vector<const Act*> out;
  if (opts.act) {
    out.push_back(&s.act(*opts.act));
  } else if (!opts.acts.empty()) {
    for (const auto& name : opts.acts) out.push_back(&s.act(name));
  } else {
    for (const auto& a : s.acts) out.push_back(&a);
  }
  return out;
}

inline const Act& single_act(const Scenario& s, const Options& opts) {
  if (opts.act) return s.act(*opts.act);
  if (s.acts.size() != 1) {
    throw DomainError("scenario has " + std::to_string(s.acts.size()) +
                      " acts; choose one with --act");
  }
  return s.acts.front();
}

inline Json points_json(const MixedSet& mix, const Scenario& s) {
  Json points = Json::array();
  for (const auto& mp : mix.points) {
    Json p;
    p["coords"] = being_json(mp.point);
    Json sel = Json::array();
    for (std::size_t n : mp.selection) sel.push_back(n + 1);
    p["selection"] = std::move(sel);
    if (mp.chain) {
      Json order = Json::array();
      for (std::size_t l : mp.chain->order) order.push_back(s.states[l]);
      p["order"] = std::move(order);
      Json anchors = Json::array(), adjusted = Json::array();
      for (const auto& z : mp.chain->anchors) anchors.push_back(being_json(z));
      for (const auto& b : mp.chain->adjusted) adjusted.push_back(being_json(b));
      p["anchors"] = std::move(anchors);
      p["adjusted"] = std::move(adjusted);
    }
    points.push_back(std::move(p));
  }
  return points;
}

inline Json report_json(const PropertyReport& r) {
  Json j;
  j["property"] = r.property_id;
  j["instance"] = r.instance;
  if (r.mix) j["mix"] = std::string(to_string(*r.mix));
  j["applicable"] = r.applicable;
  j["holds"] = r.holds;
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    violations.push_back(Json{{"point", being_json(v.point)}, {"reason", v.reason}});
  }
  j["violations"] = std::move(violations);
  j["details"] = r.details;
  return j;
}

inline std::vector<Mix> selected_mixes(const Options& opts) {
  if (opts.mix) return {*opts.mix};
  return {Mix::Expected, Mix::Average};
}

inline std::vector<PropertyReport> run_checks(const Scenario& s, const Options& opts,
                                              MixOptions mo) {
  const auto& p = s.probabilities;
  const auto acts = selected_acts(s, opts);
  const auto mixes = selected_mixes(opts);
  auto wanted = [&](std::string_view id) { return !opts.property || *opts.property == id; };
  if (opts.property &&
      std::find(std::begin(kAllProperties), std::end(kAllProperties), *opts.property) ==
          std::end(kAllProperties)) {
    throw DomainError("unknown property '" + *opts.property + "'");
  }

  std::vector<PropertyReport> reports;
  for (const Act* act : acts) {
    if (wanted(property_id::kConsistency)) {
      try {
        reports.push_back(check_consistency(*act, p, mo));
      } catch (const PreconditionError& e) {
        PropertyReport r{std::string(property_id::kConsistency), act->label(), std::nullopt};
        r.applicable = false;
        r.details.push_back(std::string("not applicable: ") + e.what());
        reports.push_back(std::move(r));
      }
    }
    for (Mix mix : mixes) {
      if (wanted(property_id::kSureDominationUpper)) {
        reports.push_back(check_sure_domination_upper(*act, p, mix, mo));
      }
      if (wanted(property_id::kSureDominationLower)) {
        auto r = check_sure_domination_lower(mix_of(*act, p, mix, mo), *act);
        r.mix = mix;
        reports.push_back(std::move(r));
      }
      if (wanted(property_id::kLinearity)) {
        const std::vector<double> ones(act->dimension(), 1.0), twos(act->dimension(), 2.0);
        reports.push_back(check_linearity(*act, p, ones, twos, mix, mo));
      }
      if (wanted(property_id::kMonotonicityProbs)) {
        if (s.probability_shift) {
          reports.push_back(check_monotonicity_probs(
              *act, p, s.state_index(s.probability_shift->from),
              s.state_index(s.probability_shift->to), s.probability_shift->mass, mix, mo));
        } else {
          for (std::size_t z = 0; z < p.size(); ++z) {
            for (std::size_t zp = 0; zp < p.size(); ++zp) {
              if (z == zp || !(p[z] > 0.0)) continue;
              reports.push_back(check_monotonicity_probs(*act, p, z, zp, p[z] / 2, mix, mo));
            }
          }
        }
      }
    }
    if (wanted(property_id::kExpectedBelowAverage)) {
      reports.push_back(check_expected_below_average(*act, p, mo));
    }
    if (wanted(property_id::kAxioms)) reports.push_back(run_axiom_illustrations(*act));
  }

  if (wanted(property_id::kMonotonicitySets)) {
    std::vector<std::pair<const Act*, const Act*>> pairs;
    if (opts.acts.size() == 2) {
      pairs.emplace_back(&s.act(opts.acts[0]), &s.act(opts.acts[1]));
    } else if (acts.size() == 1) {
      pairs.emplace_back(acts[0], acts[0]);
    } else {
      for (const Act* a : acts) {
        for (const Act* b : acts) {
          if (a != b) pairs.emplace_back(a, b);
        }
      }
    }
    for (Mix mix : mixes) {
      for (auto [lower, upper] : pairs) {
        reports.push_back(check_monotonicity_sets(*lower, *upper, p, mix, mo));
      }
    }
  }
  return reports;
}

inline void emit(const Options& opts, const std::string& text, std::ostream& out) {
  if (opts.out) {
    std::ofstream f(*opts.out, std::ios::binary);
    if (!f) throw DomainError("cannot write '" + opts.out->string() + "'");
    f << text;
  } else {
    out << text;
  }
}

}  // namespace detail

/// Runs one subcommand. Returns the process exit status.
inline int execute(const Options& opts, std::ostream& out, std::ostream& err) {
  try {
    const auto started = std::chrono::steady_clock::now();
    std::ifstream in(opts.scenario, std::ios::binary);
    if (!in) throw ParseError(opts.scenario.string(), "cannot open scenario file");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const Scenario s = parse_scenario(text);
    const MixOptions mo{resolve_cap(opts)};
    const auto& p = s.probabilities;

    if (opts.command == "export-milp") {
      detail::emit(opts, to_text(export_finite_model(detail::single_act(s, opts), p)), out);
      return kOk;
    }
    if (opts.command == "plot") {
      const Act& act = detail::single_act(s, opts);
      const Mix mix = opts.mix.value_or(Mix::Expected);
      const auto pts = mix_of(act, p, mix, mo).beings();
      PlotLabels labels{s.title.value_or(act.label()),
                        std::string(to_string(mix)) + " capability set", s.states, s.criteria};
      detail::emit(opts, render_svg(act, pts, labels), out);
      return kOk;
    }

    Json doc;
    doc["version"] = 1;
    doc["operation"] = opts.command;
    doc["input"] = Json{{"file", opts.scenario.filename().string()},
                        {"sha256", sha256_hex(text)}};
    if (s.title) doc["scenario"] = *s.title;
    int status = kOk;

    if (opts.command == "average" || opts.command == "expected" || opts.command == "pf") {
      Json results = Json::array();
      for (const Act* act : detail::selected_acts(s, opts)) {
        MixedSet mix = opts.command == "average"    ? average_set(*act, p, mo)
                       : opts.command == "expected" ? expected_set(*act, p, mo)
                                                    : average_pf(*act, p, mo);
        Json r;
        r["act"] = act->label();
        r["kind"] = std::string(to_string(mix.kind));
        r["count"] = mix.points.size();
        r["points"] = detail::points_json(mix, s);
        results.push_back(std::move(r));
      }
      doc["results"] = std::move(results);
    } else if (opts.command == "compare") {
      std::vector<const Act*> pair;
      if (!opts.acts.empty()) {
        for (const auto& name : opts.acts) pair.push_back(&s.act(name));
      } else {
        for (const auto& a : s.acts) pair.push_back(&a);
      }
      if (pair.size() != 2) {
        throw DomainError("compare needs exactly two acts (use --acts A,B)");
      }
      const Mix mix = opts.mix.value_or(Mix::Expected);
      const auto first = mix_of(*pair[0], p, mix, mo).beings();
      const auto second = mix_of(*pair[1], p, mix, mo).beings();
      const SetComparison c = compare_beings(first, second);
      doc["mix"] = std::string(to_string(mix));
      doc["acts"] = Json::array({pair[0]->label(), pair[1]->label()});
      doc["verdict"] = std::string(to_string(c.verdict));
      doc["preferred"] = c.preferred == Preferred::First    ? Json(pair[0]->label())
                         : c.preferred == Preferred::Second ? Json(pair[1]->label())
                                                            : Json(nullptr);
    } else if (opts.command == "check") {
      const auto reports = detail::run_checks(s, opts, mo);
      Json arr = Json::array();
      bool all_hold = true;
      for (const auto& r : reports) {
        all_hold = all_hold && r.holds;
        arr.push_back(detail::report_json(r));
      }
      doc["holds"] = all_hold;
      doc["reports"] = std::move(arr);
      if (opts.strict && !all_hold) status = kViolation;
    } else {
      throw DomainError("unknown command '" + opts.command + "'");
    }

    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
            .count();
    doc["timing_ms"] = round_significant(ms);
    detail::emit(opts, to_document_text(doc), out);
    return status;
  } catch (const Error& e) {
    err << "capmix: error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "capmix: error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace capmix::cli

#endif  // CAPMIX_COMMANDS_HPP
