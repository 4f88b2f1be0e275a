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

#ifndef CAPMIX_SCENARIO_HPP
#define CAPMIX_SCENARIO_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "capmix/error.hpp"
#include "capmix/geometry.hpp"
#include "capmix/mixing.hpp"

// Scenario files are JSON documents:
//
//   {
//     "version": 1,
//     "metadata": {"title": "...", "source": "...", "notes": "..."},   optional
//     "dimension": 2,
//     "criteria": ["apples", "carrots"],                                optional
//     "states": ["s1", "s2"],
//     "probabilities": [0.5, 0.5],
//     "acts": [{"name": "f", "sets": [[[2, 7], [3, 4]], [[4, 3], [7, 2]]]}],
//     "probability_shift": {"from": "s1", "to": "s2", "mass": 0.25}    optional
//   }
//
// "sets" holds one array of beings per state, in state order. The optional
// probability shift parameterizes the monotonicity-over-probabilities check.

namespace capmix {

using Json = nlohmann::ordered_json;

struct ProbabilityShift {
  std::string from;
  std::string to;
  double mass;

  friend bool operator==(const ProbabilityShift&, const ProbabilityShift&) = default;
};

struct Scenario {
  std::size_t dimension;
  std::vector<std::string> states;
  ProbabilityVector probabilities;
  std::vector<Act> acts;
  std::optional<std::string> title;
  std::optional<std::string> source;
  std::optional<std::string> notes;
  std::vector<std::string> criteria;
  std::optional<ProbabilityShift> probability_shift;

  const Act& act(std::string_view name) const {
    for (const auto& a : acts) {
      if (a.label() == name) return a;
    }
    throw DomainError("unknown act '" + std::string(name) + "'");
  }

  std::size_t state_index(std::string_view name) const {
    auto it = std::find(states.begin(), states.end(), name);
    if (it == states.end()) throw DomainError("unknown state '" + std::string(name) + "'");
    return static_cast<std::size_t>(it - states.begin());
  }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Rounds to 12 significant digits, the precision of every emitted number.
inline double round_significant(double x) {
  if (x == 0.0 || !std::isfinite(x)) return x == 0.0 ? 0.0 : x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

/// Integral values are written without a fractional part.
inline Json number_json(double x) {
  const double r = round_significant(x);
  if (std::abs(r) < 1e15 && r == std::trunc(r)) return Json(static_cast<std::int64_t>(r));
  return Json(r);
}

inline Json being_json(const Being& b) {
  Json arr = Json::array();
  for (double x : b) arr.push_back(number_json(x));
  return arr;
}

namespace detail {

inline void write_json(std::ostream& os, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  auto is_leaf = [](const Json& v) { return v.is_primitive(); };
  if (j.is_object()) {
    if (j.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      os << inner << Json(it.key()).dump() << ": ";
      write_json(os, it.value(), indent + 1);
      os << (i + 1 < j.size() ? ",\n" : "\n");
    }
    os << pad << "}";
  } else if (j.is_array()) {
    if (std::all_of(j.begin(), j.end(), is_leaf)) {
      os << "[";
      for (std::size_t i = 0; i < j.size(); ++i) os << (i ? ", " : "") << j[i].dump();
      os << "]";
      return;
    }
    os << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      os << inner;
      write_json(os, j[i], indent + 1);
      os << (i + 1 < j.size() ? ",\n" : "\n");
    }
    os << pad << "]";
  } else {
    os << j.dump();
  }
}

}  // namespace detail

/// Serializes a document with two-space indentation and arrays of scalars
/// kept on one line. Ends with a newline.
inline std::string to_document_text(const Json& j) {
  std::ostringstream os;
  detail::write_json(os, j, 0);
  os << "\n";
  return os.str();
}

namespace detail {

inline std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

class Reader {
 public:
  const Json& field(const Json& obj, const std::string& path, const char* key) const {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(path, std::string("missing field '") + key + "'");
    return *it;
  }

  std::string string(const Json& v, const std::string& path) const {
    if (!v.is_string()) throw ParseError(path, "expected a string");
    return v.get<std::string>();
  }

  double number(const Json& v, const std::string& path) const {
    if (!v.is_number()) throw ParseError(path, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ParseError(path, "number is not finite");
    return x;
  }

  const Json& array(const Json& v, const std::string& path) const {
    if (!v.is_array()) throw ParseError(path, "expected an array");
    return v;
  }

  const Json& object(const Json& v, const std::string& path) const {
    if (!v.is_object()) throw ParseError(path, "expected an object");
    return v;
  }

  void only(const Json& obj, const std::string& path,
            std::initializer_list<std::string_view> allowed) const {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
        throw ParseError(path, "unknown field '" + it.key() + "'");
      }
    }
  }
};

inline std::string at(const std::string& path, std::string_view key) {
  return path + "/" + std::string(key);
}
inline std::string at(const std::string& path, std::size_t index) {
  return path + "/" + std::to_string(index);
}

}  // namespace detail

/// Parses and fully validates a scenario document. Syntax errors carry a
/// line/column, validation errors the JSON pointer of the offending field.
inline Scenario parse_scenario(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ParseError(detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1),
                     "malformed JSON");
  }
  const detail::Reader rd;
  const std::string root;
  rd.object(doc, "/");
  rd.only(doc, "/",
          {"version", "metadata", "dimension", "criteria", "states", "probabilities", "acts",
           "probability_shift"});

  const Json& version = rd.field(doc, root, "version");
  if (!version.is_number_integer() || version.get<long long>() != 1) {
    throw ParseError("/version", "unsupported version (expected 1)");
  }

  std::optional<std::string> title, source, notes;
  if (auto it = doc.find("metadata"); it != doc.end()) {
    rd.object(*it, "/metadata");
    rd.only(*it, "/metadata", {"title", "source", "notes"});
    if (it->contains("title")) title = rd.string((*it)["title"], "/metadata/title");
    if (it->contains("source")) source = rd.string((*it)["source"], "/metadata/source");
    if (it->contains("notes")) notes = rd.string((*it)["notes"], "/metadata/notes");
  }

  const Json& dim_json = rd.field(doc, root, "dimension");
  if (!dim_json.is_number_unsigned() || dim_json.get<std::size_t>() == 0) {
    throw ParseError("/dimension", "expected a positive integer");
  }
  const std::size_t dimension = dim_json.get<std::size_t>();

  std::vector<std::string> criteria;
  if (auto it = doc.find("criteria"); it != doc.end()) {
    rd.array(*it, "/criteria");
    for (std::size_t h = 0; h < it->size(); ++h) {
      criteria.push_back(rd.string((*it)[h], detail::at("/criteria", h)));
    }
    if (criteria.size() != dimension) {
      throw ParseError("/criteria", "expected " + std::to_string(dimension) + " labels");
    }
  }

  std::vector<std::string> states;
  const Json& states_json = rd.array(rd.field(doc, root, "states"), "/states");
  for (std::size_t l = 0; l < states_json.size(); ++l) {
    std::string name = rd.string(states_json[l], detail::at("/states", l));
    if (std::find(states.begin(), states.end(), name) != states.end()) {
      throw ParseError(detail::at("/states", l), "duplicate state '" + name + "'");
    }
    states.push_back(std::move(name));
  }
  if (states.empty()) throw ParseError("/states", "at least one state is required");

  const Json& probs_json = rd.array(rd.field(doc, root, "probabilities"), "/probabilities");
  if (probs_json.size() != states.size()) {
    throw ParseError("/probabilities", "expected " + std::to_string(states.size()) +
                                           " probabilities, got " +
                                           std::to_string(probs_json.size()));
  }
  std::vector<double> probs;
  for (std::size_t l = 0; l < probs_json.size(); ++l) {
    probs.push_back(rd.number(probs_json[l], detail::at("/probabilities", l)));
  }
  std::optional<ProbabilityVector> probabilities;
  try {
    probabilities.emplace(std::move(probs));
  } catch (const Error& e) {
    throw ParseError("/probabilities", e.what());
  }

  std::vector<Act> acts;
  const Json& acts_json = rd.array(rd.field(doc, root, "acts"), "/acts");
  if (acts_json.empty()) throw ParseError("/acts", "at least one act is required");
  for (std::size_t m = 0; m < acts_json.size(); ++m) {
    const std::string act_path = detail::at("/acts", m);
    const Json& act_json = rd.object(acts_json[m], act_path);
    rd.only(act_json, act_path, {"name", "sets"});
    std::string name = rd.string(rd.field(act_json, act_path, "name"), act_path + "/name");
    for (const auto& a : acts) {
      if (a.label() == name) throw ParseError(act_path + "/name", "duplicate act '" + name + "'");
    }
    const std::string sets_path = act_path + "/sets";
    const Json& sets_json = rd.array(rd.field(act_json, act_path, "sets"), sets_path);
    if (sets_json.size() != states.size()) {
      throw ParseError(sets_path, "expected one set per state (" + std::to_string(states.size()) +
                                      "), got " + std::to_string(sets_json.size()));
    }
    std::vector<CapabilitySet> sets;
    for (std::size_t l = 0; l < sets_json.size(); ++l) {
      const std::string set_path = detail::at(sets_path, l);
      const Json& set_json = rd.array(sets_json[l], set_path);
      if (set_json.empty()) throw ParseError(set_path, "capability set is empty");
      std::vector<Being> beings;
      for (std::size_t n = 0; n < set_json.size(); ++n) {
        const std::string being_path = detail::at(set_path, n);
        const Json& coords_json = rd.array(set_json[n], being_path);
        if (coords_json.size() != dimension) {
          throw ParseError(being_path, "expected " + std::to_string(dimension) +
                                           " coordinates, got " +
                                           std::to_string(coords_json.size()));
        }
        std::vector<double> coords;
        for (std::size_t h = 0; h < coords_json.size(); ++h) {
          coords.push_back(rd.number(coords_json[h], detail::at(being_path, h)));
        }
        try {
          beings.emplace_back(std::move(coords));
        } catch (const Error& e) {
          throw ParseError(being_path, e.what());
        }
      }
      sets.emplace_back(std::move(beings), states[l]);
    }
    acts.emplace_back(std::move(name), std::move(sets));
  }

  std::optional<ProbabilityShift> shift;
  if (auto it = doc.find("probability_shift"); it != doc.end()) {
    const std::string path = "/probability_shift";
    rd.object(*it, path);
    rd.only(*it, path, {"from", "to", "mass"});
    ProbabilityShift s{rd.string(rd.field(*it, path, "from"), path + "/from"),
                       rd.string(rd.field(*it, path, "to"), path + "/to"),
                       rd.number(rd.field(*it, path, "mass"), path + "/mass")};
    for (const auto* name : {&s.from, &s.to}) {
      if (std::find(states.begin(), states.end(), *name) == states.end()) {
        throw ParseError(path, "unknown state '" + *name + "'");
      }
    }
    if (s.from == s.to) throw ParseError(path, "'from' and 'to' must differ");
    if (!(s.mass > 0.0)) throw ParseError(path + "/mass", "mass must be positive");
    shift = std::move(s);
  }

  return Scenario{dimension,        std::move(states), std::move(*probabilities),
                  std::move(acts),  std::move(title),  std::move(source),
                  std::move(notes), std::move(criteria), std::move(shift)};
}

inline Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), "cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

inline Json scenario_json(const Scenario& s) {
  Json doc;
  doc["version"] = 1;
  if (s.title || s.source || s.notes) {
    Json meta = Json::object();
    if (s.title) meta["title"] = *s.title;
    if (s.source) meta["source"] = *s.source;
    if (s.notes) meta["notes"] = *s.notes;
    doc["metadata"] = std::move(meta);
  }
  doc["dimension"] = s.dimension;
  if (!s.criteria.empty()) doc["criteria"] = s.criteria;
  doc["states"] = s.states;
  Json probs = Json::array();
  for (double x : s.probabilities.values()) probs.push_back(number_json(x));
  doc["probabilities"] = std::move(probs);
  Json acts = Json::array();
  for (const auto& act : s.acts) {
    Json sets = Json::array();
    for (const auto& set : act.sets()) {
      Json beings = Json::array();
      for (const auto& b : set) beings.push_back(being_json(b));
      sets.push_back(std::move(beings));
    }
    acts.push_back(Json{{"name", act.label()}, {"sets", std::move(sets)}});
  }
  doc["acts"] = std::move(acts);
  if (s.probability_shift) {
    doc["probability_shift"] = Json{{"from", s.probability_shift->from},
                                    {"to", s.probability_shift->to},
                                    {"mass", number_json(s.probability_shift->mass)}};
  }
  return doc;
}

inline std::string serialize_scenario(const Scenario& s) {
  return to_document_text(scenario_json(s));
}

/// Lower-case hex SHA-256 of `data`.
inline std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) {
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return os.str();
}

}  // namespace capmix

#endif  // CAPMIX_SCENARIO_HPP
