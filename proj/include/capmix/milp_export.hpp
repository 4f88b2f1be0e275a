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

#ifndef CAPMIX_MILP_EXPORT_HPP
#define CAPMIX_MILP_EXPORT_HPP

#include <algorithm>
#include <cstdio>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "capmix/error.hpp"
#include "capmix/mixing.hpp"

// Solver-agnostic text models of the expected-set MI-MOLP.
//
// Variables follow a fixed naming scheme, all indices 1-based:
//   b_l_h        aggregated being of state l, dimension h (continuous, free)
//   z_l_h        anchor of state l (region template only, declared by blocks)
//   d_l_lp       1 relaxes "b_l <= b_lp"
//   delta_l_n    1 relaxes "b_l <= z_{l,n}"
//
// Only the model is produced here. Recovering the full Pareto frontier from it
// needs an epsilon-constraint or dichotomic driver around an external solver;
// a weighted sum (see scalarize) reaches supported points only.

namespace capmix {

enum class VarKind { Continuous, Binary };

struct Variable {
  std::string name;
  VarKind kind;
};

struct Term {
  std::size_t var;
  double coef;
};

enum class Sense { LessEqual, GreaterEqual, Equal };

enum class ConstraintFamily {
  SelectionCount,  // at least one delta of each state is zero
  SelectionBound,  // b_l <= z_{l,n} unless delta_{l,n} relaxes it
  DominatedBy,     // b_l <= z_l, region template
  Order,           // b_l <= b_lp unless d_{l,lp} relaxes it
  Antisymmetry,    // d_{l,lp} + d_{lp,l} <= 1
};

inline std::string_view to_string(ConstraintFamily f) noexcept {
  switch (f) {
    case ConstraintFamily::SelectionCount: return "select_count";
    case ConstraintFamily::SelectionBound: return "select_bound";
    case ConstraintFamily::DominatedBy: return "dominated_by";
    case ConstraintFamily::Order: return "order";
    case ConstraintFamily::Antisymmetry: return "antisym";
  }
  return "?";
}

struct Constraint {
  std::string name;
  ConstraintFamily family;
  std::vector<Term> terms;
  Sense sense;
  double rhs;
};

struct LinearExpr {
  std::string name;
  std::vector<Term> terms;
};

// Caller-supplied description of one state's feasible set in the region
// template. `constraints` is copied verbatim (one LP constraint per line) and
// must constrain z_l_1..z_l_h; `binaries` lists any integer helpers it uses.
struct StateBlock {
  std::string constraints;
  std::vector<std::string> binaries;
};

struct MilpModel {
  std::string title;
  double big_m = 0.0;
  std::vector<Variable> variables;
  std::vector<Constraint> constraints;
  std::vector<LinearExpr> objectives;  // all maximized
  std::vector<std::string> raw_blocks;
  std::vector<std::string> extra_binaries;
  std::vector<std::string> notes;

  std::optional<std::size_t> find(std::string_view name) const {
    for (std::size_t i = 0; i < variables.size(); ++i) {
      if (variables[i].name == name) return i;
    }
    return std::nullopt;
  }

  std::size_t count_variables(std::string_view prefix, VarKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(variables.begin(), variables.end(), [&](const Variable& v) {
          return v.kind == kind && v.name.starts_with(prefix);
        }));
  }

  std::size_t count_constraints(ConstraintFamily family) const {
    return static_cast<std::size_t>(std::count_if(
        constraints.begin(), constraints.end(),
        [&](const Constraint& c) { return c.family == family; }));
  }
};

/// 1 + the largest coordinate of any being of the act.
inline double big_m(const Act& act) {
  double top = 0.0;
  for (const auto& set : act.sets()) {
    for (const auto& b : set) {
      for (double x : b) top = std::max(top, x);
    }
  }
  return 1.0 + top;
}

namespace detail {

inline std::string var_name(std::string_view stem, std::size_t i, std::size_t j) {
  return std::string(stem) + "_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
}

inline std::size_t add_var(MilpModel& m, std::string name, VarKind kind) {
  m.variables.push_back(Variable{std::move(name), kind});
  return m.variables.size() - 1;
}

// b_l_h block and expected-value objectives shared by both formulations.
inline void add_aggregates(MilpModel& m, const ProbabilityVector& p, std::size_t dim) {
  const std::size_t states = p.size();
  for (std::size_t l = 0; l < states; ++l) {
    for (std::size_t h = 0; h < dim; ++h) add_var(m, var_name("b", l, h), VarKind::Continuous);
  }
  for (std::size_t h = 0; h < dim; ++h) {
    LinearExpr obj{"obj_" + std::to_string(h + 1), {}};
    for (std::size_t l = 0; l < states; ++l) obj.terms.push_back(Term{l * dim + h, p[l]});
    m.objectives.push_back(std::move(obj));
  }
}

// d binaries, big-M order rows and antisymmetry rows over the b block.
inline void add_order_machinery(MilpModel& m, std::size_t states, std::size_t dim) {
  std::vector<std::vector<std::size_t>> d(states, std::vector<std::size_t>(states, 0));
  for (std::size_t l = 0; l < states; ++l) {
    for (std::size_t lp = 0; lp < states; ++lp) {
      if (l != lp) d[l][lp] = add_var(m, var_name("d", l, lp), VarKind::Binary);
    }
  }
  for (std::size_t l = 0; l < states; ++l) {
    for (std::size_t lp = 0; lp < states; ++lp) {
      if (l == lp) continue;
      for (std::size_t h = 0; h < dim; ++h) {
        m.constraints.push_back(Constraint{
            "order_" + std::to_string(l + 1) + "_" + std::to_string(lp + 1) + "_" +
                std::to_string(h + 1),
            ConstraintFamily::Order,
            {{l * dim + h, 1.0}, {lp * dim + h, -1.0}, {d[l][lp], -m.big_m}},
            Sense::LessEqual,
            0.0});
      }
    }
  }
  for (std::size_t l = 0; l < states; ++l) {
    for (std::size_t lp = l + 1; lp < states; ++lp) {
      m.constraints.push_back(Constraint{var_name("antisym", l, lp),
                                         ConstraintFamily::Antisymmetry,
                                         {{d[l][lp], 1.0}, {d[lp][l], 1.0}},
                                         Sense::LessEqual,
                                         1.0});
    }
  }
}

}  // namespace detail

/// MI-MOLP whose optimum set is the expected capability set of a finite act.
inline MilpModel export_finite_model(const Act& act, const ProbabilityVector& p) {
  detail::require_matching(act, p);
  const std::size_t states = act.states();
  const std::size_t dim = act.dimension();

  MilpModel m;
  m.title = "expected capability set, finite sets, act " + act.label();
  m.big_m = big_m(act);
  detail::add_aggregates(m, p, dim);

  detail::add_order_machinery(m, states, dim);

  std::vector<std::vector<std::size_t>> delta(states);

  for (std::size_t l = 0; l < states; ++l) {
    for (std::size_t n = 0; n < act[l].size(); ++n) {
      delta[l].push_back(detail::add_var(m, detail::var_name("delta", l, n), VarKind::Binary));
    }
  }

  for (std::size_t l = 0; l < states; ++l) {
    Constraint c{"select_count_" + std::to_string(l + 1), ConstraintFamily::SelectionCount, {},
                 Sense::LessEqual, static_cast<double>(act[l].size()) - 1.0};
    for (std::size_t idx : delta[l]) c.terms.push_back(Term{idx, 1.0});
    m.constraints.push_back(std::move(c));
  }
  for (std::size_t l = 0; l < states; ++l) {
    for (std::size_t n = 0; n < act[l].size(); ++n) {
      for (std::size_t h = 0; h < dim; ++h) {
        m.constraints.push_back(Constraint{
            "select_bound_" + std::to_string(l + 1) + "_" + std::to_string(n + 1) + "_" +
                std::to_string(h + 1),
            ConstraintFamily::SelectionBound,
            {{l * dim + h, 1.0}, {delta[l][n], -m.big_m}},
            Sense::LessEqual,
            act[l][n][h]});
      }
    }
  }
  // Present families in the order select_count, select_bound, order, antisym.
  std::stable_sort(m.constraints.begin(), m.constraints.end(),
                   [](const Constraint& a, const Constraint& b) {
                     return static_cast<int>(a.family) < static_cast<int>(b.family);
                   });
  return m;
}

/// MI-MOLP template for compact sets given as opaque per-state constraint
/// blocks over z_l_h.
inline MilpModel export_region_template(std::span<const StateBlock> blocks,
                                        const ProbabilityVector& p, std::size_t dimension,
                                        double big_m_value) {
  if (blocks.size() != p.size()) {
    throw DimensionError("got " + std::to_string(blocks.size()) + " state blocks for " +
                         std::to_string(p.size()) + " states");
  }
  if (dimension == 0) throw DimensionError("dimension must be at least 1");
  if (!(big_m_value > 0.0)) throw DomainError("big-M must be positive");
  const std::size_t states = p.size();

  MilpModel m;
  m.title = "expected capability set, region template";
  m.big_m = big_m_value;
  detail::add_aggregates(m, p, dimension);
  std::vector<std::size_t> z;
  for (std::size_t l = 0; l < states; ++l) {
    for (std::size_t h = 0; h < dimension; ++h) {
      z.push_back(detail::add_var(m, detail::var_name("z", l, h), VarKind::Continuous));
    }
  }
  for (std::size_t l = 0; l < states; ++l) {
    for (std::size_t h = 0; h < dimension; ++h) {
      m.constraints.push_back(Constraint{detail::var_name("dominated_by", l, h),
                                         ConstraintFamily::DominatedBy,
                                         {{l * dimension + h, 1.0}, {z[l * dimension + h], -1.0}},
                                         Sense::LessEqual,
                                         0.0});
    }
  }
  detail::add_order_machinery(m, states, dimension);
  for (const auto& block : blocks) {
    m.raw_blocks.push_back(block.constraints);
    m.extra_binaries.insert(m.extra_binaries.end(), block.binaries.begin(), block.binaries.end());
  }
  return m;
}

/// Collapses the objectives into one weighted sum.
inline MilpModel scalarize(MilpModel model, std::span<const double> weights) {
  if (weights.size() != model.objectives.size()) {
    throw DimensionError("got " + std::to_string(weights.size()) + " weights for " +
                         std::to_string(model.objectives.size()) + " objectives");
  }
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw DomainError("weights must be strictly positive");
  }
  LinearExpr combined{"weighted", {}};
  for (std::size_t h = 0; h < weights.size(); ++h) {
    for (const Term& t : model.objectives[h].terms) {
      auto it = std::find_if(combined.terms.begin(), combined.terms.end(),
                             [&](const Term& c) { return c.var == t.var; });
      if (it == combined.terms.end()) {
        combined.terms.push_back(Term{t.var, weights[h] * t.coef});
      } else {
        it->coef += weights[h] * t.coef;
      }
    }
  }
  model.objectives = {std::move(combined)};
  model.notes.push_back(
      "weighted-sum scalarization: optima are supported Pareto points only; "
      "unsupported points need an epsilon-constraint or dichotomic scheme");
  return model;
}

/// Values for every model variable realizing a certificate: b from the
/// adjusted beings, d from the order, delta from the selection.
inline std::vector<double> certificate_assignment(const MilpModel& model,
                                                  const ChainCertificate& cert) {
  std::vector<double> values(model.variables.size(), 0.0);
  for (std::size_t i = 0; i < model.variables.size(); ++i) {
    const std::string& name = model.variables[i].name;
    unsigned a = 0, b = 0;
    if (std::sscanf(name.c_str(), "b_%u_%u", &a, &b) == 2) {
      values[i] = cert.adjusted.at(a - 1).coords()[b - 1];
    } else if (std::sscanf(name.c_str(), "delta_%u_%u", &a, &b) == 2) {
      values[i] = cert.selection.at(a - 1) == b - 1 ? 0.0 : 1.0;
    } else if (std::sscanf(name.c_str(), "d_%u_%u", &a, &b) == 2) {
      values[i] = cert.rank(a - 1) > cert.rank(b - 1) ? 1.0 : 0.0;
    } else if (std::sscanf(name.c_str(), "z_%u_%u", &a, &b) == 2) {
      values[i] = cert.anchors.at(a - 1).coords()[b - 1];
    }
  }
  return values;
}

inline double evaluate(const std::vector<Term>& terms, std::span<const double> values) {
  double sum = 0.0;
  for (const Term& t : terms) sum += t.coef * values[t.var];
  return sum;
}

/// Names of the structured constraints the assignment violates by more than `tol`.
inline std::vector<std::string> violated_constraints(const MilpModel& model,
                                                     std::span<const double> values,
                                                     double tol = kTolerance) {
  if (values.size() != model.variables.size()) {
    throw DimensionError("assignment size does not match the model");
  }
  std::vector<std::string> out;
  for (const auto& c : model.constraints) {
    const double lhs = evaluate(c.terms, values);
    const bool ok = c.sense == Sense::LessEqual      ? lhs <= c.rhs + tol
                    : c.sense == Sense::GreaterEqual ? lhs >= c.rhs - tol
                                                     : std::abs(lhs - c.rhs) <= tol;
    if (!ok) out.push_back(c.name);
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (model.variables[i].kind == VarKind::Binary && values[i] != 0.0 && values[i] != 1.0) {
      out.push_back(model.variables[i].name + " (binary)");
    }
  }
  return out;
}

/// Coefficient as printed in model text: 12 significant digits.
inline std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

namespace detail {

inline std::string render_terms(const MilpModel& m, const std::vector<Term>& terms) {
  std::string out;
  bool first = true;
  for (const Term& t : terms) {
    if (t.coef == 0.0) continue;
    const double mag = std::abs(t.coef);
    if (first) {
      if (t.coef < 0) out += "- ";
    } else {
      out += t.coef < 0 ? " - " : " + ";
    }
    if (mag != 1.0) out += format_number(mag) + " ";
    out += m.variables[t.var].name;
    first = false;
  }
  return first ? "0" : out;
}

inline std::string_view sense_text(Sense s) {
  switch (s) {
    case Sense::LessEqual: return "<=";
    case Sense::GreaterEqual: return ">=";
    case Sense::Equal: return "=";
  }
  return "?";
}

}  // namespace detail

/// Model text: OBJECTIVES / CONSTRAINTS / BOUNDS / BINARIES sections, one
/// item per line, backslash comments, LF endings. Deterministic.
inline std::string to_text(const MilpModel& m) {
  std::ostringstream os;
  os << "\\ " << m.title << "\n";
  os << "\\ big-M " << format_number(m.big_m) << "\n";
  for (const auto& note : m.notes) os << "\\ note: " << note << "\n";
  os << "OBJECTIVES\n";
  for (const auto& obj : m.objectives) {
    os << " maximize " << obj.name << ": " << detail::render_terms(m, obj.terms) << "\n";
  }
  os << "CONSTRAINTS\n";
  std::optional<ConstraintFamily> family;
  for (const auto& c : m.constraints) {
    if (family != c.family) {
      os << " \\ " << to_string(c.family) << "\n";
      family = c.family;
    }
    os << " " << c.name << ": " << detail::render_terms(m, c.terms) << " "
       << detail::sense_text(c.sense) << " " << format_number(c.rhs) << "\n";
  }
  for (std::size_t l = 0; l < m.raw_blocks.size(); ++l) {
    os << " \\ feasible set of state " << l + 1 << "\n";
    std::istringstream block(m.raw_blocks[l]);
    for (std::string line; std::getline(block, line);) {
      if (!line.empty()) os << " " << line << "\n";
    }
  }
  os << "BOUNDS\n";
  for (const auto& v : m.variables) {
    if (v.kind == VarKind::Continuous) os << " " << v.name << " free\n";
  }
  os << "BINARIES\n";
  for (const auto& v : m.variables) {
    if (v.kind == VarKind::Binary) os << " " << v.name << "\n";
  }
  for (const auto& name : m.extra_binaries) os << " " << name << "\n";
  os << "END\n";
  return os.str();
}

}  // namespace capmix

#endif  // CAPMIX_MILP_EXPORT_HPP
