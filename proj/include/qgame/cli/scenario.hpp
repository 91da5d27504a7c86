// Copyright 2026 The qgame Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Scenario files: one JSON object per run. Every field is validated before
// any computation and every default is filled in, so the echoed scenario is
// itself a complete, loadable scenario file.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qgame/classical.hpp"
#include "qgame/hilbert.hpp"
#include "qgame/quantize.hpp"
#include "qgame/quantum_game.hpp"
#include "qgame/search.hpp"

namespace qgame::cli {

using json = nlohmann::json;

enum class ScenarioKind { QuantumGameAnalysis, NashSearch, Quantization, PennyFlip, ClassicalSolve };

inline const std::vector<std::pair<ScenarioKind, std::string>>& kind_names() {
  static const std::vector<std::pair<ScenarioKind, std::string>> names{
      {ScenarioKind::QuantumGameAnalysis, "QuantumGameAnalysis"},
      {ScenarioKind::NashSearch, "NashSearch"},
      {ScenarioKind::Quantization, "Quantization"},
      {ScenarioKind::PennyFlip, "PennyFlip"},
      {ScenarioKind::ClassicalSolve, "ClassicalSolve"},
  };
  return names;
}

inline std::string to_string(ScenarioKind k) {
  for (const auto& [kind, name] : kind_names())
    if (kind == k) return name;
  return "?";
}

[[noreturn]] inline void schema_error(const std::string& field, const std::string& constraint) {
  fail(ErrorCode::SchemaError, "field '" + field + "': " + constraint);
}

inline ScenarioKind parse_kind(const std::string& s) {
  for (const auto& [kind, name] : kind_names())
    if (name == s) return kind;
  schema_error("kind", "unknown kind '" + s + "'");
}

/// A named gate (I, X, Y, Z, H, C, D, Q) or explicit three-angle coordinates.
struct GateSpec {
  std::string name;
  std::optional<UnitaryParams2> angles;

  static GateSpec named(std::string n) { return {std::move(n), std::nullopt}; }

  UnitaryOperator unitary() const {
    if (angles) return su2_from_params(*angles);
    if (name == "I") return gates::I2();
    if (name == "X") return gates::X();
    if (name == "Y") return gates::Y();
    if (name == "Z") return gates::Z();
    if (name == "H") return gates::H();
    if (name == "C") return ewl::cooperate();
    if (name == "D") return ewl::defect();
    if (name == "Q") return ewl::q_strategy();
    fail(ErrorCode::SchemaError, "unknown gate '" + name + "'");
  }

  json to_json() const {
    if (angles) return json{{"theta", angles->theta}, {"phi", angles->phi}, {"lam", angles->lam}};
    return name;
  }

  bool operator==(const GateSpec& o) const {
    if (angles.has_value() != o.angles.has_value()) return false;
    if (angles) return angles->theta == o.angles->theta && angles->phi == o.angles->phi && angles->lam == o.angles->lam;
    return name == o.name;
  }
};

struct Scenario {
  ScenarioKind kind = ScenarioKind::QuantumGameAnalysis;
  std::uint64_t seed = 0;

  // Classical base game (ClassicalSolve, Quantization).
  std::vector<std::vector<double>> payoff_a;
  std::vector<std::vector<double>> payoff_b;
  std::vector<std::string> labels_a;
  std::vector<std::string> labels_b;

  // Quantum game (QuantumGameAnalysis, NashSearch).
  std::vector<std::string> pref_a;
  std::vector<std::string> pref_b;
  StrategyMode mode = StrategyMode::JointUnitary;
  std::optional<std::string> init_a;
  std::optional<std::string> init_b;
  SearchConfig search;
  std::size_t refuter_samples = 100000;

  // Quantization.
  double gamma = kPi / 2.0;
  StrategyClass strategy_class = StrategyClass::TwoParameter;
  std::size_t grid = 64;
  std::vector<GateSpec> embedding{GateSpec::named("I"), GateSpec::named("X")};
  GateSpec opponent = GateSpec::named("Q");
  std::size_t mixture_support = 2;
  std::size_t mixture_grid = 16;
  std::size_t max_rounds = 50;
  std::size_t completeness_samples = 200;

  // PennyFlip.
  std::vector<GateSpec> q_moves{GateSpec::named("H"), GateSpec::named("H")};
  std::size_t p_grid = 101;

  ClassicalGame classical_game() const {
    auto to_matrix = [](const std::vector<std::vector<double>>& rows) {
      Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
          m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
      return m;
    };
    return ClassicalGame(to_matrix(payoff_a), to_matrix(payoff_b), labels_a, labels_b);
  }

  QuantumGame quantum_game() const { return QuantumGame::from_labels(pref_a, pref_b, mode); }

  InitPins init_pins() const {
    InitPins pins;
    if (init_a) pins.a = basis_state(*init_a);
    if (init_b) pins.b = basis_state(*init_b);
    return pins;
  }

  Embedding quantum_embedding() const {
    std::vector<UnitaryOperator> u;
    for (const auto& g : embedding) u.push_back(g.unitary());
    return Embedding::symmetric(u);
  }
};

namespace detail {

inline const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) schema_error(path, "is required");
  return obj.at(key);
}

inline double number(const json& v, const std::string& path) {
  if (!v.is_number()) schema_error(path, "must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) schema_error(path, "must be finite");
  return d;
}

inline std::size_t positive_int(const json& v, const std::string& path, std::size_t min = 1) {
  if (!v.is_number_integer() || v.get<long long>() < static_cast<long long>(min)) {
    schema_error(path, "must be an integer >= " + std::to_string(min));
  }
  return static_cast<std::size_t>(v.get<long long>());
}

inline std::vector<std::string> strings(const json& v, const std::string& path) {
  if (!v.is_array()) schema_error(path, "must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) schema_error(path, "must be an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

inline std::vector<std::vector<double>> matrix(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) schema_error(path, "must be a non-empty array of rows");
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& r = v[i];
    if (!r.is_array() || r.empty()) schema_error(path, "row " + std::to_string(i) + " must be a non-empty array");
    std::vector<double> row;
    for (std::size_t j = 0; j < r.size(); ++j) row.push_back(number(r[j], path + "[" + std::to_string(i) + "][" + std::to_string(j) + "]"));
    if (!rows.empty() && row.size() != rows.front().size()) schema_error(path, "rows must have equal length");
    rows.push_back(std::move(row));
  }
  return rows;
}

inline GateSpec gate(const json& v, const std::string& path) {
  GateSpec g;
  if (v.is_string()) {
    g.name = v.get<std::string>();
    static const std::set<std::string> known{"I", "X", "Y", "Z", "H", "C", "D", "Q"};
    if (!known.count(g.name)) schema_error(path, "unknown gate '" + g.name + "' (expected one of I,X,Y,Z,H,C,D,Q)");
    return g;
  }
  if (v.is_object()) {
    for (const auto& [k, _] : v.items())
      if (k != "theta" && k != "phi" && k != "lam") schema_error(path + "." + k, "unknown key");
    const double t = number(require(v, "theta", path + ".theta"), path + ".theta");
    const double p = number(require(v, "phi", path + ".phi"), path + ".phi");
    const double l = v.contains("lam") ? number(v.at("lam"), path + ".lam") : 0.0;
    g.angles = UnitaryParams2(t, p, l);
    return g;
  }
  schema_error(path, "must be a gate name or an object {theta, phi, lam}");
}

inline void permutation(const std::vector<std::string>& labels, const std::string& path) {
  static const std::vector<std::string> basis{"00", "01", "10", "11"};
  if (labels.size() != 4) schema_error(path, "must list all four basis labels 00,01,10,11");
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (std::find(basis.begin(), basis.end(), l) == basis.end()) schema_error(path, "unknown basis label '" + l + "'");
    if (!seen.insert(l).second) schema_error(path, "repeated label '" + l + "' (must be a permutation)");
  }
}

inline void only_keys(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
  for (const auto& [k, _] : obj.items()) {
    if (!allowed.count(k)) schema_error(path.empty() ? k : path + "." + k, "unknown key");
  }
}

inline std::set<std::string> allowed_keys(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::QuantumGameAnalysis:
      return {"kind", "seed", "prefs", "mode", "inits", "search", "refuter_samples"};
    case ScenarioKind::NashSearch:
      return {"kind", "seed", "prefs", "mode", "inits", "search"};
    case ScenarioKind::Quantization:
      return {"kind", "seed", "game", "gamma", "strategy_class", "grid", "embedding", "opponent",
              "mixture_support", "mixture_grid", "max_rounds", "completeness_samples"};
    case ScenarioKind::PennyFlip:
      return {"kind", "seed", "penny"};
    case ScenarioKind::ClassicalSolve:
      return {"kind", "seed", "game"};
  }
  return {};
}

}  // namespace detail

/// Validates a parsed scenario object and fills every default.
inline Scenario parse_scenario(const json& j) {
  using namespace detail;
  if (!j.is_object()) schema_error("<root>", "scenario must be a JSON object");
  Scenario s;
  const json& kind = require(j, "kind", "kind");
  if (!kind.is_string()) schema_error("kind", "must be a string");
  s.kind = parse_kind(kind.get<std::string>());
  only_keys(j, allowed_keys(s.kind), "");

  if (j.contains("seed")) {
    const auto& v = j.at("seed");
    if (!v.is_number_integer() || v.get<long long>() < 0) schema_error("seed", "must be a non-negative integer");
    s.seed = v.get<std::uint64_t>();
  }
  s.search.seed = s.seed;

  const bool quantum = s.kind == ScenarioKind::QuantumGameAnalysis || s.kind == ScenarioKind::NashSearch;
  if (quantum) {
    const json& prefs = require(j, "prefs", "prefs");
    if (!prefs.is_object()) schema_error("prefs", "must be an object {a, b}");
    only_keys(prefs, {"a", "b"}, "prefs");
    s.pref_a = strings(require(prefs, "a", "prefs.a"), "prefs.a");
    s.pref_b = strings(require(prefs, "b", "prefs.b"), "prefs.b");
    permutation(s.pref_a, "prefs.a");
    permutation(s.pref_b, "prefs.b");
    if (j.contains("mode")) {
      const auto& m = j.at("mode");
      if (m == "joint") s.mode = StrategyMode::JointUnitary;
      else if (m == "local") s.mode = StrategyMode::LocalUnitary;
      else schema_error("mode", "must be \"joint\" or \"local\"");
    }
    if (j.contains("inits")) {
      const auto& in = j.at("inits");
      if (!in.is_object()) schema_error("inits", "must be an object {a?, b?}");
      only_keys(in, {"a", "b"}, "inits");
      for (const char* p : {"a", "b"}) {
        if (!in.contains(p)) continue;
        const std::string path = std::string("inits.") + p;
        if (!in.at(p).is_string() || (in.at(p) != "0" && in.at(p) != "1")) schema_error(path, "must be \"0\" or \"1\"");
        (p[0] == 'a' ? s.init_a : s.init_b) = in.at(p).get<std::string>();
      }
    }
    if (j.contains("search")) {
      const auto& sc = j.at("search");
      if (!sc.is_object()) schema_error("search", "must be an object");
      only_keys(sc, {"restarts", "max_iters", "step_tol", "value_tol"}, "search");
      if (sc.contains("restarts")) s.search.restarts = positive_int(sc.at("restarts"), "search.restarts");
      if (sc.contains("max_iters")) s.search.max_iters = positive_int(sc.at("max_iters"), "search.max_iters");
      if (sc.contains("step_tol")) {
        s.search.step_tol = number(sc.at("step_tol"), "search.step_tol");
        if (!(s.search.step_tol > 0)) schema_error("search.step_tol", "must be > 0");
      }
      if (sc.contains("value_tol")) {
        s.search.value_tol = number(sc.at("value_tol"), "search.value_tol");
        if (!(s.search.value_tol > 0 && s.search.value_tol < 1)) schema_error("search.value_tol", "must lie in (0, 1)");
      }
    }
    if (j.contains("refuter_samples")) s.refuter_samples = positive_int(j.at("refuter_samples"), "refuter_samples", 0);
  }

  const bool classical = s.kind == ScenarioKind::ClassicalSolve || s.kind == ScenarioKind::Quantization;
  if (classical) {
    if (j.contains("game")) {
      const json& g = j.at("game");
      if (!g.is_object()) schema_error("game", "must be an object");
      only_keys(g, {"payoff_a", "payoff_b", "labels"}, "game");
      s.payoff_a = matrix(require(g, "payoff_a", "game.payoff_a"), "game.payoff_a");
      s.payoff_b = matrix(require(g, "payoff_b", "game.payoff_b"), "game.payoff_b");
      if (s.payoff_a.size() != s.payoff_b.size() || s.payoff_a.front().size() != s.payoff_b.front().size()) {
        schema_error("game.payoff_b", "shape must match game.payoff_a");
      }
      if (g.contains("labels")) {
        const auto& l = g.at("labels");
        if (l.is_object()) {
          only_keys(l, {"a", "b"}, "game.labels");
          s.labels_a = strings(require(l, "a", "game.labels.a"), "game.labels.a");
          s.labels_b = strings(require(l, "b", "game.labels.b"), "game.labels.b");
        } else {
          s.labels_a = s.labels_b = strings(l, "game.labels");
        }
      }
    } else if (s.kind == ScenarioKind::ClassicalSolve) {
      schema_error("game", "is required");
    } else {
      const ClassicalGame pd = ClassicalGame::prisoners_dilemma();
      s.payoff_a = {{3, 0}, {5, 1}};
      s.payoff_b = {{3, 5}, {0, 1}};
      s.labels_a = pd.labels_a();
      s.labels_b = pd.labels_b();
    }
    if (s.labels_a.empty()) {
      for (std::size_t i = 0; i < s.payoff_a.size(); ++i) s.labels_a.push_back("s" + std::to_string(i));
    }
    if (s.labels_b.empty()) {
      for (std::size_t i = 0; i < s.payoff_a.front().size(); ++i) s.labels_b.push_back("s" + std::to_string(i));
    }
    if (s.labels_a.size() != s.payoff_a.size()) schema_error("game.labels", "count must match the number of rows");
    if (s.labels_b.size() != s.payoff_a.front().size()) schema_error("game.labels", "count must match the number of columns");
  }

  if (s.kind == ScenarioKind::Quantization) {
    if (s.payoff_a.size() != 2 || s.payoff_a.front().size() != 2) schema_error("game.payoff_a", "quantization needs a 2x2 game");
    if (j.contains("gamma")) {
      s.gamma = number(j.at("gamma"), "gamma");
      if (!(s.gamma >= 0.0 && s.gamma <= kPi / 2.0)) schema_error("gamma", "must lie in [0, pi/2]");
    }
    if (j.contains("strategy_class")) {
      const auto& c = j.at("strategy_class");
      if (c == "two_parameter") s.strategy_class = StrategyClass::TwoParameter;
      else if (c == "full_u2") s.strategy_class = StrategyClass::FullU2;
      else schema_error("strategy_class", "must be \"two_parameter\" or \"full_u2\"");
    }
    if (j.contains("grid")) s.grid = positive_int(j.at("grid"), "grid", 32);
    if (j.contains("embedding")) {
      const auto& e = j.at("embedding");
      if (!e.is_array() || e.size() != 2) schema_error("embedding", "must list one gate per pure strategy (2)");
      s.embedding = {gate(e[0], "embedding[0]"), gate(e[1], "embedding[1]")};
    }
    if (j.contains("opponent")) s.opponent = gate(j.at("opponent"), "opponent");
    if (j.contains("mixture_support")) s.mixture_support = positive_int(j.at("mixture_support"), "mixture_support");
    if (j.contains("mixture_grid")) s.mixture_grid = positive_int(j.at("mixture_grid"), "mixture_grid", 2);
    if (j.contains("max_rounds")) s.max_rounds = positive_int(j.at("max_rounds"), "max_rounds");
    if (j.contains("completeness_samples")) {
      s.completeness_samples = positive_int(j.at("completeness_samples"), "completeness_samples", 0);
    }
  }

  if (s.kind == ScenarioKind::PennyFlip && j.contains("penny")) {
    const auto& p = j.at("penny");
    if (!p.is_object()) schema_error("penny", "must be an object");
    only_keys(p, {"q_moves", "p_grid"}, "penny");
    if (p.contains("q_moves")) {
      const auto& m = p.at("q_moves");
      if (!m.is_array() || m.size() != 2) schema_error("penny.q_moves", "must hold exactly two gates");
      s.q_moves = {gate(m[0], "penny.q_moves[0]"), gate(m[1], "penny.q_moves[1]")};
    }
    if (p.contains("p_grid")) s.p_grid = positive_int(p.at("p_grid"), "penny.p_grid", 2);
  }
  return s;
}

inline Scenario parse_scenario_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, e.what());
  }
  return parse_scenario(j);
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

/// The scenario with all defaults, in loadable form.
inline json echo(const Scenario& s) {
  json j;
  j["kind"] = to_string(s.kind);
  j["seed"] = s.seed;
  switch (s.kind) {
    case ScenarioKind::QuantumGameAnalysis:
    case ScenarioKind::NashSearch: {
      j["prefs"] = {{"a", s.pref_a}, {"b", s.pref_b}};
      j["mode"] = to_string(s.mode);
      json inits = json::object();
      if (s.init_a) inits["a"] = *s.init_a;
      if (s.init_b) inits["b"] = *s.init_b;
      j["inits"] = inits;
      j["search"] = {{"restarts", s.search.restarts},
                     {"max_iters", s.search.max_iters},
                     {"step_tol", s.search.step_tol},
                     {"value_tol", s.search.value_tol}};
      if (s.kind == ScenarioKind::QuantumGameAnalysis) j["refuter_samples"] = s.refuter_samples;
      break;
    }
    case ScenarioKind::Quantization:
    case ScenarioKind::ClassicalSolve: {
      j["game"] = {{"payoff_a", s.payoff_a}, {"payoff_b", s.payoff_b}, {"labels", {{"a", s.labels_a}, {"b", s.labels_b}}}};
      if (s.kind == ScenarioKind::ClassicalSolve) break;
      j["gamma"] = s.gamma;
      j["strategy_class"] = to_string(s.strategy_class);
      j["grid"] = s.grid;
      j["embedding"] = json::array({s.embedding[0].to_json(), s.embedding[1].to_json()});
      j["opponent"] = s.opponent.to_json();
      j["mixture_support"] = s.mixture_support;
      j["mixture_grid"] = s.mixture_grid;
      j["max_rounds"] = s.max_rounds;
      j["completeness_samples"] = s.completeness_samples;
      break;
    }
    case ScenarioKind::PennyFlip:
      j["penny"] = {{"q_moves", json::array({s.q_moves[0].to_json(), s.q_moves[1].to_json()})}, {"p_grid", s.p_grid}};
      break;
  }
  return j;
}

/// Human-readable schema for one scenario kind.
inline json schema(ScenarioKind kind) {
  json fields = json::object();
  fields["kind"] = "string, \"" + to_string(kind) + "\"";
  fields["seed"] = "non-negative integer, default 0";
  switch (kind) {
    case ScenarioKind::QuantumGameAnalysis:
    case ScenarioKind::NashSearch:
      fields["prefs"] = "required object {a: [4 labels], b: [4 labels]}, each a permutation of 00,01,10,11, most preferred first";
      fields["mode"] = "\"joint\" (default) or \"local\"";
      fields["inits"] = "optional object {a?: \"0\"|\"1\", b?: \"0\"|\"1\"} pinning initial states; unpinned inits are searched";
      fields["search"] = "optional object {restarts >= 1 (8), max_iters >= 1 (20000), step_tol > 0 (1e-10), value_tol in (0,1) (1e-6)}";
      if (kind == ScenarioKind::QuantumGameAnalysis) fields["refuter_samples"] = "integer >= 0, default 100000";
      break;
    case ScenarioKind::Quantization:
      fields["game"] = "optional object {payoff_a, payoff_b: 2x2 number arrays, labels?}; default Prisoner's Dilemma CC=(3,3) CD=(0,5) DC=(5,0) DD=(1,1)";
      fields["gamma"] = "number in [0, pi/2], default pi/2";
      fields["strategy_class"] = "\"two_parameter\" (default) or \"full_u2\"";
      fields["grid"] = "integer >= 32 points per angle, default 64";
      fields["embedding"] = "two gates for the two pure strategies, default [\"I\", \"X\"]";
      fields["opponent"] = "gate held fixed in the best-response scan and landscape, default \"Q\"";
      fields["mixture_support"] = "atoms per mixed quantum strategy, default 2";
      fields["mixture_grid"] = "points per angle of the full-U(2) grid used by mixed dynamics, default 16";
      fields["max_rounds"] = "mixed best-response rounds, default 50";
      fields["completeness_samples"] = "sampled (p,q) pairs for the completeness check, default 200";
      break;
    case ScenarioKind::PennyFlip:
      fields["penny"] = "optional object {q_moves: two gates (default [\"H\",\"H\"]), p_grid: points in [0,1] (default 101)}";
      break;
    case ScenarioKind::ClassicalSolve:
      fields["game"] = "required object {payoff_a, payoff_b: equal-shape number arrays, labels?: [..] or {a, b}}";
      break;
  }
  if (kind == ScenarioKind::Quantization || kind == ScenarioKind::PennyFlip) {
    fields["gates"] = "gate = one of I,X,Y,Z,H,C,D,Q or {theta, phi, lam} angles of U = [[e^{i phi} cos(theta/2), e^{i lam} sin(theta/2)], [-sin(theta/2), e^{i(lam-phi)} cos(theta/2)]]";
  }
  return json{{"kind", to_string(kind)}, {"fields", fields}};
}

}  // namespace qgame::cli
