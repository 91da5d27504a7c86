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

// Dispatches a validated scenario to the owning module and collects a
// deterministic report. Every result item carries a provenance flag and the
// tolerance it was judged at; wall-clock time is kept out of the report so
// that repeated runs are byte-identical.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "qgame/cli/scenario.hpp"
#include "qgame/classical.hpp"
#include "qgame/quantize.hpp"
#include "qgame/quantum_game.hpp"
#include "qgame/search.hpp"

namespace qgame::cli {

inline constexpr const char* kPaperLiteral = "paper-literal";
inline constexpr const char* kExtension = "extension";
inline constexpr const char* kCitedConstruction = "per cited construction";

struct CsvTable {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

struct RunReport {
  json scenario;
  json results = json::array();
  json diagnostics = json::object();
  std::vector<CsvTable> tables;
  double elapsed_seconds = 0.0;  // not serialized

  void add(const std::string& name, const char* provenance, double tolerance, json value) {
    results.push_back({{"name", name}, {"provenance", provenance}, {"tolerance", tolerance}, {"value", std::move(value)}});
  }

  const json* find(const std::string& name) const {
    for (const auto& r : results)
      if (r.at("name") == name) return &r;
    return nullptr;
  }

  json to_json() const {
    return json{{"tool", "qgame"}, {"format_version", 1}, {"scenario", scenario}, {"results", results},
                {"diagnostics", diagnostics}};
  }
};

namespace serial {

inline json complex_vector(const CVector& v) {
  json re = json::array(), im = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    re.push_back(v(k).real());
    im.push_back(v(k).imag());
  }
  return json{{"re", re}, {"im", im}};
}

inline json state(const QuantumState& s) {
  json j = complex_vector(s.amplitudes());
  j["labels"] = s.labels();
  return j;
}

inline json unitary(const UnitaryOperator& u) {
  json re = json::array(), im = json::array();
  for (std::size_t r = 0; r < u.dim(); ++r) {
    json rr = json::array(), ii = json::array();
    for (std::size_t c = 0; c < u.dim(); ++c) {
      rr.push_back(u(r, c).real());
      ii.push_back(u(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ii);
  }
  return json{{"re", re}, {"im", im}};
}

inline json strategy(const Strategy& s) { return json{{"init", state(s.init)}, {"unitary", unitary(s.unitary)}}; }

inline json profile(const StrategyProfile& p) { return json{{"a", strategy(p.a)}, {"b", strategy(p.b)}}; }

inline json ranked(const std::vector<RankedOutcome>& r) {
  json j = json::array();
  for (const auto& o : r) j.push_back({{"label", o.label}, {"probability", o.probability}});
  return j;
}

inline json outcome(const OutcomeReport& o) {
  return json{{"state", state(o.outcome)},
              {"ranked_a", ranked(o.ranked_a)},
              {"ranked_b", ranked(o.ranked_b)},
              {"overlap_a", o.overlap_a},
              {"overlap_b", o.overlap_b}};
}

inline json params(const UnitaryParams2& p) { return json{{"theta", p.theta}, {"phi", p.phi}, {"lam", p.lam}}; }

inline json payoffs(const Payoffs& p) { return json{{"a", p.a}, {"b", p.b}}; }

inline json stats(const SearchStats& s) {
  return json{{"restarts_used", s.restarts_used}, {"evaluations", s.evaluations}, {"iterations", s.iterations},
              {"best_trace", s.best_trace}};
}

inline json mixed(const MixedQuantumStrategy& m) {
  json atoms = json::array();
  for (const auto& a : m.atoms()) atoms.push_back({{"weight", a.weight}, {"unitary", unitary(a.unitary)}});
  return atoms;
}

}  // namespace serial

inline const char* kDichotomyExplanation =
    "An equilibrium state must be simultaneously as close as any superposition to both players' most "
    "preferred basis elements. The best overlap with a unit vector M is 1 and is reached only on the "
    "ray of M, so an equilibrium exists exactly when both players share the same most preferred element.";

namespace detail {

inline StrategyProfile identity_profile(const QuantumGame& game, const InitPins& pins) {
  const std::size_t d = unitary_dim(game.mode());
  return {{pins.a.value_or(basis_state("0")), UnitaryOperator::identity(d)},
          {pins.b.value_or(basis_state("0")), UnitaryOperator::identity(d)}};
}

inline json nash_search_json(const NashSearchResult& r) {
  json j;
  if (const auto* f = std::get_if<NashFound>(&r.outcome)) {
    j = {{"status", "Found"}, {"overlap", f->overlap}, {"profile", serial::profile(f->profile)}};
  } else if (const auto* n = std::get_if<NashNotFound>(&r.outcome)) {
    j = {{"status", "NotFound"}, {"best_overlap", n->best_overlap}};
    if (n->best_profile) j["best_profile"] = serial::profile(*n->best_profile);
  } else {
    j = {{"status", "NoEquilibriumExists"}, {"explanation", kDichotomyExplanation}};
  }
  j["restarts_used"] = r.stats.restarts_used;
  return j;
}

inline json deviation_json(const DeviationCheck& d) {
  json j{{"overlap_a", d.overlap_a}, {"overlap_b", d.overlap_b}, {"best_response_a", d.best_a},
         {"best_response_b", d.best_b}};
  if (d.deviation) {
    j["status"] = "ImprovingDeviation";
    j["player"] = to_string(d.deviation->player);
    j["gain"] = d.deviation->gain;
    j["strategy"] = serial::strategy(d.deviation->strategy);
  } else {
    j["status"] = "NoImprovingDeviation";
  }
  return j;
}

inline void run_quantum(const Scenario& s, RunReport& rep) {
  const QuantumGame game = s.quantum_game();
  const InitPins pins = s.init_pins();
  const auto eq = equilibrium_states(game);

  json eqj{{"count", eq.size()}, {"top_a", game.basis().label(game.pref_a().most_preferred())},
           {"top_b", game.basis().label(game.pref_b().most_preferred())}, {"explanation", kDichotomyExplanation}};
  json states = json::array();
  for (const auto& e : eq) states.push_back(serial::state(e));
  eqj["states"] = states;
  rep.add("equilibrium_states", kPaperLiteral, kEquilibriumTol, eqj);

  if (s.kind == ScenarioKind::QuantumGameAnalysis) {
    if (!eq.empty()) {
      const EquilibriumVerdict v = is_equilibrium_state(game, eq.front(), s.refuter_samples, s.seed);
      json vj{{"certified", v.certified}, {"samples_checked", v.samples_checked}};
      if (v.witness) vj["witness"] = serial::state(*v.witness);
      rep.add("equilibrium_certificate", kPaperLiteral, kEquilibriumTol, vj);
    } else {
      const MinOverlapSample m = sampled_max_min_overlap(game, s.refuter_samples, s.seed);
      rep.add("sampled_max_min_overlap", kPaperLiteral, kEquilibriumTol,
              json{{"max_min_overlap", m.max_min_overlap}, {"samples", m.samples}});
    }
  }

  const NashSearchResult found = find_nash_profile(game, s.search, pins);
  rep.add("nash_profile", kPaperLiteral, s.search.value_tol, nash_search_json(found));
  rep.diagnostics["nash_search"] = serial::stats(found.stats);

  StrategyProfile probe = identity_profile(game, pins);
  if (const auto* f = std::get_if<NashFound>(&found.outcome)) {
    probe = f->profile;
    const NashCheck nc = is_nash_profile(game, f->profile, s.search.value_tol);
    rep.add("nash_verification", kPaperLiteral, s.search.value_tol,
            json{{"status", to_string(nc.status)}, {"overlap", nc.overlap}});
  }
  rep.add("outcome", kPaperLiteral, kNormTol, serial::outcome(outcome_report(game, probe)));

  if (s.kind == ScenarioKind::NashSearch) {
    const StrategyProfile base = identity_profile(game, pins);
    for (Player p : {Player::A, Player::B}) {
      const Strategy& fixed = p == Player::A ? base.b : base.a;
      const BestResponse br = best_response(game, p, fixed, s.search, pins.of(p));
      rep.add(std::string("best_response_") + (p == Player::A ? "a" : "b") + "_vs_identity", kExtension,
              s.search.value_tol, json{{"overlap", br.overlap}, {"strategy", serial::strategy(br.strategy)}});
      rep.diagnostics[std::string("best_response_") + (p == Player::A ? "a" : "b")] = serial::stats(br.stats);
    }
  }
  rep.add("deviation_check", kExtension, s.search.value_tol, deviation_json(deviation_nash_check(game, probe, s.search)));
}

inline void run_quantization(const Scenario& s, RunReport& rep) {
  const QuantizationScheme scheme(s.classical_game(), s.gamma);
  const Embedding emb = s.quantum_embedding();
  constexpr double kProperTol = 1e-12;
  constexpr double kCompleteTol = 1e-9;

  json cells = json::array();
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      cells.push_back({{"a", scheme.base().labels_a()[i]}, {"b", scheme.base().labels_b()[j]},
                       {"quantum", serial::payoffs(ewl_payoff(scheme, emb.a[i], emb.b[j]))},
                       {"classical", serial::payoffs(pure_payoff(scheme.base(), i, j))}});
    }
  rep.add("embedded_payoffs", kCitedConstruction, kProperTol, cells);

  const ProperReport pr = check_proper(scheme, emb, kProperTol);
  rep.add("proper", kPaperLiteral, kProperTol, json{{"proper", pr.proper}, {"max_error", pr.max_error}});
  const CompleteReport cr = check_complete(scheme, emb, rotation_mixer, s.completeness_samples, kCompleteTol, s.seed);
  rep.add("complete", kPaperLiteral, kCompleteTol,
          json{{"complete", cr.complete}, {"max_error", cr.max_error}, {"samples", cr.samples}});

  const UnitaryOperator opp = s.opponent.unitary();
  const Payoffs self = ewl_payoff(scheme, opp, opp);
  const ScanResult scan = ewl_best_response_scan(scheme, Player::A, opp, StrategyGrid(s.strategy_class, s.grid));
  rep.add("best_response_scan", kCitedConstruction, 0.0,
          json{{"class", to_string(s.strategy_class)},
               {"grid", s.grid},
               {"opponent", s.opponent.to_json()},
               {"symmetric_profile_payoff", serial::payoffs(self)},
               {"best_payoff", scan.payoff},
               {"best_params", serial::params(scan.params)},
               {"gain_over_symmetric", scan.payoff - self.a}});

  const StrategyGrid mgrid(StrategyClass::FullU2, s.mixture_grid);
  const MixedDynamicsResult dyn = mixed_best_response_dynamics(scheme, emb.a[0], emb.b[0], mgrid, s.mixture_support,
                                                               s.max_rounds);
  json rounds = json::array();
  for (const auto& r : dyn.rounds) {
    rounds.push_back({{"best_response_a", r.best_response_a}, {"best_response_b", r.best_response_b},
                      {"payoffs", serial::payoffs(r.payoffs)}, {"moved", r.moved}});
  }
  rep.add("mixed_best_response_dynamics", kCitedConstruction, 1e-9,
          json{{"converged", dyn.converged},
               {"payoffs", serial::payoffs(dyn.payoffs)},
               {"cell_00", serial::payoffs(pure_payoff(scheme.base(), 0, 0))},
               {"cell_11", serial::payoffs(pure_payoff(scheme.base(), 1, 1))},
               {"a", serial::mixed(dyn.a)},
               {"b", serial::mixed(dyn.b)}});
  rep.diagnostics["mixed_dynamics_rounds"] = rounds;

  CsvTable land{"landscape", {"theta_a", "phi_a", "payoff_a", "payoff_b"}, {}};
  const StrategyGrid lgrid(StrategyClass::TwoParameter, s.grid);
  for (std::size_t k = 0; k < lgrid.size(); ++k) {
    const UnitaryParams2 p = lgrid.params(k);
    const Payoffs v = ewl_payoff(scheme, UnitaryOperator(su2_matrix(p.theta, p.phi, 0.0)), opp);
    land.rows.push_back({p.theta, p.phi, v.a, v.b});
  }
  rep.tables.push_back(std::move(land));
}

inline void run_pennyflip(const Scenario& s, RunReport& rep) {
  const UnitaryOperator first = s.q_moves[0].unitary();
  const UnitaryOperator last = s.q_moves[1].unitary();
  CsvTable t{"pennyflip", {"p", "win_prob"}, {}};
  double lo = 1.0, hi = 0.0;
  for (std::size_t k = 0; k < s.p_grid; ++k) {
    const double p = double(k) / double(s.p_grid - 1);
    const double w = pennyflip_play(first, last, p);
    lo = std::min(lo, w);
    hi = std::max(hi, w);
    t.rows.push_back({p, w});
  }
  rep.add("win_probability", kCitedConstruction, 1e-12,
          json{{"min", lo}, {"max", hi}, {"p_grid", s.p_grid},
               {"q_moves", json::array({s.q_moves[0].to_json(), s.q_moves[1].to_json()})}});
  rep.tables.push_back(std::move(t));
}

inline void run_classical(const Scenario& s, RunReport& rep) {
  const ClassicalGame g = s.classical_game();
  json cells = json::array();
  for (std::size_t i = 0; i < g.n_a(); ++i)
    for (std::size_t j = 0; j < g.n_b(); ++j)
      cells.push_back({{"a", g.labels_a()[i]}, {"b", g.labels_b()[j]}, {"payoffs", serial::payoffs(pure_payoff(g, i, j))}});
  rep.add("pure_payoffs", kPaperLiteral, 0.0, cells);

  json pn = json::array();
  for (const auto& [i, j] : pure_nash(g)) pn.push_back({{"a", g.labels_a()[i]}, {"b", g.labels_b()[j]}});
  rep.add("pure_nash", kPaperLiteral, 0.0, pn);

  if (g.n_a() == 2 && g.n_b() == 2) {
    const MixedNashSet ms = mixed_nash_2x2(g);
    json profiles = json::array();
    for (const auto& m : ms.profiles) {
      profiles.push_back({{"p", std::vector<double>(m.p.data(), m.p.data() + m.p.size())},
                          {"q", std::vector<double>(m.q.data(), m.q.data() + m.q.size())},
                          {"payoffs", serial::payoffs(mixed_payoff(g, m))},
                          {"verified", is_mixed_nash(g, m)}});
    }
    rep.add("mixed_nash", kPaperLiteral, kNashCheckTol, json{{"profiles", profiles}, {"degenerate", ms.degenerate}});
  }
}

}  // namespace detail

/// Runs a scenario. Module errors propagate with the scenario kind attached.
inline RunReport run(const Scenario& s) {
  const auto t0 = std::chrono::steady_clock::now();
  RunReport rep;
  rep.scenario = echo(s);
  rep.diagnostics["seed"] = s.seed;
  try {
    switch (s.kind) {
      case ScenarioKind::QuantumGameAnalysis:
      case ScenarioKind::NashSearch: detail::run_quantum(s, rep); break;
      case ScenarioKind::Quantization: detail::run_quantization(s, rep); break;
      case ScenarioKind::PennyFlip: detail::run_pennyflip(s, rep); break;
      case ScenarioKind::ClassicalSolve: detail::run_classical(s, rep); break;
    }
  } catch (const Error& e) {
    throw Error(e.code(), "while running " + to_string(s.kind) + " scenario: " + e.what());
  }
  json tol = json::object();
  for (const auto& r : rep.results) tol[r.at("name").get<std::string>()] = r.at("tolerance");
  rep.diagnostics["tolerances"] = tol;
  rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

enum class OutputFormat { Json, Csv };

/// %.17g, '.' decimal separator regardless of locale.
inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  for (auto& c : s)
    if (c == ',') c = '.';
  return s;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string render_csv(const CsvTable& t) {
  std::string out;
  for (std::size_t k = 0; k < t.header.size(); ++k) out += (k ? "," : "") + t.header[k];
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out += (k ? "," : "") + format_number(row[k]);
    out += '\n';
  }
  return out;
}

inline std::string render_results_csv(const RunReport& rep) {
  std::string out = "name,provenance,tolerance,value\n";
  for (const auto& r : rep.results) {
    out += csv_escape(r.at("name").get<std::string>()) + "," + csv_escape(r.at("provenance").get<std::string>()) + "," +
           format_number(r.at("tolerance").get<double>()) + "," + csv_escape(r.at("value").dump()) + "\n";
  }
  return out;
}

inline void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::IoError, "cannot write '" + p.string() + "'");
  out << content;
  if (!out) fail(ErrorCode::IoError, "write failed for '" + p.string() + "'");
}

/// Writes the report, the scenario echo, and any plot tables into out_dir.
inline std::vector<std::filesystem::path> emit(const RunReport& rep, OutputFormat format,
                                               const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir)) {
    fail(ErrorCode::IoError, "cannot create output directory '" + out_dir.string() + "'");
  }
  std::vector<std::filesystem::path> written;
  auto put = [&](const std::string& name, const std::string& content) {
    const auto p = out_dir / name;
    write_file(p, content);
    written.push_back(p);
  };
  if (format == OutputFormat::Json) {
    put("report.json", rep.to_json().dump(2) + "\n");
  } else {
    put("results.csv", render_results_csv(rep));
  }
  put("scenario.json", rep.scenario.dump(2) + "\n");
  for (const auto& t : rep.tables) put(t.name + ".csv", render_csv(t));
  return written;
}

}  // namespace qgame::cli
