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

// Two-player quantum game: each player holds an initial spin-half state and a
// unitary; the payoff map sends (|a>, U_A, |b>, U_B) to U_A U_B |ab> in the
// joint space. An equilibrium state E must be at least as close (in Born
// probability) to each player's most preferred basis element as every other
// superposition of the joint space.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qgame/hilbert.hpp"
#include "qgame/preference.hpp"
#include "qgame/random.hpp"

namespace qgame {

/// JointUnitary: each unitary acts on the whole joint space and the payoff
/// map multiplies them. LocalUnitary: each player acts on their own factor.
enum class StrategyMode { JointUnitary, LocalUnitary };

inline const char* to_string(StrategyMode m) {
  return m == StrategyMode::JointUnitary ? "joint" : "local";
}

inline std::size_t unitary_dim(StrategyMode m) { return m == StrategyMode::JointUnitary ? 4 : 2; }

enum class Player { A, B };

inline const char* to_string(Player p) { return p == Player::A ? "A" : "B"; }

struct Strategy {
  QuantumState init;
  UnitaryOperator unitary;
};

struct StrategyProfile {
  Strategy a;
  Strategy b;

  const Strategy& of(Player p) const { return p == Player::A ? a : b; }
};

class QuantumGame {
 public:
  QuantumGame(MeasurementBasis basis, PreferenceOrder pref_a, PreferenceOrder pref_b,
              StrategyMode mode = StrategyMode::JointUnitary)
      : basis_(std::move(basis)), pref_a_(std::move(pref_a)), pref_b_(std::move(pref_b)), mode_(mode) {
    if (basis_.dim() != 4) fail(ErrorCode::DimMismatch, "quantum game basis must span the 4-dim joint space");
    check_dims(pref_a_, basis_);
    check_dims(pref_b_, basis_);
  }

  /// Computational basis with preferences given as label lists.
  static QuantumGame from_labels(const std::vector<std::string>& pref_a, const std::vector<std::string>& pref_b,
                                 StrategyMode mode = StrategyMode::JointUnitary) {
    auto basis = MeasurementBasis::computational(4);
    auto a = PreferenceOrder::from_labels(pref_a, basis);
    auto b = PreferenceOrder::from_labels(pref_b, basis);
    return QuantumGame(std::move(basis), std::move(a), std::move(b), mode);
  }

  const MeasurementBasis& basis() const { return basis_; }
  const PreferenceOrder& pref_a() const { return pref_a_; }
  const PreferenceOrder& pref_b() const { return pref_b_; }
  const PreferenceOrder& pref(Player p) const { return p == Player::A ? pref_a_ : pref_b_; }
  StrategyMode mode() const { return mode_; }

  const QuantumState& top_a() const { return top(pref_a_, basis_); }
  const QuantumState& top_b() const { return top(pref_b_, basis_); }
  const QuantumState& top_of(Player p) const { return top(pref(p), basis_); }

 private:
  MeasurementBasis basis_;
  PreferenceOrder pref_a_;
  PreferenceOrder pref_b_;
  StrategyMode mode_;
};

inline void validate_profile(const QuantumGame& game, const StrategyProfile& profile) {
  if (profile.a.init.dim() != 2 || profile.b.init.dim() != 2) {
    fail(ErrorCode::DimMismatch, "initial states must be single spin-half states");
  }
  const std::size_t d = unitary_dim(game.mode());
  if (profile.a.unitary.dim() != d || profile.b.unitary.dim() != d) {
    fail(ErrorCode::ModeMismatch, std::string("strategies must carry ") + std::to_string(d) +
                                      "x" + std::to_string(d) + " unitaries in " + to_string(game.mode()) + " mode");
  }
}

/// Joint mode: U_A U_B |ab> with U_B applied first. Local mode: (U_A (x) U_B)|ab>.
inline QuantumState payoff_map(const QuantumGame& game, const StrategyProfile& profile) {
  validate_profile(game, profile);
  const QuantumState ab = tensor(profile.a.init, profile.b.init);
  if (game.mode() == StrategyMode::JointUnitary) {
    return apply(compose(profile.a.unitary, profile.b.unitary), ab);
  }
  return apply(tensor(profile.a.unitary, profile.b.unitary), ab);
}

/// |<M_player|s>|^2.
inline double overlap(const QuantumGame& game, Player p, const QuantumState& s) {
  return born_prob(s, game.basis(), game.pref(p).most_preferred());
}

/// States satisfying both equilibrium inequalities against every
/// superposition. The best achievable overlap with a unit vector M is 1,
/// reached only on the ray of M, so the set is {M} when both players share
/// their top element and empty otherwise.
inline std::vector<QuantumState> equilibrium_states(const QuantumGame& game) {
  if (game.pref_a().most_preferred() == game.pref_b().most_preferred()) return {game.top_a()};
  return {};
}

inline std::optional<QuantumState> equilibrium_state(const QuantumGame& game) {
  auto e = equilibrium_states(game);
  if (e.empty()) return std::nullopt;
  return e.front();
}

inline constexpr double kEquilibriumTol = 1e-9;

struct EquilibriumVerdict {
  bool certified = false;
  std::optional<QuantumState> witness;
  std::optional<Player> violated;  // whose inequality the witness breaks
  double witness_margin = 0.0;     // overlap(witness) - overlap(e) for that player
  std::size_t samples_checked = 0;
};

/// Analytic check plus a seeded sampling refuter. Sampling can only refute;
/// certification comes from the analytic argument. The basis tops are tried
/// before random samples since they are the extremal witnesses.
inline EquilibriumVerdict is_equilibrium_state(const QuantumGame& game, const QuantumState& e,
                                               std::size_t n_samples, std::uint64_t seed) {
  if (e.dim() != 4) fail(ErrorCode::DimMismatch, "equilibrium candidates live in the 4-dim joint space");
  const double ea = overlap(game, Player::A, e);
  const double eb = overlap(game, Player::B, e);

  EquilibriumVerdict v;
  auto check = [&](const QuantumState& s) {
    ++v.samples_checked;
    const double da = overlap(game, Player::A, s) - ea;
    const double db = overlap(game, Player::B, s) - eb;
    if (da > kEquilibriumTol || db > kEquilibriumTol) {
      v.witness = s;
      v.violated = da > kEquilibriumTol ? Player::A : Player::B;
      v.witness_margin = da > kEquilibriumTol ? da : db;
      return true;
    }
    return false;
  };

  if (check(game.top_a()) || check(game.top_b())) return v;
  Rng rng = derived_rng(seed, 0);
  for (std::size_t k = 0; k < n_samples; ++k) {
    if (check(random_state(4, rng))) return v;
  }

  const auto eq = equilibrium_state(game);
  v.certified = eq.has_value() && same_up_to_phase(*eq, e, kEquilibriumTol);
  return v;
}

struct MinOverlapSample {
  double max_min_overlap = 0.0;  // max over samples of min(|<M_A|S>|^2, |<M_B|S>|^2)
  std::optional<QuantumState> argmax;
  std::size_t samples = 0;
};

/// Sampling certificate for the no-equilibrium case: when M_A and M_B are
/// orthogonal no state can have both overlaps near 1.
inline MinOverlapSample sampled_max_min_overlap(const QuantumGame& game, std::size_t n_samples, std::uint64_t seed) {
  MinOverlapSample r;
  Rng rng = derived_rng(seed, 1);
  for (std::size_t k = 0; k < n_samples; ++k) {
    QuantumState s = random_state(4, rng);
    const double m = std::min(overlap(game, Player::A, s), overlap(game, Player::B, s));
    ++r.samples;
    if (m > r.max_min_overlap) {
      r.max_min_overlap = m;
      r.argmax = std::move(s);
    }
  }
  return r;
}

enum class NashStatus { Nash, NotNash, NoEquilibriumExists };

inline const char* to_string(NashStatus s) {
  switch (s) {
    case NashStatus::Nash: return "Nash";
    case NashStatus::NotNash: return "NotNash";
    case NashStatus::NoEquilibriumExists: return "NoEquilibriumExists";
  }
  return "?";
}

struct NashCheck {
  NashStatus status = NashStatus::NotNash;
  double overlap = 0.0;  // |<E|Q(profile)>|^2, 0 when no E exists

  explicit operator bool() const { return status == NashStatus::Nash; }
};

inline constexpr double kNashTol = 1e-9;

/// A profile is Nash when its payoff-map image lies on the equilibrium ray.
inline NashCheck is_nash_profile(const QuantumGame& game, const StrategyProfile& profile, double tol = kNashTol) {
  if (!(tol > 0)) fail(ErrorCode::RangeError, "Nash tolerance must be positive");
  const QuantumState out = payoff_map(game, profile);
  const auto e = equilibrium_state(game);
  if (!e) return {NashStatus::NoEquilibriumExists, 0.0};
  const double ov = std::norm(inner(*e, out));
  return {ov >= 1.0 - tol ? NashStatus::Nash : NashStatus::NotNash, ov};
}

struct OutcomeReport {
  QuantumState outcome;
  std::vector<RankedOutcome> ranked_a;
  std::vector<RankedOutcome> ranked_b;
  double overlap_a;
  double overlap_b;
};

inline OutcomeReport outcome_report(const QuantumGame& game, const StrategyProfile& profile) {
  QuantumState out = payoff_map(game, profile);
  auto ra = rank_outcome_distribution(game.pref_a(), game.basis(), out);
  auto rb = rank_outcome_distribution(game.pref_b(), game.basis(), out);
  const double oa = overlap(game, Player::A, out);
  const double ob = overlap(game, Player::B, out);
  return {std::move(out), std::move(ra), std::move(rb), oa, ob};
}

}  // namespace qgame
