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

// Quantization of 2x2 games with the Eisert-Wilkens-Lewenstein protocol,
// properness and completeness checks, finitely supported mixtures of quantum
// strategies, and the one-qubit penny-flip game.
//
// Protocol: start in |00>, entangle with J(gamma) = exp(i gamma/2 X(x)X),
// apply U_A (x) U_B, disentangle with J^dagger, measure in the
// computational basis, and pay the classical payoff of the observed cell.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgame/classical.hpp"
#include "qgame/hilbert.hpp"
#include "qgame/random.hpp"
#include "qgame/search.hpp"

namespace qgame {

/// Joint basis label k ("00","01","10","11") -> pure classical cell.
using OutcomeMap = std::array<std::pair<std::size_t, std::size_t>, 4>;

inline constexpr OutcomeMap kIdentityOutcomeMap{{{0, 0}, {0, 1}, {1, 0}, {1, 1}}};

class QuantizationScheme {
 public:
  QuantizationScheme(ClassicalGame base, double gamma, OutcomeMap outcome_map = kIdentityOutcomeMap)
      : base_(std::move(base)), gamma_(gamma), map_(outcome_map) {
    if (base_.n_a() != 2 || base_.n_b() != 2) fail(ErrorCode::ShapeMismatch, "quantization needs a 2x2 base game");
    if (!(gamma_ >= 0.0 && gamma_ <= kPi / 2.0)) fail(ErrorCode::RangeError, "gamma must lie in [0, pi/2]");
    std::array<bool, 4> hit{};
    for (const auto& [i, j] : map_) {
      if (i > 1 || j > 1) fail(ErrorCode::IndexOutOfRange, "outcome map cell out of range");
      hit[i * 2 + j] = true;
    }
    for (bool h : hit)
      if (!h) fail(ErrorCode::InvalidPermutation, "outcome map must be a bijection onto the four cells");
    entangler_ = ewl_entangler_matrix(gamma_);
  }

  const ClassicalGame& base() const { return base_; }
  double gamma() const { return gamma_; }
  const OutcomeMap& outcome_map() const { return map_; }
  const CMatrix& entangler() const { return entangler_; }

  static CMatrix ewl_entangler_matrix(double gamma) {
    // (X(x)X)^2 = I, so the exponential is cos(g/2) I + i sin(g/2) X(x)X.
    CMatrix xx = CMatrix::Zero(4, 4);
    xx(0, 3) = xx(1, 2) = xx(2, 1) = xx(3, 0) = 1.0;
    return std::cos(gamma / 2.0) * CMatrix::Identity(4, 4) + cplx(0.0, std::sin(gamma / 2.0)) * xx;
  }

 private:
  ClassicalGame base_;
  double gamma_;
  OutcomeMap map_;
  CMatrix entangler_;
};

inline UnitaryOperator ewl_entangler(double gamma) {
  if (!(gamma >= 0.0 && gamma <= kPi / 2.0)) fail(ErrorCode::RangeError, "gamma must lie in [0, pi/2]");
  return UnitaryOperator(QuantizationScheme::ewl_entangler_matrix(gamma), 1e-12);
}

/// J^dagger (U_A (x) U_B) J |00>.
inline QuantumState ewl_final_state(const QuantizationScheme& scheme, const UnitaryOperator& ua,
                                    const UnitaryOperator& ub) {
  if (ua.dim() != 2 || ub.dim() != 2) fail(ErrorCode::DimMismatch, "EWL strategies are 2x2 unitaries");
  const CMatrix& j = scheme.entangler();
  const CVector out = j.adjoint() * (kron(ua.matrix(), ub.matrix()) * j.col(0));
  return unchecked_state(out, computational_labels(4));
}

inline Payoffs expected_payoffs(const QuantizationScheme& scheme, const QuantumState& final_state) {
  Payoffs v{0.0, 0.0};
  for (std::size_t k = 0; k < 4; ++k) {
    const double pr = std::norm(final_state[k]);
    const auto [i, j] = scheme.outcome_map()[k];
    const Payoffs cell = pure_payoff(scheme.base(), i, j);
    v.a += pr * cell.a;
    v.b += pr * cell.b;
  }
  return v;
}

inline Payoffs ewl_payoff(const QuantizationScheme& scheme, const UnitaryOperator& ua, const UnitaryOperator& ub) {
  return expected_payoffs(scheme, ewl_final_state(scheme, ua, ub));
}

/// Named EWL strategies: C = identity, D = U(pi, 0) = iX, Q = U(0, pi/2) = diag(i, -i).
namespace ewl {
inline UnitaryOperator cooperate() { return su2_from_params(0.0, 0.0); }
inline UnitaryOperator defect() { return su2_from_params(kPi, 0.0); }
inline UnitaryOperator q_strategy() { return su2_from_params(0.0, kPi / 2.0); }
}  // namespace ewl

/// Pure classical strategy index -> unitary, per player.
struct Embedding {
  std::vector<UnitaryOperator> a;
  std::vector<UnitaryOperator> b;

  static Embedding symmetric(std::vector<UnitaryOperator> u) { return {u, u}; }
  /// first -> I, second -> X.
  static Embedding identity_flip() { return symmetric({gates::I2(), gates::X()}); }
};

inline void validate_embedding(const QuantizationScheme& scheme, const Embedding& e) {
  if (e.a.size() != scheme.base().n_a() || e.b.size() != scheme.base().n_b()) {
    fail(ErrorCode::IncompleteEmbedding, "embedding must assign a unitary to every pure strategy");
  }
  for (const auto& u : e.a)
    if (u.dim() != 2) fail(ErrorCode::DimMismatch, "embedded strategies must be 2x2");
  for (const auto& u : e.b)
    if (u.dim() != 2) fail(ErrorCode::DimMismatch, "embedded strategies must be 2x2");
}

struct ProperReport {
  bool proper = false;
  double max_error = 0.0;
};

/// Restricting to embedded pure strategies must reproduce the base game.
inline ProperReport check_proper(const QuantizationScheme& scheme, const Embedding& embedding, double tol) {
  validate_embedding(scheme, embedding);
  ProperReport r;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const Payoffs q = ewl_payoff(scheme, embedding.a[i], embedding.b[j]);
      const Payoffs c = pure_payoff(scheme.base(), i, j);
      r.max_error = std::max({r.max_error, std::abs(q.a - c.a), std::abs(q.b - c.b)});
    }
  }
  r.proper = r.max_error <= tol;
  return r;
}

using Mixer = std::function<UnitaryOperator(double)>;

/// Rotation with cos^2(theta/2) = p: p = 1 gives the identity, p = 0 a flip.
inline UnitaryOperator rotation_mixer(double p) {
  if (!(p >= 0.0 && p <= 1.0)) fail(ErrorCode::InvalidProbability, "mixing probability outside [0,1]");
  const double c = std::sqrt(p);
  const double s = std::sqrt(1.0 - p);
  CMatrix m(2, 2);
  m << c, -s, s, c;
  return UnitaryOperator(m);
}

struct CompleteReport {
  bool complete = false;
  double max_error = 0.0;
  ProperReport proper;
  std::size_t samples = 0;
};

/// Completeness: the mixer must reproduce the base game's mixed payoffs on
/// the four corner profiles and n_samples seeded (p, q) pairs. A complete
/// quantization is also required to be proper for the given embedding.
inline CompleteReport check_complete(const QuantizationScheme& scheme, const Embedding& embedding, const Mixer& mixer,
                                     std::size_t n_samples, double tol, std::uint64_t seed) {
  CompleteReport r;
  r.proper = check_proper(scheme, embedding, tol);
  auto probe = [&](double p, double q) {
    const Payoffs qv = ewl_payoff(scheme, mixer(p), mixer(q));
    const Payoffs cv = mixed_payoff(scheme.base(), MixedProfile::two_by_two(p, q));
    r.max_error = std::max({r.max_error, std::abs(qv.a - cv.a), std::abs(qv.b - cv.b)});
    ++r.samples;
  };
  for (double p : {1.0, 0.0})
    for (double q : {1.0, 0.0}) probe(p, q);
  Rng rng = derived_rng(seed, 0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t k = 0; k < n_samples; ++k) {
    const double p = u(rng);
    const double q = u(rng);
    probe(p, q);
  }
  r.complete = r.proper.proper && r.max_error <= tol;
  return r;
}

enum class StrategyClass { TwoParameter, FullU2 };

inline const char* to_string(StrategyClass c) { return c == StrategyClass::TwoParameter ? "two_parameter" : "full_u2"; }

/// Grid over a strategy class. TwoParameter: theta in [0, pi] and
/// phi in [0, pi/2], both endpoints included. FullU2: theta in [0, pi]
/// inclusive, phi and lam over [0, 2 pi) exclusive.
struct StrategyGrid {
  StrategyClass cls;
  std::size_t resolution;

  StrategyGrid(StrategyClass c, std::size_t n) : cls(c), resolution(n) {
    if (n < 2) fail(ErrorCode::RangeError, "grid resolution must be at least 2");
  }

  std::size_t size() const {
    return cls == StrategyClass::TwoParameter ? resolution * resolution : resolution * resolution * resolution;
  }

  UnitaryParams2 params(std::size_t index) const {
    const double n = static_cast<double>(resolution);
    const double step_theta = kPi / (n - 1.0);
    if (cls == StrategyClass::TwoParameter) {
      const std::size_t it = index / resolution, ip = index % resolution;
      return raw(step_theta * double(it), (kPi / 2.0) / (n - 1.0) * double(ip), 0.0);
    }
    const std::size_t it = index / (resolution * resolution);
    const std::size_t ip = (index / resolution) % resolution;
    const std::size_t il = index % resolution;
    return raw(step_theta * double(it), kTwoPi / n * double(ip), kTwoPi / n * double(il));
  }

 private:
  static UnitaryParams2 raw(double t, double p, double l) {
    UnitaryParams2 u;
    u.theta = t;
    u.phi = p;
    u.lam = l;
    return u;
  }
};

struct ScanResult {
  UnitaryParams2 params;
  UnitaryOperator unitary;
  double payoff;          // mover's payoff at the argmax
  std::size_t grid_index;
};

/// Exhaustive grid scan of the mover's payoff against a fixed opponent.
/// Ties resolve to the smallest grid index.
inline ScanResult ewl_best_response_scan(const QuantizationScheme& scheme, Player mover,
                                         const UnitaryOperator& fixed_opponent, const StrategyGrid& grid) {
  if (grid.resolution < 32) fail(ErrorCode::RangeError, "best-response scans need at least 32 points per angle");
  double best = -INFINITY;
  std::size_t arg = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const UnitaryParams2 p = grid.params(k);
    const UnitaryOperator u(su2_matrix(p.theta, p.phi, p.lam));
    const Payoffs v = mover == Player::A ? ewl_payoff(scheme, u, fixed_opponent) : ewl_payoff(scheme, fixed_opponent, u);
    const double mine = mover == Player::A ? v.a : v.b;
    if (mine > best + 1e-12) {  // exact ties keep the smallest index
      best = mine;
      arg = k;
    }
  }
  const UnitaryParams2 p = grid.params(arg);
  return {p, UnitaryOperator(su2_matrix(p.theta, p.phi, p.lam)), best, arg};
}

/// Finitely supported distribution over 2x2 unitaries.
class MixedQuantumStrategy {
 public:
  struct Atom {
    double weight;
    UnitaryOperator unitary;
  };

  explicit MixedQuantumStrategy(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) fail(ErrorCode::InvalidProbability, "mixed quantum strategy needs at least one atom");
    double total = 0.0;
    for (const auto& a : atoms_) {
      if (!(a.weight >= 0.0)) fail(ErrorCode::InvalidProbability, "atom weights must be non-negative");
      if (a.unitary.dim() != 2) fail(ErrorCode::DimMismatch, "atoms must be 2x2 unitaries");
      total += a.weight;
    }
    if (std::abs(total - 1.0) > kProbabilityTol) fail(ErrorCode::InvalidProbability, "atom weights must sum to 1");
  }

  static MixedQuantumStrategy pure(UnitaryOperator u) { return MixedQuantumStrategy({{1.0, std::move(u)}}); }

  /// Uniform mixture over the given unitaries.
  static MixedQuantumStrategy uniform(const std::vector<UnitaryOperator>& us) {
    std::vector<Atom> atoms;
    for (const auto& u : us) atoms.push_back({1.0 / double(us.size()), u});
    return MixedQuantumStrategy(std::move(atoms));
  }

  const std::vector<Atom>& atoms() const { return atoms_; }

 private:
  std::vector<Atom> atoms_;
};

inline Payoffs mixed_quantum_payoff(const QuantizationScheme& scheme, const MixedQuantumStrategy& ma,
                                    const MixedQuantumStrategy& mb) {
  Payoffs v{0.0, 0.0};
  for (const auto& x : ma.atoms()) {
    for (const auto& y : mb.atoms()) {
      const Payoffs p = ewl_payoff(scheme, x.unitary, y.unitary);
      v.a += x.weight * y.weight * p.a;
      v.b += x.weight * y.weight * p.b;
    }
  }
  return v;
}

struct MixedDynamicsRound {
  double best_response_a;  // A's best grid payoff against B's restricted equilibrium mixture
  double best_response_b;
  Payoffs payoffs;         // restricted equilibrium payoffs
  bool moved;              // some pool grew
};

struct MixedDynamicsResult {
  MixedQuantumStrategy a;
  MixedQuantumStrategy b;
  Payoffs payoffs;
  bool converged;
  std::vector<MixedDynamicsRound> rounds;
};

namespace detail {

inline std::pair<UnitaryOperator, double> grid_best_reply(const QuantizationScheme& scheme, Player mover,
                                                          const MixedQuantumStrategy& opponent,
                                                          const std::vector<UnitaryOperator>& candidates) {
  double best = -INFINITY;
  std::size_t arg = 0;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const auto mine = MixedQuantumStrategy::pure(candidates[k]);
    const Payoffs v = mover == Player::A ? mixed_quantum_payoff(scheme, mine, opponent)
                                         : mixed_quantum_payoff(scheme, opponent, mine);
    const double x = mover == Player::A ? v.a : v.b;
    // Rounding noise must not reorder exact ties: smallest index wins.
    if (x > best + 1e-12) {
      best = x;
      arg = k;
    }
  }
  return {candidates[arg], best};
}

}  // namespace detail

namespace detail {

/// Calls f on every k-subset of {0..n-1} in lexicographic order until f
/// returns true. Returns whether some call did.
template <class F>
bool for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k == 0 || k > n) return false;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (f(idx)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Weights on `cols` that make every row in `rows` of `t` earn the same
/// value. Empty when singular or not strictly positive.
inline std::optional<Eigen::VectorXd> indifference_weights(const Eigen::MatrixXd& t,
                                                           const std::vector<std::size_t>& rows,
                                                           const std::vector<std::size_t>& cols) {
  const auto k = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(k + 1, k + 1);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) m(i, j) = t(Eigen::Index(rows[i]), Eigen::Index(cols[j]));
    m(i, k) = -1.0;
    m(k, i) = 1.0;
  }
  rhs(k) = 1.0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  if (!lu.isInvertible()) return std::nullopt;
  const Eigen::VectorXd x = lu.solve(rhs);
  Eigen::VectorXd w = x.head(k);
  if ((w.array() <= 1e-12).any()) return std::nullopt;
  return w / w.sum();
}

}  // namespace detail

/// Iterated best response over mixtures of at most `support` atoms.
///
/// Both players keep a pool of atoms, seeded with the start strategies. Each
/// round solves the pool-restricted game by support enumeration (equal
/// support sizes up to `support`, first equilibrium in lexicographic order),
/// then computes each player's grid best reply to the opponent's restricted
/// equilibrium mixture. The run converges when neither best reply beats the
/// restricted equilibrium payoff by more than `tol`, which makes the final
/// profile a tol-equilibrium against every grid strategy. Otherwise the
/// improving replies join the pools. A round whose pool game has no
/// equilibrium within the support bound ends the run unconverged.
inline MixedDynamicsResult mixed_best_response_dynamics(const QuantizationScheme& scheme, const UnitaryOperator& start_a,
                                                        const UnitaryOperator& start_b, const StrategyGrid& grid,
                                                        std::size_t support, std::size_t max_rounds,
                                                        double tol = 1e-9) {
  if (support == 0) fail(ErrorCode::RangeError, "mixture support must be positive");
  std::vector<UnitaryOperator> candidates;
  candidates.reserve(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const UnitaryParams2 p = grid.params(k);
    candidates.emplace_back(su2_matrix(p.theta, p.phi, p.lam));
  }

  std::vector<UnitaryOperator> pool_a{start_a}, pool_b{start_b};
  Eigen::MatrixXd ta(1, 1), tb(1, 1);
  {
    const Payoffs v = ewl_payoff(scheme, start_a, start_b);
    ta(0, 0) = v.a;
    tb(0, 0) = v.b;
  }
  auto fill = [&] {
    const auto na = Eigen::Index(pool_a.size()), nb = Eigen::Index(pool_b.size());
    const Eigen::Index old_a = ta.rows(), old_b = ta.cols();
    ta.conservativeResize(na, nb);
    tb.conservativeResize(na, nb);
    for (Eigen::Index i = 0; i < na; ++i) {
      for (Eigen::Index j = 0; j < nb; ++j) {
        if (i < old_a && j < old_b) continue;
        const Payoffs v = ewl_payoff(scheme, pool_a[std::size_t(i)], pool_b[std::size_t(j)]);
        ta(i, j) = v.a;
        tb(i, j) = v.b;
      }
    }
  };

  // Pool-restricted equilibrium as (rows, p, cols, q).
  struct Restricted {
    std::vector<std::size_t> rows, cols;
    Eigen::VectorXd p, q;
  };
  auto solve_pool = [&]() -> std::optional<Restricted> {
    const std::size_t na = pool_a.size(), nb = pool_b.size();
    const Eigen::MatrixXd tbt = tb.transpose();
    std::optional<Restricted> out;
    for (std::size_t k = 1; k <= support && !out; ++k) {
      detail::for_each_subset(na, k, [&](const std::vector<std::size_t>& rows) {
        return detail::for_each_subset(nb, k, [&](const std::vector<std::size_t>& cols) {
          const auto q = detail::indifference_weights(ta, rows, cols);
          if (!q) return false;
          const auto p = detail::indifference_weights(tbt, cols, rows);
          if (!p) return false;
          Eigen::VectorXd full_q = Eigen::VectorXd::Zero(Eigen::Index(nb));
          Eigen::VectorXd full_p = Eigen::VectorXd::Zero(Eigen::Index(na));
          for (std::size_t j = 0; j < k; ++j) full_q(Eigen::Index(cols[j])) = (*q)(Eigen::Index(j));
          for (std::size_t i = 0; i < k; ++i) full_p(Eigen::Index(rows[i])) = (*p)(Eigen::Index(i));
          const Eigen::VectorXd row_vals = ta * full_q;
          const Eigen::VectorXd col_vals = tbt * full_p;
          const double va = full_p.dot(row_vals), vb = full_q.dot(col_vals);
          if ((row_vals.array() > va + tol).any() || (col_vals.array() > vb + tol).any()) return false;
          out = Restricted{rows, cols, *p, *q};
          return true;
        });
      });
    }
    return out;
  };
  auto mixture = [](const std::vector<UnitaryOperator>& pool, const std::vector<std::size_t>& idx,
                    const Eigen::VectorXd& w) {
    std::vector<MixedQuantumStrategy::Atom> atoms;
    for (std::size_t i = 0; i < idx.size(); ++i) atoms.push_back({w(Eigen::Index(i)), pool[idx[i]]});
    return MixedQuantumStrategy(std::move(atoms));
  };

  MixedQuantumStrategy ma = MixedQuantumStrategy::pure(start_a);
  MixedQuantumStrategy mb = MixedQuantumStrategy::pure(start_b);
  std::vector<MixedDynamicsRound> rounds;
  bool converged = false;
  for (std::size_t r = 0; r < max_rounds; ++r) {
    const auto eq = solve_pool();
    if (!eq) break;
    ma = mixture(pool_a, eq->rows, eq->p);
    mb = mixture(pool_b, eq->cols, eq->q);
    const Payoffs v = mixed_quantum_payoff(scheme, ma, mb);
    auto [ua, va] = detail::grid_best_reply(scheme, Player::A, mb, candidates);
    auto [ub, vb] = detail::grid_best_reply(scheme, Player::B, ma, candidates);
    const bool grow_a = va > v.a + tol, grow_b = vb > v.b + tol;
    rounds.push_back({va, vb, v, grow_a || grow_b});
    if (!grow_a && !grow_b) {
      converged = true;
      break;
    }
    if (grow_a) pool_a.push_back(std::move(ua));
    if (grow_b) pool_b.push_back(std::move(ub));
    fill();
  }
  const Payoffs v = mixed_quantum_payoff(scheme, ma, mb);
  return {std::move(ma), std::move(mb), v, converged, std::move(rounds)};
}

/// Penny flip on one qubit starting at |0> (heads): quantum move, classical
/// flip with probability p (mixed at the probability level), quantum move.
/// Returns the probability of measuring heads at the end.
inline double pennyflip_play(const UnitaryOperator& first, const UnitaryOperator& last, double p_flip) {
  if (!(p_flip >= 0.0 && p_flip <= 1.0)) fail(ErrorCode::RangeError, "flip probability outside [0,1]");
  if (first.dim() != 2 || last.dim() != 2) fail(ErrorCode::DimMismatch, "penny-flip moves are 2x2 unitaries");
  const CVector start = CVector::Unit(2, 0);
  const CVector after_first = first.matrix() * start;
  CVector flipped(2);
  flipped << after_first(1), after_first(0);
  const double keep = std::norm((last.matrix() * after_first)(0));
  const double flip = std::norm((last.matrix() * flipped)(0));
  return (1.0 - p_flip) * keep + p_flip * flip;
}

}  // namespace qgame
