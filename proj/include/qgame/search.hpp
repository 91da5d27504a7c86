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

// Coordinates for single- and two-qubit unitaries, plus seeded derivative-free
// searches over strategy profiles: Nash-profile search against the
// equilibrium ray, best responses, and a unilateral-deviation check. The last
// two are extensions beyond the equilibrium-state definition and are labeled
// as such wherever they are reported.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Eigenvalues>

#include "qgame/hilbert.hpp"
#include "qgame/nelder_mead.hpp"
#include "qgame/quantum_game.hpp"
#include "qgame/random.hpp"

namespace qgame {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline double wrap_two_pi(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

/// Three-angle single-qubit unitary coordinates.
///
///   U(theta, phi, lam) = [ e^{i phi} cos(theta/2)    i e^{i lam} sin(theta/2)       ]
///                        [ i sin(theta/2)            e^{i(lam - phi)} cos(theta/2)  ]
///
/// lam = 0 gives the two-parameter family U(theta, phi); lam is a relative
/// phase on the second column. theta = pi is the bit flip iX. The family is
/// S^dagger V S for the real off-diagonal form V and S = diag(1, i), so it
/// reaches every U(2) element up to a global phase. Construction folds the angles into theta in [0, pi] and
/// phi, lam in [0, 2 pi); the folded matrix equals the original up to sign.
struct UnitaryParams2 {
  double theta = 0.0;
  double phi = 0.0;
  double lam = 0.0;

  UnitaryParams2() = default;
  UnitaryParams2(double t, double p, double l) {
    if (!std::isfinite(t) || !std::isfinite(p) || !std::isfinite(l)) {
      fail(ErrorCode::NonFinite, "unitary angles must be finite");
    }
    double tt = std::fmod(t, 2.0 * kTwoPi);
    if (tt < 0) tt += 2.0 * kTwoPi;
    // U(theta + 2pi) = -U(theta): a global phase only.
    if (tt >= kTwoPi) tt -= kTwoPi;
    // U(2pi - theta, phi + pi, lam) = U(theta, phi, lam) exactly.
    if (tt > kPi) {
      tt = kTwoPi - tt;
      p += kPi;
    }
    theta = tt;
    phi = wrap_two_pi(p);
    lam = wrap_two_pi(l);
  }
};

inline CMatrix su2_matrix(double theta, double phi, double lam) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  CMatrix m(2, 2);
  m(0, 0) = std::polar(c, phi);
  m(0, 1) = cplx(0.0, 1.0) * std::polar(s, lam);
  m(1, 0) = cplx(0.0, s);
  m(1, 1) = std::polar(c, lam - phi);
  return m;
}

inline UnitaryOperator su2_from_params(const UnitaryParams2& p) {
  return UnitaryOperator(su2_matrix(p.theta, p.phi, p.lam), 1e-12);
}

inline UnitaryOperator su2_from_params(double theta, double phi, double lam = 0.0) {
  return su2_from_params(UnitaryParams2(theta, phi, lam));
}

/// Sixteen real coordinates of a 4x4 Hermitian generator H:
/// params[0..3] are the diagonal, then for each upper pair (r, c) in
/// row-major order (0,1),(0,2),(0,3),(1,2),(1,3),(2,3) a real and an
/// imaginary part. The unitary is exp(i H).
struct UnitaryParams4 {
  std::array<double, 16> params{};

  UnitaryParams4() = default;
  explicit UnitaryParams4(const std::array<double, 16>& p) : params(p) {
    for (double v : params)
      if (!std::isfinite(v)) fail(ErrorCode::NonFinite, "generator coordinates must be finite");
  }
};

inline CMatrix hermitian_from_params(const std::array<double, 16>& p) {
  CMatrix h = CMatrix::Zero(4, 4);
  for (int k = 0; k < 4; ++k) h(k, k) = p[static_cast<std::size_t>(k)];
  std::size_t idx = 4;
  for (int r = 0; r < 4; ++r) {
    for (int c = r + 1; c < 4; ++c) {
      const cplx v(p[idx], p[idx + 1]);
      h(r, c) = v;
      h(c, r) = std::conj(v);
      idx += 2;
    }
  }
  return h;
}

/// exp(i H) through the spectral decomposition of H.
inline CMatrix expi_hermitian(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const CMatrix& v = es.eigenvectors();
  Eigen::VectorXcd phases(h.rows());
  for (Eigen::Index k = 0; k < h.rows(); ++k) phases(k) = std::polar(1.0, es.eigenvalues()(k));
  return v * phases.asDiagonal() * v.adjoint();
}

inline UnitaryOperator u4_from_params(const UnitaryParams4& p) {
  return UnitaryOperator(expi_hermitian(hermitian_from_params(p.params)), kUnitaryTol);
}

/// Bloch-sphere initial state cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
inline QuantumState bloch_state(double theta, double phi) {
  CVector v(2);
  v(0) = std::cos(theta / 2.0);
  v(1) = std::polar(std::sin(theta / 2.0), phi);
  return make_state(v);
}

struct SearchConfig {
  std::size_t restarts = 8;
  std::size_t max_iters = 20000;
  double step_tol = 1e-10;
  double value_tol = 1e-6;
  std::uint64_t seed = 0;

  void validate() const {
    if (restarts == 0) fail(ErrorCode::InvalidConfig, "search.restarts must be positive");
    if (max_iters == 0) fail(ErrorCode::InvalidConfig, "search.max_iters must be positive");
    if (!(step_tol > 0)) fail(ErrorCode::InvalidConfig, "search.step_tol must be > 0");
    if (!(value_tol > 0) || !(value_tol < 1)) fail(ErrorCode::InvalidConfig, "search.value_tol must be in (0, 1)");
  }
};

/// Optional pins on the players' initial states. Unpinned initial states are
/// searched over Bloch coordinates.
struct InitPins {
  std::optional<QuantumState> a;
  std::optional<QuantumState> b;

  const std::optional<QuantumState>& of(Player p) const { return p == Player::A ? a : b; }
};

// Flat coordinates for one player's strategy: [bloch theta, bloch phi]
// (omitted when pinned) followed by 3 (local) or 16 (joint) unitary
// coordinates. All-zero coordinates mean init |0> and the identity.
class StrategyCoords {
 public:
  StrategyCoords(StrategyMode mode, std::optional<QuantumState> pinned)
      : mode_(mode), pinned_(std::move(pinned)) {}

  std::size_t size() const { return init_size() + unitary_size(); }
  std::size_t init_size() const { return pinned_ ? 0 : 2; }
  std::size_t unitary_size() const { return mode_ == StrategyMode::JointUnitary ? 16 : 3; }

  Strategy decode(const double* x) const {
    QuantumState init = pinned_ ? *pinned_ : bloch_state(x[0], x[1]);
    const double* u = x + init_size();
    if (mode_ == StrategyMode::JointUnitary) {
      std::array<double, 16> p{};
      std::copy(u, u + 16, p.begin());
      return {std::move(init), u4_from_params(UnitaryParams4(p))};
    }
    return {std::move(init), UnitaryOperator(su2_matrix(u[0], u[1], u[2]))};
  }

  void randomize(double* x, Rng& rng) const {
    std::uniform_real_distribution<double> ang(0.0, kTwoPi);
    std::uniform_real_distribution<double> gen(-kPi, kPi);
    for (std::size_t k = 0; k < init_size(); ++k) x[k] = ang(rng);
    for (std::size_t k = 0; k < unitary_size(); ++k) {
      x[init_size() + k] = mode_ == StrategyMode::JointUnitary ? gen(rng) : ang(rng);
    }
  }

 private:
  StrategyMode mode_;
  std::optional<QuantumState> pinned_;
};

struct SearchStats {
  std::size_t restarts_used = 0;  // random restarts consumed after the identity start
  std::size_t evaluations = 0;
  std::size_t iterations = 0;
  std::vector<double> best_trace;  // best-so-far objective value after each start
};

struct NashFound {
  StrategyProfile profile;
  double overlap;
};
struct NashNotFound {
  std::optional<StrategyProfile> best_profile;
  double best_overlap;
};
struct NashNoEquilibrium {};

struct NashSearchResult {
  std::variant<NashNoEquilibrium, NashFound, NashNotFound> outcome;
  SearchStats stats;

  bool found() const { return std::holds_alternative<NashFound>(outcome); }
};

namespace detail {

// Runs the identity start followed by seeded random restarts, stopping at the
// first start whose value reaches `target`. Ties keep the earliest start.
template <class Objective>
NelderMeadResult multistart(Objective&& f, std::size_t dim, const std::function<void(double*, Rng&)>& randomize,
                            const SearchConfig& cfg, double target, SearchStats& stats) {
  NelderMeadOptions opt;
  opt.max_iters = cfg.max_iters;
  opt.step_tol = cfg.step_tol;
  opt.value_tol = 1e-15;
  opt.target = target;

  NelderMeadResult best;
  for (std::size_t start = 0; start <= cfg.restarts; ++start) {
    std::vector<double> x0(dim, 0.0);
    if (start > 0) {
      Rng rng = derived_rng(cfg.seed, start);
      randomize(x0.data(), rng);
      stats.restarts_used = start;
    }
    NelderMeadResult r = nelder_mead(f, std::move(x0), opt);
    stats.evaluations += r.evaluations;
    stats.iterations += r.iterations;
    if (r.value < best.value) best = std::move(r);
    stats.best_trace.push_back(best.value);
    if (best.value <= target) break;
  }
  return best;
}

}  // namespace detail

/// Maximizes |<E|Q(profile)>|^2 over both players' coordinates. Found when
/// the overlap reaches 1 - value_tol.
inline NashSearchResult find_nash_profile(const QuantumGame& game, const SearchConfig& cfg, const InitPins& pins = {}) {
  cfg.validate();
  NashSearchResult result;
  const auto e = equilibrium_state(game);
  if (!e) {
    result.outcome = NashNoEquilibrium{};
    return result;
  }
  const StrategyCoords ca(game.mode(), pins.a);
  const StrategyCoords cb(game.mode(), pins.b);
  auto decode = [&](const std::vector<double>& x) {
    return StrategyProfile{ca.decode(x.data()), cb.decode(x.data() + ca.size())};
  };
  auto objective = [&](const std::vector<double>& x) {
    return 1.0 - std::norm(inner(*e, payoff_map(game, decode(x))));
  };
  auto randomize = [&](double* x, Rng& rng) {
    ca.randomize(x, rng);
    cb.randomize(x + ca.size(), rng);
  };
  const double target = cfg.value_tol * 0.1;
  const NelderMeadResult best = detail::multistart(objective, ca.size() + cb.size(), randomize, cfg, target, result.stats);

  StrategyProfile profile = decode(best.x);
  const double ov = std::norm(inner(*e, payoff_map(game, profile)));
  if (ov >= 1.0 - cfg.value_tol) {
    result.outcome = NashFound{std::move(profile), ov};
  } else {
    result.outcome = NashNotFound{std::move(profile), ov};
  }
  return result;
}

struct BestResponse {
  Strategy strategy;
  double overlap;  // mover's |<M_mover|Q(profile)>|^2
  SearchStats stats;
};

inline StrategyProfile with_strategy(Player mover, Strategy mine, Strategy other) {
  return mover == Player::A ? StrategyProfile{std::move(mine), std::move(other)}
                            : StrategyProfile{std::move(other), std::move(mine)};
}

/// Maximizes the mover's own overlap with the opponent's strategy held fixed.
inline BestResponse best_response(const QuantumGame& game, Player mover, const Strategy& fixed,
                                  const SearchConfig& cfg, const std::optional<QuantumState>& pin = std::nullopt) {
  cfg.validate();
  const StrategyCoords coords(game.mode(), pin);
  auto objective = [&](const std::vector<double>& x) {
    return 1.0 - overlap(game, mover, payoff_map(game, with_strategy(mover, coords.decode(x.data()), fixed)));
  };
  auto randomize = [&](double* x, Rng& rng) { coords.randomize(x, rng); };
  SearchStats stats;
  const NelderMeadResult best = detail::multistart(objective, coords.size(), randomize, cfg, cfg.value_tol * 0.1, stats);
  Strategy s = coords.decode(best.x.data());
  const double ov = overlap(game, mover, payoff_map(game, with_strategy(mover, s, fixed)));
  return {std::move(s), ov, std::move(stats)};
}

struct ImprovingDeviation {
  Player player;
  Strategy strategy;
  double gain;
};

struct DeviationCheck {
  std::optional<ImprovingDeviation> deviation;  // empty: no improving deviation found
  double overlap_a;
  double overlap_b;
  double best_a;
  double best_b;
};

/// Unilateral-deviation test (extension): each player best-responds to the
/// other's strategy; a deviation is reported when it raises that player's
/// own overlap by more than value_tol. Player A is checked first.
inline DeviationCheck deviation_nash_check(const QuantumGame& game, const StrategyProfile& profile,
                                           const SearchConfig& cfg) {
  const QuantumState out = payoff_map(game, profile);
  DeviationCheck r{std::nullopt, overlap(game, Player::A, out), overlap(game, Player::B, out), 0.0, 0.0};
  BestResponse ba = best_response(game, Player::A, profile.b, cfg);
  BestResponse bb = best_response(game, Player::B, profile.a, cfg);
  r.best_a = ba.overlap;
  r.best_b = bb.overlap;
  if (ba.overlap - r.overlap_a > cfg.value_tol) {
    r.deviation = ImprovingDeviation{Player::A, std::move(ba.strategy), ba.overlap - r.overlap_a};
  } else if (bb.overlap - r.overlap_b > cfg.value_tol) {
    r.deviation = ImprovingDeviation{Player::B, std::move(bb.strategy), bb.overlap - r.overlap_b};
  }
  return r;
}

/// Distance between unitaries modulo global phase:
/// min over alpha of max_ij |u_ij - e^{i alpha} v_ij| (alpha from the trace overlap).
inline double phase_distance(const CMatrix& u, const CMatrix& v) {
  const cplx t = (v.adjoint() * u).trace();
  const cplx ph = std::abs(t) > 0 ? t / std::abs(t) : cplx(1.0);
  return (u - ph * v).cwiseAbs().maxCoeff();
}

/// Recovers three-angle coordinates for a 2x2 unitary by simplex search on
/// 2 - |tr(U(p)^dagger target)| from seeded starts.
inline UnitaryParams2 fit_su2_params(const UnitaryOperator& target, std::uint64_t seed, std::size_t starts = 8) {
  if (target.dim() != 2) fail(ErrorCode::DimMismatch, "fit_su2_params expects a 2x2 unitary");
  auto objective = [&](const std::vector<double>& x) {
    return 2.0 - std::abs((su2_matrix(x[0], x[1], x[2]).adjoint() * target.matrix()).trace());
  };
  NelderMeadOptions opt;
  opt.max_iters = 5000;
  opt.step_tol = 1e-12;
  opt.value_tol = 0.0;
  opt.target = 1e-15;
  NelderMeadResult best;
  for (std::size_t s = 0; s < starts; ++s) {
    Rng rng = derived_rng(seed, s);
    std::uniform_real_distribution<double> ang(0.0, kTwoPi);
    std::vector<double> x0{ang(rng) / 2.0, ang(rng), ang(rng)};
    NelderMeadResult r = nelder_mead(objective, std::move(x0), opt);
    if (r.value < best.value) best = std::move(r);
    if (best.reached_target) break;
  }
  return UnitaryParams2(best.x[0], best.x[1], best.x[2]);
}

}  // namespace qgame
