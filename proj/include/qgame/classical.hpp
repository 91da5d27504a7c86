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

// Bimatrix games with larger-is-better utilities, their mixed extension, and
// equilibrium solvers: pure equilibria for any shape, support enumeration for
// 2x2 games.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qgame/error.hpp"

namespace qgame {

class ClassicalGame {
 public:
  ClassicalGame(Eigen::MatrixXd payoff_a, Eigen::MatrixXd payoff_b, std::vector<std::string> labels_a = {},
                std::vector<std::string> labels_b = {})
      : a_(std::move(payoff_a)), b_(std::move(payoff_b)), labels_a_(std::move(labels_a)), labels_b_(std::move(labels_b)) {
    if (a_.rows() == 0 || a_.cols() == 0) fail(ErrorCode::ShapeMismatch, "payoff matrices must be non-empty");
    if (a_.rows() != b_.rows() || a_.cols() != b_.cols()) {
      fail(ErrorCode::ShapeMismatch, "payoff_a and payoff_b shapes differ");
    }
    if (!a_.allFinite() || !b_.allFinite()) fail(ErrorCode::NonFinite, "payoff entries must be finite");
    if (labels_a_.empty())
      for (Eigen::Index i = 0; i < a_.rows(); ++i) labels_a_.push_back("s" + std::to_string(i));
    if (labels_b_.empty())
      for (Eigen::Index j = 0; j < a_.cols(); ++j) labels_b_.push_back("s" + std::to_string(j));
    if (labels_a_.size() != n_a() || labels_b_.size() != n_b()) {
      fail(ErrorCode::ShapeMismatch, "strategy label counts must match matrix shape");
    }
  }

  /// Prisoner's Dilemma with CC=(3,3), CD=(0,5), DC=(5,0), DD=(1,1). A
  /// configuration default, index 0 = C, 1 = D.
  static ClassicalGame prisoners_dilemma() {
    Eigen::MatrixXd a(2, 2), b(2, 2);
    a << 3, 0, 5, 1;
    b << 3, 5, 0, 1;
    return ClassicalGame(a, b, {"C", "D"}, {"C", "D"});
  }

  static ClassicalGame matching_pennies() {
    Eigen::MatrixXd a(2, 2);
    a << 1, -1, -1, 1;
    return ClassicalGame(a, -a, {"H", "T"}, {"H", "T"});
  }

  std::size_t n_a() const { return static_cast<std::size_t>(a_.rows()); }
  std::size_t n_b() const { return static_cast<std::size_t>(a_.cols()); }
  const Eigen::MatrixXd& payoff_a() const { return a_; }
  const Eigen::MatrixXd& payoff_b() const { return b_; }
  const std::vector<std::string>& labels_a() const { return labels_a_; }
  const std::vector<std::string>& labels_b() const { return labels_b_; }

 private:
  Eigen::MatrixXd a_;
  Eigen::MatrixXd b_;
  std::vector<std::string> labels_a_;
  std::vector<std::string> labels_b_;
};

struct Payoffs {
  double a;
  double b;
};

inline Payoffs pure_payoff(const ClassicalGame& g, std::size_t i, std::size_t j) {
  if (i >= g.n_a() || j >= g.n_b()) {
    fail(ErrorCode::IndexOutOfRange, "pure profile (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
  }
  const auto r = static_cast<Eigen::Index>(i);
  const auto c = static_cast<Eigen::Index>(j);
  return {g.payoff_a()(r, c), g.payoff_b()(r, c)};
}

inline constexpr double kProbabilityTol = 1e-12;

struct MixedProfile {
  Eigen::VectorXd p;  // over A's pure strategies
  Eigen::VectorXd q;  // over B's pure strategies

  static MixedProfile pure(std::size_t n_a, std::size_t n_b, std::size_t i, std::size_t j) {
    MixedProfile m{Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_a)),
                   Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_b))};
    m.p(static_cast<Eigen::Index>(i)) = 1.0;
    m.q(static_cast<Eigen::Index>(j)) = 1.0;
    return m;
  }

  static MixedProfile two_by_two(double p0, double q0) {
    Eigen::VectorXd p(2), q(2);
    p << p0, 1.0 - p0;
    q << q0, 1.0 - q0;
    return {p, q};
  }
};

inline void validate_distribution(const Eigen::VectorXd& v, const char* name) {
  if (!v.allFinite() || (v.array() < 0.0).any()) {
    fail(ErrorCode::InvalidProbability, std::string(name) + " has negative or non-finite entries");
  }
  if (std::abs(v.sum() - 1.0) > kProbabilityTol) {
    fail(ErrorCode::InvalidProbability, std::string(name) + " does not sum to 1");
  }
}

inline void validate_profile(const ClassicalGame& g, const MixedProfile& m) {
  if (static_cast<std::size_t>(m.p.size()) != g.n_a() || static_cast<std::size_t>(m.q.size()) != g.n_b()) {
    fail(ErrorCode::ShapeMismatch, "mixed profile shape does not match the game");
  }
  validate_distribution(m.p, "p");
  validate_distribution(m.q, "q");
}

/// Expected payoffs p^T A q and p^T B q.
inline Payoffs mixed_payoff(const ClassicalGame& g, const MixedProfile& m) {
  validate_profile(g, m);
  return {m.p.dot(g.payoff_a() * m.q), m.p.dot(g.payoff_b() * m.q)};
}

/// Cells where neither player gains by a unilateral row/column switch.
inline std::vector<std::pair<std::size_t, std::size_t>> pure_nash(const ClassicalGame& g) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const auto& A = g.payoff_a();
  const auto& B = g.payoff_b();
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      if (A(i, j) >= A.col(j).maxCoeff() && B(i, j) >= B.row(i).maxCoeff()) {
        out.emplace_back(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      }
    }
  }
  return out;
}

inline constexpr double kNashCheckTol = 1e-10;

/// Best-response test: nobody gains more than tol by switching to a pure strategy.
inline bool is_mixed_nash(const ClassicalGame& g, const MixedProfile& m, double tol = kNashCheckTol) {
  const Payoffs v = mixed_payoff(g, m);
  const Eigen::VectorXd row_values = g.payoff_a() * m.q;
  const Eigen::VectorXd col_values = g.payoff_b().transpose() * m.p;
  return row_values.maxCoeff() <= v.a + tol && col_values.maxCoeff() <= v.b + tol;
}

struct MixedNashSet {
  std::vector<MixedProfile> profiles;
  // A continuum of equilibria exists; `profiles` then holds the endpoints of
  // each family alongside any isolated equilibria.
  bool degenerate = false;
};

namespace detail {

inline bool same_profile(const MixedProfile& x, const MixedProfile& y) {
  return (x.p - y.p).cwiseAbs().maxCoeff() <= kProbabilityTol && (x.q - y.q).cwiseAbs().maxCoeff() <= kProbabilityTol;
}

// Interval of t in [0,1] with slope * t + offset >= -tol; empty when lo > hi.
inline std::pair<double, double> feasible_interval(double slope, double offset, double tol) {
  double lo = 0.0, hi = 1.0;
  if (std::abs(slope) <= tol) {
    if (offset < -tol) return {1.0, 0.0};
    return {lo, hi};
  }
  const double root = -offset / slope;
  if (slope > 0) lo = std::max(lo, root);
  else hi = std::min(hi, root);
  return {std::clamp(lo, 0.0, 1.0), std::clamp(hi, 0.0, 1.0)};
}

}  // namespace detail

/// Support enumeration over the nine support pairs of a 2x2 game. Profiles
/// are parameterized by p = P(A plays row 0) and q = P(B plays column 0).
inline MixedNashSet mixed_nash_2x2(const ClassicalGame& g, double tol = kNashCheckTol) {
  if (g.n_a() != 2 || g.n_b() != 2) fail(ErrorCode::ShapeMismatch, "mixed_nash_2x2 needs a 2x2 game");
  const auto& A = g.payoff_a();
  const auto& B = g.payoff_b();
  MixedNashSet out;
  auto add = [&](double p, double q) {
    MixedProfile m = MixedProfile::two_by_two(std::clamp(p, 0.0, 1.0), std::clamp(q, 0.0, 1.0));
    if (!is_mixed_nash(g, m, tol)) return;
    for (const auto& e : out.profiles)
      if (detail::same_profile(e, m)) return;
    out.profiles.push_back(std::move(m));
  };

  // Pure supports.
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) add(i == 0 ? 1.0 : 0.0, j == 0 ? 1.0 : 0.0);

  // A's row advantage (row 0 minus row 1) against q is da_slope*q + da_off;
  // B's column advantage against p is db_slope*p + db_off.
  const double da_slope = (A(0, 0) - A(1, 0)) - (A(0, 1) - A(1, 1));
  const double da_off = A(0, 1) - A(1, 1);
  const double db_slope = (B(0, 0) - B(0, 1)) - (B(1, 0) - B(1, 1));
  const double db_off = B(1, 0) - B(1, 1);

  // Both players mix: each is indifferent given the other's mix.
  if (std::abs(da_slope) > tol && std::abs(db_slope) > tol) {
    const double q = -da_off / da_slope;
    const double p = -db_off / db_slope;
    if (p > 0.0 && p < 1.0 && q > 0.0 && q < 1.0) add(p, q);
  }

  // A mixes against a pure column j: requires A indifferent at q in {0,1};
  // any p keeping j a best reply for B is an equilibrium (a continuum).
  for (int j = 0; j < 2; ++j) {
    const double q = j == 0 ? 1.0 : 0.0;
    if (std::abs(da_slope * q + da_off) > tol) continue;
    // B prefers column j: sign-adjusted advantage of column 0 over column 1.
    const double sgn = j == 0 ? 1.0 : -1.0;
    const auto [lo, hi] = detail::feasible_interval(sgn * db_slope, sgn * db_off, tol);
    if (lo > hi) continue;
    add(lo, q);
    add(hi, q);
    if (hi - lo > tol) out.degenerate = true;
  }
  for (int i = 0; i < 2; ++i) {
    const double p = i == 0 ? 1.0 : 0.0;
    if (std::abs(db_slope * p + db_off) > tol) continue;
    const double sgn = i == 0 ? 1.0 : -1.0;
    const auto [lo, hi] = detail::feasible_interval(sgn * da_slope, sgn * da_off, tol);
    if (lo > hi) continue;
    add(p, lo);
    add(p, hi);
    if (hi - lo > tol) out.degenerate = true;
  }
  // Both indifferent everywhere: the whole square is an equilibrium family.
  if (std::abs(da_slope) <= tol && std::abs(da_off) <= tol && std::abs(db_slope) <= tol && std::abs(db_off) <= tol) {
    out.degenerate = true;
  }
  return out;
}

}  // namespace qgame
