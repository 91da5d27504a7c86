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


#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qgame/quantize.hpp"
#include "qgame/random.hpp"
#include "support.hpp"

namespace {

using oracle::C;
using qgame::ClassicalGame;
using qgame::Embedding;
using qgame::ErrorCode;
using qgame::Player;
using qgame::QuantizationScheme;
using qgame::StrategyClass;
using qgame::StrategyGrid;
using qgame::UnitaryOperator;
using testing_support::code_of;
using testing_support::from_oracle;
using testing_support::to_oracle;

const double kPi = oracle::kPi;
const double kPdA[2][2] = {{3, 0}, {5, 1}};
const double kPdB[2][2] = {{3, 5}, {0, 1}};

// Reference strategies typed in directly.
const oracle::Mat kOI = oracle::identity(2);
const oracle::Mat kOX = oracle::x_gate();
const oracle::Mat kOQ = oracle::from_rows(2, {C(0, 1), 0.0, 0.0, C(0, -1)});

QuantizationScheme pd(double gamma) { return QuantizationScheme(ClassicalGame::prisoners_dilemma(), gamma); }

TEST(Entangler, Examples) {
  EXPECT_LE((qgame::ewl_entangler(0.0).matrix() - qgame::CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-15);
  const auto j = qgame::ewl_entangler(kPi / 2);
  const auto out = qgame::apply(j, qgame::basis_state("00"));
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_LE(oracle::max_abs_diff(to_oracle(out.amplitudes()), oracle::Vec{r, 0.0, 0.0, C(0, r)}), 1e-15);
  for (double g : {0.0, 0.1, 0.7, 1.2, kPi / 2}) {
    const auto o = to_oracle(qgame::ewl_entangler(g).matrix());
    EXPECT_LE(oracle::max_abs_diff(o, oracle::ewl_j(g)), 1e-13);
    EXPECT_LE(oracle::max_abs_diff(oracle::matmul(o, oracle::dagger(o)), oracle::identity(4)), 1e-12);
  }
  EXPECT_EQ(code_of([] { qgame::ewl_entangler(2.0); }), ErrorCode::RangeError);
  EXPECT_EQ(code_of([] { qgame::ewl_entangler(-0.1); }), ErrorCode::RangeError);
}

TEST(Scheme, Errors) {
  EXPECT_EQ(code_of([] { pd(2.0); }), ErrorCode::RangeError);
  const ClassicalGame big(Eigen::MatrixXd::Zero(3, 2), Eigen::MatrixXd::Zero(3, 2));
  EXPECT_EQ(code_of([&] { QuantizationScheme(big, 0.0); }), ErrorCode::ShapeMismatch);
  const qgame::OutcomeMap dup{{{0, 0}, {0, 0}, {1, 0}, {1, 1}}};
  EXPECT_EQ(code_of([&] { QuantizationScheme(ClassicalGame::prisoners_dilemma(), 0.0, dup); }),
            ErrorCode::InvalidPermutation);
}

TEST(EwlPayoff, Examples) {
  const auto c0 = qgame::ewl_payoff(pd(0), qgame::gates::I2(), qgame::gates::I2());
  EXPECT_NEAR(c0.a, 3.0, 1e-15);
  EXPECT_NEAR(c0.b, 3.0, 1e-15);
  const auto dc = qgame::ewl_payoff(pd(0), qgame::gates::X(), qgame::gates::I2());
  EXPECT_NEAR(dc.a, 5.0, 1e-15);
  EXPECT_NEAR(dc.b, 0.0, 1e-15);
  const auto qq = qgame::ewl_payoff(pd(kPi / 2), qgame::ewl::q_strategy(), qgame::ewl::q_strategy());
  const auto want = oracle::ewl_payoff(kPi / 2, kOQ, kOQ, kPdA, kPdB);
  EXPECT_NEAR(qq.a, want.a, 1e-12);
  EXPECT_NEAR(qq.a, 3.0, 1e-12);
  EXPECT_NEAR(qq.b, 3.0, 1e-12);
  EXPECT_EQ(code_of([] { qgame::ewl_payoff(pd(0), UnitaryOperator::identity(4), qgame::gates::I2()); }),
            ErrorCode::DimMismatch);
}

TEST(EwlPayoff, NamedStrategies) {
  EXPECT_LE(qgame::phase_distance(qgame::ewl::q_strategy().matrix(), from_oracle(kOQ)), 1e-15);
  EXPECT_LE(qgame::phase_distance(qgame::ewl::defect().matrix(), from_oracle(kOX)), 1e-15);
  EXPECT_LE(qgame::phase_distance(qgame::ewl::cooperate().matrix(), from_oracle(kOI)), 1e-15);
}

TEST(EwlPayoff, MatchesStateVectorOracle) {
  qgame::Rng rng(51);
  std::uniform_real_distribution<double> gam(0.0, kPi / 2);
  for (int t = 0; t < 200; ++t) {
    const double g = gam(rng);
    const auto ua = qgame::random_unitary(2, rng), ub = qgame::random_unitary(2, rng);
    const auto lib = qgame::ewl_payoff(pd(g), ua, ub);
    const auto ref = oracle::ewl_payoff(g, to_oracle(ua.matrix()), to_oracle(ub.matrix()), kPdA, kPdB);
    EXPECT_NEAR(lib.a, ref.a, 1e-12);
    EXPECT_NEAR(lib.b, ref.b, 1e-12);
    const auto fin = qgame::ewl_final_state(pd(g), ua, ub);
    double total = 0.0;
    for (std::size_t k = 0; k < 4; ++k) total += std::norm(fin[k]);
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(Proper, Examples) {
  const auto emb = Embedding::identity_flip();
  const auto r0 = qgame::check_proper(pd(0), emb, 1e-12);
  EXPECT_TRUE(r0.proper);
  EXPECT_LE(r0.max_error, 1e-12);

  // At full entanglement the report carries whatever the oracle says.
  const auto r1 = qgame::check_proper(pd(kPi / 2), emb, 1e-12);
  const oracle::Mat j = oracle::ewl_j(kPi / 2);
  const oracle::Mat e[2] = {kOI, kOX};
  double err = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 2; ++k) {
      const auto v = oracle::ewl_payoff(j, e[i], e[k], kPdA, kPdB);
      err = std::max({err, std::abs(v.a - kPdA[i][k]), std::abs(v.b - kPdB[i][k])});
    }
  }
  EXPECT_NEAR(r1.max_error, err, 1e-12);
  EXPECT_EQ(r1.proper, err <= 1e-12);

  const qgame::OutcomeMap scrambled{{{1, 1}, {0, 1}, {1, 0}, {0, 0}}};
  const QuantizationScheme s(ClassicalGame::prisoners_dilemma(), 0.0, scrambled);
  EXPECT_FALSE(qgame::check_proper(s, emb, 1e-12).proper);
}

TEST(Proper, IncompleteEmbedding) {
  const Embedding short_emb{{qgame::gates::I2()}, {qgame::gates::I2(), qgame::gates::X()}};
  EXPECT_EQ(code_of([&] { qgame::check_proper(pd(0), short_emb, 1e-12); }), ErrorCode::IncompleteEmbedding);
  EXPECT_EQ(code_of([&] { qgame::check_complete(pd(0), short_emb, qgame::rotation_mixer, 10, 1e-9, 0); }),
            ErrorCode::IncompleteEmbedding);
}

TEST(Complete, Examples) {
  const auto emb = Embedding::identity_flip();
  const auto corners = qgame::check_complete(pd(0), emb, qgame::rotation_mixer, 0, 1e-9, 0);
  EXPECT_EQ(corners.samples, 4u);
  EXPECT_NEAR(corners.max_error, corners.proper.max_error, 1e-12);

  const auto half = qgame::ewl_payoff(pd(0), qgame::rotation_mixer(0.5), qgame::rotation_mixer(0.5));
  EXPECT_NEAR(half.a, 2.25, 1e-12);
  EXPECT_NEAR(half.b, 2.25, 1e-12);

  const auto r1 = qgame::check_complete(pd(0), emb, qgame::rotation_mixer, 200, 1e-9, 7);
  const auto r2 = qgame::check_complete(pd(0), emb, qgame::rotation_mixer, 200, 1e-9, 7);
  EXPECT_TRUE(r1.complete);
  EXPECT_EQ(r1.max_error, r2.max_error);
  EXPECT_EQ(r1.samples, 204u);
}

TEST(Mixer, Convention) {
  EXPECT_LE((qgame::rotation_mixer(1.0).matrix() - qgame::CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
  // p = 0 is a quarter turn that still sends |0> to |1>.
  EXPECT_NEAR(std::norm(qgame::rotation_mixer(0.0).matrix()(1, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::norm(qgame::rotation_mixer(0.3).matrix()(0, 0)), 0.3, 1e-15);
  EXPECT_EQ(code_of([] { qgame::rotation_mixer(1.5); }), ErrorCode::InvalidProbability);
}

// Grid scans against a brute-force oracle over the same grid.

struct OracleBest {
  double value;
  std::size_t index;
};

OracleBest oracle_scan(double gamma, const oracle::Mat& opponent, const StrategyGrid& grid) {
  const oracle::Mat j = oracle::ewl_j(gamma);
  OracleBest best{-1e300, 0};
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto p = grid.params(k);
    const double c = std::cos(p.theta / 2), s = std::sin(p.theta / 2);
    const oracle::Mat u = oracle::from_rows(
        2, {std::polar(c, p.phi), C(0, 1) * std::polar(s, p.lam), C(0, s), std::polar(c, p.lam - p.phi)});
    const double v = oracle::ewl_payoff(j, u, opponent, kPdA, kPdB).a;
    if (v > best.value + 1e-12) best = {v, k};
  }
  return best;
}

TEST(Scan, TwoParameterQIsBestReplyToQ) {
  const StrategyGrid grid(StrategyClass::TwoParameter, 64);
  const auto r = qgame::ewl_best_response_scan(pd(kPi / 2), Player::A, qgame::ewl::q_strategy(), grid);
  const auto ref = oracle_scan(kPi / 2, kOQ, grid);
  EXPECT_NEAR(r.payoff, ref.value, 1e-12);
  EXPECT_EQ(r.grid_index, ref.index);
  const double qq = qgame::ewl_payoff(pd(kPi / 2), qgame::ewl::q_strategy(), qgame::ewl::q_strategy()).a;
  EXPECT_LE(r.payoff, qq + 1e-12);
  EXPECT_LE(qgame::phase_distance(r.unitary.matrix(), from_oracle(kOQ)), 1e-12);
}

TEST(Scan, FullU2BeatsQAgainstQ) {
  const StrategyGrid grid(StrategyClass::FullU2, 32);
  const auto r = qgame::ewl_best_response_scan(pd(kPi / 2), Player::A, qgame::ewl::q_strategy(), grid);
  const auto ref = oracle_scan(kPi / 2, kOQ, grid);
  EXPECT_NEAR(r.payoff, ref.value, 1e-12);
  EXPECT_GT(r.payoff, 3.0 + 0.1);
}

TEST(Scan, ClassicalLimitPicksDefect) {
  qgame::Rng rng(3);
  for (auto cls : {StrategyClass::TwoParameter, StrategyClass::FullU2}) {
    for (const auto& opp : {qgame::gates::I2(), qgame::gates::X(), qgame::random_unitary(2, rng)}) {
      const auto r = qgame::ewl_best_response_scan(pd(0.0), Player::A, opp, StrategyGrid(cls, 32));
      // Classical best reply: D pays 2 more against C and 1 more against D.
      const double pc = std::norm(opp.matrix()(0, 0));
      EXPECT_NEAR(r.payoff, 5.0 * pc + 1.0 * (1 - pc), 1e-12);
      EXPECT_NEAR(r.params.theta, kPi, 1e-12);
    }
  }
}

TEST(Scan, PlayerBMirrorsPlayerA) {
  const StrategyGrid grid(StrategyClass::TwoParameter, 32);
  const auto a = qgame::ewl_best_response_scan(pd(kPi / 2), Player::A, qgame::ewl::defect(), grid);
  const auto b = qgame::ewl_best_response_scan(pd(kPi / 2), Player::B, qgame::ewl::defect(), grid);
  EXPECT_NEAR(a.payoff, b.payoff, 1e-12);
}

TEST(Scan, RejectsCoarseGrid) {
  EXPECT_EQ(code_of([] {
              qgame::ewl_best_response_scan(pd(0), Player::A, qgame::gates::I2(),
                                            StrategyGrid(StrategyClass::TwoParameter, 31));
            }),
            ErrorCode::RangeError);
}

// Mixed quantum strategies.

TEST(MixedQuantum, Examples) {
  const auto s = pd(kPi / 2);
  qgame::Rng rng(60);
  const auto u1 = qgame::random_unitary(2, rng), u2 = qgame::random_unitary(2, rng);
  const auto v1 = qgame::random_unitary(2, rng), v2 = qgame::random_unitary(2, rng);
  const auto single = qgame::mixed_quantum_payoff(s, qgame::MixedQuantumStrategy::pure(u1),
                                                  qgame::MixedQuantumStrategy::pure(v1));
  EXPECT_EQ(single.a, qgame::ewl_payoff(s, u1, v1).a);
  const auto uni = qgame::mixed_quantum_payoff(s, qgame::MixedQuantumStrategy::uniform({u1, u2}),
                                               qgame::MixedQuantumStrategy::uniform({v1, v2}));
  double sum_a = 0.0, sum_b = 0.0;
  for (const auto& x : {u1, u2}) {
    for (const auto& y : {v1, v2}) {
      const auto r = oracle::ewl_payoff(kPi / 2, to_oracle(x.matrix()), to_oracle(y.matrix()), kPdA, kPdB);
      sum_a += r.a / 4.0;
      sum_b += r.b / 4.0;
    }
  }
  EXPECT_NEAR(uni.a, sum_a, 1e-12);
  EXPECT_NEAR(uni.b, sum_b, 1e-12);
}

TEST(MixedQuantum, Errors) {
  using Atom = qgame::MixedQuantumStrategy::Atom;
  EXPECT_EQ(code_of([] { qgame::MixedQuantumStrategy(std::vector<Atom>{}); }), ErrorCode::InvalidProbability);
  EXPECT_EQ(code_of([] { qgame::MixedQuantumStrategy({{0.7, qgame::gates::I2()}}); }), ErrorCode::InvalidProbability);
  EXPECT_EQ(code_of([] { qgame::MixedQuantumStrategy({{1.5, qgame::gates::I2()}, {-0.5, qgame::gates::X()}}); }),
            ErrorCode::InvalidProbability);
}

TEST(MixedDynamics, ConvergesBetweenDefectAndCooperate) {
  const auto s = pd(kPi / 2);
  const StrategyGrid grid(StrategyClass::FullU2, 16);
  const auto r = qgame::mixed_best_response_dynamics(s, qgame::gates::I2(), qgame::gates::I2(), grid, 2, 50);
  ASSERT_TRUE(r.converged);
  EXPECT_GT(r.payoffs.a, 1.0);
  EXPECT_LT(r.payoffs.a, 3.0);
  EXPECT_GT(r.payoffs.b, 1.0);
  EXPECT_LT(r.payoffs.b, 3.0);
  EXPECT_LE(r.a.atoms().size(), 2u);
  EXPECT_LE(r.b.atoms().size(), 2u);

  // No grid strategy improves on the final mixtures (oracle recomputation).
  const oracle::Mat j = oracle::ewl_j(kPi / 2);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto p = grid.params(k);
    const auto u = to_oracle(qgame::su2_matrix(p.theta, p.phi, p.lam));
    double va = 0.0, vb = 0.0;
    for (const auto& y : r.b.atoms()) va += y.weight * oracle::ewl_payoff(j, u, to_oracle(y.unitary.matrix()), kPdA, kPdB).a;
    for (const auto& x : r.a.atoms()) vb += x.weight * oracle::ewl_payoff(j, to_oracle(x.unitary.matrix()), u, kPdA, kPdB).b;
    ASSERT_LE(va, r.payoffs.a + 1e-9);
    ASSERT_LE(vb, r.payoffs.b + 1e-9);
  }
}

TEST(MixedDynamics, ClassicalLimitSettlesOnDefect) {
  const auto r = qgame::mixed_best_response_dynamics(pd(0.0), qgame::gates::I2(), qgame::gates::I2(),
                                                     StrategyGrid(StrategyClass::FullU2, 8), 2, 20);
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.payoffs.a, 1.0, 1e-12);
  EXPECT_NEAR(r.payoffs.b, 1.0, 1e-12);
}

// Penny flip against a branch-enumeration oracle.

double pennyflip_oracle(const oracle::Mat& first, const oracle::Mat& last, double p) {
  const oracle::Vec a = oracle::matvec(first, oracle::basis(2, 0));
  const oracle::Vec keep = oracle::matvec(last, a);
  const oracle::Vec flip = oracle::matvec(last, oracle::matvec(kOX, a));
  return (1 - p) * std::norm(keep[0]) + p * std::norm(flip[0]);
}

TEST(PennyFlip, HadamardAlwaysWins) {
  const auto h = qgame::gates::H();
  for (int k = 0; k <= 100; ++k) {
    const double p = k / 100.0;
    EXPECT_NEAR(qgame::pennyflip_play(h, h, p), 1.0, 1e-12);
    EXPECT_NEAR(qgame::pennyflip_play(h, h, p), pennyflip_oracle(oracle::h_gate(), oracle::h_gate(), p), 1e-12);
  }
}

TEST(PennyFlip, ClassicalDegenerateCases) {
  EXPECT_EQ(qgame::pennyflip_play(qgame::gates::I2(), qgame::gates::I2(), 0.0), 1.0);
  EXPECT_EQ(qgame::pennyflip_play(qgame::gates::I2(), qgame::gates::I2(), 1.0), 0.0);
  EXPECT_EQ(code_of([] { qgame::pennyflip_play(qgame::gates::I2(), qgame::gates::I2(), 1.1); }), ErrorCode::RangeError);
}

TEST(PennyFlip, RandomMovesMatchOracle) {
  qgame::Rng rng(70);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const auto a = qgame::random_unitary(2, rng), b = qgame::random_unitary(2, rng);
    const double p = u(rng);
    EXPECT_NEAR(qgame::pennyflip_play(a, b, p), pennyflip_oracle(to_oracle(a.matrix()), to_oracle(b.matrix()), p),
                1e-12);
  }
}

// Properties.

TEST(QuantizeProperty, ClassicalLimitProperForEveryFlipEmbedding) {
  std::mt19937_64 rng(80);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  const UnitaryOperator e[2] = {qgame::gates::I2(), qgame::gates::X()};
  for (int t = 0; t < 50; ++t) {
    Eigen::MatrixXd a(2, 2), b(2, 2);
    a << u(rng), u(rng), u(rng), u(rng);
    b << u(rng), u(rng), u(rng), u(rng);
    for (int sa = 0; sa < 2; ++sa) {
      for (int sb = 0; sb < 2; ++sb) {
        // Embedding strategy i -> e[i ^ s]; the outcome map undoes the relabeling.
        const Embedding emb{{e[sa], e[1 - sa]}, {e[sb], e[1 - sb]}};
        qgame::OutcomeMap map{};
        for (std::size_t k = 0; k < 4; ++k) map[k] = {(k / 2) ^ std::size_t(sa), (k % 2) ^ std::size_t(sb)};
        const QuantizationScheme s(ClassicalGame(a, b), 0.0, map);
        EXPECT_TRUE(qgame::check_proper(s, emb, 1e-12).proper);
      }
    }
  }
}

TEST(QuantizeProperty, CompleteImpliesProper) {
  std::mt19937_64 rng(81);
  std::uniform_real_distribution<double> u(-5.0, 5.0), gam(0.0, kPi / 2);
  for (int t = 0; t < 40; ++t) {
    Eigen::MatrixXd a(2, 2), b(2, 2);
    a << u(rng), u(rng), u(rng), u(rng);
    b << u(rng), u(rng), u(rng), u(rng);
    const double g = t % 2 == 0 ? 0.0 : gam(rng);
    const QuantizationScheme s(ClassicalGame(a, b), g);
    const auto c = qgame::check_complete(s, Embedding::identity_flip(), qgame::rotation_mixer, 50, 1e-9, std::uint64_t(t));
    if (c.complete) {
      EXPECT_TRUE(qgame::check_proper(s, Embedding::identity_flip(), 1e-9).proper);
    }
  }
}

TEST(QuantizeProperty, MixedPayoffBilinear) {
  const auto s = pd(1.1);
  qgame::Rng rng(82);
  std::uniform_real_distribution<double> w(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const auto u1 = qgame::random_unitary(2, rng), u2 = qgame::random_unitary(2, rng), u3 = qgame::random_unitary(2, rng);
    const auto v = qgame::MixedQuantumStrategy::uniform({qgame::random_unitary(2, rng), qgame::random_unitary(2, rng)});
    const double x = w(rng), lam = w(rng);
    const qgame::MixedQuantumStrategy m1({{x, u1}, {1 - x, u2}});
    const qgame::MixedQuantumStrategy m2({{1.0, u3}});
    const qgame::MixedQuantumStrategy mix({{lam * x, u1}, {lam * (1 - x), u2}, {1 - lam, u3}});
    const auto p1 = qgame::mixed_quantum_payoff(s, m1, v), p2 = qgame::mixed_quantum_payoff(s, m2, v);
    const auto pm = qgame::mixed_quantum_payoff(s, mix, v);
    EXPECT_NEAR(pm.a, lam * p1.a + (1 - lam) * p2.a, 1e-12);
    EXPECT_NEAR(pm.b, lam * p1.b + (1 - lam) * p2.b, 1e-12);
    const auto q1 = qgame::mixed_quantum_payoff(s, v, m1), q2 = qgame::mixed_quantum_payoff(s, v, m2);
    const auto qm = qgame::mixed_quantum_payoff(s, v, mix);
    EXPECT_NEAR(qm.a, lam * q1.a + (1 - lam) * q2.a, 1e-12);
  }
}

}  // namespace
