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

#include <array>
#include <cmath>

#include "qgame/preference.hpp"
#include "qgame/random.hpp"
#include "support.hpp"

namespace {

using qgame::cplx;
using qgame::ErrorCode;
using qgame::MeasurementBasis;
using qgame::Preference;
using qgame::PreferenceOrder;
using testing_support::code_of;

const MeasurementBasis kComp4 = MeasurementBasis::computational(4);

qgame::QuantumState state4(cplx a, cplx b, cplx c, cplx d) {
  return qgame::make_state(std::vector<cplx>{a, b, c, d}, qgame::computational_labels(4));
}

TEST(Top, Examples) {
  EXPECT_TRUE(qgame::top(PreferenceOrder({3, 2, 1, 0}), kComp4).amplitudes().isApprox(qgame::basis_state("11").amplitudes()));
  EXPECT_TRUE(qgame::top(PreferenceOrder({0, 1, 2, 3}), kComp4).amplitudes().isApprox(qgame::basis_state("00").amplitudes()));
  const auto comp2 = MeasurementBasis::computational(2);
  EXPECT_TRUE(qgame::top(PreferenceOrder({0, 1}), comp2).amplitudes().isApprox(qgame::basis_state("0").amplitudes()));
}

TEST(PreferenceOrder, Errors) {
  EXPECT_EQ(code_of([] { PreferenceOrder({0, 0, 1, 2}); }), ErrorCode::InvalidPermutation);
  EXPECT_EQ(code_of([] { PreferenceOrder({0, 1, 4, 2}); }), ErrorCode::InvalidPermutation);
  EXPECT_EQ(code_of([] { PreferenceOrder({}); }), ErrorCode::InvalidPermutation);
  EXPECT_EQ(code_of([] { qgame::top(PreferenceOrder({0, 1}), kComp4); }), ErrorCode::DimMismatch);
  EXPECT_EQ(code_of([] { PreferenceOrder::from_labels({"00", "01", "10"}, kComp4); }), ErrorCode::InvalidPermutation);
}

TEST(PreferenceOrder, FromLabels) {
  const auto o = PreferenceOrder::from_labels({"11", "10", "01", "00"}, kComp4);
  EXPECT_EQ(o.ranking(), (std::vector<std::size_t>{3, 2, 1, 0}));
  EXPECT_EQ(o.most_preferred(), 3u);
}

TEST(Prefers, Examples) {
  const PreferenceOrder order({3, 2, 1, 0});
  const auto m = qgame::basis_state("11");
  EXPECT_EQ(qgame::prefers(order, kComp4, m, qgame::basis_state("00")), Preference::PrefersP);
  EXPECT_EQ(qgame::prefers(order, kComp4, m, m), Preference::Indifferent);
  const auto bell = state4(1.0, 0.0, 0.0, 1.0);
  const auto q = state4(0.6, 0.0, 0.0, 0.8);
  EXPECT_EQ(qgame::prefers(order, kComp4, bell, q), Preference::PrefersQ);
}

TEST(Prefers, TiesFallThroughRanking) {
  const PreferenceOrder order({3, 2, 1, 0});
  // Equal weight on |11>; the second-ranked |10> breaks the tie.
  const auto p = state4(0.0, 0.0, 1.0, 1.0);
  const auto q = state4(0.0, 1.0, 0.0, 1.0);
  EXPECT_EQ(qgame::prefers(order, kComp4, p, q), Preference::PrefersP);
}

TEST(Rank, Examples) {
  const PreferenceOrder order({3, 2, 1, 0});
  const auto r = qgame::rank_outcome_distribution(order, kComp4, qgame::basis_state("11"));
  EXPECT_EQ(r.front().label, "11");
  EXPECT_DOUBLE_EQ(r.front().probability, 1.0);
  for (const auto& e : qgame::rank_outcome_distribution(order, kComp4, state4(1.0, 1.0, 1.0, 1.0)))
    EXPECT_NEAR(e.probability, 0.25, 1e-15);
  for (const auto& e : qgame::rank_outcome_distribution(order, kComp4, state4(1.0, 0.0, 0.0, 1.0)))
    EXPECT_NEAR(e.probability, (e.label == "00" || e.label == "11") ? 0.5 : 0.0, 1e-15);
}

TEST(DistanceDiagnostic, PhaseSeparatesReadings) {
  // i*M has full probability at M yet Euclidean distance sqrt(2).
  const auto m = qgame::basis_state("11");
  const auto im = qgame::with_phase(m, std::acos(-1.0) / 2.0);
  EXPECT_NEAR(qgame::distance_to(im, m), std::sqrt(2.0), 1e-15);
  EXPECT_EQ(qgame::prefers(PreferenceOrder({3, 2, 1, 0}), kComp4, im, m), Preference::Indifferent);
  const auto agg = qgame::compare_distance_and_probability(PreferenceOrder({3, 2, 1, 0}), kComp4, 2000, 1);
  EXPECT_GT(agg.pairs, 1000u);
  EXPECT_GT(agg.disagreements, 0u);
}

// Properties.

class PreferenceProperty : public ::testing::Test {
 protected:
  qgame::Rng rng{77};
  std::vector<qgame::QuantumState> sample(std::size_t n) {
    std::vector<qgame::QuantumState> out;
    for (std::size_t k = 0; k < n; ++k) out.push_back(qgame::random_state(4, rng));
    // Exact ties exercise the lexicographic fallback.
    out.push_back(qgame::basis_state("11"));
    out.push_back(qgame::with_phase(qgame::basis_state("11"), 1.0));
    out.push_back(state4(1.0, 0.0, 0.0, 1.0));
    out.push_back(state4(0.0, 1.0, 0.0, 1.0));
    return out;
  }
  static int rank(Preference p) { return p == Preference::PrefersP ? 1 : p == Preference::PrefersQ ? -1 : 0; }
};

TEST_F(PreferenceProperty, TotalPreorderTransitive) {
  const PreferenceOrder order({3, 1, 0, 2});
  const auto s = sample(30);
  // weakly_prefers(x, y): x is at least as good as y.
  auto weak = [&](const qgame::QuantumState& x, const qgame::QuantumState& y) {
    return qgame::prefers(order, kComp4, x, y) != Preference::PrefersQ;
  };
  for (const auto& a : s)
    for (const auto& b : s)
      for (const auto& c : s)
        if (weak(a, b) && weak(b, c)) {
          EXPECT_TRUE(weak(a, c));
        }
}

TEST_F(PreferenceProperty, Antisymmetric) {
  const PreferenceOrder order({2, 3, 0, 1});
  const auto s = sample(40);
  for (const auto& a : s)
    for (const auto& b : s) EXPECT_EQ(rank(qgame::prefers(order, kComp4, a, b)), -rank(qgame::prefers(order, kComp4, b, a)));
}

TEST_F(PreferenceProperty, PhaseInvariance) {
  const PreferenceOrder order({3, 2, 1, 0});
  std::uniform_real_distribution<double> ang(0.0, 6.283185307179586);
  for (const auto& p : sample(100))
    EXPECT_EQ(qgame::prefers(order, kComp4, qgame::with_phase(p, ang(rng)), p), Preference::Indifferent);
}

TEST_F(PreferenceProperty, ConsistentWithTopProbability) {
  const PreferenceOrder order({1, 3, 2, 0});
  const auto s = sample(40);
  for (const auto& p : s)
    for (const auto& q : s)
      if (qgame::prefers(order, kComp4, p, q) == Preference::PrefersP) {
        EXPECT_GE(qgame::born_prob(p, kComp4, 1) + 1e-12, qgame::born_prob(q, kComp4, 1));
      }
}

}  // namespace
