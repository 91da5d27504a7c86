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

// A player's preference over measurement outcomes is a total order on the
// basis. Superpositions are ranked by the Born probability of landing on the
// most preferred element, with ties broken down the order.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "qgame/hilbert.hpp"
#include "qgame/random.hpp"

namespace qgame {

inline constexpr double kPreferenceTieTol = 1e-12;

class PreferenceOrder {
 public:
  /// ranking[0] is the most preferred basis index.
  explicit PreferenceOrder(std::vector<std::size_t> ranking) : ranking_(std::move(ranking)) {
    std::vector<bool> seen(ranking_.size(), false);
    for (std::size_t idx : ranking_) {
      if (idx >= ranking_.size() || seen[idx]) {
        fail(ErrorCode::InvalidPermutation, "ranking is not a permutation of 0.." +
                                                std::to_string(ranking_.size()) + "-1");
      }
      seen[idx] = true;
    }
    if (ranking_.empty()) fail(ErrorCode::InvalidPermutation, "empty ranking");
  }

  /// Ordering by basis labels, most preferred first.
  static PreferenceOrder from_labels(const std::vector<std::string>& labels, const MeasurementBasis& basis) {
    if (labels.size() != basis.dim()) {
      fail(ErrorCode::InvalidPermutation, "preference must list all " + std::to_string(basis.dim()) + " labels");
    }
    std::vector<std::size_t> r;
    for (const auto& l : labels) r.push_back(basis.index_of(l));
    return PreferenceOrder(std::move(r));
  }

  std::size_t dim() const { return ranking_.size(); }
  std::size_t most_preferred() const { return ranking_.front(); }
  const std::vector<std::size_t>& ranking() const { return ranking_; }

  bool operator==(const PreferenceOrder&) const = default;

 private:
  std::vector<std::size_t> ranking_;
};

enum class Preference { PrefersP, PrefersQ, Indifferent };

inline const char* to_string(Preference p) {
  switch (p) {
    case Preference::PrefersP: return "PrefersP";
    case Preference::PrefersQ: return "PrefersQ";
    case Preference::Indifferent: return "Indifferent";
  }
  return "?";
}

inline void check_dims(const PreferenceOrder& order, const MeasurementBasis& basis) {
  if (order.dim() != basis.dim()) {
    fail(ErrorCode::DimMismatch, "preference over " + std::to_string(order.dim()) +
                                     " elements vs basis of dim " + std::to_string(basis.dim()));
  }
}

/// The most preferred basis element M.
inline const QuantumState& top(const PreferenceOrder& order, const MeasurementBasis& basis) {
  check_dims(order, basis);
  return basis.vector(order.most_preferred());
}

inline Preference prefers(const PreferenceOrder& order, const MeasurementBasis& basis,
                          const QuantumState& p, const QuantumState& q) {
  check_dims(order, basis);
  for (std::size_t idx : order.ranking()) {
    const double pp = born_prob(p, basis, idx);
    const double pq = born_prob(q, basis, idx);
    if (pp > pq + kPreferenceTieTol) return Preference::PrefersP;
    if (pq > pp + kPreferenceTieTol) return Preference::PrefersQ;
  }
  return Preference::Indifferent;
}

struct RankedOutcome {
  std::string label;
  double probability;
};

/// Outcome distribution of s listed from most to least preferred.
inline std::vector<RankedOutcome> rank_outcome_distribution(const PreferenceOrder& order,
                                                            const MeasurementBasis& basis,
                                                            const QuantumState& s) {
  check_dims(order, basis);
  std::vector<RankedOutcome> out;
  out.reserve(order.dim());
  for (std::size_t idx : order.ranking()) out.push_back({basis.label(idx), born_prob(s, basis, idx)});
  return out;
}

// Diagnostic for the two readings of "closer to M": Born probability at M
// versus Euclidean distance ||p - M||. They disagree whenever a relative
// phase separates p from M.
struct RankingAgreement {
  std::size_t pairs = 0;
  std::size_t disagreements = 0;
  double disagreement_rate() const { return pairs == 0 ? 0.0 : double(disagreements) / double(pairs); }
};

inline double distance_to(const QuantumState& a, const QuantumState& b) {
  return (a.amplitudes() - b.amplitudes()).norm();
}

inline RankingAgreement compare_distance_and_probability(const PreferenceOrder& order,
                                                         const MeasurementBasis& basis,
                                                         std::size_t n_pairs, std::uint64_t seed) {
  const QuantumState& m = top(order, basis);
  Rng rng = derived_rng(seed, 0);
  RankingAgreement agg;
  for (std::size_t k = 0; k < n_pairs; ++k) {
    const QuantumState p = random_state(basis.dim(), rng);
    const QuantumState q = random_state(basis.dim(), rng);
    const double dp = born_prob(p, basis, order.most_preferred()) - born_prob(q, basis, order.most_preferred());
    const double dd = distance_to(q, m) - distance_to(p, m);
    if (std::abs(dp) <= kPreferenceTieTol || std::abs(dd) <= kPreferenceTieTol) continue;
    ++agg.pairs;
    if ((dp > 0) != (dd > 0)) ++agg.disagreements;
  }
  return agg;
}

}  // namespace qgame
