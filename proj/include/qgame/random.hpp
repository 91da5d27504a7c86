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

#include <cstdint>
#include <random>

#include "qgame/hilbert.hpp"

namespace qgame {

using Rng = std::mt19937_64;

// Independent stream for (seed, index) pairs, e.g. per-restart seeds.
inline Rng derived_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

inline CVector gaussian_vector(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CVector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const double re = n(rng);
    const double im = n(rng);
    v(k) = cplx(re, im);
  }
  return v;
}

/// Haar-random pure state.
inline QuantumState random_state(std::size_t dim, Rng& rng) {
  return make_state(gaussian_vector(dim, rng));
}

/// Haar-random unitary (QR of a Ginibre matrix with the R-diagonal phases removed).
inline UnitaryOperator random_unitary(std::size_t dim, Rng& rng) {
  CMatrix g(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (Eigen::Index c = 0; c < g.cols(); ++c) g.col(c) = gaussian_vector(dim, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const cplx d = r(k, k);
    if (std::abs(d) > 0) q.col(k) *= d / std::abs(d);
  }
  return UnitaryOperator(q);
}

}  // namespace qgame
