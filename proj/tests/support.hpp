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

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <functional>

#include "oracles.hpp"
#include "qgame/error.hpp"
#include "qgame/hilbert.hpp"

namespace testing_support {

// Code of the qgame::Error thrown by f; records a failure when none is.
inline qgame::ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const qgame::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected a qgame::Error";
  return qgame::ErrorCode::InvalidConfig;
}

inline oracle::Mat to_oracle(const qgame::CMatrix& m) {
  oracle::Mat out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out(std::size_t(r), std::size_t(c)) = m(r, c);
  return out;
}

inline oracle::Vec to_oracle(const qgame::CVector& v) { return oracle::Vec(v.data(), v.data() + v.size()); }

inline qgame::CMatrix from_oracle(const oracle::Mat& m) {
  qgame::CMatrix out(Eigen::Index(m.n), Eigen::Index(m.n));
  for (std::size_t r = 0; r < m.n; ++r)
    for (std::size_t c = 0; c < m.n; ++c) out(Eigen::Index(r), Eigen::Index(c)) = m(r, c);
  return out;
}

inline qgame::CVector from_oracle(const oracle::Vec& v) {
  qgame::CVector out(Eigen::Index(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(Eigen::Index(i)) = v[i];
  return out;
}

}  // namespace testing_support
