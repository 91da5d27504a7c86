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

// Dense complex linear algebra for one and two spin-half particles: states,
// unitaries, tensor products, inner products and Born probabilities.
//
// Joint-space indexing is big-endian: |ij> lives at index 2*i + j.

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qgame/error.hpp"

namespace qgame {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kNormTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kZeroNormTol = 1e-14;

/// Labels of the computational basis: "0","1" for dim 2, "00".."11" for dim 4.
inline std::vector<std::string> computational_labels(std::size_t dim) {
  std::vector<std::string> labels;
  labels.reserve(dim);
  if (dim == 2) {
    labels = {"0", "1"};
  } else if (dim == 4) {
    labels = {"00", "01", "10", "11"};
  } else {
    for (std::size_t k = 0; k < dim; ++k) labels.push_back(std::to_string(k));
  }
  return labels;
}

class QuantumState;
QuantumState make_state(const CVector& amplitudes, std::vector<std::string> labels);

/// Normalized amplitude vector over a labeled basis. Construct through
/// make_state(); every other producer preserves the norm.
class QuantumState {
 public:
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const CVector& amplitudes() const { return amps_; }
  const std::vector<std::string>& labels() const { return labels_; }
  cplx operator[](std::size_t k) const { return amps_(static_cast<Eigen::Index>(k)); }
  double norm() const { return amps_.norm(); }

 private:
  QuantumState(CVector amps, std::vector<std::string> labels)
      : amps_(std::move(amps)), labels_(std::move(labels)) {}

  friend QuantumState make_state(const CVector&, std::vector<std::string>);
  friend QuantumState tensor(const QuantumState&, const QuantumState&);
  friend QuantumState unchecked_state(CVector, std::vector<std::string>);

  CVector amps_;
  std::vector<std::string> labels_;
};

// Wraps an already-normalized vector (results of unitary evolution).
inline QuantumState unchecked_state(CVector amps, std::vector<std::string> labels) {
  return QuantumState(std::move(amps), std::move(labels));
}

inline QuantumState make_state(const CVector& amplitudes, std::vector<std::string> labels) {
  if (static_cast<std::size_t>(amplitudes.size()) != labels.size()) {
    fail(ErrorCode::LengthMismatch, "amplitude count " + std::to_string(amplitudes.size()) +
                                        " != label count " + std::to_string(labels.size()));
  }
  const double n = amplitudes.norm();
  if (!(n >= kZeroNormTol)) fail(ErrorCode::ZeroVector, "cannot normalize a zero vector");
  return QuantumState(amplitudes / n, std::move(labels));
}

inline QuantumState make_state(const std::vector<cplx>& amplitudes, std::vector<std::string> labels) {
  CVector v(static_cast<Eigen::Index>(amplitudes.size()));
  for (std::size_t k = 0; k < amplitudes.size(); ++k) v(static_cast<Eigen::Index>(k)) = amplitudes[k];
  return make_state(v, std::move(labels));
}

inline QuantumState make_state(const CVector& amplitudes) {
  return make_state(amplitudes, computational_labels(static_cast<std::size_t>(amplitudes.size())));
}

inline QuantumState basis_state(std::size_t dim, std::size_t k) {
  if (k >= dim) fail(ErrorCode::IndexOutOfRange, "basis index " + std::to_string(k) + " >= dim");
  CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(k)) = 1.0;
  return make_state(v);
}

/// |0> or |1> etc. by computational label ("0", "1", "00", ...).
inline QuantumState basis_state(const std::string& label) {
  const auto labels = computational_labels(label.size() == 1 ? 2 : 4);
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (labels[k] == label) return basis_state(labels.size(), k);
  }
  fail(ErrorCode::IndexOutOfRange, "unknown computational label '" + label + "'");
}

/// Raw Kronecker product of amplitude vectors, index 2*i + j.
inline CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = 0; j < b.size(); ++j) out(i * b.size() + j) = a(i) * b(j);
  return out;
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline QuantumState tensor(const QuantumState& a, const QuantumState& b) {
  if (a.dim() != 2 || b.dim() != 2) {
    fail(ErrorCode::DimMismatch, "tensor expects two 2-dimensional states, got " +
                                     std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
  }
  std::vector<std::string> labels;
  for (const auto& la : a.labels())
    for (const auto& lb : b.labels()) labels.push_back(la + lb);
  return QuantumState(kron(a.amplitudes(), b.amplitudes()), std::move(labels));
}

/// Largest elementwise deviation of m^dagger m from the identity.
inline double unitarity_residual(const CMatrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  const CMatrix d = m.adjoint() * m - CMatrix::Identity(m.rows(), m.cols());
  return d.cwiseAbs().maxCoeff();
}

/// Square complex matrix certified unitary at construction.
class UnitaryOperator {
 public:
  explicit UnitaryOperator(CMatrix m, double tol = kUnitaryTol) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0) {
      fail(ErrorCode::DimMismatch, "unitary must be square and non-empty");
    }
    if (!m_.allFinite()) fail(ErrorCode::NonFinite, "unitary has non-finite entries");
    const double r = unitarity_residual(m_);
    if (r > tol) fail(ErrorCode::NotUnitary, "unitarity residual " + std::to_string(r));
  }

  static UnitaryOperator identity(std::size_t dim) {
    return UnitaryOperator(CMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)));
  }

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  cplx operator()(std::size_t r, std::size_t c) const {
    return m_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }
  UnitaryOperator adjoint() const { return UnitaryOperator(m_.adjoint()); }

 private:
  CMatrix m_;
};

inline QuantumState apply(const UnitaryOperator& u, const QuantumState& s) {
  if (u.dim() != s.dim()) {
    fail(ErrorCode::DimMismatch, "apply: operator dim " + std::to_string(u.dim()) +
                                     " vs state dim " + std::to_string(s.dim()));
  }
  return unchecked_state(u.matrix() * s.amplitudes(), s.labels());
}

/// u1 * u2: u2 acts first.
inline UnitaryOperator compose(const UnitaryOperator& u1, const UnitaryOperator& u2) {
  if (u1.dim() != u2.dim()) fail(ErrorCode::DimMismatch, "compose: operator dims differ");
  return UnitaryOperator(u1.matrix() * u2.matrix());
}

/// Operator tensor product u1 (x) u2 on the joint space.
inline UnitaryOperator tensor(const UnitaryOperator& u1, const UnitaryOperator& u2) {
  return UnitaryOperator(kron(u1.matrix(), u2.matrix()));
}

/// <a|b>, conjugate-linear in a.
inline cplx inner(const QuantumState& a, const QuantumState& b) {
  if (a.dim() != b.dim()) fail(ErrorCode::DimMismatch, "inner: state dims differ");
  return a.amplitudes().dot(b.amplitudes());
}

/// Equality of rays: |<a|b>| = 1 within tol.
inline bool same_up_to_phase(const QuantumState& a, const QuantumState& b, double tol = 1e-9) {
  if (a.dim() != b.dim()) return false;
  return std::abs(1.0 - std::abs(inner(a, b))) <= tol;
}

inline QuantumState with_phase(const QuantumState& s, double phi) {
  return unchecked_state(s.amplitudes() * std::polar(1.0, phi), s.labels());
}

/// Orthonormal basis of a state space.
class MeasurementBasis {
 public:
  MeasurementBasis(std::vector<QuantumState> vectors, std::vector<std::string> labels)
      : vectors_(std::move(vectors)), labels_(std::move(labels)) {
    if (vectors_.empty()) fail(ErrorCode::DimMismatch, "basis is empty");
    if (vectors_.size() != labels_.size()) fail(ErrorCode::LengthMismatch, "basis label count");
    const std::size_t d = vectors_.front().dim();
    if (vectors_.size() != d) fail(ErrorCode::DimMismatch, "basis must have dim vectors");
    for (std::size_t i = 0; i < d; ++i) {
      if (vectors_[i].dim() != d) fail(ErrorCode::DimMismatch, "basis vectors differ in dim");
      if (std::abs(vectors_[i].norm() - 1.0) > kNormTol) fail(ErrorCode::NotOrthogonal, "basis vector not normalized");
      for (std::size_t j = i + 1; j < d; ++j) {
        if (std::abs(inner(vectors_[i], vectors_[j])) > kNormTol) {
          fail(ErrorCode::NotOrthogonal, "basis vectors " + labels_[i] + " and " + labels_[j] + " overlap");
        }
      }
    }
  }

  static MeasurementBasis computational(std::size_t dim) {
    std::vector<QuantumState> v;
    for (std::size_t k = 0; k < dim; ++k) v.push_back(basis_state(dim, k));
    return MeasurementBasis(std::move(v), computational_labels(dim));
  }

  std::size_t dim() const { return vectors_.size(); }
  const QuantumState& vector(std::size_t k) const { return vectors_.at(k); }
  const std::vector<QuantumState>& vectors() const { return vectors_; }
  const std::string& label(std::size_t k) const { return labels_.at(k); }
  const std::vector<std::string>& labels() const { return labels_; }

  std::size_t index_of(const std::string& label) const {
    for (std::size_t k = 0; k < labels_.size(); ++k)
      if (labels_[k] == label) return k;
    fail(ErrorCode::IndexOutOfRange, "no basis element labeled '" + label + "'");
  }

 private:
  std::vector<QuantumState> vectors_;
  std::vector<std::string> labels_;
};

/// |<basis_k|s>|^2.
inline double born_prob(const QuantumState& s, const MeasurementBasis& basis, std::size_t k) {
  if (s.dim() != basis.dim()) fail(ErrorCode::DimMismatch, "born_prob: state and basis dims differ");
  if (k >= basis.dim()) fail(ErrorCode::IndexOutOfRange, "born_prob: index " + std::to_string(k));
  return std::norm(inner(basis.vector(k), s));
}

inline std::vector<double> born_distribution(const QuantumState& s, const MeasurementBasis& basis) {
  std::vector<double> p(basis.dim());
  for (std::size_t k = 0; k < basis.dim(); ++k) p[k] = born_prob(s, basis, k);
  return p;
}

namespace gates {

inline UnitaryOperator I2() { return UnitaryOperator::identity(2); }

inline UnitaryOperator X() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return UnitaryOperator(m);
}

inline UnitaryOperator Y() {
  CMatrix m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return UnitaryOperator(m);
}

inline UnitaryOperator Z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return UnitaryOperator(m);
}

inline UnitaryOperator H() {
  const double r = 1.0 / std::sqrt(2.0);
  CMatrix m(2, 2);
  m << r, r, r, -r;
  return UnitaryOperator(m);
}

inline UnitaryOperator CNOT() {
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
  return UnitaryOperator(m);
}

}  // namespace gates

}  // namespace qgame
