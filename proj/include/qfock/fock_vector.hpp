// Copyright 2026 The qfock Authors
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

#ifndef QFOCK_FOCK_VECTOR_HPP_
#define QFOCK_FOCK_VECTOR_HPP_

#include <complex>

#include <Eigen/Dense>

#include "qfock/errors.hpp"
#include "qfock/fock_basis.hpp"
#include "qfock/word.hpp"

namespace qfock {

using Cplx = std::complex<double>;
using DVec = Eigen::VectorXcd;
using DMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

/// A vector of the truncated Fock space, stored flat in the basis order.
class FockVector {
 public:
  /// Empty placeholder; assign a real vector before use.
  FockVector() = default;
  explicit FockVector(const FockBasis& basis)
      : basis_(&basis), coeffs_(DVec::Zero(basis.dim())) {}
  FockVector(const FockBasis& basis, DVec coeffs) : basis_(&basis), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != basis.dim())
      throw DomainError("FockVector: coefficient size does not match the basis dimension");
  }

  static FockVector vacuum(const FockBasis& basis) {
    FockVector v(basis);
    v.coeffs_[0] = 1.0;
    return v;
  }

  static FockVector unit(const FockBasis& basis, const Word& w) {
    FockVector v(basis);
    v.coeffs_[basis.word_index(w)] = 1.0;
    return v;
  }

  const FockBasis& basis() const { return *basis_; }
  const DVec& coeffs() const { return coeffs_; }
  DVec& coeffs() { return coeffs_; }

  Cplx coeff(const Word& w) const { return coeffs_[basis_->word_index(w)]; }
  void set_coeff(const Word& w, Cplx value) { coeffs_[basis_->word_index(w)] = value; }
  Cplx vacuum_coeff() const { return coeffs_[0]; }

  /// Read-only view of the degree-n segment.
  Eigen::VectorBlock<const DVec> level(int n) const {
    return coeffs_.segment(basis_->level_offset(n), basis_->level_dim(n));
  }
  Eigen::VectorBlock<DVec> level(int n) {
    return coeffs_.segment(basis_->level_offset(n), basis_->level_dim(n));
  }

  /// Largest degree carrying a coefficient above the threshold (-1 if none).
  int max_degree(double threshold = 0.0) const {
    for (int n = basis_->truncation(); n >= 0; --n) {
      if (level(n).cwiseAbs().maxCoeff() > threshold) return n;
    }
    return -1;
  }

  FockVector& operator+=(const FockVector& o) { coeffs_ += o.coeffs_; return *this; }
  FockVector& operator-=(const FockVector& o) { coeffs_ -= o.coeffs_; return *this; }
  FockVector& operator*=(Cplx a) { coeffs_ *= a; return *this; }

  friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
  friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
  friend FockVector operator*(Cplx a, FockVector v) { return v *= a; }

  /// Coordinate (undeformed) norm.
  double coord_norm() const { return coeffs_.norm(); }

 private:
  const FockBasis* basis_ = nullptr;
  DVec coeffs_;
};

}  // namespace qfock

#endif  // QFOCK_FOCK_VECTOR_HPP_
