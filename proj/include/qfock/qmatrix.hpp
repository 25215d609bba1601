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

#ifndef QFOCK_QMATRIX_HPP_
#define QFOCK_QMATRIX_HPP_

#include <Eigen/Dense>

#include "qfock/rng.hpp"

namespace qfock {

/// Symmetric real deformation matrix with entries in (-1, 1).
class QMatrix {
 public:
  /// Validates symmetry and |q_ij| < 1. Throws DomainError otherwise, naming
  /// the offending entry pair.
  explicit QMatrix(Eigen::MatrixXd entries);

  static QMatrix zero(int d) { return QMatrix(Eigen::MatrixXd::Zero(d, d)); }
  static QMatrix constant(int d, double q) {
    return QMatrix(Eigen::MatrixXd::Constant(d, d, q));
  }
  /// Random symmetric matrix with qmax <= bound (entries uniform in (-bound, bound)).
  static QMatrix random(int d, double bound, CounterRng& rng);

  int d() const { return static_cast<int>(entries_.rows()); }
  double operator()(int i, int j) const { return entries_(i, j); }
  const Eigen::MatrixXd& entries() const { return entries_; }
  double qmax() const { return qmax_; }

  bool is_constant(double* q_out = nullptr) const;

 private:
  Eigen::MatrixXd entries_;
  double qmax_;
};

}  // namespace qfock

#endif  // QFOCK_QMATRIX_HPP_
