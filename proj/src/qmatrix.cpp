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

#include "qfock/qmatrix.hpp"

#include <cmath>
#include <string>

#include "qfock/errors.hpp"

namespace qfock {

QMatrix::QMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  const auto d = entries_.rows();
  if (d < 1 || entries_.cols() != d)
    throw DomainError("QMatrix: entries must form a square matrix of size >= 1");
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      if (entries_(i, j) != entries_(j, i))
        throw DomainError("QMatrix: not symmetric at entry pair (" + std::to_string(i) + "," +
                          std::to_string(j) + ") vs (" + std::to_string(j) + "," +
                          std::to_string(i) + ")");
    }
  }
  qmax_ = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const double a = std::abs(entries_(i, j));
      if (!(a < 1.0))
        throw DomainError("QMatrix: |q_" + std::to_string(i) + std::to_string(j) +
                          "| = " + std::to_string(a) + " must be < 1");
      qmax_ = std::max(qmax_, a);
    }
  }
}

QMatrix QMatrix::random(int d, double bound, CounterRng& rng) {
  Eigen::MatrixXd m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j <= i; ++j) {
      m(i, j) = m(j, i) = bound * rng.next_sym();
    }
  }
  return QMatrix(std::move(m));
}

bool QMatrix::is_constant(double* q_out) const {
  const double q = entries_(0, 0);
  if ((entries_.array() != q).any()) return false;
  if (q_out != nullptr) *q_out = q;
  return true;
}

}  // namespace qfock
