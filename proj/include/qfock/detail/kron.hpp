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

#ifndef QFOCK_DETAIL_KRON_HPP_
#define QFOCK_DETAIL_KRON_HPP_

#include <Eigen/Dense>

namespace qfock::detail {

template <typename Mat>
Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

template <typename Mat>
Mat kron_pow(const Mat& a, int n) {
  Mat out = Mat::Ones(1, 1);
  for (int k = 0; k < n; ++k) out = kron(out, a);
  return out;
}

}  // namespace qfock::detail

#endif  // QFOCK_DETAIL_KRON_HPP_
