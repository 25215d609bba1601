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

#ifndef QFOCK_GRAM_EXACT_HPP_
#define QFOCK_GRAM_EXACT_HPP_

#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include "qfock/fock_vector.hpp"

namespace qfock {

// Exact-rational twin of the Gram construction. When every q_ij is rational
// the naive and recursive blocks can be compared with operator== instead of
// a tolerance, which settles the float results independently.

using Rational = boost::multiprecision::cpp_rational;
using RatMat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

inline constexpr std::int64_t kExactGramMaxDim = 4096;

/// Symmetric rational deformation matrix with |q_ij| < 1.
class QMatrixExact {
 public:
  explicit QMatrixExact(RatMat entries);
  int d() const { return static_cast<int>(entries_.rows()); }
  const Rational& operator()(int i, int j) const { return entries_(i, j); }
  const RatMat& entries() const { return entries_; }
  /// Nearest-double image of the entries.
  RMat to_double() const;

 private:
  RatMat entries_;
};

/// Parses "p/q", integers, and finite decimals ("0.25") exactly.
Rational parse_rational(const std::string& text);

RatMat exact_gram_naive(const QMatrixExact& Q, int n);
RatMat exact_gram_recursive(const QMatrixExact& Q, int n);

RMat rat_to_double(const RatMat& m);

// Entrywise comparisons; Eigen's expression-level operators are avoided for
// the multiprecision scalar.
bool rat_equal(const RatMat& a, const RatMat& b);
bool rat_symmetric(const RatMat& a);

}  // namespace qfock

#endif  // QFOCK_GRAM_EXACT_HPP_
