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

#ifndef QFOCK_WICK_HPP_
#define QFOCK_WICK_HPP_

#include <functional>
#include <map>
#include <vector>

#include "qfock/block_operator.hpp"
#include "qfock/generators.hpp"
#include "qfock/qmatrix.hpp"
#include "qfock/rng.hpp"

namespace qfock {

/// Letter-reversal conjugation: words reversed, coefficients conjugated.
/// An antilinear involution.
FockVector conjugate_J(const FockVector& v);

/// J X J as a block operator (linear again since J appears twice).
BlockOperator conjugate_by_J(const BlockOperator& op);

/// The operator taking the vacuum to a prescribed vector, built by the
/// recursion  W(empty) = id,  W(e.w) = F_e W(w) - W(A_e w)  where F_e is the
/// field operator of the letter and A_e its annihilation part. The `append`
/// direction runs the mirror recursion for right (commutant-side) products.
class WickBuilder {
 public:
  enum class Direction { prepend, append };

  WickBuilder(const FockBasis& basis, Direction direction, std::vector<BlockOperator> fields,
              std::vector<BlockOperator> annihilators);

  const FockBasis& basis() const { return *basis_; }
  const BlockOperator& of_word(const Word& w);
  BlockOperator of_vector(const FockVector& v);

 private:
  const FockBasis* basis_;
  Direction direction_;
  std::vector<BlockOperator> fields_;
  std::vector<BlockOperator> annihilators_;
  std::map<Word, BlockOperator> memo_;
};

struct WickOp {
  FockVector argument;
  BlockOperator op;
  Side side = Side::left;
};

/// Recursion-built Wick product of the mixed model. Requires one level of
/// headroom: deg(xi) + 1 <= N.
WickOp wick(const QMatrix& Q, const FockBasis& basis, const FockVector& xi);

/// Right Wick product of the mixed model via the conjugation route
/// W_r(xi) = J W(J xi) J.
WickOp right_wick(const QMatrix& Q, const FockBasis& basis, const FockVector& xi);

/// Right Wick product via the mirror recursion; used to cross-check the
/// conjugation route.
WickOp right_wick_recursion(const QMatrix& Q, const FockBasis& basis, const FockVector& xi);

using OpFactory = std::function<BlockOperator(const DVec&)>;

/// Crossing-statistic Wick sum for a word of one-particle vectors: over all
/// splittings of the positions into creation set I1 and annihilation set I2
/// (original order kept inside each), weight q^(#{(a,b) in I1 x I2 : b < a}).
/// `creation` must realize l(e) and `annihilation_conj` must realize l*(Ie).
BlockOperator wick_crossing_generic(const FockBasis& basis, double q,
                                    const std::vector<DVec>& letters, const OpFactory& creation,
                                    const OpFactory& annihilation_conj);

/// Crossing-statistic Wick product for the mixed model; the closed sum is
/// only available for a constant deformation, other Q are refused.
WickOp wick_crossing(const QMatrix& Q, const FockBasis& basis,
                     const std::vector<DVec>& letters);

struct CommutantReport {
  double max_action_norm = 0.0;
  int trials = 0;
  double tolerance = 1e-8;
  bool pass = false;
};

/// Random word combination with degrees 1..max_degree, unit coordinate norm.
FockVector random_word_combination(const FockBasis& basis, int max_degree, CounterRng& rng,
                                   bool complex_coeffs = true);

/// Measures || (W(xi) W_r(eta) - W_r(eta) W(xi)) v || over random xi, eta, v
/// in the deformed geometry. The combined degree reach must fit under the
/// truncation.
CommutantReport commutant_check(const GramContext& ctx,
                                const std::function<BlockOperator(const FockVector&)>& left_of,
                                const std::function<BlockOperator(const FockVector&)>& right_of,
                                int deg_xi, int deg_eta, int deg_v, int trials, CounterRng& rng,
                                double tolerance = 1e-8);

}  // namespace qfock

#endif  // QFOCK_WICK_HPP_
