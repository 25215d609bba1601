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

#ifndef QFOCK_GRAM_HPP_
#define QFOCK_GRAM_HPP_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qfock/fock_vector.hpp"
#include "qfock/qmatrix.hpp"

namespace qfock {

/// Letter-swap operator in slots (k, k+1) acting on a degree-n coordinate
/// vector: e_{..., a, b, ...} -> q_ab e_{..., b, a, ...}, extended linearly.
/// k is 1-based with 1 <= k <= n-1.
DVec apply_T_k(const QMatrix& Q, int n, int k, const DVec& v);

/// Deformed inner-product matrix on one degree level.
class GramBlock {
 public:
  GramBlock(int n, RMat matrix) : n_(n), matrix_(std::move(matrix)) {}

  int degree() const { return n_; }
  const RMat& matrix() const { return matrix_; }
  /// Smallest eigenvalue; computed on first use and cached.
  double mineig() const;

 private:
  int n_;
  RMat matrix_;
  mutable std::optional<double> mineig_;
};

enum class GramMode { naive, recursive };

inline constexpr int kNaiveGramMaxDegree = 8;

/// Builds the level-n block. Naive mode sums permutation weights over the
/// whole symmetric group (factorial cost, refused above degree 8) with a
/// braid self-check; recursive mode runs the level recursion from degree 0.
GramBlock gram_block(const QMatrix& Q, int n, GramMode mode);

/// Gram blocks for every level of a truncated basis, built recursively and
/// optionally backed by a disk cache. Blocks are immutable once built.
class GramStack {
 public:
  GramStack(QMatrix Q, const FockBasis& basis, std::string cache_dir = "");

  const FockBasis& basis() const { return *basis_; }
  const QMatrix& qmatrix() const { return Q_; }

  const GramBlock& block(int n) const;
  const RMat& level(int n) const { return block(n).matrix(); }

  int cache_hits() const { return cache_hits_; }
  int cache_writes() const { return cache_writes_; }

 private:
  QMatrix Q_;
  const FockBasis* basis_;
  std::string cache_dir_;
  mutable std::vector<std::unique_ptr<GramBlock>> blocks_;
  mutable int cache_hits_ = 0;
  mutable int cache_writes_ = 0;
};

/// Sum over degree levels of the blockwise deformed pairing; linear in the
/// left argument, conjugate-linear in the right.
Cplx deformed_inner(const GramStack& stack, const FockVector& xi, const FockVector& eta);

struct PositivityReport {
  std::vector<double> mineig;  // per level 0..N
  double floor = 1e-12;
  std::vector<int> flagged;    // levels with mineig <= floor
  bool pass = true;
};

/// Smallest eigenvalue per level; flags any level at or below the floor.
PositivityReport gram_positivity_report(const GramStack& stack, double floor = 1e-12);

}  // namespace qfock

#endif  // QFOCK_GRAM_HPP_
