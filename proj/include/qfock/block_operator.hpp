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

#ifndef QFOCK_BLOCK_OPERATOR_HPP_
#define QFOCK_BLOCK_OPERATOR_HPP_

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "qfock/fock_vector.hpp"

namespace qfock {

using SpMat = Eigen::SparseMatrix<Cplx>;

/// A degree-graded operator on the truncated Fock space, stored as blocks
/// mapping each source degree n to degree n + shift. Generators carry one
/// shift (+1 creation, -1 annihilation); sums and products carry several.
///
/// Blocks whose target degree would leave [0, N] are absent: a creation
/// operator maps the top level to zero. The formal raise/lower counters
/// record the untruncated degree reach, which drives the safe-degree rule
/// for products evaluated against the vacuum.
///
/// Immutable in practice after a builder returns it; all algebra returns
/// new operators.
class BlockOperator {
 public:
  explicit BlockOperator(const FockBasis& basis, std::string label = "");

  static BlockOperator identity(const FockBasis& basis);
  static BlockOperator zero(const FockBasis& basis);

  const FockBasis& basis() const { return *basis_; }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  /// Formal maximum degree increase of the untruncated operator.
  int formal_raise() const { return raise_; }
  /// Formal maximum degree decrease (a nonnegative count).
  int formal_lower() const { return lower_; }
  void set_reach(int raise, int lower);

  /// Installs a block; target degree must lie in [0, N].
  void set_block(int source, int shift, SpMat block);
  void add_block(int source, int shift, const SpMat& block);
  bool has_block(int source, int shift) const;
  const SpMat& sparse_block(int source, int shift) const;
  const std::map<int, SpMat>& blocks_at(int source) const;

  /// Dense copy of a block; zero matrix when the block is absent.
  DMat dense_block(int source, int shift) const;

  /// True when every stored block carries the same shift (returned via out).
  bool homogeneous_shift(int* shift_out) const;

  FockVector apply(const FockVector& v) const;

  BlockOperator compose(const BlockOperator& rhs) const;  // (*this) after rhs
  BlockOperator operator*(const BlockOperator& rhs) const { return compose(rhs); }
  BlockOperator operator+(const BlockOperator& rhs) const;
  BlockOperator operator-(const BlockOperator& rhs) const;
  BlockOperator scaled(Cplx factor) const;

  /// Largest singular value of the block in coordinate geometry.
  double block_coord_norm(int source, int shift) const;
  /// Largest absolute entry over all blocks.
  double max_abs_entry() const;

 private:
  const FockBasis* basis_;
  std::string label_;
  std::vector<std::map<int, SpMat>> blocks_;  // blocks_[source][shift]
  int raise_ = 0;
  int lower_ = 0;
};

/// Per-level Gram data for one model; the geometry against which adjoints
/// and deformed norms are taken.
class GramContext {
 public:
  GramContext(const FockBasis& basis, std::vector<DMat> gram);

  const FockBasis& basis() const { return *basis_; }
  const DMat& gram(int n) const { return gram_[static_cast<std::size_t>(n)]; }

  Cplx inner(const FockVector& xi, const FockVector& eta) const;
  double norm(const FockVector& v) const;
  double level_norm(const FockVector& v, int n) const;

  /// Adjoint with respect to the per-level Gram blocks of the truncated
  /// space. Exact there; agreement with the untruncated adjoint is a
  /// safe-degree question for the caller.
  BlockOperator adjoint(const BlockOperator& op) const;

  /// Operator norm of one block measured deformed-to-deformed.
  double gram_block_norm(const BlockOperator& op, int source, int shift) const;

  /// Max of gram_block_norm over the given source levels (all blocks).
  double gram_norm_over_levels(const BlockOperator& op, int lo, int hi) const;

  const DMat& sqrt(int n) const;
  const DMat& inv_sqrt(int n) const;

 private:
  const FockBasis* basis_;
  std::vector<DMat> gram_;
  mutable std::vector<DMat> sqrt_;
  mutable std::vector<DMat> inv_sqrt_;
  mutable std::vector<bool> have_roots_;
  void ensure_roots(int n) const;
};

}  // namespace qfock

#endif  // QFOCK_BLOCK_OPERATOR_HPP_
