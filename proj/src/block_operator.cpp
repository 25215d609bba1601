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

#include "qfock/block_operator.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qfock/errors.hpp"

namespace qfock {

BlockOperator::BlockOperator(const FockBasis& basis, std::string label)
    : basis_(&basis), label_(std::move(label)),
      blocks_(static_cast<std::size_t>(basis.truncation()) + 1) {}

BlockOperator BlockOperator::identity(const FockBasis& basis) {
  BlockOperator op(basis, "id");
  for (int n = 0; n <= basis.truncation(); ++n) {
    SpMat block(basis.level_dim(n), basis.level_dim(n));
    block.setIdentity();
    op.set_block(n, 0, std::move(block));
  }
  return op;
}

BlockOperator BlockOperator::zero(const FockBasis& basis) { return BlockOperator(basis, "0"); }

void BlockOperator::set_reach(int raise, int lower) {
  raise_ = raise;
  lower_ = lower;
}

void BlockOperator::set_block(int source, int shift, SpMat block) {
  const int target = source + shift;
  if (source < 0 || source > basis_->truncation() || target < 0 || target > basis_->truncation())
    throw DomainError("BlockOperator: block outside the truncated range");
  if (block.rows() != basis_->level_dim(target) || block.cols() != basis_->level_dim(source))
    throw DomainError("BlockOperator: block dimensions do not match its levels");
  blocks_[static_cast<std::size_t>(source)][shift] = std::move(block);
}

void BlockOperator::add_block(int source, int shift, const SpMat& block) {
  auto& row = blocks_[static_cast<std::size_t>(source)];
  auto it = row.find(shift);
  if (it == row.end()) {
    set_block(source, shift, block);
  } else {
    it->second = it->second + block;
  }
}

bool BlockOperator::has_block(int source, int shift) const {
  if (source < 0 || source > basis_->truncation()) return false;
  return blocks_[static_cast<std::size_t>(source)].count(shift) > 0;
}

const SpMat& BlockOperator::sparse_block(int source, int shift) const {
  return blocks_[static_cast<std::size_t>(source)].at(shift);
}

const std::map<int, SpMat>& BlockOperator::blocks_at(int source) const {
  return blocks_[static_cast<std::size_t>(source)];
}

DMat BlockOperator::dense_block(int source, int shift) const {
  const int target = source + shift;
  if (target < 0 || target > basis_->truncation())
    throw DomainError("BlockOperator: dense_block target outside the truncation");
  if (!has_block(source, shift))
    return DMat::Zero(basis_->level_dim(target), basis_->level_dim(source));
  return DMat(sparse_block(source, shift));
}

bool BlockOperator::homogeneous_shift(int* shift_out) const {
  bool found = false;
  int shift = 0;
  for (const auto& row : blocks_) {
    for (const auto& [s, block] : row) {
      if (block.nonZeros() == 0) continue;
      if (!found) {
        shift = s;
        found = true;
      } else if (s != shift) {
        return false;
      }
    }
  }
  if (found && shift_out != nullptr) *shift_out = shift;
  return found;
}

FockVector BlockOperator::apply(const FockVector& v) const {
  if (!v.basis().same_shape(*basis_))
    throw DomainError("BlockOperator: vector basis does not match");
  FockVector out(v.basis());
  for (int n = 0; n <= basis_->truncation(); ++n) {
    for (const auto& [shift, block] : blocks_[static_cast<std::size_t>(n)]) {
      out.level(n + shift) += block * v.level(n);
    }
  }
  return out;
}

BlockOperator BlockOperator::compose(const BlockOperator& rhs) const {
  if (!rhs.basis().same_shape(*basis_))
    throw DomainError("BlockOperator: composing operators over different bases");
  BlockOperator out(*basis_, label_ + "*" + rhs.label_);
  for (int n = 0; n <= basis_->truncation(); ++n) {
    for (const auto& [s1, b1] : rhs.blocks_[static_cast<std::size_t>(n)]) {
      const int mid = n + s1;
      for (const auto& [s2, b2] : blocks_[static_cast<std::size_t>(mid)]) {
        SpMat prod = b2 * b1;
        out.add_block(n, s1 + s2, prod);
      }
    }
  }
  out.set_reach(raise_ + rhs.raise_, lower_ + rhs.lower_);
  return out;
}

BlockOperator BlockOperator::operator+(const BlockOperator& rhs) const {
  if (!rhs.basis().same_shape(*basis_))
    throw DomainError("BlockOperator: adding operators over different bases");
  BlockOperator out = *this;
  out.label_ = label_ + "+" + rhs.label_;
  for (int n = 0; n <= basis_->truncation(); ++n) {
    for (const auto& [s, b] : rhs.blocks_[static_cast<std::size_t>(n)]) out.add_block(n, s, b);
  }
  out.set_reach(std::max(raise_, rhs.raise_), std::max(lower_, rhs.lower_));
  return out;
}

BlockOperator BlockOperator::operator-(const BlockOperator& rhs) const {
  return *this + rhs.scaled(-1.0);
}

BlockOperator BlockOperator::scaled(Cplx factor) const {
  BlockOperator out(*basis_, label_);
  for (int n = 0; n <= basis_->truncation(); ++n) {
    for (const auto& [s, b] : blocks_[static_cast<std::size_t>(n)]) {
      out.set_block(n, s, SpMat(factor * b));
    }
  }
  out.set_reach(raise_, lower_);
  return out;
}

double BlockOperator::block_coord_norm(int source, int shift) const {
  const DMat block = dense_block(source, shift);
  if (block.size() == 0) return 0.0;
  return block.jacobiSvd().singularValues()(0);
}

double BlockOperator::max_abs_entry() const {
  double m = 0.0;
  for (const auto& row : blocks_) {
    for (const auto& [s, b] : row) {
      for (int k = 0; k < b.outerSize(); ++k) {
        for (SpMat::InnerIterator it(b, k); it; ++it) m = std::max(m, std::abs(it.value()));
      }
    }
  }
  return m;
}

GramContext::GramContext(const FockBasis& basis, std::vector<DMat> gram)
    : basis_(&basis), gram_(std::move(gram)) {
  if (gram_.size() != static_cast<std::size_t>(basis.truncation()) + 1)
    throw DomainError("GramContext: need one Gram block per level");
  sqrt_.resize(gram_.size());
  inv_sqrt_.resize(gram_.size());
  have_roots_.assign(gram_.size(), false);
}

Cplx GramContext::inner(const FockVector& xi, const FockVector& eta) const {
  if (!xi.basis().same_shape(*basis_) || !eta.basis().same_shape(*basis_))
    throw DomainError("GramContext: vectors live on a different basis");
  Cplx total = 0.0;
  for (int n = 0; n <= basis_->truncation(); ++n) {
    total += eta.level(n).dot(gram(n) * xi.level(n).matrix());
  }
  return total;
}

double GramContext::norm(const FockVector& v) const {
  const double s = inner(v, v).real();
  return s > 0.0 ? std::sqrt(s) : 0.0;
}

double GramContext::level_norm(const FockVector& v, int n) const {
  const Cplx s = v.level(n).dot(gram(n) * v.level(n).matrix());
  return s.real() > 0.0 ? std::sqrt(s.real()) : 0.0;
}

BlockOperator GramContext::adjoint(const BlockOperator& op) const {
  BlockOperator out(*basis_, op.label() + "^*");
  for (int n = 0; n <= basis_->truncation(); ++n) {
    for (const auto& [shift, block] : op.blocks_at(n)) {
      const int target = n + shift;
      // <op u, v>_t = <u, out v>_n with out = G_n^{-1} B^H G_t.
      const DMat dense = DMat(block);
      DMat adj = gram(n).llt().solve(dense.adjoint() * gram(target));
      out.add_block(target, -shift, adj.sparseView(1.0, 1e-300));
    }
  }
  out.set_reach(op.formal_lower(), op.formal_raise());
  return out;
}

void GramContext::ensure_roots(int n) const {
  if (have_roots_[static_cast<std::size_t>(n)]) return;
  Eigen::SelfAdjointEigenSolver<DMat> es(gram_[static_cast<std::size_t>(n)]);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw DegeneracyError("GramContext: level " + std::to_string(n) +
                          " Gram block is not positive definite");
  const auto sqrt_vals = es.eigenvalues().cwiseSqrt();
  sqrt_[static_cast<std::size_t>(n)] =
      es.eigenvectors() * sqrt_vals.asDiagonal() * es.eigenvectors().adjoint();
  inv_sqrt_[static_cast<std::size_t>(n)] =
      es.eigenvectors() * sqrt_vals.cwiseInverse().asDiagonal() * es.eigenvectors().adjoint();
  have_roots_[static_cast<std::size_t>(n)] = true;
}

const DMat& GramContext::sqrt(int n) const {
  ensure_roots(n);
  return sqrt_[static_cast<std::size_t>(n)];
}

const DMat& GramContext::inv_sqrt(int n) const {
  ensure_roots(n);
  return inv_sqrt_[static_cast<std::size_t>(n)];
}

double GramContext::gram_block_norm(const BlockOperator& op, int source, int shift) const {
  const int target = source + shift;
  if (target < 0 || target > basis_->truncation()) return 0.0;
  if (!op.has_block(source, shift)) return 0.0;
  const DMat transformed = sqrt(target) * op.dense_block(source, shift) * inv_sqrt(source);
  if (transformed.size() == 0) return 0.0;
  return transformed.jacobiSvd().singularValues()(0);
}

double GramContext::gram_norm_over_levels(const BlockOperator& op, int lo, int hi) const {
  double m = 0.0;
  lo = std::max(lo, 0);
  hi = std::min(hi, basis_->truncation());
  for (int n = lo; n <= hi; ++n) {
    for (const auto& [s, b] : op.blocks_at(n)) m = std::max(m, gram_block_norm(op, n, s));
  }
  return m;
}

}  // namespace qfock
