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

#include "qfock/gram.hpp"

#include <string>

#include <Eigen/Eigenvalues>

#include "qfock/detail/gram_builder.hpp"
#include "qfock/errors.hpp"
#include "qfock/gram_cache.hpp"

namespace qfock {

DVec apply_T_k(const QMatrix& Q, int n, int k, const DVec& v) {
  if (k < 1 || k > n - 1)
    throw DomainError("apply_T_k: slot index k = " + std::to_string(k) + " outside [1, " +
                      std::to_string(n - 1) + "]");
  const int d = Q.d();
  const std::int64_t dim = detail::int_pow(d, n);
  if (v.size() != dim) throw DomainError("apply_T_k: vector has wrong level dimension");
  // Strides of the two adjacent slots (slot k is 1-based from the left).
  const std::int64_t hi = detail::int_pow(d, n - k);      // stride of slot k
  const std::int64_t lo = hi / d;                          // stride of slot k+1
  DVec out = DVec::Zero(dim);
  for (std::int64_t w = 0; w < dim; ++w) {
    const int a = static_cast<int>((w / hi) % d);
    const int b = static_cast<int>((w / lo) % d);
    const std::int64_t target = w + (b - a) * hi + (a - b) * lo;
    out[target] += Q(a, b) * v[w];
  }
  return out;
}

double GramBlock::mineig() const {
  if (!mineig_) {
    Eigen::SelfAdjointEigenSolver<RMat> es(matrix_, Eigen::EigenvaluesOnly);
    mineig_ = es.eigenvalues().minCoeff();
  }
  return *mineig_;
}

GramBlock gram_block(const QMatrix& Q, int n, GramMode mode) {
  if (n < 0) throw DomainError("gram_block: negative degree");
  if (mode == GramMode::naive) {
    if (n > kNaiveGramMaxDegree)
      throw PreconditionError("gram_block: naive mode refused above degree " +
                              std::to_string(kNaiveGramMaxDegree) + " (factorial cost), got " +
                              std::to_string(n));
    return GramBlock(n, detail::naive_gram_level<double>(Q.entries(), Q.d(), n));
  }
  RMat prev = RMat::Ones(1, 1);
  for (int m = 1; m <= n; ++m) prev = detail::recursive_gram_level<double>(Q.entries(), Q.d(), m, prev);
  return GramBlock(n, std::move(prev));
}

GramStack::GramStack(QMatrix Q, const FockBasis& basis, std::string cache_dir)
    : Q_(std::move(Q)), basis_(&basis), cache_dir_(std::move(cache_dir)) {
  if (Q_.d() != basis.d())
    throw DomainError("GramStack: deformation matrix dimension does not match the basis");
  blocks_.resize(static_cast<std::size_t>(basis.truncation()) + 1);
}

const GramBlock& GramStack::block(int n) const {
  if (n < 0 || n > basis_->truncation())
    throw DomainError("GramStack: level " + std::to_string(n) + " outside the truncation");
  if (blocks_[static_cast<std::size_t>(n)]) return *blocks_[static_cast<std::size_t>(n)];
  const std::uint64_t qhash = qmatrix_hash(Q_);
  for (int m = 0; m <= n; ++m) {
    auto& slot = blocks_[static_cast<std::size_t>(m)];
    if (slot) continue;
    if (!cache_dir_.empty()) {
      if (auto cached = read_gram_cache(cache_dir_, Q_.d(), m, qhash)) {
        ++cache_hits_;
        slot = std::make_unique<GramBlock>(m, std::move(*cached));
        continue;
      }
    }
    RMat mat;
    if (m == 0) {
      mat = RMat::Ones(1, 1);
    } else {
      mat = detail::recursive_gram_level<double>(Q_.entries(), Q_.d(), m,
                                                 blocks_[static_cast<std::size_t>(m) - 1]->matrix());
    }
    if (!cache_dir_.empty()) {
      write_gram_cache(cache_dir_, Q_.d(), m, qhash, mat);
      ++cache_writes_;
    }
    slot = std::make_unique<GramBlock>(m, std::move(mat));
  }
  return *blocks_[static_cast<std::size_t>(n)];
}

Cplx deformed_inner(const GramStack& stack, const FockVector& xi, const FockVector& eta) {
  if (&xi.basis() != &eta.basis() && !xi.basis().same_shape(eta.basis()))
    throw DomainError("deformed_inner: vectors live on different bases");
  if (!stack.basis().same_shape(xi.basis()))
    throw DomainError("deformed_inner: vectors do not match the Gram stack basis");
  Cplx total = 0.0;
  for (int n = 0; n <= stack.basis().truncation(); ++n) {
    total += eta.level(n).dot(stack.level(n).cast<Cplx>() * xi.level(n).matrix());
  }
  return total;
}

PositivityReport gram_positivity_report(const GramStack& stack, double floor) {
  PositivityReport report;
  report.floor = floor;
  for (int n = 0; n <= stack.basis().truncation(); ++n) {
    const double e = stack.block(n).mineig();
    report.mineig.push_back(e);
    if (e <= floor) {
      report.flagged.push_back(n);
      report.pass = false;
    }
  }
  return report;
}

}  // namespace qfock
