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

#include "qfock/generators.hpp"

#include <string>
#include <vector>

#include "qfock/errors.hpp"

namespace qfock {

namespace {

void check_letter(const FockBasis& basis, int i) {
  if (i < 0 || i >= basis.d())
    throw DomainError("generator: letter " + std::to_string(i) + " outside [0, " +
                      std::to_string(basis.d()) + ")");
}

using Triplets = std::vector<Eigen::Triplet<Cplx>>;

SpMat from_triplets(std::int64_t rows, std::int64_t cols, const Triplets& t) {
  SpMat m(rows, cols);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

}  // namespace

BlockOperator left_creation(const FockBasis& basis, int i) {
  check_letter(basis, i);
  BlockOperator op(basis, "l" + std::to_string(i));
  const int N = basis.truncation();
  for (int n = 0; n < N; ++n) {
    Triplets t;
    const std::int64_t dim = basis.level_dim(n);
    for (std::int64_t w = 0; w < dim; ++w) {
      // e_w -> e_{i.w}: prepending letter i multiplies the rank offset.
      t.emplace_back(i * dim + w, w, 1.0);
    }
    op.set_block(n, +1, from_triplets(basis.level_dim(n + 1), dim, t));
  }
  op.set_reach(1, 0);
  return op;
}

BlockOperator right_creation(const FockBasis& basis, int i) {
  check_letter(basis, i);
  BlockOperator op(basis, "r" + std::to_string(i));
  const int N = basis.truncation();
  const int d = basis.d();
  for (int n = 0; n < N; ++n) {
    Triplets t;
    const std::int64_t dim = basis.level_dim(n);
    for (std::int64_t w = 0; w < dim; ++w) {
      t.emplace_back(w * d + i, w, 1.0);
    }
    op.set_block(n, +1, from_triplets(basis.level_dim(n + 1), dim, t));
  }
  op.set_reach(1, 0);
  return op;
}

BlockOperator left_annihilation(const QMatrix& Q, const FockBasis& basis, int i) {
  check_letter(basis, i);
  if (Q.d() != basis.d()) throw DomainError("generator: Q does not match the basis dimension");
  BlockOperator op(basis, "l" + std::to_string(i) + "*");
  const int N = basis.truncation();
  for (int n = 1; n <= N; ++n) {
    Triplets t;
    const std::int64_t dim = basis.level_dim(n);
    for (std::int64_t w = 0; w < dim; ++w) {
      const Word word = basis.level_word(n, w);
      // Letter k matching i contributes q_{i j_1} ... q_{i j_{k-1}} times the
      // word with position k removed.
      double weight = 1.0;
      for (int k = 0; k < n; ++k) {
        if (word.letter(k) == i) {
          t.emplace_back(basis.level_rank(word.removed(k)), w, weight);
        }
        weight *= Q(i, word.letter(k));
      }
    }
    op.set_block(n, -1, from_triplets(basis.level_dim(n - 1), dim, t));
  }
  op.set_reach(0, 1);
  return op;
}

BlockOperator right_annihilation(const QMatrix& Q, const FockBasis& basis, int i) {
  check_letter(basis, i);
  if (Q.d() != basis.d()) throw DomainError("generator: Q does not match the basis dimension");
  BlockOperator op(basis, "r" + std::to_string(i) + "*");
  const int N = basis.truncation();
  for (int n = 1; n <= N; ++n) {
    Triplets t;
    const std::int64_t dim = basis.level_dim(n);
    for (std::int64_t w = 0; w < dim; ++w) {
      const Word word = basis.level_word(n, w);
      // Mirror image: letter k matching i takes the weights to its right.
      double weight = 1.0;
      for (int k = n - 1; k >= 0; --k) {
        if (word.letter(k) == i) {
          t.emplace_back(basis.level_rank(word.removed(k)), w, weight);
        }
        weight *= Q(i, word.letter(k));
      }
    }
    op.set_block(n, -1, from_triplets(basis.level_dim(n - 1), dim, t));
  }
  op.set_reach(0, 1);
  return op;
}

BlockOperator gaussian(const QMatrix& Q, const FockBasis& basis, Side side, int i) {
  BlockOperator op = side == Side::left
                         ? left_creation(basis, i) + left_annihilation(Q, basis, i)
                         : right_creation(basis, i) + right_annihilation(Q, basis, i);
  op.set_label((side == Side::left ? "s" : "sr") + std::to_string(i));
  op.set_reach(1, 1);
  return op;
}

BlockOperator build_generator(const QMatrix& Q, const FockBasis& basis, Side side,
                              GeneratorKind kind, int i) {
  switch (kind) {
    case GeneratorKind::creation:
      return side == Side::left ? left_creation(basis, i) : right_creation(basis, i);
    case GeneratorKind::annihilation:
      return side == Side::left ? left_annihilation(Q, basis, i)
                                : right_annihilation(Q, basis, i);
    case GeneratorKind::gaussian:
      return gaussian(Q, basis, side, i);
  }
  throw DomainError("build_generator: unknown kind");
}

AdjointReport gram_adjoint_check(const GramStack& stack, int i, double tolerance) {
  const FockBasis& basis = stack.basis();
  const QMatrix& Q = stack.qmatrix();
  AdjointReport report;
  report.tolerance = tolerance;

  const auto pair_deviation = [&](const BlockOperator& create, const BlockOperator& annihilate) {
    double worst = 0.0;
    for (int n = 0; n + 1 <= basis.truncation(); ++n) {
      // <c u, v>_{n+1} = <u, a v>_n over all basis pairs reads
      // G_{n+1} C = A^H G_n entrywise.
      const DMat lhs = stack.level(n + 1).cast<Cplx>() * create.dense_block(n, +1);
      const DMat rhs = annihilate.dense_block(n + 1, -1).adjoint() * stack.level(n).cast<Cplx>();
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
    return worst;
  };

  report.max_left = pair_deviation(left_creation(basis, i), left_annihilation(Q, basis, i));
  report.max_right = pair_deviation(right_creation(basis, i), right_annihilation(Q, basis, i));
  report.pass = report.max_left <= tolerance && report.max_right <= tolerance;
  return report;
}

CommutatorBlocks commutator_blocks(const QMatrix& Q, const FockBasis& basis, int i, int j) {
  check_letter(basis, i);
  check_letter(basis, j);
  CommutatorBlocks out;
  out.i = i;
  out.j = j;
  const BlockOperator li_star = left_annihilation(Q, basis, i);
  const BlockOperator rj = right_creation(basis, j);
  const BlockOperator diff = li_star * rj - rj * li_star;
  const double qmax = Q.qmax();

  double bound = 1.0;  // qmax^0
  for (int n = 0; n + 1 <= basis.truncation(); ++n) {
    DMat block = diff.dense_block(n, 0);
    out.norms.push_back(block.size() == 0 ? 0.0 : block.jacobiSvd().singularValues()(0));
    out.bounds.push_back(bound);
    out.max_bound_excess = std::max(out.max_bound_excess, out.norms.back() - bound);
    if (i != j) {
      out.max_offdiag_entry = std::max(out.max_offdiag_entry, block.cwiseAbs().maxCoeff());
    } else {
      // Reference: diagonal entries q_{i j_1} ... q_{i j_n}.
      DMat ref = DMat::Zero(block.rows(), block.cols());
      for (std::int64_t w = 0; w < basis.level_dim(n); ++w) {
        const Word word = basis.level_word(n, w);
        double value = 1.0;
        for (int k = 0; k < n; ++k) value *= Q(i, word.letter(k));
        ref(w, w) = value;
      }
      out.max_diag_deviation =
          std::max(out.max_diag_deviation, (block - ref).cwiseAbs().maxCoeff());
    }
    out.blocks.push_back(std::move(block));
    bound *= qmax;
  }
  return out;
}

Cplx vacuum_moment(std::span<const BlockOperator* const> ops, const FockBasis& basis) {
  int total_raise = 0;
  for (const BlockOperator* op : ops) {
    if (!op->basis().same_shape(basis))
      throw DomainError("vacuum_moment: operator basis mismatch");
    total_raise += op->formal_raise();
  }
  if (total_raise > basis.truncation())
    throw TruncationError("vacuum_moment: degree reach " + std::to_string(total_raise) +
                          " exceeds the truncation " + std::to_string(basis.truncation()) +
                          "; the value would be polluted");
  FockVector v = FockVector::vacuum(basis);
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) v = (*it)->apply(v);
  return v.vacuum_coeff();
}

Cplx vacuum_moment(const std::vector<BlockOperator>& ops, const FockBasis& basis) {
  std::vector<const BlockOperator*> ptrs;
  ptrs.reserve(ops.size());
  for (const auto& op : ops) ptrs.push_back(&op);
  return vacuum_moment(std::span<const BlockOperator* const>(ptrs), basis);
}

Cplx gaussian_moment(const QMatrix& Q, const FockBasis& basis, int i, int order) {
  if (order < 0) throw DomainError("gaussian_moment: negative order");
  const BlockOperator s = gaussian(Q, basis, Side::left, i);
  std::vector<const BlockOperator*> ops(static_cast<std::size_t>(order), &s);
  return vacuum_moment(std::span<const BlockOperator* const>(ops), basis);
}

TracialityReport traciality_check(const QMatrix& Q, const FockBasis& basis, int trials,
                                  int degree_cap, CounterRng& rng, double tolerance) {
  TracialityReport report;
  report.tolerance = tolerance;
  std::vector<BlockOperator> fields;
  for (int i = 0; i < basis.d(); ++i) fields.push_back(gaussian(Q, basis, Side::left, i));

  const auto random_word = [&](int len) {
    std::vector<const BlockOperator*> word;
    for (int k = 0; k < len; ++k)
      word.push_back(&fields[static_cast<std::size_t>(rng.next_below(basis.d()))]);
    return word;
  };

  for (int t = 0; t < trials; ++t) {
    const int la = 1 + static_cast<int>(rng.next_below(degree_cap));
    const int lb = 1 + static_cast<int>(rng.next_below(degree_cap));
    if (la + lb > basis.truncation())
      throw TruncationError("traciality_check: word lengths exceed the safe degree");
    std::vector<const BlockOperator*> a = random_word(la);
    std::vector<const BlockOperator*> b = random_word(lb);
    std::vector<const BlockOperator*> ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    std::vector<const BlockOperator*> ba = b;
    ba.insert(ba.end(), a.begin(), a.end());
    const Cplx fwd = vacuum_moment(std::span<const BlockOperator* const>(ab), basis);
    const Cplx rev = vacuum_moment(std::span<const BlockOperator* const>(ba), basis);
    report.max_deviation = std::max(report.max_deviation, std::abs(fwd - rev));
    ++report.pairs;
  }
  report.pass = report.max_deviation <= tolerance;
  return report;
}

}  // namespace qfock
