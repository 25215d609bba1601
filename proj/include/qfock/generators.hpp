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

#ifndef QFOCK_GENERATORS_HPP_
#define QFOCK_GENERATORS_HPP_

#include <span>
#include <vector>

#include "qfock/block_operator.hpp"
#include "qfock/gram.hpp"
#include "qfock/qmatrix.hpp"
#include "qfock/rng.hpp"

namespace qfock {

enum class Side { left, right };
enum class GeneratorKind { creation, annihilation, gaussian };

/// Matrix realization of a creation/annihilation/field generator for letter
/// i of the mixed model. Creation at the top level maps to zero; the field
/// operator is creation + annihilation on the same side.
BlockOperator build_generator(const QMatrix& Q, const FockBasis& basis, Side side,
                              GeneratorKind kind, int i);

// Shorthands.
BlockOperator left_creation(const FockBasis& basis, int i);
BlockOperator left_annihilation(const QMatrix& Q, const FockBasis& basis, int i);
BlockOperator right_creation(const FockBasis& basis, int i);
BlockOperator right_annihilation(const QMatrix& Q, const FockBasis& basis, int i);
BlockOperator gaussian(const QMatrix& Q, const FockBasis& basis, Side side, int i);

struct AdjointReport {
  double max_left = 0.0;   // worst |<l_i xi, eta> - <xi, l_i* eta>| over basis pairs
  double max_right = 0.0;  // same for the right side
  double tolerance = 1e-9;
  bool pass = false;
};

/// Checks that the explicit annihilation formulas are the Gram adjoints of
/// the creation operators on all levels of the truncated space.
AdjointReport gram_adjoint_check(const GramStack& stack, int i, double tolerance = 1e-9);

/// Per-level blocks of l_i* r_j - r_j l_i*, their coordinate spectral norms,
/// and the diagonal reference when i = j.
struct CommutatorBlocks {
  int i = 0;
  int j = 0;
  std::vector<DMat> blocks;          // level n -> block on level n, n <= N-1
  std::vector<double> norms;         // spectral norms
  std::vector<double> bounds;        // qmax^n
  double max_bound_excess = 0.0;     // max over n of norms[n] - bounds[n]
  double max_offdiag_entry = 0.0;    // only meaningful when i != j
  double max_diag_deviation = 0.0;   // vs the product weights when i == j
};

CommutatorBlocks commutator_blocks(const QMatrix& Q, const FockBasis& basis, int i, int j);

/// Vacuum expectation of a product of block operators. Refuses to evaluate
/// when the summed formal raise exceeds the truncation (the value would be
/// polluted).
Cplx vacuum_moment(std::span<const BlockOperator* const> ops, const FockBasis& basis);
Cplx vacuum_moment(const std::vector<BlockOperator>& ops, const FockBasis& basis);

/// Moment of a single field operator s_i to the given even order, evaluated
/// against the vacuum.
Cplx gaussian_moment(const QMatrix& Q, const FockBasis& basis, int i, int order);

struct TracialityReport {
  double max_deviation = 0.0;
  int pairs = 0;
  double tolerance = 1e-8;
  bool pass = false;
};

/// Compares phi(ab) with phi(ba) for random words a, b in the field
/// operators, lengths 1..degree_cap.
TracialityReport traciality_check(const QMatrix& Q, const FockBasis& basis, int trials,
                                  int degree_cap, CounterRng& rng, double tolerance = 1e-8);

}  // namespace qfock

#endif  // QFOCK_GENERATORS_HPP_
