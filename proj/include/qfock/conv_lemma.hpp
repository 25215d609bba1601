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

#ifndef QFOCK_CONV_LEMMA_HPP_
#define QFOCK_CONV_LEMMA_HPP_

#include <cstdint>
#include <vector>

#include "qfock/block_operator.hpp"
#include "qfock/rng.hpp"

namespace qfock {

// Desk-scale harness for the commutator-expansion identity
//   <a_1*...a_r* xi, b_1...b_s eta> = sum_n <xi, T_n eta_n>
// and its geometric-decay estimate, for operator families whose pairwise
// commutators decay like q^n across the degree levels.

struct ConvSetup {
  const GramContext* ctx = nullptr;
  std::vector<BlockOperator> a_ops;  // a_1..a_r; a_r annihilates K
  std::vector<BlockOperator> b_ops;  // b_1..b_s
  // Per-level coordinate index subsets spanning K_n.
  std::vector<std::vector<std::int64_t>> K;
  double q = 0.0;  // decay constant of the commutator hypothesis
  FockVector xi;
  FockVector eta;
};

/// Index sets of the sub-Fock space over a single letter (one word per level).
std::vector<std::vector<std::int64_t>> single_letter_K(const FockBasis& basis, int letter);

/// Random vector supported in K with degrees in [deg_lo, deg_hi], unit
/// coordinate norm.
FockVector random_K_vector(const FockBasis& basis,
                           const std::vector<std::vector<std::int64_t>>& K, int deg_lo,
                           int deg_hi, CounterRng& rng);

struct HypothesisReport {
  bool shifts_ok = false;                       // every a_i, b_j is +/-1 homogeneous
  std::vector<double> level_commutator_norms;   // max over (i,j) per level
  double max_commutator_excess = 0.0;           // worst norm - q^n
  double fitted_decay_rate = 0.0;               // least-squares fit on the log norms
  double k_invariance_residual = 0.0;           // a_i(K) inside K, i < r
  double k_annihilation_residual = 0.0;         // a_r on K
  double chain_annihilation_residual = 0.0;     // ||a_r ... a_1 eta||
  double support_residual = 0.0;                // xi, eta mass outside K
  bool pass = false;
};

/// Measures each hypothesis of the setup; report-only.
HypothesisReport validate_setup(const ConvSetup& setup);

struct ExpansionReport {
  Cplx lhs = 0.0;
  Cplx rhs = 0.0;
  std::vector<Cplx> per_level;  // <xi, T eta_n>
  double residual = 0.0;
  double tolerance = 0.0;  // 1e-9 * (1 + |lhs|)
  bool pass = false;
};

/// Exact expansion: the direct pairing against the commutator-insertion
/// assembly. Throws PreconditionError when a_r...a_1 eta does not vanish and
/// TruncationError when degrees do not fit under the cutoff.
ExpansionReport tn_expansion_check(const ConvSetup& setup);

struct BoundReport {
  double lhs_abs = 0.0;
  double constant = 0.0;  // explicitly computed C
  double rhs = 0.0;       // C ||xi|| sum_n q^n ||eta_n||
  double slack = 1e-12;
  bool pass = false;
  std::vector<double> per_level_ratio;  // ||T eta_n|| / (C q^n ||eta_n||)
  std::vector<double> tail_measured;    // per N0
  std::vector<double> tail_bound;       // sup ||eta_n|| q^N0 / (1-q)
  bool tail_pass = false;
};

/// Quantitative estimate: computes a concrete valid constant from the
/// deformed operator norms of the factors and the exact degree bookkeeping,
/// then checks |LHS| <= RHS and the geometric tail estimate.
BoundReport conv_bound_check(const ConvSetup& setup);

}  // namespace qfock

#endif  // QFOCK_CONV_LEMMA_HPP_
