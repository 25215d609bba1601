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

#ifndef QFOCK_ARAKI_WOODS_HPP_
#define QFOCK_ARAKI_WOODS_HPP_

#include <memory>
#include <vector>

#include "qfock/block_operator.hpp"
#include "qfock/rng.hpp"
#include "qfock/wick.hpp"

namespace qfock {

/// One orthogonal block of the one-parameter group: an invariant line
/// (lambda = 1) or a rotation plane with generator eigenvalues lambda,
/// 1/lambda.
struct AWBlockSpec {
  double lambda = 1.0;
};

/// Finite-dimensional almost-periodic deformed-Fock model: a positive
/// generator A on the complexification of R^m chosen blockwise, the deformed
/// one-particle inner product <xi, eta>_U = <2(1+A^-1)^-1 xi, eta>, the
/// scalar-q symmetrized Fock levels above it, and the dual real subspace
/// H_R' solved from Im <xi, eta_k>_U = 0.
///
/// Immutable after construction.
class AWModel {
 public:
  AWModel(std::vector<AWBlockSpec> blocks, double q, int N,
          std::int64_t budget = FockBasis::kDefaultBudget);

  int dim_R() const { return m_; }
  double q() const { return q_; }
  const FockBasis& basis() const { return basis_; }
  const DMat& A() const { return A_; }
  const DMat& deformer() const { return TU_; }  // 2(1+A^{-1})^{-1}
  const GramContext& context() const { return *ctx_; }

  /// Deformed one-particle inner product, linear on the left.
  Cplx aw_inner(const DVec& xi, const DVec& eta) const;
  double aw_norm(const DVec& xi) const;

  /// Standard complex conjugation (fixes H_R pointwise).
  DVec conj_I(const DVec& xi) const { return xi.conjugate(); }
  /// Conjugation in the H_R' frame (fixes H_R' pointwise).
  DVec conj_Ir(const DVec& xi) const;

  /// Columns form a real basis of H_R'.
  const DMat& hr_prime_basis() const { return hr_prime_; }

  struct EigenPair {
    double lambda;
    DVec vec;
  };
  const std::vector<EigenPair>& eigen_pairs() const { return eigen_pairs_; }
  /// Unit vector of H_R fixed by A; DegeneracyError when no invariant block
  /// exists.
  DVec invariant_vector() const;

  /// A^{it} as a matrix on the one-particle space.
  DMat unitary(double t) const;

  // One-particle-vector operators on the truncated Fock space.
  BlockOperator create_l(const DVec& xi) const;
  BlockOperator annihilate_l(const DVec& xi) const;
  BlockOperator create_r(const DVec& xi) const;
  BlockOperator annihilate_r(const DVec& xi) const;
  /// l(xi) + l*(I xi); self-adjoint for xi in H_R.
  BlockOperator field(const DVec& xi) const;
  /// r(xi) + r*(I_r xi); self-adjoint for xi in H_R'.
  BlockOperator field_r(const DVec& xi) const;

  WickBuilder wick_builder() const;
  WickBuilder right_wick_builder() const;
  /// Recursion-built (right) Wick operators with the headroom check.
  BlockOperator wick_of(const FockVector& xi) const;
  BlockOperator right_wick_of(const FockVector& xi) const;
  /// Crossing-statistic Wick operator for a word of one-particle vectors.
  BlockOperator wick_crossing_of(const std::vector<DVec>& letters) const;

  /// Vacuum expectation of a product.
  Cplx moment(const std::vector<const BlockOperator*>& ops) const;

 private:
  int m_;
  double q_;
  FockBasis basis_;
  DMat A_;
  DMat TU_;
  DMat hr_prime_;      // columns g_1..g_m
  DMat hr_prime_inv_;  // inverse of [g_1 ... g_m]
  std::vector<EigenPair> eigen_pairs_;
  std::vector<AWBlockSpec> blocks_;
  std::unique_ptr<GramContext> ctx_;
};

// ---- Structure diagnostics ----

struct AWStructureReport {
  double real_part_residual = 0.0;   // Re<.,.>_U vs the real inner product on H_R
  double unitarity_residual = 0.0;   // U_t invariance of <.,.>_U at sampled t
  double hr_prime_membership = 0.0;  // invariant vector inside H_R' (when present)
  int trials = 0;
  double tolerance = 1e-10;
  bool pass = false;
};

AWStructureReport aw_structure_check(const AWModel& model, int trials, CounterRng& rng,
                                     double tolerance = 1e-10);

/// Distance between H_R' and its closed form (1 + A^{-1}) H_R, as projector
/// difference in the real coordinates.
double hr_prime_closed_form_residual(const AWModel& model);

struct IrOrthogonalityReport {
  double max_residual = 0.0;
  int trials = 0;
  double tolerance = 1e-9;
  bool pass = false;
};

/// For random f in H_R and e orthogonal to f, checks <I_r e, f>_U = 0.
IrOrthogonalityReport ir_orthogonality_check(const AWModel& model, int trials, CounterRng& rng,
                                             double tolerance = 1e-9);

struct DualityReport {
  double annihilator_commutator = 0.0;  // l*(f) r*(g) - r*(g) l*(f), max entry
  double scalar_relation_residual = 0.0;  // (r*(g) l(f) - l(f) r*(g))|_k vs <f,g> q^k id
  int trials = 0;
  bool pass = false;
};

/// Left/right generator commutation relations for f in H_R, g in H_R'.
DualityReport hr_duality_check(const AWModel& model, int trials, CounterRng& rng,
                               double tolerance = 1e-9);

// ---- Modular data ----

struct ModularData {
  int cap = 0;
  DMat S;          // word frame: the antilinear map is v -> S conj(v)
  DMat delta;      // word frame
  DMat candidate;  // blockdiag (A^{-1})^{(x) n}
  double s_involution_residual = 0.0;  // S S - id
  double delta_min_eig = 0.0;
  double polar_residual = 0.0;      // Jmod Delta^{1/2} vs S (orthonormal frame)
  double jmod_unitarity = 0.0;      // Jmod* Jmod - id (orthonormal frame)
  double candidate_residual = 0.0;  // delta vs candidate, max entry
  double hr_fixed_residual = 0.0;   // S e = e for e in H_R at degree 1
};

/// Assembles S from the Gram adjoints of the Wick operators of all words up
/// to the cap, takes Delta = S* S and the polar part, and compares Delta
/// against the diagonal prediction. Needs N >= 2 cap so the adjoints are
/// clean on the domain.
ModularData modular_data(const AWModel& model, int cap);

// ---- Centralizer and fixed vectors ----

struct CentralizerReport {
  double max_commutation_deviation = 0.0;
  double moment2 = 0.0;
  double moment4 = 0.0;
  double moment2_expected = 1.0;
  double moment4_expected = 0.0;  // 2 + q
  int trials = 0;
  double tolerance = 1e-8;
  bool pass = false;
};

/// phi(W(xi0) y) vs phi(y W(xi0)) for random field words y, plus the low
/// even moments of W(xi0) against the pair-partition values. xi0 must be
/// A-invariant.
CentralizerReport centralizer_check(const AWModel& model, const DVec& xi0, int trials,
                                    int degree_cap, CounterRng& rng, double tolerance = 1e-8);

/// Same deviation measured for a non-invariant generator; a large value is
/// the expected outcome (non-tracial witness). Includes the deterministic
/// letter pairs alongside random words.
double traciality_violation(const AWModel& model, int trials, int degree_cap, CounterRng& rng);

struct FixedSubspaceReport {
  std::vector<int> enumerated_dims;  // per level: eigen-words with unit eigenvalue product
  std::vector<int> kernel_dims;      // per level: kernel of the log generator
  std::vector<double> span_residuals;
  bool pass = false;
};

/// Fixed vectors of the level-wise tensor powers of A^{it}: enumerated from
/// eigenvalue products and cross-checked against the kernel of the log
/// generator.
FixedSubspaceReport fixed_vector_subspace(const AWModel& model);

// ---- Factoriality computation chain ----

struct Thm44Witness {
  DVec xi0;         // unit, A xi0 = xi0
  DVec eta;         // in H_R', orthogonal to xi0 (and I eta too)
  FockVector xi;    // vector of the sub-Fock space over xi0
  Cplx lambda = 0;  // <xi, vacuum>
  FockVector zeta;  // xi - lambda vacuum
};

/// Builds and validates a witness; PreconditionError when the constraints
/// fail.
Thm44Witness make_thm44_witness(const AWModel& model, const FockVector& xi, const DVec& eta);

struct ChainReport {
  double wick_action_residual = 0.0;   // W(eta) xi vs eta (x) xi
  double right_route_residual = 0.0;   // W_r(xi) eta vs eta (x) xi
  double norm_split_residual = 0.0;    // ||eta (x) xi||^2 vs |lambda|^2 ||eta||^2 + ||eta (x) zeta||^2
  double scalar_case_residual = 0.0;   // zeta = 0 variant
  double wr_selfadjoint_residual = 0.0;  // W_r(eta) vs its Gram adjoint
  double tolerance = 1e-9;
  bool pass = false;
};

ChainReport thm44_chain_check(const AWModel& model, const Thm44Witness& witness,
                              double tolerance = 1e-9);

// ---- Second quantization ----

/// Blocks P^{(x) n} with the vacuum fixed.
BlockOperator second_quantization(const FockBasis& basis, const DMat& P);

/// AW variant; P must commute with A (PreconditionError otherwise).
BlockOperator second_quantization(const AWModel& model, const DMat& P);

struct SecondQuantizationReport {
  double idempotence_residual = 0.0;
  double gram_selfadjoint_residual = 0.0;
};

/// For a projection P: is F(P) idempotent and self-adjoint for the deformed
/// Gram.
SecondQuantizationReport second_quantization_report(const GramContext& ctx, const BlockOperator& FP);

/// Dimension of the intersection of the ranges of two second quantizations
/// at truncation (counts principal angles at 1).
int range_intersection_dim(const BlockOperator& FP1, const BlockOperator& FP2,
                           double tolerance = 1e-9);

}  // namespace qfock

#endif  // QFOCK_ARAKI_WOODS_HPP_
