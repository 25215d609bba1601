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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qfock/errors.hpp"
#include "qfock/generators.hpp"
#include "qfock/rng.hpp"

using namespace qfock;

TEST_CASE("left annihilation collects the weights left of each match") {
  CounterRng rng(41);
  const QMatrix Q = QMatrix::random(2, 0.9, rng);
  const FockBasis basis(2, 3);
  const BlockOperator op = left_annihilation(Q, basis, 0);
  // l_0*(e_1 (x) e_0 (x) e_0) = (q_01 + q_01 q_00) e_1 (x) e_0.
  const FockVector out = op.apply(FockVector::unit(basis, Word({1, 0, 0})));
  const Cplx expected = Q(0, 1) + Q(0, 1) * Q(0, 0);
  CHECK(std::abs(out.coeff(Word({1, 0})) - expected) < 1e-15);
  FockVector rest = out;
  rest.set_coeff(Word({1, 0}), 0.0);
  CHECK(rest.coord_norm() == 0.0);
}

TEST_CASE("right annihilation collects the weights right of each match") {
  CounterRng rng(43);
  const QMatrix Q = QMatrix::random(2, 0.9, rng);
  const FockBasis basis(2, 3);
  const BlockOperator op = right_annihilation(Q, basis, 0);
  // r_0*(e_0 (x) e_1) = q_01 e_1.
  const FockVector out = op.apply(FockVector::unit(basis, Word({0, 1})));
  CHECK(std::abs(out.coeff(Word({1})) - Cplx(Q(0, 1))) < 1e-15);
  FockVector rest = out;
  rest.set_coeff(Word({1}), 0.0);
  CHECK(rest.coord_norm() == 0.0);
}

TEST_CASE("free annihilation keeps only the leading letter") {
  const QMatrix Q = QMatrix::zero(2);
  const FockBasis basis(2, 3);
  const BlockOperator op = left_annihilation(Q, basis, 0);
  CHECK(op.apply(FockVector::unit(basis, Word({1, 0}))).coord_norm() == 0.0);
  const FockVector out = op.apply(FockVector::unit(basis, Word({0, 1})));
  CHECK(std::abs(out.coeff(Word({1})) - Cplx(1.0)) == 0.0);
}

TEST_CASE("annihilation kills the vacuum, creation truncates at the top") {
  const QMatrix Q = QMatrix::zero(2);
  const FockBasis basis(2, 2);
  CHECK(left_annihilation(Q, basis, 0).apply(FockVector::vacuum(basis)).coord_norm() == 0.0);
  CHECK(right_annihilation(Q, basis, 1).apply(FockVector::vacuum(basis)).coord_norm() == 0.0);
  const FockVector top = FockVector::unit(basis, Word({0, 1}));
  CHECK(left_creation(basis, 0).apply(top).coord_norm() == 0.0);
  CHECK(right_creation(basis, 0).apply(top).coord_norm() == 0.0);
}

TEST_CASE("generator letter range is checked") {
  const QMatrix Q = QMatrix::zero(2);
  const FockBasis basis(2, 2);
  CHECK_THROWS_AS(build_generator(Q, basis, Side::left, GeneratorKind::creation, 2), DomainError);
  CHECK_THROWS_AS(build_generator(Q, basis, Side::right, GeneratorKind::gaussian, -1),
                  DomainError);
}

TEST_CASE("creation and annihilation are adjoint for the deformed pairing") {
  CounterRng rng(47);
  SUBCASE("free case is exact") {
    const QMatrix Q = QMatrix::zero(2);
    const FockBasis basis(2, 4);
    GramStack stack(Q, basis);
    for (int i = 0; i < 2; ++i) {
      const AdjointReport report = gram_adjoint_check(stack, i);
      CHECK(report.max_left == 0.0);
      CHECK(report.max_right == 0.0);
    }
  }
  SUBCASE("one-letter normalization") {
    const QMatrix Q = QMatrix::constant(1, 0.6);
    const FockBasis basis(1, 3);
    GramStack stack(Q, basis);
    // <l_0 vac, e_0> = 1 = <vac, l_0* e_0>.
    const FockVector created = left_creation(basis, 0).apply(FockVector::vacuum(basis));
    CHECK(deformed_inner(stack, created, FockVector::unit(basis, Word({0}))) == Cplx(1.0));
    const FockVector lowered =
        left_annihilation(Q, basis, 0).apply(FockVector::unit(basis, Word({0})));
    CHECK(lowered.vacuum_coeff() == Cplx(1.0));
  }
  SUBCASE("random deformations pass at 1e-9") {
    for (int trial = 0; trial < 3; ++trial) {
      const QMatrix Q = QMatrix::random(2, 0.9, rng);
      const FockBasis basis(2, 5);
      GramStack stack(Q, basis);
      for (int i = 0; i < 2; ++i) {
        const AdjointReport report = gram_adjoint_check(stack, i);
        CHECK(report.pass);
        CHECK(report.max_left <= 1e-9);
        CHECK(report.max_right <= 1e-9);
      }
    }
  }
}

TEST_CASE("commutator blocks: off-diagonal pairs vanish") {
  CounterRng rng(53);
  const QMatrix Q = QMatrix::random(3, 0.9, rng);
  const FockBasis basis(3, 4);
  const CommutatorBlocks blocks = commutator_blocks(Q, basis, 0, 2);
  CHECK(blocks.max_offdiag_entry <= 1e-12);
  for (double norm : blocks.norms) CHECK(norm <= 1e-12);
}

TEST_CASE("commutator blocks: diagonal weights and geometric decay") {
  CounterRng rng(59);
  const QMatrix Q = QMatrix::random(2, 0.9, rng);
  const FockBasis basis(2, 6);
  for (int i = 0; i < 2; ++i) {
    const CommutatorBlocks blocks = commutator_blocks(Q, basis, i, i);
    CHECK(blocks.max_diag_deviation <= 1e-12);
    CHECK(blocks.max_bound_excess <= 1e-12);
    for (std::size_t n = 0; n < blocks.norms.size(); ++n)
      CHECK(blocks.norms[n] <= blocks.bounds[n] + 1e-12);
  }
}

TEST_CASE("constant deformation: the commutator is exactly q^n times the identity") {
  const double q = 0.5;
  const QMatrix Q = QMatrix::constant(2, q);
  const FockBasis basis(2, 5);
  const CommutatorBlocks blocks = commutator_blocks(Q, basis, 0, 0);
  double qn = 1.0;
  for (std::size_t n = 0; n < blocks.norms.size(); ++n) {
    CHECK(blocks.norms[n] == doctest::Approx(qn).epsilon(1e-12));
    const DMat expected = qn * DMat::Identity(blocks.blocks[n].rows(), blocks.blocks[n].cols());
    CHECK((blocks.blocks[n] - expected).cwiseAbs().maxCoeff() <= 1e-12);
    qn *= q;
  }
}

TEST_CASE("vacuum-level commutator value") {
  CounterRng rng(61);
  const QMatrix Q = QMatrix::random(2, 0.9, rng);
  const FockBasis basis(2, 3);
  // l_i* r_j vac = delta_ij vac while r_j l_i* vac = 0.
  CHECK(commutator_blocks(Q, basis, 0, 0).blocks[0](0, 0) == Cplx(1.0));
  CHECK(std::abs(commutator_blocks(Q, basis, 0, 1).blocks[0](0, 0)) == 0.0);
}

TEST_CASE("vacuum moments respect the safe-degree rule") {
  const QMatrix Q = QMatrix::zero(2);
  const FockBasis basis(2, 3);
  const BlockOperator s0 = gaussian(Q, basis, Side::left, 0);
  std::vector<const BlockOperator*> ops(4, &s0);
  CHECK_THROWS_AS(vacuum_moment(std::span<const BlockOperator* const>(ops), basis),
                  TruncationError);
}

TEST_CASE("low moments of a field operator") {
  CounterRng rng(67);
  const QMatrix Q = QMatrix::random(2, 0.9, rng);
  const FockBasis basis(2, 6);
  CHECK(std::abs(gaussian_moment(Q, basis, 0, 1)) == 0.0);                // odd
  CHECK(gaussian_moment(Q, basis, 0, 2).real() == doctest::Approx(1.0));  // unit vector
  CHECK(gaussian_moment(Q, basis, 1, 4).real() ==
        doctest::Approx(2.0 + Q(1, 1)).epsilon(1e-12));  // 3 pairings
}

TEST_CASE("traciality of the vacuum state across random deformations") {
  CounterRng rng(71);
  const QMatrix Q = QMatrix::random(2, 0.9, rng);
  const FockBasis basis(2, 8);
  CounterRng word_rng(77);
  const TracialityReport report = traciality_check(Q, basis, 50, 3, word_rng);
  CHECK(report.pass);
  CHECK(report.max_deviation <= 1e-8);
  CHECK(report.pairs == 50);
}

TEST_CASE("degree parity: phi(s_0 s_1) = phi(s_1 s_0) = 0") {
  CounterRng rng(73);
  const QMatrix Q = QMatrix::random(2, 0.9, rng);
  const FockBasis basis(2, 4);
  std::vector<BlockOperator> fwd;
  fwd.push_back(gaussian(Q, basis, Side::left, 0));
  fwd.push_back(gaussian(Q, basis, Side::left, 1));
  std::vector<BlockOperator> rev;
  rev.push_back(gaussian(Q, basis, Side::left, 1));
  rev.push_back(gaussian(Q, basis, Side::left, 0));
  CHECK(std::abs(vacuum_moment(fwd, basis)) == 0.0);
  CHECK(std::abs(vacuum_moment(rev, basis)) == 0.0);
}
