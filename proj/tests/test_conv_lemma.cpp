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

#include "qfock/conv_lemma.hpp"
#include "qfock/errors.hpp"
#include "qfock/generators.hpp"
#include "qfock/gram.hpp"
#include "qfock/rng.hpp"

using namespace qfock;

namespace {

struct Fixture {
  QMatrix Q;
  FockBasis basis;
  GramStack stack;
  GramContext ctx;

  Fixture(QMatrix q, int N)
      : Q(std::move(q)), basis(Q.d(), N), stack(Q, basis), ctx(make_context()) {}

  GramContext make_context() {
    std::vector<DMat> gram;
    for (int n = 0; n <= basis.truncation(); ++n) gram.push_back(stack.level(n).cast<Cplx>());
    return GramContext(basis, std::move(gram));
  }

  ConvSetup standard_setup(CounterRng& rng, int eta_hi = 2) {
    ConvSetup setup;
    setup.ctx = &ctx;
    setup.a_ops = {right_annihilation(Q, basis, 0), right_annihilation(Q, basis, 1)};
    setup.b_ops = {left_creation(basis, 0), left_creation(basis, 1)};
    setup.K = single_letter_K(basis, 0);
    setup.q = std::max(Q.qmax(), 0.05);
    setup.xi = random_K_vector(basis, setup.K, 0, eta_hi, rng);
    setup.eta = random_K_vector(basis, setup.K, 1, eta_hi, rng);
    return setup;
  }
};

}  // namespace

TEST_CASE("hypothesis measurement on the standard family") {
  CounterRng rng(29);
  SUBCASE("constant deformation: fitted decay rate is q itself") {
    Fixture f(QMatrix::constant(2, 0.5), 6);
    ConvSetup setup = f.standard_setup(rng);
    const HypothesisReport report = validate_setup(setup);
    CHECK(report.pass);
    CHECK(report.shifts_ok);
    CHECK(report.max_commutator_excess <= 1e-10);
    CHECK(report.fitted_decay_rate == doctest::Approx(0.5).epsilon(1e-6));
  }
  SUBCASE("free case: all commutator norms vanish above the vacuum level") {
    Fixture f(QMatrix::zero(2), 6);
    ConvSetup setup = f.standard_setup(rng);
    const HypothesisReport report = validate_setup(setup);
    CHECK(report.pass);
    for (std::size_t n = 1; n < report.level_commutator_norms.size(); ++n)
      CHECK(report.level_commutator_norms[n] <= 1e-14);
  }
  SUBCASE("annihilation of the single-letter space is exact") {
    Fixture f(QMatrix::constant(2, 0.4), 6);
    ConvSetup setup = f.standard_setup(rng);
    const HypothesisReport report = validate_setup(setup);
    CHECK(report.k_annihilation_residual == 0.0);  // r_1* kills letter-0 words
    CHECK(report.k_invariance_residual == 0.0);
  }
}

TEST_CASE("expansion identity") {
  CounterRng rng(31);
  SUBCASE("free case with disjoint letters: both sides vanish") {
    Fixture f(QMatrix::zero(2), 6);
    ConvSetup setup;
    setup.ctx = &f.ctx;
    setup.a_ops = {right_annihilation(f.Q, f.basis, 1)};
    setup.b_ops = {left_creation(f.basis, 0)};
    setup.K = single_letter_K(f.basis, 0);
    setup.q = 0.05;
    setup.xi = random_K_vector(f.basis, setup.K, 0, 2, rng);
    setup.eta = random_K_vector(f.basis, setup.K, 1, 2, rng);
    const ExpansionReport report = tn_expansion_check(setup);
    CHECK(report.pass);
    CHECK(std::abs(report.lhs) <= 1e-14);
    CHECK(std::abs(report.rhs) <= 1e-14);
  }
  SUBCASE("one-pair constant-q family") {
    Fixture f(QMatrix::constant(2, 0.5), 6);
    ConvSetup setup;
    setup.ctx = &f.ctx;
    setup.a_ops = {right_annihilation(f.Q, f.basis, 1)};
    setup.b_ops = {left_creation(f.basis, 0)};
    setup.K = single_letter_K(f.basis, 0);
    setup.q = 0.5;
    setup.xi = random_K_vector(f.basis, setup.K, 0, 2, rng);
    setup.eta = random_K_vector(f.basis, setup.K, 1, 2, rng);
    const ExpansionReport report = tn_expansion_check(setup);
    CHECK(report.pass);
  }
  SUBCASE("two-by-two mixed families at depth 6") {
    CounterRng mixed_rng(37);
    const QMatrix Q = QMatrix::random(2, 0.9, mixed_rng);
    Fixture f(Q, 6);
    for (int rep = 0; rep < 5; ++rep) {
      ConvSetup setup = f.standard_setup(mixed_rng);
      const ExpansionReport report = tn_expansion_check(setup);
      CHECK(report.pass);
      CHECK(report.residual <= report.tolerance);
    }
  }
  SUBCASE("mixed creation/annihilation b-family") {
    CounterRng mixed_rng(41);
    const QMatrix Q = QMatrix::random(2, 0.8, mixed_rng);
    Fixture f(Q, 6);
    ConvSetup setup = f.standard_setup(mixed_rng);
    setup.b_ops = {left_creation(f.basis, 1), left_annihilation(Q, f.basis, 0)};
    const ExpansionReport report = tn_expansion_check(setup);
    CHECK(report.pass);
  }
}

TEST_CASE("expansion preconditions") {
  CounterRng rng(43);
  Fixture f(QMatrix::constant(2, 0.5), 6);
  SUBCASE("the a-chain must kill eta") {
    ConvSetup setup = f.standard_setup(rng);
    // Two K-preserving annihilations never kill a degree-2 component.
    setup.a_ops = {right_annihilation(f.Q, f.basis, 0), right_annihilation(f.Q, f.basis, 0)};
    setup.eta = random_K_vector(f.basis, setup.K, 2, 2, rng);
    CHECK_THROWS_AS(tn_expansion_check(setup), PreconditionError);
  }
  SUBCASE("degrees must fit under the truncation") {
    ConvSetup setup = f.standard_setup(rng, 3);
    CHECK_THROWS_AS(tn_expansion_check(setup), TruncationError);
  }
}

TEST_CASE("quantitative bound") {
  CounterRng rng(47);
  SUBCASE("constant q = 0.5 with random vectors") {
    Fixture f(QMatrix::constant(2, 0.5), 6);
    ConvSetup setup = f.standard_setup(rng);
    const BoundReport report = conv_bound_check(setup);
    CHECK(report.pass);
    CHECK(report.lhs_abs <= report.rhs + report.slack);
    CHECK(report.constant > 0.0);
    CHECK(report.tail_pass);
  }
  SUBCASE("eta at a single level reduces the sum to one term") {
    Fixture f(QMatrix::constant(2, 0.4), 6);
    ConvSetup setup = f.standard_setup(rng);
    setup.eta = random_K_vector(f.basis, setup.K, 2, 2, rng);
    const BoundReport report = conv_bound_check(setup);
    CHECK(report.pass);
    const double eta_norm = f.ctx.norm(setup.eta);
    const double xi_norm = f.ctx.norm(setup.xi);
    CHECK(report.rhs == doctest::Approx(report.constant * xi_norm * 0.16 * eta_norm));
  }
  SUBCASE("free case: zero against a positive bound") {
    Fixture f(QMatrix::zero(2), 6);
    ConvSetup setup;
    setup.ctx = &f.ctx;
    setup.a_ops = {right_annihilation(f.Q, f.basis, 1)};
    setup.b_ops = {left_creation(f.basis, 0)};
    setup.K = single_letter_K(f.basis, 0);
    setup.q = 0.05;
    setup.xi = random_K_vector(f.basis, setup.K, 0, 2, rng);
    setup.eta = random_K_vector(f.basis, setup.K, 1, 2, rng);
    const BoundReport report = conv_bound_check(setup);
    CHECK(report.pass);
    CHECK(report.lhs_abs <= 1e-14);
  }
  SUBCASE("mixed deformations across repeats") {
    CounterRng mixed_rng(53);
    for (int rep = 0; rep < 4; ++rep) {
      const QMatrix Q = QMatrix::random(2, 0.9, mixed_rng);
      Fixture f(Q, 6);
      ConvSetup setup = f.standard_setup(mixed_rng);
      const BoundReport report = conv_bound_check(setup);
      CHECK(report.pass);
      CHECK(report.tail_pass);
    }
  }
}

TEST_CASE("geometric tail estimate stands alone") {
  CounterRng rng(59);
  Fixture f(QMatrix::constant(2, 0.7), 6);
  ConvSetup setup = f.standard_setup(rng);
  const BoundReport report = conv_bound_check(setup);
  REQUIRE(report.tail_measured.size() == report.tail_bound.size());
  for (std::size_t k = 0; k < report.tail_measured.size(); ++k)
    CHECK(report.tail_measured[k] <= report.tail_bound[k] + 1e-12);
}
