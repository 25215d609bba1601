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
#include "qfock/fock_basis.hpp"
#include "qfock/fock_vector.hpp"
#include "qfock/generators.hpp"
#include "qfock/rng.hpp"

using namespace qfock;

TEST_CASE("vacuum-only basis") {
  FockBasis basis(2, 0);
  CHECK(basis.dim() == 1);
  CHECK(basis.word_index(Word::vacuum()) == 0);
  CHECK(basis.index_word(0) == Word::vacuum());
}

TEST_CASE("level counts are geometric") {
  FockBasis basis(2, 2);
  CHECK(basis.dim() == 7);  // 1 + 2 + 4
  CHECK(basis.level_dim(0) == 1);
  CHECK(basis.level_dim(1) == 2);
  CHECK(basis.level_dim(2) == 4);

  FockBasis wide(3, 4);
  CHECK(wide.dim() == 121);  // sum of 3^n, n <= 4
}

TEST_CASE("word order: degrees ascending, lexicographic inside") {
  FockBasis basis(2, 3);
  CHECK(basis.word_index(Word({0})) == 1);
  CHECK(basis.word_index(Word({1})) == 2);
  // degree-2 block starts at 3; rank of (1,0) is 2
  CHECK(basis.word_index(Word({1, 0})) == 5);
}

TEST_CASE("index and word are mutually inverse") {
  FockBasis basis(3, 4);
  for (std::int64_t k = 0; k < basis.dim(); ++k) {
    CHECK(basis.word_index(basis.index_word(k)) == k);
  }
}

TEST_CASE("letters and degrees out of range are rejected") {
  FockBasis basis(2, 3);
  CHECK_THROWS_AS(basis.word_index(Word({2})), DomainError);
  CHECK_THROWS_AS(basis.word_index(Word({0, 0, 0, 0})), DomainError);
  CHECK_THROWS_AS(basis.index_word(-1), DomainError);
  CHECK_THROWS_AS(basis.index_word(basis.dim()), DomainError);
}

TEST_CASE("budget violations name the size and the budget") {
  CHECK_THROWS_WITH_AS(FockBasis(10, 12, 1000), doctest::Contains("budget"), SizeError);
  CHECK_THROWS_AS(FockBasis(2, 62), SizeError);  // far past any sane budget
}

TEST_CASE("degree-graded computations are stable under enlarging the cutoff") {
  CounterRng rng(11);
  const QMatrix Q = QMatrix::random(2, 0.8, rng);
  // Vacuum moments only reach degree <= 4 here, so N = 4 and N = 6 agree.
  const FockBasis small(2, 4);
  const FockBasis large(2, 6);
  for (int order : {2, 4}) {
    const Cplx a = gaussian_moment(Q, small, 0, order);
    const Cplx b = gaussian_moment(Q, large, 0, order);
    CHECK(std::abs(a - b) == 0.0);
  }
}
