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
#include "qfock/pair_partitions.hpp"
#include "qfock/rng.hpp"

using namespace qfock;

TEST_CASE("pairing-sum basics") {
  CHECK(pair_partition_moment(0.37, 2) == doctest::Approx(1.0));
  // 3 pairings of 4 points: two non-crossing, one crossing.
  CHECK(pair_partition_moment(0.5, 4) == doctest::Approx(2.5));
  // Non-crossing pairings of 6 points: the third Catalan number.
  CHECK(pair_partition_moment(0.0, 6) == doctest::Approx(5.0));
  // q = 1 counts all pairings: (2k-1)!!.
  CHECK(pair_partition_moment(1.0, 8) == doctest::Approx(105.0));
}

TEST_CASE("pairing-sum rejects bad orders") {
  CHECK_THROWS_AS(pair_partition_moment(0.5, 3), DomainError);
  CHECK_THROWS_AS(pair_partition_moment(0.5, 0), DomainError);
  CHECK_THROWS_AS(pair_partition_moment(0.5, 14), DomainError);
}

TEST_CASE("negative deformation still matches the closed quartic") {
  // m_4 = 2 + q for any q in (-1, 1).
  CHECK(pair_partition_moment(-0.8, 4) == doctest::Approx(1.2));
}

TEST_CASE("field moments match the pairing sum through order 10") {
  CounterRng rng(83);
  for (int trial = 0; trial < 2; ++trial) {
    const int d = 1 + static_cast<int>(rng.next_below(2));
    const QMatrix Q = QMatrix::random(d, 0.9, rng);
    const FockBasis basis(d, 12);
    for (int i = 0; i < d; ++i) {
      for (int order = 2; order <= 10; order += 2) {
        const Cplx measured = gaussian_moment(Q, basis, i, order);
        const double expected = pair_partition_moment(Q(i, i), order);
        CHECK(std::abs(measured - Cplx(expected)) <= 1e-9);
      }
    }
  }
}

TEST_CASE("moment computation is independent of extra headroom") {
  const QMatrix Q = QMatrix::constant(2, -0.4);
  const FockBasis tight(2, 6);
  const FockBasis roomy(2, 8);
  CHECK(gaussian_moment(Q, tight, 0, 6) == gaussian_moment(Q, roomy, 0, 6));
}
