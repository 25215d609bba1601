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

#ifndef QFOCK_PAIR_PARTITIONS_HPP_
#define QFOCK_PAIR_PARTITIONS_HPP_

namespace qfock {

inline constexpr int kPairPartitionMaxOrder = 12;

/// Sum over pair partitions of {1..order} of q^(number of crossings).
/// The independent combinatorial oracle for even field-operator moments.
/// Throws DomainError for odd or out-of-range orders.
double pair_partition_moment(double q, int order);

}  // namespace qfock

#endif  // QFOCK_PAIR_PARTITIONS_HPP_
