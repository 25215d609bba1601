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

#include "qfock/pair_partitions.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qfock/errors.hpp"

namespace qfock {

namespace {

// Pairs (a, b) and (c, d) with a < b, c < d cross iff a < c < b < d.
int crossings(const std::vector<std::pair<int, int>>& pairs) {
  int count = 0;
  for (std::size_t x = 0; x < pairs.size(); ++x) {
    for (std::size_t y = 0; y < pairs.size(); ++y) {
      if (pairs[x].first < pairs[y].first && pairs[y].first < pairs[x].second &&
          pairs[x].second < pairs[y].second)
        ++count;
    }
  }
  return count;
}

void enumerate(std::vector<bool>& used, std::vector<std::pair<int, int>>& pairs, double q,
               double& total) {
  int first = -1;
  for (std::size_t k = 0; k < used.size(); ++k) {
    if (!used[k]) {
      first = static_cast<int>(k);
      break;
    }
  }
  if (first < 0) {
    total += std::pow(q, crossings(pairs));
    return;
  }
  used[static_cast<std::size_t>(first)] = true;
  for (std::size_t k = static_cast<std::size_t>(first) + 1; k < used.size(); ++k) {
    if (used[k]) continue;
    used[k] = true;
    pairs.emplace_back(first, static_cast<int>(k));
    enumerate(used, pairs, q, total);
    pairs.pop_back();
    used[k] = false;
  }
  used[static_cast<std::size_t>(first)] = false;
}

}  // namespace

double pair_partition_moment(double q, int order) {
  if (order <= 0 || order % 2 != 0)
    throw DomainError("pair_partition_moment: order must be a positive even integer, got " +
                      std::to_string(order));
  if (order > kPairPartitionMaxOrder)
    throw DomainError("pair_partition_moment: order " + std::to_string(order) +
                      " above the cap of " + std::to_string(kPairPartitionMaxOrder));
  // pow(0, 0) = 1 keeps the q = 0 (non-crossing) count correct.
  std::vector<bool> used(static_cast<std::size_t>(order), false);
  std::vector<std::pair<int, int>> pairs;
  double total = 0.0;
  enumerate(used, pairs, q, total);
  return total;
}

}  // namespace qfock
