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

#ifndef QFOCK_FOCK_BASIS_HPP_
#define QFOCK_FOCK_BASIS_HPP_

#include <cstdint>
#include <vector>

#include "qfock/word.hpp"

namespace qfock {

/// Word indexing for the truncated tensor algebra over d letters, degrees
/// 0..N. Degree levels are contiguous and ascending; within a level, words
/// are ordered lexicographically (first letter most significant), so level
/// offsets and word ranks are closed-form.
///
/// Immutable after construction; safe for concurrent shared reads.
class FockBasis {
 public:
  static constexpr std::int64_t kDefaultBudget = 2'000'000;

  /// Enumerates the basis. Throws SizeError when the total dimension
  /// (sum of d^n, n <= N) exceeds the budget.
  FockBasis(int d, int N, std::int64_t budget = kDefaultBudget);

  int d() const { return d_; }
  int truncation() const { return N_; }
  std::int64_t dim() const { return offsets_[static_cast<std::size_t>(N_) + 1]; }

  /// Number of words of the given degree (d^n).
  std::int64_t level_dim(int n) const;
  /// Index of the first degree-n word.
  std::int64_t level_offset(int n) const;

  /// Position of a word in the total order. Throws DomainError on a letter
  /// out of [0, d) or degree above the truncation.
  std::int64_t word_index(const Word& w) const;
  /// Inverse of word_index on the enumerated range.
  Word index_word(std::int64_t index) const;

  /// Rank of a word within its own degree level (lexicographic).
  std::int64_t level_rank(const Word& w) const;
  /// Word of the given degree with the given lexicographic rank.
  Word level_word(int degree, std::int64_t rank) const;

  bool same_shape(const FockBasis& other) const {
    return d_ == other.d_ && N_ == other.N_;
  }

 private:
  int d_;
  int N_;
  std::vector<std::int64_t> offsets_;  // offsets_[n] = start of level n; size N+2
};

}  // namespace qfock

#endif  // QFOCK_FOCK_BASIS_HPP_
