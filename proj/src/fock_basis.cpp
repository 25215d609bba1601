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

#include "qfock/fock_basis.hpp"

#include <string>

#include "qfock/errors.hpp"

namespace qfock {

FockBasis::FockBasis(int d, int N, std::int64_t budget) : d_(d), N_(N) {
  if (d < 1) throw DomainError("FockBasis: dimension d must be >= 1, got " + std::to_string(d));
  if (N < 0) throw DomainError("FockBasis: truncation N must be >= 0, got " + std::to_string(N));
  offsets_.assign(static_cast<std::size_t>(N) + 2, 0);
  std::int64_t level = 1;  // d^0
  std::int64_t total = 0;
  for (int n = 0; n <= N; ++n) {
    offsets_[static_cast<std::size_t>(n)] = total;
    if (level > budget || total > budget - level) {
      throw SizeError("FockBasis: d^N = " + std::to_string(d) + "^" + std::to_string(N) +
                      " pushes the total dimension past the budget of " + std::to_string(budget) +
                      " basis vectors");
    }
    total += level;
    if (n < N) {
      if (level > budget / d + 1) level = budget + 1;  // saturate, caught next loop
      else level *= d;
    }
  }
  offsets_[static_cast<std::size_t>(N) + 1] = total;
}

std::int64_t FockBasis::level_dim(int n) const {
  return offsets_[static_cast<std::size_t>(n) + 1] - offsets_[static_cast<std::size_t>(n)];
}

std::int64_t FockBasis::level_offset(int n) const {
  if (n < 0 || n > N_)
    throw DomainError("FockBasis: level " + std::to_string(n) + " outside [0, " +
                      std::to_string(N_) + "]");
  return offsets_[static_cast<std::size_t>(n)];
}

std::int64_t FockBasis::level_rank(const Word& w) const {
  std::int64_t rank = 0;
  for (int k = 0; k < w.degree(); ++k) {
    int letter = w.letter(k);
    if (letter < 0 || letter >= d_)
      throw DomainError("FockBasis: letter " + std::to_string(letter) + " of word " + w.str() +
                        " outside [0, " + std::to_string(d_) + ")");
    rank = rank * d_ + letter;
  }
  return rank;
}

std::int64_t FockBasis::word_index(const Word& w) const {
  if (w.degree() > N_)
    throw DomainError("FockBasis: word " + w.str() + " has degree " +
                      std::to_string(w.degree()) + " above the truncation " + std::to_string(N_));
  return level_offset(w.degree()) + level_rank(w);
}

Word FockBasis::level_word(int degree, std::int64_t rank) const {
  std::vector<int> letters(static_cast<std::size_t>(degree));
  for (int k = degree - 1; k >= 0; --k) {
    letters[static_cast<std::size_t>(k)] = static_cast<int>(rank % d_);
    rank /= d_;
  }
  return Word(std::move(letters));
}

Word FockBasis::index_word(std::int64_t index) const {
  if (index < 0 || index >= dim())
    throw DomainError("FockBasis: index " + std::to_string(index) + " outside [0, " +
                      std::to_string(dim()) + ")");
  int n = 0;
  while (offsets_[static_cast<std::size_t>(n) + 1] <= index) ++n;
  return level_word(n, index - offsets_[static_cast<std::size_t>(n)]);
}

}  // namespace qfock
