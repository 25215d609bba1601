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

#ifndef QFOCK_DETAIL_GRAM_BUILDER_HPP_
#define QFOCK_DETAIL_GRAM_BUILDER_HPP_

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "qfock/errors.hpp"

// Level-n inner-product blocks. Two independent constructions:
//
//  * naive: sum the quasi-multiplicative weights phi(sigma) over the whole
//    symmetric group, each phi(sigma) realized as a product of adjacent
//    letter-swap operators along a reduced word of sigma;
//  * recursive: P_n = (id (x) P_{n-1}) (id + D_1 + ... + D_{n-1}) where
//    D_k pulls the (k+1)-st letter to the front and collects the swap
//    weights on the way.
//
// The naive route is the oracle: it costs n! and is capped at n <= 8. The
// recursive route is the production path. Their agreement is checked by
// tests, never assumed.

namespace qfock::detail {

inline std::int64_t int_pow(int base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

/// Swap sequence sorting p to the identity with ascending scans. Each entry
/// k means "swap slots k, k+1" (0-based); the length equals the inversion
/// count, so the sequence is a reduced word.
inline std::vector<int> sort_swaps_ascending(std::vector<int> p) {
  std::vector<int> seq;
  const int n = static_cast<int>(p.size());
  bool moved = true;
  while (moved) {
    moved = false;
    for (int k = 0; k + 1 < n; ++k) {
      if (p[k] > p[k + 1]) {
        std::swap(p[k], p[k + 1]);
        seq.push_back(k);
        moved = true;
      }
    }
  }
  return seq;
}

/// Same permutation, different reduced word (descending scans).
inline std::vector<int> sort_swaps_descending(std::vector<int> p) {
  std::vector<int> seq;
  const int n = static_cast<int>(p.size());
  bool moved = true;
  while (moved) {
    moved = false;
    for (int k = n - 2; k >= 0; --k) {
      if (p[k] > p[k + 1]) {
        std::swap(p[k], p[k + 1]);
        seq.push_back(k);
        moved = true;
      }
    }
  }
  return seq;
}

template <typename Scalar>
struct GenPermResult {
  std::int64_t target;
  Scalar coeff;
};

/// Applies the swap-operator product along `seq` to a single word,
/// accumulating the per-swap weights q(a, b).
template <typename Scalar, typename QMat>
GenPermResult<Scalar> apply_swap_sequence(const QMat& q, std::vector<int> letters,
                                          const std::vector<int>& seq, int d) {
  Scalar coeff(1);
  for (int k : seq) {
    coeff = coeff * q(letters[static_cast<std::size_t>(k)], letters[static_cast<std::size_t>(k) + 1]);
    std::swap(letters[static_cast<std::size_t>(k)], letters[static_cast<std::size_t>(k) + 1]);
  }
  std::int64_t idx = 0;
  for (int a : letters) idx = idx * d + a;
  return {idx, coeff};
}

template <typename Scalar>
bool scalars_close(const Scalar& a, const Scalar& b);

template <>
inline bool scalars_close<double>(const double& a, const double& b) {
  return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a));
}

/// Full permutation-sum construction with a braid self-check: every group
/// element is realized along two different reduced words, which must agree.
template <typename Scalar, typename QMat>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> naive_gram_level(const QMat& q, int d,
                                                                       int n) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const std::int64_t dim = int_pow(d, n);
  Mat out = Mat::Zero(dim, dim);
  if (n == 0) {
    out(0, 0) = Scalar(1);
    return out;
  }

  // Decode every level word once.
  std::vector<std::vector<int>> words(static_cast<std::size_t>(dim));
  for (std::int64_t w = 0; w < dim; ++w) {
    std::vector<int> letters(static_cast<std::size_t>(n));
    std::int64_t rest = w;
    for (int k = n - 1; k >= 0; --k) {
      letters[static_cast<std::size_t>(k)] = static_cast<int>(rest % d);
      rest /= d;
    }
    words[static_cast<std::size_t>(w)] = std::move(letters);
  }

  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    const std::vector<int> seq_a = sort_swaps_ascending(perm);
    const std::vector<int> seq_b = sort_swaps_descending(perm);
    for (std::int64_t w = 0; w < dim; ++w) {
      const auto ra = apply_swap_sequence<Scalar>(q, words[static_cast<std::size_t>(w)], seq_a, d);
      const auto rb = apply_swap_sequence<Scalar>(q, words[static_cast<std::size_t>(w)], seq_b, d);
      if (ra.target != rb.target || !scalars_close<Scalar>(ra.coeff, rb.coeff)) {
        throw ConsistencyError(
            "naive gram: two reduced words of the same permutation disagree at level " +
            std::to_string(n));
      }
      out(ra.target, w) += ra.coeff;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

/// One step of the level recursion given the degree-(n-1) block.
template <typename Scalar, typename QMat>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> recursive_gram_level(
    const QMat& q, int d, int n,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& prev) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const std::int64_t dim = int_pow(d, n);
  const std::int64_t sub = int_pow(d, n - 1);
  if (prev.rows() != sub || prev.cols() != sub)
    throw DomainError("recursive gram: previous level has wrong dimensions");
  Mat out = Mat::Zero(dim, dim);

  std::vector<int> letters(static_cast<std::size_t>(n));
  for (std::int64_t w = 0; w < dim; ++w) {
    std::int64_t rest = w;
    for (int k = n - 1; k >= 0; --k) {
      letters[static_cast<std::size_t>(k)] = static_cast<int>(rest % d);
      rest /= d;
    }
    // Term p pulls letter p to the front across letters 0..p-1.
    for (int p = 0; p < n; ++p) {
      Scalar coeff(1);
      for (int t = 0; t < p; ++t)
        coeff = coeff * q(letters[static_cast<std::size_t>(t)], letters[static_cast<std::size_t>(p)]);
      std::int64_t tail = 0;
      for (int t = 0; t < n; ++t) {
        if (t != p) tail = tail * d + letters[static_cast<std::size_t>(t)];
      }
      const int head = letters[static_cast<std::size_t>(p)];
      out.col(w).segment(head * sub, sub) += coeff * prev.col(tail);
    }
  }
  return out;
}

}  // namespace qfock::detail

#endif  // QFOCK_DETAIL_GRAM_BUILDER_HPP_
