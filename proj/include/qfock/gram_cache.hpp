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

#ifndef QFOCK_GRAM_CACHE_HPP_
#define QFOCK_GRAM_CACHE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qfock/fock_vector.hpp"
#include "qfock/qmatrix.hpp"

namespace qfock {

// Cache file layout: magic "QFGRAM1\0", u32 LE d, u32 LE n, u64 LE FNV-1a
// hash of the row-major f64 encoding of Q, then d^n * d^n f64 LE entries,
// row-major. Readers reject on magic or hash mismatch.

inline constexpr char kGramCacheMagic[8] = {'Q', 'F', 'G', 'R', 'A', 'M', '1', '\0'};

std::uint64_t fnv1a64(const void* data, std::size_t size);

/// FNV-1a hash of the row-major 64-bit-float encoding of Q.
std::uint64_t qmatrix_hash(const QMatrix& Q);

std::string gram_cache_filename(int d, int n, std::uint64_t qhash);

/// Writes atomically (temp file + rename).
void write_gram_cache(const std::string& dir, int d, int n, std::uint64_t qhash,
                      const RMat& block);

/// Returns the block when a well-formed matching file exists; nullopt when
/// the file is absent or fails validation (magic, header, hash, or size).
std::optional<RMat> read_gram_cache(const std::string& dir, int d, int n, std::uint64_t qhash);

struct CacheEntry {
  std::string filename;
  int d = 0;
  int n = 0;
  std::uint64_t qhash = 0;
  bool ok = false;
  std::string problem;  // empty when ok
};

/// Enumerates cache files in a directory, validating each.
std::vector<CacheEntry> cache_list(const std::string& dir);

/// Revalidates each file: magic, header-vs-filename hash, payload size, and
/// finiteness/symmetry of the stored block.
std::vector<CacheEntry> cache_verify(const std::string& dir);

/// Deletes all cache files; returns the number removed.
int cache_purge(const std::string& dir);

}  // namespace qfock

#endif  // QFOCK_GRAM_CACHE_HPP_
