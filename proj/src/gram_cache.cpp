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

#include "qfock/gram_cache.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qfock/detail/gram_builder.hpp"
#include "qfock/errors.hpp"

namespace qfock {

namespace fs = std::filesystem;

std::uint64_t fnv1a64(const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t qmatrix_hash(const QMatrix& Q) {
  const int d = Q.d();
  std::vector<double> row_major(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) row_major[static_cast<std::size_t>(i) * d + j] = Q(i, j);
  return fnv1a64(row_major.data(), row_major.size() * sizeof(double));
}

std::string gram_cache_filename(int d, int n, std::uint64_t qhash) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "gram_d%d_n%d_%016llx.qfg", d, n,
                static_cast<unsigned long long>(qhash));
  return buf;
}

namespace {

void put_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
  os.write(reinterpret_cast<const char*>(b), 4);
}

void put_u64(std::ostream& os, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
  os.write(reinterpret_cast<const char*>(b), 8);
}

bool get_u32(std::istream& is, std::uint32_t* v) {
  unsigned char b[4];
  if (!is.read(reinterpret_cast<char*>(b), 4)) return false;
  *v = 0;
  for (int i = 3; i >= 0; --i) *v = (*v << 8) | b[i];
  return true;
}

bool get_u64(std::istream& is, std::uint64_t* v) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char*>(b), 8)) return false;
  *v = 0;
  for (int i = 7; i >= 0; --i) *v = (*v << 8) | b[i];
  return true;
}

struct Header {
  std::uint32_t d = 0;
  std::uint32_t n = 0;
  std::uint64_t qhash = 0;
};

// Reads and validates the fixed-size header. Returns an explanation on
// failure, empty string on success.
std::string read_header(std::istream& is, Header* h) {
  char magic[8];
  if (!is.read(magic, 8)) return "truncated magic";
  if (std::memcmp(magic, kGramCacheMagic, 8) != 0) return "magic mismatch";
  if (!get_u32(is, &h->d) || !get_u32(is, &h->n) || !get_u64(is, &h->qhash))
    return "truncated header";
  return "";
}

}  // namespace

void write_gram_cache(const std::string& dir, int d, int n, std::uint64_t qhash,
                      const RMat& block) {
  fs::create_directories(dir);
  const fs::path final_path = fs::path(dir) / gram_cache_filename(d, n, qhash);
  const fs::path tmp_path = final_path.string() + ".tmp";
  {
    std::ofstream os(tmp_path, std::ios::binary | std::ios::trunc);
    if (!os) throw DomainError("gram cache: cannot open " + tmp_path.string() + " for writing");
    os.write(kGramCacheMagic, 8);
    put_u32(os, static_cast<std::uint32_t>(d));
    put_u32(os, static_cast<std::uint32_t>(n));
    put_u64(os, qhash);
    for (Eigen::Index i = 0; i < block.rows(); ++i) {
      for (Eigen::Index j = 0; j < block.cols(); ++j) {
        const double v = block(i, j);
        std::uint64_t bits;
        std::memcpy(&bits, &v, 8);
        put_u64(os, bits);
      }
    }
    if (!os) throw DomainError("gram cache: write failed for " + tmp_path.string());
  }
  fs::rename(tmp_path, final_path);
}

std::optional<RMat> read_gram_cache(const std::string& dir, int d, int n, std::uint64_t qhash) {
  const fs::path path = fs::path(dir) / gram_cache_filename(d, n, qhash);
  std::ifstream is(path, std::ios::binary);
  if (!is) return std::nullopt;
  Header h;
  if (!read_header(is, &h).empty()) return std::nullopt;
  if (h.d != static_cast<std::uint32_t>(d) || h.n != static_cast<std::uint32_t>(n) ||
      h.qhash != qhash)
    return std::nullopt;
  const std::int64_t dim = detail::int_pow(d, n);
  RMat block(dim, dim);
  for (std::int64_t i = 0; i < dim; ++i) {
    for (std::int64_t j = 0; j < dim; ++j) {
      std::uint64_t bits;
      if (!get_u64(is, &bits)) return std::nullopt;
      double v;
      std::memcpy(&v, &bits, 8);
      block(i, j) = v;
    }
  }
  // Trailing garbage also invalidates the file.
  if (is.peek() != std::char_traits<char>::eof()) return std::nullopt;
  return block;
}

namespace {

CacheEntry inspect_file(const fs::path& path, bool deep) {
  CacheEntry e;
  e.filename = path.filename().string();
  std::ifstream is(path, std::ios::binary);
  if (!is) {
    e.problem = "unreadable";
    return e;
  }
  Header h;
  const std::string bad = read_header(is, &h);
  if (!bad.empty()) {
    e.problem = bad;
    return e;
  }
  e.d = static_cast<int>(h.d);
  e.n = static_cast<int>(h.n);
  e.qhash = h.qhash;
  const std::string expected = gram_cache_filename(e.d, e.n, e.qhash);
  if (e.filename != expected) {
    e.problem = "hash mismatch: header says " + expected;
    return e;
  }
  if (!deep) {
    e.ok = true;
    return e;
  }
  if (e.d < 1 || e.n < 0 || e.n > 62) {
    e.problem = "implausible header dimensions";
    return e;
  }
  const std::int64_t dim = detail::int_pow(e.d, e.n);
  RMat block(dim, dim);
  for (std::int64_t i = 0; i < dim; ++i) {
    for (std::int64_t j = 0; j < dim; ++j) {
      std::uint64_t bits;
      if (!get_u64(is, &bits)) {
        e.problem = "payload truncated";
        return e;
      }
      double v;
      std::memcpy(&v, &bits, 8);
      if (!std::isfinite(v)) {
        e.problem = "non-finite payload entry";
        return e;
      }
      block(i, j) = v;
    }
  }
  if (is.peek() != std::char_traits<char>::eof()) {
    e.problem = "trailing bytes";
    return e;
  }
  // Gram blocks are symmetric; asymmetry flags payload corruption.
  if ((block - block.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, block.cwiseAbs().maxCoeff())) {
    e.problem = "stored block not symmetric";
    return e;
  }
  e.ok = true;
  return e;
}

std::vector<fs::path> cache_files(const std::string& dir) {
  std::vector<fs::path> files;
  if (!fs::exists(dir)) return files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".qfg")
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

std::vector<CacheEntry> cache_list(const std::string& dir) {
  std::vector<CacheEntry> out;
  for (const auto& path : cache_files(dir)) out.push_back(inspect_file(path, /*deep=*/false));
  return out;
}

std::vector<CacheEntry> cache_verify(const std::string& dir) {
  std::vector<CacheEntry> out;
  for (const auto& path : cache_files(dir)) out.push_back(inspect_file(path, /*deep=*/true));
  return out;
}

int cache_purge(const std::string& dir) {
  int removed = 0;
  for (const auto& path : cache_files(dir)) {
    std::error_code ec;
    if (fs::remove(path, ec)) ++removed;
  }
  return removed;
}

}  // namespace qfock
