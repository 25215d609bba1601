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

#ifndef QFOCK_WORD_HPP_
#define QFOCK_WORD_HPP_

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

namespace qfock {

/// A simple tensor e_{j1} (x) ... (x) e_{jn}, stored as its letter sequence.
/// The empty word is the vacuum.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<int> letters) : letters_(std::move(letters)) {}

  static Word vacuum() { return Word{}; }

  int degree() const { return static_cast<int>(letters_.size()); }
  bool is_vacuum() const { return letters_.empty(); }

  int letter(int k) const { return letters_[static_cast<std::size_t>(k)]; }
  const std::vector<int>& letters() const { return letters_; }

  /// New word with `letter` prepended (left tensor by a basis vector).
  Word prepended(int letter) const {
    std::vector<int> v;
    v.reserve(letters_.size() + 1);
    v.push_back(letter);
    v.insert(v.end(), letters_.begin(), letters_.end());
    return Word(std::move(v));
  }

  /// New word with `letter` appended (right tensor by a basis vector).
  Word appended(int letter) const {
    std::vector<int> v = letters_;
    v.push_back(letter);
    return Word(std::move(v));
  }

  /// New word with the letter at position k (0-based) removed.
  Word removed(int k) const {
    std::vector<int> v = letters_;
    v.erase(v.begin() + k);
    return Word(std::move(v));
  }

  Word reversed() const {
    std::vector<int> v(letters_.rbegin(), letters_.rend());
    return Word(std::move(v));
  }

  Word head_removed() const {
    return Word(std::vector<int>(letters_.begin() + 1, letters_.end()));
  }

  Word tail_removed() const {
    return Word(std::vector<int>(letters_.begin(), letters_.end() - 1));
  }

  bool operator==(const Word& other) const = default;
  bool operator<(const Word& other) const {
    if (letters_.size() != other.letters_.size())
      return letters_.size() < other.letters_.size();
    return letters_ < other.letters_;
  }

  std::string str() const {
    if (is_vacuum()) return "()";
    std::string s = "(";
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(letters_[i]);
    }
    return s + ")";
  }

 private:
  std::vector<int> letters_;
};

inline std::ostream& operator<<(std::ostream& os, const Word& w) {
  return os << w.str();
}

}  // namespace qfock

#endif  // QFOCK_WORD_HPP_
