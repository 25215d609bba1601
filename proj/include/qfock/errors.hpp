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

#ifndef QFOCK_ERRORS_HPP_
#define QFOCK_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace qfock {

/// Invalid argument for an operation (bad letter, degree, mismatched bases, ...).
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// A requested object would exceed the configured size budget.
class SizeError : public std::runtime_error {
 public:
  explicit SizeError(const std::string& what) : std::runtime_error(what) {}
};

/// A computation would be polluted by the truncation cutoff; refusing to
/// return a corrupted value.
class TruncationError : public std::runtime_error {
 public:
  explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

/// Internal self-check failed (e.g. two reduced words of the same
/// permutation produced different operators).
class ConsistencyError : public std::runtime_error {
 public:
  explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

/// A linear system or decomposition is singular beyond tolerance.
class DegeneracyError : public std::runtime_error {
 public:
  explicit DegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

/// The operation is not available in the requested mode.
class UnsupportedModeError : public std::runtime_error {
 public:
  explicit UnsupportedModeError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed configuration or command line.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qfock

#endif  // QFOCK_ERRORS_HPP_
