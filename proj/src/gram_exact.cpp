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

#include "qfock/gram_exact.hpp"

#include <cctype>

#include "qfock/detail/gram_builder.hpp"
#include "qfock/errors.hpp"
#include "qfock/gram.hpp"

namespace qfock {

namespace detail {
template <>
bool scalars_close<Rational>(const Rational& a, const Rational& b) {
  return a == b;
}
}  // namespace detail

QMatrixExact::QMatrixExact(RatMat entries) : entries_(std::move(entries)) {
  const auto d = entries_.rows();
  if (d < 1 || entries_.cols() != d)
    throw DomainError("QMatrixExact: entries must form a square matrix of size >= 1");
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      if (entries_(i, j) != entries_(j, i))
        throw DomainError("QMatrixExact: not symmetric at (" + std::to_string(i) + "," +
                          std::to_string(j) + ")");
      if (abs(entries_(i, j)) >= 1) throw DomainError("QMatrixExact: |q_ij| must be < 1");
    }
  }
}

RMat QMatrixExact::to_double() const { return rat_to_double(entries_); }

namespace {

// Digit-by-digit build; a string constructor would read leading zeros as an
// octal prefix.
boost::multiprecision::cpp_int decimal_int(const std::string& text, const std::string& context) {
  std::string digits = text;
  bool negative = false;
  if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
    negative = digits[0] == '-';
    digits.erase(digits.begin());
  }
  if (digits.empty()) throw UsageError("malformed rational literal: " + context);
  boost::multiprecision::cpp_int value = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw UsageError("malformed rational literal: " + context);
    value = value * 10 + (c - '0');
  }
  return negative ? -value : value;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw UsageError("empty rational literal");
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const auto num = decimal_int(text.substr(0, slash), text);
    const auto den = decimal_int(text.substr(slash + 1), text);
    if (den == 0) throw UsageError("zero denominator: " + text);
    return Rational(num, den);
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(decimal_int(text, text));
  const auto num = decimal_int(text.substr(0, dot) + text.substr(dot + 1), text);
  boost::multiprecision::cpp_int den = 1;
  for (std::size_t i = 0; i < text.size() - dot - 1; ++i) den *= 10;
  return Rational(num, den);
}

namespace {
void check_exact_dim(const QMatrixExact& Q, int n) {
  const std::int64_t dim = detail::int_pow(Q.d(), n);
  if (dim > kExactGramMaxDim)
    throw PreconditionError("exact gram: level dimension " + std::to_string(dim) +
                            " exceeds the exact-mode cap of " + std::to_string(kExactGramMaxDim));
}
}  // namespace

RatMat exact_gram_naive(const QMatrixExact& Q, int n) {
  check_exact_dim(Q, n);
  if (n > kNaiveGramMaxDegree)
    throw PreconditionError("exact gram: naive mode refused above degree " +
                            std::to_string(kNaiveGramMaxDegree));
  return detail::naive_gram_level<Rational>(Q.entries(), Q.d(), n);
}

RatMat exact_gram_recursive(const QMatrixExact& Q, int n) {
  check_exact_dim(Q, n);
  RatMat prev(1, 1);
  prev(0, 0) = 1;
  for (int m = 1; m <= n; ++m)
    prev = detail::recursive_gram_level<Rational>(Q.entries(), Q.d(), m, prev);
  return prev;
}

RMat rat_to_double(const RatMat& m) {
  RMat out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out(i, j) = static_cast<double>(m(i, j));
  return out;
}

bool rat_equal(const RatMat& a, const RatMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

bool rat_symmetric(const RatMat& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < i; ++j)
      if (a(i, j) != a(j, i)) return false;
  return true;
}

}  // namespace qfock
