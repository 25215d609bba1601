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

#include "qfock/wick.hpp"

#include <string>

#include "qfock/errors.hpp"

namespace qfock {

namespace {

SpMat reversal_perm(const FockBasis& basis, int n) {
  const std::int64_t dim = basis.level_dim(n);
  std::vector<Eigen::Triplet<Cplx>> t;
  t.reserve(static_cast<std::size_t>(dim));
  for (std::int64_t w = 0; w < dim; ++w) {
    const Word word = basis.level_word(n, w);
    t.emplace_back(basis.level_rank(word.reversed()), w, 1.0);
  }
  SpMat m(dim, dim);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

int headroom_degree(const FockVector& v) { return std::max(v.max_degree(0.0), 0); }

}  // namespace

FockVector conjugate_J(const FockVector& v) {
  const FockBasis& basis = v.basis();
  FockVector out(basis);
  for (int n = 0; n <= basis.truncation(); ++n) {
    out.level(n) = reversal_perm(basis, n) * v.level(n).conjugate().matrix();
  }
  return out;
}

BlockOperator conjugate_by_J(const BlockOperator& op) {
  const FockBasis& basis = op.basis();
  BlockOperator out(basis, "J" + op.label() + "J");
  std::vector<SpMat> rev;
  for (int n = 0; n <= basis.truncation(); ++n) rev.push_back(reversal_perm(basis, n));
  for (int n = 0; n <= basis.truncation(); ++n) {
    for (const auto& [shift, block] : op.blocks_at(n)) {
      SpMat conj_block = block.conjugate();
      SpMat transformed = rev[static_cast<std::size_t>(n + shift)] * conj_block *
                          rev[static_cast<std::size_t>(n)];
      out.set_block(n, shift, std::move(transformed));
    }
  }
  out.set_reach(op.formal_raise(), op.formal_lower());
  return out;
}

WickBuilder::WickBuilder(const FockBasis& basis, Direction direction,
                         std::vector<BlockOperator> fields,
                         std::vector<BlockOperator> annihilators)
    : basis_(&basis), direction_(direction), fields_(std::move(fields)),
      annihilators_(std::move(annihilators)) {
  if (fields_.size() != static_cast<std::size_t>(basis.d()) ||
      annihilators_.size() != static_cast<std::size_t>(basis.d()))
    throw DomainError("WickBuilder: need one field and one annihilator per letter");
}

const BlockOperator& WickBuilder::of_word(const Word& w) {
  auto it = memo_.find(w);
  if (it != memo_.end()) return it->second;
  BlockOperator result = BlockOperator::zero(*basis_);
  if (w.is_vacuum()) {
    result = BlockOperator::identity(*basis_);
  } else {
    const bool prepend = direction_ == Direction::prepend;
    const int letter = prepend ? w.letter(0) : w.letter(w.degree() - 1);
    const Word rest = prepend ? w.head_removed() : w.tail_removed();
    const BlockOperator& tail_op = of_word(rest);
    const FockVector lowered =
        annihilators_[static_cast<std::size_t>(letter)].apply(FockVector::unit(*basis_, rest));
    result = fields_[static_cast<std::size_t>(letter)] * tail_op - of_vector(lowered);
  }
  result.set_reach(w.degree(), w.degree());
  result.set_label("W" + w.str());
  return memo_.emplace(w, std::move(result)).first->second;
}

BlockOperator WickBuilder::of_vector(const FockVector& v) {
  BlockOperator acc = BlockOperator::zero(*basis_);
  int max_deg = 0;
  for (std::int64_t k = 0; k < v.coeffs().size(); ++k) {
    const Cplx c = v.coeffs()[k];
    if (c == Cplx(0.0)) continue;
    const Word w = v.basis().index_word(k);
    max_deg = std::max(max_deg, w.degree());
    acc = acc + of_word(w).scaled(c);
  }
  acc.set_reach(max_deg, max_deg);
  return acc;
}

namespace {

WickBuilder make_mixed_left_builder(const QMatrix& Q, const FockBasis& basis) {
  std::vector<BlockOperator> fields;
  std::vector<BlockOperator> annih;
  for (int i = 0; i < basis.d(); ++i) {
    fields.push_back(gaussian(Q, basis, Side::left, i));
    annih.push_back(left_annihilation(Q, basis, i));
  }
  return WickBuilder(basis, WickBuilder::Direction::prepend, std::move(fields), std::move(annih));
}

WickBuilder make_mixed_right_builder(const QMatrix& Q, const FockBasis& basis) {
  std::vector<BlockOperator> fields;
  std::vector<BlockOperator> annih;
  for (int i = 0; i < basis.d(); ++i) {
    fields.push_back(gaussian(Q, basis, Side::right, i));
    annih.push_back(right_annihilation(Q, basis, i));
  }
  return WickBuilder(basis, WickBuilder::Direction::append, std::move(fields), std::move(annih));
}

void check_headroom(const FockVector& xi, const FockBasis& basis, const char* who) {
  if (headroom_degree(xi) + 1 > basis.truncation())
    throw TruncationError(std::string(who) + ": argument degree " +
                          std::to_string(headroom_degree(xi)) +
                          " needs one level of headroom below the truncation " +
                          std::to_string(basis.truncation()));
}

}  // namespace

WickOp wick(const QMatrix& Q, const FockBasis& basis, const FockVector& xi) {
  check_headroom(xi, basis, "wick");
  WickBuilder builder = make_mixed_left_builder(Q, basis);
  return WickOp{xi, builder.of_vector(xi), Side::left};
}

WickOp right_wick(const QMatrix& Q, const FockBasis& basis, const FockVector& xi) {
  check_headroom(xi, basis, "right_wick");
  WickBuilder builder = make_mixed_left_builder(Q, basis);
  BlockOperator op = conjugate_by_J(builder.of_vector(conjugate_J(xi)));
  op.set_label("Wr");
  return WickOp{xi, std::move(op), Side::right};
}

WickOp right_wick_recursion(const QMatrix& Q, const FockBasis& basis, const FockVector& xi) {
  check_headroom(xi, basis, "right_wick_recursion");
  WickBuilder builder = make_mixed_right_builder(Q, basis);
  return WickOp{xi, builder.of_vector(xi), Side::right};
}

BlockOperator wick_crossing_generic(const FockBasis& basis, double q,
                                    const std::vector<DVec>& letters, const OpFactory& creation,
                                    const OpFactory& annihilation_conj) {
  const int n = static_cast<int>(letters.size());
  if (n + 1 > basis.truncation())
    throw TruncationError("wick_crossing: word degree " + std::to_string(n) +
                          " needs one level of headroom below the truncation " +
                          std::to_string(basis.truncation()));
  BlockOperator acc = BlockOperator::zero(basis);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    int cross = 0;
    for (int a = 0; a < n; ++a) {
      if (!(mask & (1u << a))) continue;  // a in I1
      for (int b = 0; b < a; ++b) {
        if (!(mask & (1u << b))) ++cross;  // b in I2 with b < a
      }
    }
    BlockOperator term = BlockOperator::identity(basis);
    // Annihilations first (rightmost factors), ascending within I2.
    for (int b = n - 1; b >= 0; --b) {
      if (!(mask & (1u << b))) term = annihilation_conj(letters[static_cast<std::size_t>(b)]) * term;
    }
    for (int a = n - 1; a >= 0; --a) {
      if (mask & (1u << a)) term = creation(letters[static_cast<std::size_t>(a)]) * term;
    }
    acc = acc + term.scaled(std::pow(q, cross));
  }
  acc.set_reach(n, n);
  acc.set_label("Wx");
  return acc;
}

WickOp wick_crossing(const QMatrix& Q, const FockBasis& basis,
                     const std::vector<DVec>& letters) {
  double q = 0.0;
  if (!Q.is_constant(&q))
    throw UnsupportedModeError(
        "wick_crossing: the crossing sum needs a constant deformation matrix");
  const OpFactory creation = [&](const DVec& e) {
    BlockOperator acc = BlockOperator::zero(basis);
    for (int i = 0; i < basis.d(); ++i) {
      if (e[i] != Cplx(0.0)) acc = acc + left_creation(basis, i).scaled(e[i]);
    }
    acc.set_reach(1, 0);
    return acc;
  };
  const OpFactory annihilation_conj = [&](const DVec& e) {
    // l*(Ie) = sum_i e_i l_i*: the two conjugations cancel.
    BlockOperator acc = BlockOperator::zero(basis);
    for (int i = 0; i < basis.d(); ++i) {
      if (e[i] != Cplx(0.0)) acc = acc + left_annihilation(Q, basis, i).scaled(e[i]);
    }
    acc.set_reach(0, 1);
    return acc;
  };
  BlockOperator op = wick_crossing_generic(basis, q, letters, creation, annihilation_conj);
  // The argument is the tensor word of the letters.
  FockVector word = FockVector::vacuum(basis);
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    FockVector next(basis);
    for (int i = 0; i < basis.d(); ++i) {
      if ((*it)[i] == Cplx(0.0)) continue;
      next += (*it)[i] * left_creation(basis, i).apply(word);
    }
    word = next;
  }
  return WickOp{word, std::move(op), Side::left};
}

FockVector random_word_combination(const FockBasis& basis, int max_degree, CounterRng& rng,
                                   bool complex_coeffs) {
  FockVector v(basis);
  for (int n = 1; n <= std::min(max_degree, basis.truncation()); ++n) {
    for (std::int64_t k = 0; k < basis.level_dim(n); ++k) {
      const double re = rng.next_sym();
      const double im = complex_coeffs ? rng.next_sym() : 0.0;
      v.level(n)[k] = Cplx(re, im);
    }
  }
  const double norm = v.coord_norm();
  if (norm > 0) v *= 1.0 / norm;
  return v;
}

CommutantReport commutant_check(const GramContext& ctx,
                                const std::function<BlockOperator(const FockVector&)>& left_of,
                                const std::function<BlockOperator(const FockVector&)>& right_of,
                                int deg_xi, int deg_eta, int deg_v, int trials, CounterRng& rng,
                                double tolerance) {
  const FockBasis& basis = ctx.basis();
  if (deg_xi + deg_eta + deg_v > basis.truncation())
    throw TruncationError("commutant_check: combined degree reach " +
                          std::to_string(deg_xi + deg_eta + deg_v) + " exceeds the truncation " +
                          std::to_string(basis.truncation()));
  CommutantReport report;
  report.tolerance = tolerance;
  for (int t = 0; t < trials; ++t) {
    const FockVector xi = random_word_combination(basis, deg_xi, rng);
    const FockVector eta = random_word_combination(basis, deg_eta, rng);
    FockVector v = random_word_combination(basis, deg_v, rng);
    v.coeffs()[0] = rng.next_sym();  // include a vacuum component
    const BlockOperator wl = left_of(xi);
    const BlockOperator wr = right_of(eta);
    const FockVector diff = wl.apply(wr.apply(v)) - wr.apply(wl.apply(v));
    report.max_action_norm = std::max(report.max_action_norm, ctx.norm(diff));
    ++report.trials;
  }
  report.pass = report.max_action_norm <= tolerance;
  return report;
}

}  // namespace qfock
