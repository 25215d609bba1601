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

#include "qfock/araki_woods.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "qfock/detail/gram_builder.hpp"
#include "qfock/detail/kron.hpp"
#include "qfock/errors.hpp"
#include "qfock/pair_partitions.hpp"

namespace qfock {

namespace {

constexpr Cplx kI(0.0, 1.0);

using Triplets = std::vector<Eigen::Triplet<Cplx>>;

SpMat from_triplets(std::int64_t rows, std::int64_t cols, const Triplets& t) {
  SpMat m(rows, cols);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

}  // namespace

AWModel::AWModel(std::vector<AWBlockSpec> blocks, double q, int N, std::int64_t budget)
    : m_(0), q_(q),
      basis_([&blocks, N, budget] {
        int m = 0;
        for (const AWBlockSpec& b : blocks) m += b.lambda == 1.0 ? 1 : 2;
        if (m == 0) throw DomainError("AWModel: no blocks given");
        return FockBasis(m, N, budget);
      }()),
      blocks_(blocks) {
  if (!(q > -1.0 && q < 1.0)) throw DomainError("AWModel: q must lie in (-1, 1)");
  for (const AWBlockSpec& b : blocks_) {
    if (!(b.lambda > 0.0)) throw DomainError("AWModel: block eigenvalues must be positive");
  }
  m_ = basis_.d();

  A_ = DMat::Zero(m_, m_);
  int at = 0;
  for (const AWBlockSpec& b : blocks_) {
    if (b.lambda == 1.0) {
      A_(at, at) = 1.0;
      eigen_pairs_.push_back({1.0, DVec::Unit(m_, at)});
      at += 1;
    } else {
      const double c = 0.5 * (b.lambda + 1.0 / b.lambda);
      const double s = 0.5 * (b.lambda - 1.0 / b.lambda);
      A_(at, at) = c;
      A_(at, at + 1) = kI * s;
      A_(at + 1, at) = -kI * s;
      A_(at + 1, at + 1) = c;
      DVec f = DVec::Zero(m_);
      f[at] = 1.0 / std::sqrt(2.0);
      f[at + 1] = -kI / std::sqrt(2.0);
      eigen_pairs_.push_back({b.lambda, f});
      eigen_pairs_.push_back({1.0 / b.lambda, f.conjugate()});
      at += 2;
    }
  }

  // Deformed one-particle metric 2 (1 + A^{-1})^{-1}.
  const DMat Ainv = A_.inverse();
  TU_ = 2.0 * (DMat::Identity(m_, m_) + Ainv).inverse();

  // H_R' from the real-linear system Im((R + iS)(x + iy)) = S x + R y = 0.
  {
    const Eigen::MatrixXd R = TU_.real();
    const Eigen::MatrixXd S = TU_.imag();
    Eigen::MatrixXd M(m_, 2 * m_);
    M << S, R;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    lu.setThreshold(1e-10);
    const Eigen::MatrixXd kernel = lu.kernel();
    if (kernel.cols() != m_)
      throw DegeneracyError("AWModel: H_R' has real dimension " + std::to_string(kernel.cols()) +
                            ", expected " + std::to_string(m_));
    hr_prime_ = DMat(m_, m_);
    for (int j = 0; j < m_; ++j) {
      hr_prime_.col(j) = kernel.col(j).head(m_).cast<Cplx>() +
                         kI * kernel.col(j).tail(m_).cast<Cplx>();
      hr_prime_.col(j) /= hr_prime_.col(j).norm();
    }
    Eigen::JacobiSVD<DMat> svd(hr_prime_);
    if (svd.singularValues().minCoeff() < 1e-10)
      throw DegeneracyError("AWModel: H_R' basis is complex-degenerate");
    hr_prime_inv_ = hr_prime_.inverse();
  }

  // Fock levels: scalar-q symmetrization times the tensor powers of the
  // one-particle metric.
  std::vector<DMat> gram;
  RMat pq = RMat::Ones(1, 1);
  const RMat constant_q = RMat::Constant(m_, m_, q_);
  DMat tu_pow = DMat::Ones(1, 1);
  for (int n = 0; n <= basis_.truncation(); ++n) {
    if (n > 0) {
      pq = detail::recursive_gram_level<double>(constant_q, m_, n, pq);
      tu_pow = detail::kron(tu_pow, TU_);
    }
    gram.push_back(pq.cast<Cplx>() * tu_pow);
  }
  ctx_ = std::make_unique<GramContext>(basis_, std::move(gram));
}

Cplx AWModel::aw_inner(const DVec& xi, const DVec& eta) const {
  return (eta.adjoint() * (TU_ * xi))(0, 0);
}

double AWModel::aw_norm(const DVec& xi) const {
  const double v = aw_inner(xi, xi).real();
  return v > 0 ? std::sqrt(v) : 0.0;
}

DVec AWModel::conj_Ir(const DVec& xi) const {
  return hr_prime_ * (hr_prime_inv_ * xi).conjugate();
}

DVec AWModel::invariant_vector() const {
  for (const EigenPair& pair : eigen_pairs_) {
    if (pair.lambda == 1.0) return pair.vec;
  }
  throw DegeneracyError("AWModel: no invariant eigenvector in this model");
}

DMat AWModel::unitary(double t) const {
  DMat u = DMat::Zero(m_, m_);
  for (const EigenPair& pair : eigen_pairs_) {
    u += std::exp(kI * (t * std::log(pair.lambda))) * (pair.vec * pair.vec.adjoint());
  }
  return u;
}

BlockOperator AWModel::create_l(const DVec& xi) const {
  BlockOperator op(basis_, "l(v)");
  const int N = basis_.truncation();
  for (int n = 0; n < N; ++n) {
    Triplets t;
    const std::int64_t dim = basis_.level_dim(n);
    for (int i = 0; i < m_; ++i) {
      if (xi[i] == Cplx(0.0)) continue;
      for (std::int64_t w = 0; w < dim; ++w) t.emplace_back(i * dim + w, w, xi[i]);
    }
    op.set_block(n, +1, from_triplets(basis_.level_dim(n + 1), dim, t));
  }
  op.set_reach(1, 0);
  return op;
}

BlockOperator AWModel::create_r(const DVec& xi) const {
  BlockOperator op(basis_, "r(v)");
  const int N = basis_.truncation();
  for (int n = 0; n < N; ++n) {
    Triplets t;
    const std::int64_t dim = basis_.level_dim(n);
    for (int i = 0; i < m_; ++i) {
      if (xi[i] == Cplx(0.0)) continue;
      for (std::int64_t w = 0; w < dim; ++w) t.emplace_back(w * m_ + i, w, xi[i]);
    }
    op.set_block(n, +1, from_triplets(basis_.level_dim(n + 1), dim, t));
  }
  op.set_reach(1, 0);
  return op;
}

BlockOperator AWModel::annihilate_l(const DVec& xi) const {
  BlockOperator op(basis_, "l*(v)");
  const DVec z = (TU_ * xi).conjugate();  // pairing weights <e_j, xi>_U
  const int N = basis_.truncation();
  for (int n = 1; n <= N; ++n) {
    Triplets t;
    const std::int64_t dim = basis_.level_dim(n);
    for (std::int64_t w = 0; w < dim; ++w) {
      const Word word = basis_.level_word(n, w);
      double qk = 1.0;
      for (int k = 0; k < n; ++k) {
        const Cplx weight = qk * z[word.letter(k)];
        if (weight != Cplx(0.0))
          t.emplace_back(basis_.level_rank(word.removed(k)), w, weight);
        qk *= q_;
      }
    }
    op.set_block(n, -1, from_triplets(basis_.level_dim(n - 1), dim, t));
  }
  op.set_reach(0, 1);
  return op;
}

BlockOperator AWModel::annihilate_r(const DVec& xi) const {
  BlockOperator op(basis_, "r*(v)");
  const DVec z = (TU_ * xi).conjugate();
  const int N = basis_.truncation();
  for (int n = 1; n <= N; ++n) {
    Triplets t;
    const std::int64_t dim = basis_.level_dim(n);
    for (std::int64_t w = 0; w < dim; ++w) {
      const Word word = basis_.level_word(n, w);
      double qk = 1.0;
      for (int k = n - 1; k >= 0; --k) {
        const Cplx weight = qk * z[word.letter(k)];
        if (weight != Cplx(0.0))
          t.emplace_back(basis_.level_rank(word.removed(k)), w, weight);
        qk *= q_;
      }
    }
    op.set_block(n, -1, from_triplets(basis_.level_dim(n - 1), dim, t));
  }
  op.set_reach(0, 1);
  return op;
}

BlockOperator AWModel::field(const DVec& xi) const {
  BlockOperator op = create_l(xi) + annihilate_l(conj_I(xi));
  op.set_label("s(v)");
  op.set_reach(1, 1);
  return op;
}

BlockOperator AWModel::field_r(const DVec& xi) const {
  BlockOperator op = create_r(xi) + annihilate_r(conj_Ir(xi));
  op.set_label("sr(v)");
  op.set_reach(1, 1);
  return op;
}

WickBuilder AWModel::wick_builder() const {
  std::vector<BlockOperator> fields;
  std::vector<BlockOperator> annih;
  for (int i = 0; i < m_; ++i) {
    const DVec e = DVec::Unit(m_, i);
    fields.push_back(field(e));
    annih.push_back(annihilate_l(e));  // I e = e for coordinate letters
  }
  return WickBuilder(basis_, WickBuilder::Direction::prepend, std::move(fields), std::move(annih));
}

WickBuilder AWModel::right_wick_builder() const {
  std::vector<BlockOperator> fields;
  std::vector<BlockOperator> annih;
  for (int i = 0; i < m_; ++i) {
    const DVec e = DVec::Unit(m_, i);
    fields.push_back(field_r(e));
    annih.push_back(annihilate_r(conj_Ir(e)));
  }
  return WickBuilder(basis_, WickBuilder::Direction::append, std::move(fields), std::move(annih));
}

namespace {
void check_aw_headroom(const FockVector& xi, const FockBasis& basis, const char* who) {
  const int deg = std::max(xi.max_degree(0.0), 0);
  if (deg + 1 > basis.truncation())
    throw TruncationError(std::string(who) + ": argument degree " + std::to_string(deg) +
                          " needs one level of headroom below the truncation " +
                          std::to_string(basis.truncation()));
}
}  // namespace

BlockOperator AWModel::wick_of(const FockVector& xi) const {
  check_aw_headroom(xi, basis_, "aw wick");
  WickBuilder builder = wick_builder();
  return builder.of_vector(xi);
}

BlockOperator AWModel::right_wick_of(const FockVector& xi) const {
  check_aw_headroom(xi, basis_, "aw right wick");
  WickBuilder builder = right_wick_builder();
  return builder.of_vector(xi);
}

BlockOperator AWModel::wick_crossing_of(const std::vector<DVec>& letters) const {
  const OpFactory creation = [this](const DVec& e) { return create_l(e); };
  const OpFactory annihilation_conj = [this](const DVec& e) { return annihilate_l(conj_I(e)); };
  return wick_crossing_generic(basis_, q_, letters, creation, annihilation_conj);
}

Cplx AWModel::moment(const std::vector<const BlockOperator*>& ops) const {
  return vacuum_moment(std::span<const BlockOperator* const>(ops), basis_);
}

// ---- Structure diagnostics ----

AWStructureReport aw_structure_check(const AWModel& model, int trials, CounterRng& rng,
                                     double tolerance) {
  AWStructureReport report;
  report.tolerance = tolerance;
  const int m = model.dim_R();
  for (int t = 0; t < trials; ++t) {
    // Real-part restriction on H_R.
    DVec x(m), y(m);
    for (int k = 0; k < m; ++k) {
      x[k] = rng.next_sym();
      y[k] = rng.next_sym();
    }
    const double expected = (x.real().transpose() * y.real())(0, 0);
    report.real_part_residual = std::max(
        report.real_part_residual, std::abs(model.aw_inner(x, y).real() - expected));

    // U_t invariance for complex vectors at a sampled time.
    DVec u(m), v(m);
    for (int k = 0; k < m; ++k) {
      u[k] = Cplx(rng.next_sym(), rng.next_sym());
      v[k] = Cplx(rng.next_sym(), rng.next_sym());
    }
    const double time = 3.0 * rng.next_sym();
    const DMat ut = model.unitary(time);
    report.unitarity_residual =
        std::max(report.unitarity_residual,
                 std::abs(model.aw_inner(ut * u, ut * v) - model.aw_inner(u, v)));
    ++report.trials;
  }

  bool membership_ok = true;
  try {
    const DVec xi0 = model.invariant_vector();
    const DVec coeffs = model.hr_prime_basis().inverse() * xi0;
    report.hr_prime_membership = coeffs.imag().cwiseAbs().maxCoeff();
    membership_ok = report.hr_prime_membership <= 1e-10;
  } catch (const DegeneracyError&) {
    report.hr_prime_membership = 0.0;  // no invariant block in this model
  }

  report.pass = report.real_part_residual <= tolerance &&
                report.unitarity_residual <= tolerance && membership_ok;
  return report;
}

double hr_prime_closed_form_residual(const AWModel& model) {
  const int m = model.dim_R();
  // Real 2m-coordinates of a complex column set.
  const auto realify = [m](const DMat& cols) {
    Eigen::MatrixXd out(2 * m, cols.cols());
    out.topRows(m) = cols.real();
    out.bottomRows(m) = cols.imag();
    return out;
  };
  const DMat closed = DMat::Identity(m, m) + model.A().inverse();
  const Eigen::MatrixXd span_a = realify(model.hr_prime_basis());
  const Eigen::MatrixXd span_b = realify(closed);
  const auto orthonormal = [](const Eigen::MatrixXd& mat) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(mat);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(mat.rows(), mat.cols());
    return q;
  };
  const Eigen::MatrixXd qa = orthonormal(span_a);
  const Eigen::MatrixXd qb = orthonormal(span_b);
  return (qa * qa.transpose() - qb * qb.transpose()).cwiseAbs().maxCoeff();
}

IrOrthogonalityReport ir_orthogonality_check(const AWModel& model, int trials, CounterRng& rng,
                                             double tolerance) {
  IrOrthogonalityReport report;
  report.tolerance = tolerance;
  const int m = model.dim_R();
  for (int t = 0; t < trials; ++t) {
    DVec f(m);
    for (int k = 0; k < m; ++k) f[k] = rng.next_sym();  // f in H_R
    DVec e(m);
    for (int k = 0; k < m; ++k) e[k] = Cplx(rng.next_sym(), rng.next_sym());
    // Project e against f in the deformed product.
    const Cplx ff = model.aw_inner(f, f);
    e -= (model.aw_inner(e, f) / ff) * f;
    report.max_residual =
        std::max(report.max_residual, std::abs(model.aw_inner(model.conj_Ir(e), f)));
    ++report.trials;
  }
  report.pass = report.max_residual <= tolerance;
  return report;
}

DualityReport hr_duality_check(const AWModel& model, int trials, CounterRng& rng,
                               double tolerance) {
  DualityReport report;
  const FockBasis& basis = model.basis();
  const int m = model.dim_R();
  const int N = basis.truncation();
  for (int t = 0; t < trials; ++t) {
    DVec f(m);
    for (int k = 0; k < m; ++k) f[k] = rng.next_sym();
    f /= model.aw_norm(f);
    DVec greal(m);
    for (int k = 0; k < m; ++k) greal[k] = rng.next_sym();
    DVec g = model.hr_prime_basis() * greal;  // real combination: g in H_R'
    g /= model.aw_norm(g);

    const BlockOperator lf = model.create_l(f);
    const BlockOperator lf_star = model.annihilate_l(f);
    const BlockOperator rg_star = model.annihilate_r(g);

    const BlockOperator two_annih = lf_star * rg_star - rg_star * lf_star;
    report.annihilator_commutator =
        std::max(report.annihilator_commutator, two_annih.max_abs_entry());

    const BlockOperator mixed = rg_star * lf - lf * rg_star;
    const Cplx fg = model.aw_inner(f, g);
    double qk = 1.0;
    for (int k = 0; k <= N - 1; ++k) {
      DMat block = mixed.dense_block(k, 0);
      block -= fg * qk * DMat::Identity(block.rows(), block.cols());
      report.scalar_relation_residual =
          std::max(report.scalar_relation_residual, block.cwiseAbs().maxCoeff());
      qk *= model.q();
    }
    ++report.trials;
  }
  report.pass = report.annihilator_commutator <= 1e-12 &&
                report.scalar_relation_residual <= tolerance;
  return report;
}

// ---- Modular data ----

ModularData modular_data(const AWModel& model, int cap) {
  const FockBasis& basis = model.basis();
  if (cap < 0 || 2 * cap > basis.truncation())
    throw PreconditionError("modular_data: need N >= 2 cap so the Wick adjoints are clean (cap " +
                            std::to_string(cap) + ", N " + std::to_string(basis.truncation()) +
                            ")");
  const GramContext& ctx = model.context();
  const std::int64_t dom = basis.level_offset(cap) + basis.level_dim(cap);

  ModularData data;
  data.cap = cap;

  // Columns of S: the adjoint of each word's Wick operator against the
  // vacuum.
  WickBuilder builder = model.wick_builder();
  data.S = DMat::Zero(dom, dom);
  for (std::int64_t k = 0; k < dom; ++k) {
    const Word w = basis.index_word(k);
    const BlockOperator adj = ctx.adjoint(builder.of_word(w));
    const FockVector column = adj.apply(FockVector::vacuum(basis));
    data.S.col(k) = column.coeffs().head(dom);
  }

  data.s_involution_residual =
      ((data.S * data.S.conjugate()) - DMat::Identity(dom, dom)).cwiseAbs().maxCoeff();

  // Degree-1 vectors of H_R are fixed by S.
  {
    double worst = 0.0;
    for (int i = 0; i < model.dim_R(); ++i) {
      const std::int64_t k = basis.level_offset(1) + i;
      DVec e = DVec::Zero(dom);
      e[k] = 1.0;
      worst = std::max(worst, (data.S * e.conjugate() - e).cwiseAbs().maxCoeff());
    }
    data.hr_fixed_residual = worst;
  }

  // Blockwise Gram of the domain and the orthonormal-frame matrices.
  DMat G = DMat::Zero(dom, dom);
  DMat gh = DMat::Zero(dom, dom);
  DMat gih = DMat::Zero(dom, dom);
  for (int n = 0; n <= cap; ++n) {
    const std::int64_t at = basis.level_offset(n);
    const std::int64_t sz = basis.level_dim(n);
    G.block(at, at, sz, sz) = ctx.gram(n);
    gh.block(at, at, sz, sz) = ctx.sqrt(n);
    gih.block(at, at, sz, sz) = ctx.inv_sqrt(n);
  }

  const DMat Nmat = gh * data.S * gih.conjugate();
  const DMat delta_hat = Nmat.transpose() * Nmat.conjugate();
  Eigen::SelfAdjointEigenSolver<DMat> es(delta_hat);
  data.delta_min_eig = es.eigenvalues().minCoeff();
  if (data.delta_min_eig <= 0.0)
    throw DegeneracyError("modular_data: Delta is singular at the truncation");
  const DVec sqrt_vals = es.eigenvalues().cwiseSqrt().cast<Cplx>();
  const DMat delta_hat_sqrt =
      es.eigenvectors() * sqrt_vals.asDiagonal() * es.eigenvectors().adjoint();
  const DMat delta_hat_inv_sqrt =
      es.eigenvectors() * sqrt_vals.cwiseInverse().asDiagonal() * es.eigenvectors().adjoint();
  const DMat jmod = Nmat * delta_hat_inv_sqrt.conjugate();
  data.jmod_unitarity = (jmod.adjoint() * jmod - DMat::Identity(dom, dom)).cwiseAbs().maxCoeff();
  data.polar_residual = (jmod * delta_hat_sqrt.conjugate() - Nmat).cwiseAbs().maxCoeff();

  data.delta = gih * delta_hat * gh;

  data.candidate = DMat::Zero(dom, dom);
  const DMat Ainv = model.A().inverse();
  for (int n = 0; n <= cap; ++n) {
    const std::int64_t at = basis.level_offset(n);
    const std::int64_t sz = basis.level_dim(n);
    data.candidate.block(at, at, sz, sz) = detail::kron_pow(Ainv, n);
  }
  data.candidate_residual = (data.delta - data.candidate).cwiseAbs().maxCoeff();
  return data;
}

// ---- Centralizer and fixed vectors ----

namespace {

BlockOperator random_field_word(const AWModel& model, int length, CounterRng& rng,
                                std::vector<BlockOperator>* fields_cache) {
  BlockOperator acc = BlockOperator::identity(model.basis());
  for (int k = 0; k < length; ++k) {
    const std::size_t pick = static_cast<std::size_t>(rng.next_below(fields_cache->size()));
    acc = acc * (*fields_cache)[pick];
  }
  return acc;
}

}  // namespace

CentralizerReport centralizer_check(const AWModel& model, const DVec& xi0, int trials,
                                    int degree_cap, CounterRng& rng, double tolerance) {
  CentralizerReport report;
  report.tolerance = tolerance;
  report.moment4_expected = 2.0 + model.q();
  if ((model.A() * xi0 - xi0).cwiseAbs().maxCoeff() > 1e-10)
    throw PreconditionError("centralizer_check: the generator vector is not A-invariant");

  const BlockOperator w0 = model.field(xi0);

  // Random real field words over the letters.
  std::vector<BlockOperator> fields;
  for (int i = 0; i < model.dim_R(); ++i)
    fields.push_back(model.field(DVec::Unit(model.dim_R(), i)));

  for (int t = 0; t < trials; ++t) {
    const int len = 1 + static_cast<int>(rng.next_below(degree_cap));
    if (len + 1 > model.basis().truncation())
      throw TruncationError("centralizer_check: word length exceeds the safe degree");
    const BlockOperator y = random_field_word(model, len, rng, &fields);
    const Cplx forward = model.moment({&w0, &y});
    const Cplx backward = model.moment({&y, &w0});
    report.max_commutation_deviation =
        std::max(report.max_commutation_deviation, std::abs(forward - backward));
    ++report.trials;
  }

  report.moment2 = model.moment({&w0, &w0}).real();
  report.moment4 = model.moment({&w0, &w0, &w0, &w0}).real();
  report.pass = report.max_commutation_deviation <= tolerance &&
                std::abs(report.moment2 - report.moment2_expected) <= tolerance &&
                std::abs(report.moment4 - report.moment4_expected) <= tolerance;
  return report;
}

double traciality_violation(const AWModel& model, int trials, int degree_cap, CounterRng& rng) {
  std::vector<BlockOperator> fields;
  for (int i = 0; i < model.dim_R(); ++i)
    fields.push_back(model.field(DVec::Unit(model.dim_R(), i)));

  double worst = 0.0;
  // Deterministic letter pairs first.
  for (std::size_t i = 0; i < fields.size(); ++i) {
    for (std::size_t j = i + 1; j < fields.size(); ++j) {
      const Cplx fwd = model.moment({&fields[i], &fields[j]});
      const Cplx rev = model.moment({&fields[j], &fields[i]});
      worst = std::max(worst, std::abs(fwd - rev));
    }
  }
  for (int t = 0; t < trials; ++t) {
    const int la = 1 + static_cast<int>(rng.next_below(degree_cap));
    const int lb = 1 + static_cast<int>(rng.next_below(degree_cap));
    if (la + lb > model.basis().truncation()) continue;
    const BlockOperator a = random_field_word(model, la, rng, &fields);
    const BlockOperator b = random_field_word(model, lb, rng, &fields);
    const Cplx fwd = model.moment({&a, &b});
    const Cplx rev = model.moment({&b, &a});
    worst = std::max(worst, std::abs(fwd - rev));
  }
  return worst;
}

FixedSubspaceReport fixed_vector_subspace(const AWModel& model) {
  const FockBasis& basis = model.basis();
  const int m = model.dim_R();
  FixedSubspaceReport report;
  report.pass = true;

  DMat log_a = DMat::Zero(m, m);
  for (const AWModel::EigenPair& p : model.eigen_pairs())
    log_a += std::log(p.lambda) * (p.vec * p.vec.adjoint());

  for (int n = 0; n <= basis.truncation(); ++n) {
    const std::int64_t dim = basis.level_dim(n);

    // Enumerate eigen-words whose eigenvalue product is 1.
    std::vector<DVec> span;
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    const auto& pairs = model.eigen_pairs();
    while (true) {
      double log_product = 0.0;
      for (int k = 0; k < n; ++k)
        log_product += std::log(pairs[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])].lambda);
      if (std::abs(log_product) <= 1e-9) {
        DVec word = DVec::Ones(1);
        for (int k = 0; k < n; ++k) {
          const DVec& f = pairs[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])].vec;
          DVec next(word.size() * m);
          for (Eigen::Index a = 0; a < word.size(); ++a)
            next.segment(a * m, m) = word[a] * f;
          word = next;
        }
        span.push_back(word);
      }
      int carry = n - 1;
      while (carry >= 0 && ++idx[static_cast<std::size_t>(carry)] == m) {
        idx[static_cast<std::size_t>(carry)] = 0;
        --carry;
      }
      if (carry < 0) break;  // covers n = 0: the vacuum alone is fixed
    }

    // Kernel of the level generator sum_slots log(A).
    DMat level_gen = DMat::Zero(dim, dim);
    for (int slot = 0; slot < n; ++slot) {
      DMat term = DMat::Ones(1, 1);
      for (int k = 0; k < n; ++k)
        term = detail::kron(term, k == slot ? log_a : DMat::Identity(m, m));
      level_gen += term;
    }
    Eigen::SelfAdjointEigenSolver<DMat> es(level_gen);
    std::vector<Eigen::Index> kernel_cols;
    for (Eigen::Index k = 0; k < dim; ++k) {
      if (std::abs(es.eigenvalues()[k]) <= 1e-9) kernel_cols.push_back(k);
    }

    report.enumerated_dims.push_back(static_cast<int>(span.size()));
    report.kernel_dims.push_back(static_cast<int>(kernel_cols.size()));

    double residual = 0.0;
    if (!kernel_cols.empty() && !span.empty()) {
      DMat kernel(dim, static_cast<Eigen::Index>(kernel_cols.size()));
      for (std::size_t c = 0; c < kernel_cols.size(); ++c)
        kernel.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(kernel_cols[c]);
      for (const DVec& v : span) {
        const DVec projected = kernel * (kernel.adjoint() * v);
        residual = std::max(residual, (v - projected).norm());
      }
    } else if (span.size() != kernel_cols.size()) {
      residual = 1.0;
    }
    report.span_residuals.push_back(residual);
    if (span.size() != kernel_cols.size() || residual > 1e-8) report.pass = false;
  }
  return report;
}

// ---- Factoriality computation chain ----

Thm44Witness make_thm44_witness(const AWModel& model, const FockVector& xi, const DVec& eta) {
  Thm44Witness witness;
  witness.xi0 = model.invariant_vector();
  const double norm0 = model.aw_norm(witness.xi0);
  witness.xi0 /= norm0;
  witness.eta = eta;
  witness.xi = xi;

  if (std::abs(model.aw_inner(eta, witness.xi0)) > 1e-10)
    throw PreconditionError("thm44 witness: eta is not orthogonal to the invariant vector");
  if (std::abs(model.aw_inner(model.conj_I(eta), witness.xi0)) > 1e-10)
    throw PreconditionError("thm44 witness: I eta is not orthogonal to the invariant vector");
  const DVec coeffs = model.hr_prime_basis().inverse() * eta;
  if (coeffs.imag().cwiseAbs().maxCoeff() > 1e-10)
    throw PreconditionError("thm44 witness: eta does not lie in H_R'");

  // xi must live in the sub-Fock space over the invariant line.
  const FockBasis& basis = model.basis();
  FockVector projected(basis);
  for (int n = 0; n <= basis.truncation(); ++n) {
    DVec power = DVec::Ones(1);
    for (int k = 0; k < n; ++k) {
      DVec next(power.size() * model.dim_R());
      for (Eigen::Index a = 0; a < power.size(); ++a)
        next.segment(a * model.dim_R(), model.dim_R()) = power[a] * witness.xi0;
      power = next;
    }
    // Component of xi along the n-fold power in the deformed level metric.
    const Cplx num = power.dot(model.context().gram(n) * xi.level(n).matrix());
    const Cplx den = power.dot(model.context().gram(n) * power);
    projected.level(n) = (num / den) * power;
  }
  if ((projected.coeffs() - xi.coeffs()).norm() > 1e-10)
    throw PreconditionError("thm44 witness: xi does not lie in the sub-Fock space over xi0");

  witness.lambda = model.context().inner(xi, FockVector::vacuum(basis));
  witness.zeta = xi;
  witness.zeta.coeffs()[0] -= witness.lambda;
  return witness;
}

ChainReport thm44_chain_check(const AWModel& model, const Thm44Witness& witness,
                              double tolerance) {
  ChainReport report;
  report.tolerance = tolerance;
  const FockBasis& basis = model.basis();
  const GramContext& ctx = model.context();

  // eta as a degree-1 Fock vector and the tensors eta (x) xi, eta (x) zeta.
  FockVector eta_vec(basis);
  eta_vec.level(1) = witness.eta;
  const BlockOperator l_eta = model.create_l(witness.eta);
  const FockVector eta_xi = l_eta.apply(witness.xi);
  const FockVector eta_zeta = l_eta.apply(witness.zeta);

  // (i) the Wick operator of eta moves xi to eta (x) xi ...
  const BlockOperator w_eta = model.field(witness.eta);
  report.wick_action_residual = ctx.norm(w_eta.apply(witness.xi) - eta_xi);

  // ... and the right Wick operator of xi does the same to eta.
  const BlockOperator wr_xi = model.right_wick_of(witness.xi);
  report.right_route_residual = ctx.norm(wr_xi.apply(eta_vec) - eta_xi);

  // (ii) the split of || eta (x) xi ||^2 across the vacuum part and zeta.
  const double eta_norm2 = model.aw_inner(witness.eta, witness.eta).real();
  const double lhs = ctx.inner(eta_xi, eta_xi).real();
  const double rhs = std::norm(witness.lambda) * eta_norm2 + ctx.inner(eta_zeta, eta_zeta).real();
  report.norm_split_residual = std::abs(lhs - rhs);

  // (iii) zeta = 0 collapses the identity to |lambda|^2 ||eta||^2.
  {
    FockVector scalar_xi(basis);
    scalar_xi.coeffs()[0] = witness.lambda;
    const FockVector eta_scalar = l_eta.apply(scalar_xi);
    report.scalar_case_residual =
        std::abs(ctx.inner(eta_scalar, eta_scalar).real() - std::norm(witness.lambda) * eta_norm2);
  }

  // W_r(eta) = W_r(eta)* for eta in H_R', verified against the Gram adjoint
  // on the levels with headroom.
  {
    const BlockOperator wr_eta = model.field_r(witness.eta);
    const BlockOperator diff = wr_eta - ctx.adjoint(wr_eta);
    double worst = 0.0;
    for (int n = 0; n <= basis.truncation(); ++n) {
      for (const auto& [shift, block] : diff.blocks_at(n)) {
        worst = std::max(worst, diff.dense_block(n, shift).cwiseAbs().maxCoeff());
      }
    }
    report.wr_selfadjoint_residual = worst;
  }

  report.pass = report.wick_action_residual <= tolerance &&
                report.right_route_residual <= tolerance &&
                report.norm_split_residual <= tolerance &&
                report.scalar_case_residual <= tolerance &&
                report.wr_selfadjoint_residual <= tolerance;
  return report;
}

// ---- Second quantization ----

BlockOperator second_quantization(const FockBasis& basis, const DMat& P) {
  if (P.rows() != basis.d() || P.cols() != basis.d())
    throw DomainError("second_quantization: P must act on the one-particle space");
  BlockOperator op(basis, "F(P)");
  for (int n = 0; n <= basis.truncation(); ++n) {
    const DMat block = detail::kron_pow(P, n);
    op.set_block(n, 0, block.sparseView(1.0, 1e-300));
  }
  op.set_reach(0, 0);
  return op;
}

BlockOperator second_quantization(const AWModel& model, const DMat& P) {
  const double residual = (P * model.A() - model.A() * P).cwiseAbs().maxCoeff();
  if (residual > 1e-10)
    throw PreconditionError("second_quantization: P does not commute with A (residual " +
                            std::to_string(residual) + ")");
  return second_quantization(model.basis(), P);
}

SecondQuantizationReport second_quantization_report(const GramContext& ctx,
                                                    const BlockOperator& FP) {
  SecondQuantizationReport report;
  const FockBasis& basis = ctx.basis();
  for (int n = 0; n <= basis.truncation(); ++n) {
    const DMat block = FP.dense_block(n, 0);
    report.idempotence_residual =
        std::max(report.idempotence_residual, (block * block - block).cwiseAbs().maxCoeff());
    const DMat g = ctx.gram(n);
    report.gram_selfadjoint_residual = std::max(
        report.gram_selfadjoint_residual, (g * block - block.adjoint() * g).cwiseAbs().maxCoeff());
  }
  return report;
}

int range_intersection_dim(const BlockOperator& FP1, const BlockOperator& FP2, double tolerance) {
  const FockBasis& basis = FP1.basis();
  int total = 0;
  for (int n = 0; n <= basis.truncation(); ++n) {
    const auto range_basis = [&](const BlockOperator& op) {
      const DMat block = op.dense_block(n, 0);
      Eigen::JacobiSVD<DMat> svd(block, Eigen::ComputeThinU);
      int rank = 0;
      for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
        if (svd.singularValues()[k] > tolerance) ++rank;
      return DMat(svd.matrixU().leftCols(rank));
    };
    const DMat u1 = range_basis(FP1);
    const DMat u2 = range_basis(FP2);
    if (u1.cols() == 0 || u2.cols() == 0) continue;
    Eigen::JacobiSVD<DMat> svd(u1.adjoint() * u2);
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
      if (svd.singularValues()[k] >= 1.0 - tolerance) ++total;
  }
  return total;
}

}  // namespace qfock
