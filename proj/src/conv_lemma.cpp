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

#include "qfock/conv_lemma.hpp"

#include <cmath>
#include <string>

#include "qfock/errors.hpp"

namespace qfock {

namespace {

void check_setup_shapes(const ConvSetup& setup) {
  if (setup.ctx == nullptr) throw DomainError("conv setup: missing Gram context");
  if (setup.a_ops.empty() || setup.b_ops.empty())
    throw DomainError("conv setup: a and b families must be nonempty");
  const FockBasis& basis = setup.ctx->basis();
  if (setup.K.size() != static_cast<std::size_t>(basis.truncation()) + 1)
    throw DomainError("conv setup: K needs one index set per level");
}

/// a_{hi} ... a_{lo} as an operator product (a_{lo} applied first);
/// 1-based inclusive bounds, identity when empty.
BlockOperator chain(const std::vector<BlockOperator>& ops, int lo, int hi,
                    const FockBasis& basis) {
  BlockOperator acc = BlockOperator::identity(basis);
  for (int k = lo; k <= hi; ++k) acc = ops[static_cast<std::size_t>(k) - 1] * acc;
  return acc;
}

int support_degree(const FockVector& v, double threshold = 1e-14) {
  const int deg = v.max_degree(threshold);
  return deg < 0 ? 0 : deg;
}

double mass_outside_K(const FockVector& v, const std::vector<std::vector<std::int64_t>>& K) {
  const FockBasis& basis = v.basis();
  double worst = 0.0;
  for (int n = 0; n <= basis.truncation(); ++n) {
    std::vector<bool> inside(static_cast<std::size_t>(basis.level_dim(n)), false);
    for (std::int64_t k : K[static_cast<std::size_t>(n)])
      inside[static_cast<std::size_t>(k)] = true;
    for (std::int64_t k = 0; k < basis.level_dim(n); ++k) {
      if (!inside[static_cast<std::size_t>(k)])
        worst = std::max(worst, std::abs(v.level(n)[k]));
    }
  }
  return worst;
}

/// Worst coefficient outside K over the images of the K-columns of op.
double k_escape(const BlockOperator& op, const std::vector<std::vector<std::int64_t>>& K) {
  const FockBasis& basis = op.basis();
  double worst = 0.0;
  for (int n = 0; n <= basis.truncation(); ++n) {
    for (std::int64_t k : K[static_cast<std::size_t>(n)]) {
      FockVector unit(basis);
      unit.coeffs()[basis.level_offset(n) + k] = 1.0;
      worst = std::max(worst, mass_outside_K(op.apply(unit), K));
    }
  }
  return worst;
}

/// Worst image norm over K-columns (coordinate geometry).
double k_image_norm(const BlockOperator& op, const std::vector<std::vector<std::int64_t>>& K) {
  const FockBasis& basis = op.basis();
  double worst = 0.0;
  for (int n = 0; n <= basis.truncation(); ++n) {
    for (std::int64_t k : K[static_cast<std::size_t>(n)]) {
      FockVector unit(basis);
      unit.coeffs()[basis.level_offset(n) + k] = 1.0;
      worst = std::max(worst, op.apply(unit).coord_norm());
    }
  }
  return worst;
}

/// The full insertion assembly: T = sum_i asuffix (sum_j bprefix K_ij bsuffix) aprefix.
BlockOperator assemble_T(const ConvSetup& setup) {
  const FockBasis& basis = setup.ctx->basis();
  const int r = static_cast<int>(setup.a_ops.size());
  const int s = static_cast<int>(setup.b_ops.size());
  BlockOperator total = BlockOperator::zero(basis);
  for (int i = 1; i <= r; ++i) {
    BlockOperator inner = BlockOperator::zero(basis);
    for (int j = 1; j <= s; ++j) {
      const BlockOperator& a = setup.a_ops[static_cast<std::size_t>(i) - 1];
      const BlockOperator& b = setup.b_ops[static_cast<std::size_t>(j) - 1];
      const BlockOperator commutator = a * b - b * a;
      inner = inner + chain(setup.b_ops, 1, j - 1, basis) * commutator *
                          chain(setup.b_ops, j + 1, s, basis);
    }
    total = total + chain(setup.a_ops, i + 1, r, basis) * inner *
                        chain(setup.a_ops, 1, i - 1, basis);
  }
  return total;
}

void check_safe_degrees(const ConvSetup& setup) {
  const FockBasis& basis = setup.ctx->basis();
  const int r = static_cast<int>(setup.a_ops.size());
  const int s = static_cast<int>(setup.b_ops.size());
  const int dxi = support_degree(setup.xi);
  const int deta = support_degree(setup.eta);
  if (dxi + r > basis.truncation() || deta + s + r > basis.truncation())
    throw TruncationError("conv check: family sizes (r = " + std::to_string(r) +
                          ", s = " + std::to_string(s) + ") and vector degrees (" +
                          std::to_string(dxi) + ", " + std::to_string(deta) +
                          ") do not fit under the truncation " +
                          std::to_string(basis.truncation()));
}

}  // namespace

std::vector<std::vector<std::int64_t>> single_letter_K(const FockBasis& basis, int letter) {
  std::vector<std::vector<std::int64_t>> K(static_cast<std::size_t>(basis.truncation()) + 1);
  for (int n = 0; n <= basis.truncation(); ++n) {
    const Word w(std::vector<int>(static_cast<std::size_t>(n), letter));
    K[static_cast<std::size_t>(n)].push_back(basis.level_rank(w));
  }
  return K;
}

FockVector random_K_vector(const FockBasis& basis,
                           const std::vector<std::vector<std::int64_t>>& K, int deg_lo,
                           int deg_hi, CounterRng& rng) {
  FockVector v(basis);
  for (int n = deg_lo; n <= std::min(deg_hi, basis.truncation()); ++n) {
    for (std::int64_t k : K[static_cast<std::size_t>(n)]) {
      v.coeffs()[basis.level_offset(n) + k] = Cplx(rng.next_sym(), rng.next_sym());
    }
  }
  const double norm = v.coord_norm();
  if (norm > 0) v *= 1.0 / norm;
  return v;
}

HypothesisReport validate_setup(const ConvSetup& setup) {
  check_setup_shapes(setup);
  const FockBasis& basis = setup.ctx->basis();
  const int N = basis.truncation();
  HypothesisReport report;

  report.shifts_ok = true;
  for (const auto* family : {&setup.a_ops, &setup.b_ops}) {
    for (const BlockOperator& op : *family) {
      int shift = 0;
      if (!op.homogeneous_shift(&shift) || (shift != 1 && shift != -1)) report.shifts_ok = false;
    }
  }

  // Per-level commutator norms against q^n, measured in the deformed
  // geometry on the levels with one step of headroom.
  report.level_commutator_norms.assign(static_cast<std::size_t>(N), 0.0);
  for (const BlockOperator& a : setup.a_ops) {
    for (const BlockOperator& b : setup.b_ops) {
      const BlockOperator c = a * b - b * a;
      for (int n = 0; n <= N - 1; ++n) {
        double worst = 0.0;
        for (const auto& [shift, block] : c.blocks_at(n)) {
          worst = std::max(worst, setup.ctx->gram_block_norm(c, n, shift));
        }
        auto& slot = report.level_commutator_norms[static_cast<std::size_t>(n)];
        slot = std::max(slot, worst);
      }
    }
  }
  double bound = 1.0;
  for (int n = 0; n <= N - 1; ++n) {
    report.max_commutator_excess =
        std::max(report.max_commutator_excess,
                 report.level_commutator_norms[static_cast<std::size_t>(n)] - bound);
    bound *= setup.q;
  }

  // Least-squares fit of log(norm) against n over the decaying part.
  {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (int n = 1; n <= N - 1; ++n) {
      const double v = report.level_commutator_norms[static_cast<std::size_t>(n)];
      if (v < 1e-14) continue;
      const double x = n, y = std::log(v);
      sx += x; sy += y; sxx += x * x; sxy += x * y;
      ++count;
    }
    if (count >= 2) {
      const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
      report.fitted_decay_rate = std::exp(slope);
    }
  }

  const int r = static_cast<int>(setup.a_ops.size());
  for (int i = 0; i + 1 < r; ++i)
    report.k_invariance_residual =
        std::max(report.k_invariance_residual, k_escape(setup.a_ops[static_cast<std::size_t>(i)], setup.K));
  report.k_annihilation_residual = k_image_norm(setup.a_ops.back(), setup.K);

  FockVector chain_eta = setup.eta;
  for (const BlockOperator& a : setup.a_ops) chain_eta = a.apply(chain_eta);
  report.chain_annihilation_residual = setup.ctx->norm(chain_eta);

  report.support_residual =
      std::max(mass_outside_K(setup.xi, setup.K), mass_outside_K(setup.eta, setup.K));

  report.pass = report.shifts_ok && report.max_commutator_excess <= 1e-10 &&
                report.k_invariance_residual <= 1e-12 &&
                report.k_annihilation_residual <= 1e-12 &&
                report.chain_annihilation_residual <= 1e-12 &&
                report.support_residual <= 1e-12;
  return report;
}

ExpansionReport tn_expansion_check(const ConvSetup& setup) {
  check_setup_shapes(setup);
  check_safe_degrees(setup);
  const FockBasis& basis = setup.ctx->basis();
  const int r = static_cast<int>(setup.a_ops.size());
  const int s = static_cast<int>(setup.b_ops.size());

  FockVector chain_eta = setup.eta;
  for (const BlockOperator& a : setup.a_ops) chain_eta = a.apply(chain_eta);
  if (setup.ctx->norm(chain_eta) > 1e-12)
    throw PreconditionError("tn_expansion_check: a_r ... a_1 eta does not vanish");

  ExpansionReport report;

  // Direct side: <a_1* ... a_r* xi, b_1 ... b_s eta>, adjoints taken against
  // the deformed Gram.
  FockVector left = setup.xi;
  for (int i = r; i >= 1; --i)
    left = setup.ctx->adjoint(setup.a_ops[static_cast<std::size_t>(i) - 1]).apply(left);
  FockVector right = setup.eta;
  for (int j = s; j >= 1; --j) right = setup.b_ops[static_cast<std::size_t>(j) - 1].apply(right);
  report.lhs = setup.ctx->inner(left, right);

  // Insertion side, one level of eta at a time: <xi, T eta_n>.
  const BlockOperator T = assemble_T(setup);
  report.rhs = 0.0;
  for (int n = 0; n <= basis.truncation(); ++n) {
    FockVector component(basis);
    component.level(n) = setup.eta.level(n);
    const Cplx value = setup.ctx->inner(setup.xi, T.apply(component));
    report.per_level.push_back(value);
    report.rhs += value;
  }

  report.residual = std::abs(report.lhs - report.rhs);
  report.tolerance = 1e-9 * (1.0 + std::abs(report.lhs));
  report.pass = report.residual <= report.tolerance;
  return report;
}

BoundReport conv_bound_check(const ConvSetup& setup) {
  check_setup_shapes(setup);
  check_safe_degrees(setup);
  const FockBasis& basis = setup.ctx->basis();
  const int N = basis.truncation();
  const int r = static_cast<int>(setup.a_ops.size());
  const int s = static_cast<int>(setup.b_ops.size());
  const double q = setup.q;

  BoundReport report;
  {
    const ExpansionReport expansion = tn_expansion_check(setup);
    report.lhs_abs = std::abs(expansion.lhs);
  }

  // Active window: degrees reachable from the supports under the chains.
  const int window = r + s + 1;
  const int lo = std::max(0, 0);
  const int hi = std::min(N, std::max(support_degree(setup.xi), support_degree(setup.eta)) + window);

  std::vector<double> a_norms, b_norms;
  std::vector<int> a_shifts, b_shifts;
  for (const BlockOperator& a : setup.a_ops) {
    a_norms.push_back(setup.ctx->gram_norm_over_levels(a, lo, hi));
    int shift = 0;
    a.homogeneous_shift(&shift);
    a_shifts.push_back(shift);
  }
  for (const BlockOperator& b : setup.b_ops) {
    b_norms.push_back(setup.ctx->gram_norm_over_levels(b, lo, hi));
    int shift = 0;
    b.homogeneous_shift(&shift);
    b_shifts.push_back(shift);
  }

  // C = r s max_{i,j} prod_{k != i} ||a_k|| prod_{l != j} ||b_l|| q^{delta},
  // where delta tracks the exact level at which the commutator block acts.
  double worst_term = 0.0;
  for (int i = 1; i <= r; ++i) {
    for (int j = 1; j <= s; ++j) {
      double factors = 1.0;
      for (int k = 1; k <= r; ++k)
        if (k != i) factors *= a_norms[static_cast<std::size_t>(k) - 1];
      for (int l = 1; l <= s; ++l)
        if (l != j) factors *= b_norms[static_cast<std::size_t>(l) - 1];
      int delta = 0;
      for (int k = 1; k < i; ++k) delta += a_shifts[static_cast<std::size_t>(k) - 1];
      for (int l = j + 1; l <= s; ++l) delta += b_shifts[static_cast<std::size_t>(l) - 1];
      worst_term = std::max(worst_term, factors * std::pow(q, delta));
    }
  }
  report.constant = static_cast<double>(r) * static_cast<double>(s) * worst_term;

  const double xi_norm = setup.ctx->norm(setup.xi);
  const BlockOperator T = assemble_T(setup);
  double weighted_sum = 0.0;
  double qn = 1.0;
  std::vector<double> eta_level_norms;
  for (int n = 0; n <= N; ++n) {
    const double eta_n = setup.ctx->level_norm(setup.eta, n);
    eta_level_norms.push_back(eta_n);
    weighted_sum += qn * eta_n;
    if (eta_n > 0) {
      FockVector component(basis);
      component.level(n) = setup.eta.level(n);
      const double t_norm = setup.ctx->norm(T.apply(component));
      report.per_level_ratio.push_back(t_norm / (report.constant * qn * eta_n));
    } else {
      report.per_level_ratio.push_back(0.0);
    }
    qn *= q;
  }
  report.rhs = report.constant * xi_norm * weighted_sum;
  report.pass = report.lhs_abs <= report.rhs + report.slack;

  // Geometric tail: sum_{n >= N0} q^n ||eta_n|| <= sup_n ||eta_n|| q^N0/(1-q).
  const double sup_eta = *std::max_element(eta_level_norms.begin(), eta_level_norms.end());
  report.tail_pass = true;
  for (int n0 = 0; n0 <= N; ++n0) {
    double tail = 0.0;
    double w = std::pow(q, n0);
    for (int n = n0; n <= N; ++n) {
      tail += w * eta_level_norms[static_cast<std::size_t>(n)];
      w *= q;
    }
    const double tail_bound = sup_eta * std::pow(q, n0) / (1.0 - q);
    report.tail_measured.push_back(tail);
    report.tail_bound.push_back(tail_bound);
    if (tail > tail_bound + report.slack) report.tail_pass = false;
  }
  return report;
}

}  // namespace qfock
