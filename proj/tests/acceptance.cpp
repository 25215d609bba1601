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

// Acceptance runner: one line per criterion, nonzero exit on any failure.

#include <sys/resource.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qfock/araki_woods.hpp"
#include "qfock/conv_lemma.hpp"
#include "qfock/errors.hpp"
#include "qfock/generators.hpp"
#include "qfock/gram.hpp"
#include "qfock/pair_partitions.hpp"
#include "qfock/rng.hpp"
#include "qfock/wick.hpp"

using namespace qfock;

namespace {

struct Criterion {
  int id = 0;
  std::string detail;
  bool pass = true;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void info(const std::string& what) {
    detail += (detail.empty() ? "" : "; ") + what;
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

GramContext make_context(const GramStack& stack) {
  std::vector<DMat> gram;
  for (int n = 0; n <= stack.basis().truncation(); ++n)
    gram.push_back(stack.level(n).cast<Cplx>());
  return GramContext(stack.basis(), std::move(gram));
}

AWModel lambda4_model(double q, int N) {
  return AWModel({AWBlockSpec{1.0}, AWBlockSpec{4.0}}, q, N);
}

// 1. Naive permutation-sum and recursive Gram constructions agree to 1e-10
//    for d <= 3, n <= 6, 20 random deformations with qmax <= 0.9, under two
//    minutes.
Criterion criterion_gram_oracle() {
  Criterion c{1, ""};
  const auto start = std::chrono::steady_clock::now();
  CounterRng rng(1001);
  double worst = 0.0;
  for (int draw = 0; draw < 20; ++draw) {
    const int d = 1 + draw % 3;
    const QMatrix Q = QMatrix::random(d, 0.9, rng);
    for (int n = 0; n <= 6; ++n) {
      const RMat naive = gram_block(Q, n, GramMode::naive).matrix();
      const RMat recursive = gram_block(Q, n, GramMode::recursive).matrix();
      worst = std::max(worst, (naive - recursive).cwiseAbs().maxCoeff());
    }
  }
  const double elapsed = seconds_since(start);
  c.require(worst <= 1e-10, "max oracle deviation " + fmt(worst));
  c.require(elapsed < 120.0, "runtime " + fmt(elapsed) + " s");
  c.info("max dev " + fmt(worst) + ", " + fmt(elapsed) + " s");
  return c;
}

// 2. Commutator blocks stay under qmax^n at every level (d <= 3, N = 7) and
//    equal q^n delta_ij exactly for constant deformations.
Criterion criterion_commutator_decay() {
  Criterion c{2, ""};
  CounterRng rng(1002);
  for (int d = 2; d <= 3; ++d) {
    const QMatrix Q = QMatrix::random(d, 0.9, rng);
    const FockBasis basis(d, 7);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        const CommutatorBlocks blocks = commutator_blocks(Q, basis, i, j);
        c.require(blocks.max_bound_excess <= 1e-12,
                  "bound excess " + fmt(blocks.max_bound_excess) + " at d=" + std::to_string(d));
        if (i != j)
          c.require(blocks.max_offdiag_entry <= 1e-12,
                    "off-diagonal entry " + fmt(blocks.max_offdiag_entry));
      }
    }
  }
  const double q = 0.5;
  const QMatrix Qc = QMatrix::constant(2, q);
  const FockBasis basis(2, 7);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const CommutatorBlocks blocks = commutator_blocks(Qc, basis, i, j);
      double qn = 1.0;
      for (std::size_t n = 0; n < blocks.blocks.size(); ++n) {
        const double target = i == j ? qn : 0.0;
        const DMat expected =
            target * DMat::Identity(blocks.blocks[n].rows(), blocks.blocks[n].cols());
        const double dev = (blocks.blocks[n] - expected).cwiseAbs().maxCoeff();
        c.require(dev <= 1e-12, "constant-q deviation " + fmt(dev));
        qn *= q;
      }
    }
  }
  return c;
}

// 3. The expansion identity and the quantitative bound hold on a suite of
//    setups built from right-annihilation/left-creation families.
Criterion criterion_conv_lemma() {
  Criterion c{3, ""};
  CounterRng rng(1003);
  int setups = 0;
  const auto exercise = [&](const QMatrix& Q, const GramContext& ctx, const FockBasis& basis,
                            std::vector<BlockOperator> a, std::vector<BlockOperator> b) {
    ConvSetup setup;
    setup.ctx = &ctx;
    setup.a_ops = std::move(a);
    setup.b_ops = std::move(b);
    setup.K = single_letter_K(basis, 0);
    setup.q = std::max(Q.qmax(), 0.05);
    setup.xi = random_K_vector(basis, setup.K, 0, 2, rng);
    setup.eta = random_K_vector(basis, setup.K, 1, 2, rng);
    const HypothesisReport hyp = validate_setup(setup);
    c.require(hyp.pass, "hypotheses violated");
    const ExpansionReport expansion = tn_expansion_check(setup);
    c.require(expansion.pass, "expansion residual " + fmt(expansion.residual));
    const BoundReport bound = conv_bound_check(setup);
    c.require(bound.pass,
              "bound " + fmt(bound.lhs_abs) + " > " + fmt(bound.rhs));
    c.require(bound.tail_pass, "tail estimate violated");
    ++setups;
  };

  std::vector<QMatrix> models;
  models.push_back(QMatrix::constant(2, 0.5));
  models.push_back(QMatrix::zero(2));
  models.push_back(QMatrix::random(2, 0.9, rng));
  models.push_back(QMatrix::random(2, 0.6, rng));
  for (const QMatrix& Q : models) {
    const FockBasis basis(2, 6);
    GramStack stack(Q, basis);
    const GramContext ctx = make_context(stack);
    // The maximal-abelian-argument configuration: right annihilations
    // against left creations over a single-letter subspace.
    exercise(Q, ctx, basis,
             {right_annihilation(Q, basis, 0), right_annihilation(Q, basis, 1)},
             {left_creation(basis, 0), left_creation(basis, 1)});
    exercise(Q, ctx, basis, {right_annihilation(Q, basis, 1)}, {left_creation(basis, 0)});
    exercise(Q, ctx, basis,
             {right_annihilation(Q, basis, 0), right_annihilation(Q, basis, 1)},
             {left_creation(basis, 1), left_annihilation(Q, basis, 0)});
  }
  c.require(setups >= 10, "only " + std::to_string(setups) + " setups");
  c.info(std::to_string(setups) + " setups");
  return c;
}

// 4. Vacuum fidelity of left and right Wick products for every word of
//    degree <= 3 (mixed and deformed-group models), and the crossing sum
//    agrees with the recursion for constant q.
Criterion criterion_wick_fidelity() {
  Criterion c{4, ""};
  CounterRng rng(1004);
  double worst_mixed = 0.0;
  {
    const QMatrix Q = QMatrix::random(2, 0.9, rng);
    const FockBasis basis(2, 5);
    GramStack stack(Q, basis);
    const GramContext ctx = make_context(stack);
    const FockVector vac = FockVector::vacuum(basis);
    for (int deg = 0; deg <= 3; ++deg) {
      for (std::int64_t k = 0; k < basis.level_dim(deg); ++k) {
        const FockVector target = FockVector::unit(basis, basis.level_word(deg, k));
        worst_mixed = std::max(worst_mixed,
                               ctx.norm(wick(Q, basis, target).op.apply(vac) - target));
        worst_mixed = std::max(worst_mixed,
                               ctx.norm(right_wick(Q, basis, target).op.apply(vac) - target));
      }
    }
    c.require(worst_mixed <= 1e-10, "mixed vacuum residual " + fmt(worst_mixed));
  }
  double worst_aw = 0.0;
  {
    const AWModel model = lambda4_model(0.5, 4);
    const FockVector vac = FockVector::vacuum(model.basis());
    for (int deg = 0; deg <= 3; ++deg) {
      for (std::int64_t k = 0; k < model.basis().level_dim(deg); ++k) {
        const FockVector target =
            FockVector::unit(model.basis(), model.basis().level_word(deg, k));
        worst_aw =
            std::max(worst_aw, model.context().norm(model.wick_of(target).apply(vac) - target));
        worst_aw = std::max(
            worst_aw, model.context().norm(model.right_wick_of(target).apply(vac) - target));
      }
    }
    c.require(worst_aw <= 1e-10, "deformed-group vacuum residual " + fmt(worst_aw));
  }
  double worst_crossing = 0.0;
  {
    const QMatrix Q = QMatrix::constant(2, 0.55);
    const FockBasis basis(2, 6);
    for (int deg = 1; deg <= 3; ++deg) {
      for (std::int64_t k = 0; k < basis.level_dim(deg); ++k) {
        const Word w = basis.level_word(deg, k);
        std::vector<DVec> letters;
        for (int p = 0; p < deg; ++p) letters.push_back(DVec::Unit(2, w.letter(p)));
        const BlockOperator diff =
            wick_crossing(Q, basis, letters).op - wick(Q, basis, FockVector::unit(basis, w)).op;
        for (int n = 0; n + deg <= basis.truncation(); ++n) {
          for (const auto& [shift, block] : diff.blocks_at(n))
            worst_crossing =
                std::max(worst_crossing, diff.dense_block(n, shift).cwiseAbs().maxCoeff());
        }
      }
    }
    c.require(worst_crossing <= 1e-9, "crossing deviation " + fmt(worst_crossing));
  }
  c.info("mixed " + fmt(worst_mixed) + ", aw " + fmt(worst_aw) + ", crossing " +
         fmt(worst_crossing));
  return c;
}

// 5. The mixed vacuum state is tracial to 1e-8 over 50 random pairs; the
//    lambda = 4 deformed-group state shows a violation above 1e-3.
Criterion criterion_traciality_split() {
  Criterion c{5, ""};
  CounterRng rng(1005);
  const QMatrix Q = QMatrix::random(2, 0.9, rng);
  const FockBasis basis(2, 8);
  CounterRng word_rng(1055);
  const TracialityReport tracial = traciality_check(Q, basis, 50, 3, word_rng);
  c.require(tracial.pass, "mixed deviation " + fmt(tracial.max_deviation));

  const AWModel model = lambda4_model(0.5, 6);
  CounterRng aw_rng(1056);
  const double violation = traciality_violation(model, 20, 3, aw_rng);
  c.require(violation > 1e-3, "no violation found (max " + fmt(violation) + ")");
  c.info("mixed dev " + fmt(tracial.max_deviation) + ", witness " + fmt(violation));
  return c;
}

// 6. Field moments match the pair-partition sums through order 10 at
//    truncation 12.
Criterion criterion_moments() {
  Criterion c{6, ""};
  CounterRng rng(1006);
  double worst = 0.0;
  for (int d = 1; d <= 2; ++d) {
    const QMatrix Q = QMatrix::random(d, 0.9, rng);
    const FockBasis basis(d, 12);
    for (int i = 0; i < d; ++i) {
      for (int order = 2; order <= 10; order += 2) {
        const Cplx measured = gaussian_moment(Q, basis, i, order);
        const double expected = pair_partition_moment(Q(i, i), order);
        worst = std::max(worst, std::abs(measured - Cplx(expected)));
        if (order == 4) {
          const double quartic = std::abs(measured - Cplx(2.0 + Q(i, i)));
          c.require(quartic <= 1e-9, "quartic moment deviation " + fmt(quartic));
        }
      }
    }
  }
  c.require(worst <= 1e-9, "moment deviation " + fmt(worst));
  c.info("max dev " + fmt(worst));
  return c;
}

// 7. Left Wick and right Wick operators commute in action to 1e-8 over 30
//    random pairs, mixed and deformed-group.
Criterion criterion_commutant() {
  Criterion c{7, ""};
  CounterRng rng(1007);
  {
    const QMatrix Q = QMatrix::random(2, 0.9, rng);
    const FockBasis basis(2, 8);
    GramStack stack(Q, basis);
    const GramContext ctx = make_context(stack);
    const auto left = [&](const FockVector& xi) { return wick(Q, basis, xi).op; };
    const auto right = [&](const FockVector& eta) { return right_wick(Q, basis, eta).op; };
    const CommutantReport r = commutant_check(ctx, left, right, 2, 2, 2, 30, rng);
    c.require(r.pass, "mixed commutant norm " + fmt(r.max_action_norm));
    c.info("mixed " + fmt(r.max_action_norm));
  }
  {
    const AWModel model = lambda4_model(0.5, 7);
    const auto left = [&](const FockVector& xi) { return model.wick_of(xi); };
    const auto right = [&](const FockVector& eta) { return model.right_wick_of(eta); };
    const CommutantReport r =
        commutant_check(model.context(), left, right, 2, 2, 2, 30, rng);
    c.require(r.pass, "deformed-group commutant norm " + fmt(r.max_action_norm));
    c.info("aw " + fmt(r.max_action_norm));
  }
  return c;
}

// 8. Structure of the deformed-group model: real-part restriction,
//    invariance of the product, trivial degeneration, dual-conjugation
//    orthogonality, the modular operator against its diagonal prediction,
//    and the centralizer with its low moments.
Criterion criterion_aw_structure() {
  Criterion c{8, ""};
  CounterRng rng(1008);
  const AWModel model = lambda4_model(0.5, 4);
  const AWStructureReport s = aw_structure_check(model, 50, rng);
  c.require(s.real_part_residual <= 1e-10, "real part " + fmt(s.real_part_residual));
  c.require(s.unitarity_residual <= 1e-10, "unitarity " + fmt(s.unitarity_residual));

  const AWModel flat = AWModel({AWBlockSpec{1.0}, AWBlockSpec{1.0}}, 0.5, 4);
  double degeneration = 0.0;
  for (int t = 0; t < 25; ++t) {
    DVec u(2), v(2);
    for (int k = 0; k < 2; ++k) {
      u[k] = Cplx(rng.next_sym(), rng.next_sym());
      v[k] = Cplx(rng.next_sym(), rng.next_sym());
    }
    degeneration = std::max(degeneration, std::abs(flat.aw_inner(u, v) - v.dot(u)));
  }
  c.require(degeneration <= 1e-10, "degeneration " + fmt(degeneration));

  const IrOrthogonalityReport ir = ir_orthogonality_check(model, 100, rng);
  c.require(ir.max_residual <= 1e-9, "dual conjugation " + fmt(ir.max_residual));

  const ModularData data = modular_data(model, 2);
  c.require(data.candidate_residual <= 1e-8, "modular candidate " + fmt(data.candidate_residual));

  CounterRng cen_rng(1088);
  const CentralizerReport cen = centralizer_check(model, model.invariant_vector(), 50, 3, cen_rng);
  c.require(cen.max_commutation_deviation <= 1e-8,
            "centralizer " + fmt(cen.max_commutation_deviation));
  c.require(std::abs(cen.moment2 - 1.0) <= 1e-8, "moment2 " + fmt(cen.moment2));
  c.require(std::abs(cen.moment4 - (2.0 + model.q())) <= 1e-8, "moment4 " + fmt(cen.moment4));
  c.info("modular " + fmt(data.candidate_residual) + ", centralizer " +
         fmt(cen.max_commutation_deviation));
  return c;
}

// 9. The factoriality computation chain on a lambda = 4 model with an
//    invariant vector, for arguments of degree <= 2 over the invariant line.
Criterion criterion_thm_chain() {
  Criterion c{9, ""};
  CounterRng rng(1009);
  const AWModel model = lambda4_model(0.5, 5);
  const DVec xi0 = model.invariant_vector();
  const DMat closed = DMat::Identity(model.dim_R(), model.dim_R()) + model.A().inverse();
  const DVec eta = closed.col(1);
  for (int rep = 0; rep < 5; ++rep) {
    FockVector xi(model.basis());
    FockVector power = FockVector::vacuum(model.basis());
    const BlockOperator raise = model.create_l(xi0);
    for (int k = 0; k <= 2; ++k) {
      xi += Cplx(rng.next_sym(), rng.next_sym()) * power;
      power = raise.apply(power);
    }
    const Thm44Witness witness = make_thm44_witness(model, xi, eta);
    const ChainReport chain = thm44_chain_check(model, witness, 1e-9);
    c.require(chain.pass, "chain residuals " + fmt(chain.wick_action_residual) + "/" +
                              fmt(chain.norm_split_residual));
  }
  return c;
}

// 10. The recursive construction reaches the 1024-dimensional level within
//     the time and memory budget, and the factorial oracle refuses to go
//     above degree 8.
Criterion criterion_performance() {
  Criterion c{10, ""};
  const auto start = std::chrono::steady_clock::now();
  CounterRng rng(1010);
  const QMatrix Q = QMatrix::random(2, 0.9, rng);
  const GramBlock block = gram_block(Q, 10, GramMode::recursive);
  const double elapsed = seconds_since(start);
  c.require(block.matrix().rows() == 1024, "unexpected block size");
  c.require(block.mineig() > 0.0, "level-10 block not positive");
  c.require(elapsed < 60.0, "runtime " + fmt(elapsed) + " s");

  struct rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  const double peak_gib = static_cast<double>(usage.ru_maxrss) / (1024.0 * 1024.0);
  c.require(peak_gib < 4.0, "peak memory " + fmt(peak_gib) + " GiB");

  bool refused = false;
  try {
    gram_block(Q, 9, GramMode::naive);
  } catch (const PreconditionError&) {
    refused = true;
  }
  c.require(refused, "factorial oracle accepted degree 9");
  c.info(fmt(elapsed) + " s, " + fmt(peak_gib) + " GiB peak");
  return c;
}

}  // namespace

int main() {
  const std::vector<std::function<Criterion()>> criteria = {
      criterion_gram_oracle,      criterion_commutator_decay, criterion_conv_lemma,
      criterion_wick_fidelity,    criterion_traciality_split, criterion_moments,
      criterion_commutant,        criterion_aw_structure,     criterion_thm_chain,
      criterion_performance,
  };
  static const char* kNames[] = {
      "gram oracle equivalence",
      "commutator decay bound",
      "expansion identity and estimate",
      "wick vacuum fidelity and crossing sum",
      "traciality split",
      "field moments vs pair partitions",
      "left/right commutant",
      "deformed-group structure and modular data",
      "factoriality computation chain",
      "performance budget",
  };

  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Criterion c;
    try {
      c = criteria[k]();
    } catch (const std::exception& e) {
      c.id = static_cast<int>(k) + 1;
      c.pass = false;
      c.detail = std::string("exception: ") + e.what();
    }
    std::printf("criterion %2d %s: %s%s%s\n", static_cast<int>(k) + 1,
                c.pass ? "PASS" : "FAIL", kNames[k], c.detail.empty() ? "" : " -- ",
                c.detail.c_str());
    std::fflush(stdout);
    if (!c.pass) ++failures;
  }
  if (failures > 0) std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
