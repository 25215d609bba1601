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

#include "qfock/runner.hpp"

#include <chrono>
#include <memory>
#include <string>

#include "qfock/conv_lemma.hpp"
#include "qfock/errors.hpp"
#include "qfock/gram.hpp"
#include "qfock/gram_exact.hpp"
#include "qfock/pair_partitions.hpp"
#include "qfock/wick.hpp"

namespace qfock {

namespace {

std::string level_name(const std::string& prefix, int n) {
  return prefix + "_level_" + std::to_string(n);
}

GramContext context_from_stack(const GramStack& stack) {
  std::vector<DMat> gram;
  for (int n = 0; n <= stack.basis().truncation(); ++n) gram.push_back(stack.level(n).cast<Cplx>());
  return GramContext(stack.basis(), std::move(gram));
}

struct MixedSession {
  QMatrix Q;
  FockBasis basis;
  GramStack stack;

  MixedSession(const RunConfig& config)
      : Q(config.q_entries),
        basis(config.d, config.N, config.budget),
        stack(Q, basis, config.cache_dir) {}
};

void require_kind(const RunConfig& config, RunConfig::Kind kind) {
  if (config.kind != kind) {
    const char* msg = kind == RunConfig::Kind::mixed
                          ? "this command needs kind mixed"
                          : "this command needs kind araki-woods";
    throw UsageError(std::string("config: ") + msg + " (command '" + config.command + "')");
  }
}

AWModel make_aw(const RunConfig& config) {
  return AWModel(config.blocks, config.q_scalar, config.N, config.budget);
}

// ---- command handlers ----

void run_gram(const RunConfig& config, Report& report) {
  if (config.kind == RunConfig::Kind::araki_woods) {
    const AWModel model = make_aw(config);
    for (int n = 0; n <= config.N; ++n) {
      const DMat& g = model.context().gram(n);
      report.check_le(level_name("hermitian", n), (g - g.adjoint()).cwiseAbs().maxCoeff(), 0.0,
                      config.tolerance("symmetry", 1e-12));
      Eigen::SelfAdjointEigenSolver<DMat> es(g, Eigen::EigenvaluesOnly);
      report.check_gt(level_name("mineig", n), es.eigenvalues().minCoeff(),
                      config.tolerance("positivity_floor", 1e-12));
    }
    return;
  }

  MixedSession s(config);
  for (int n = 0; n <= config.N; ++n) {
    const RMat& g = s.stack.level(n);
    report.check_le(level_name("symmetry", n), (g - g.transpose()).cwiseAbs().maxCoeff(), 0.0,
                    config.tolerance("symmetry", 1e-12));
    report.check_gt(level_name("mineig", n), s.stack.block(n).mineig(),
                    config.tolerance("positivity_floor", 1e-12));
  }
  report.check_le("identity_level_0", (s.stack.level(0) - RMat::Ones(1, 1)).cwiseAbs().maxCoeff(),
                  0.0, 0.0);
  report.check_le("identity_level_1",
                  (s.stack.level(1) - RMat::Identity(config.d, config.d)).cwiseAbs().maxCoeff(),
                  0.0, 0.0);

  const int naive_levels = std::min({config.param_int("naive_levels", std::min(config.N, 6)),
                                     config.N, kNaiveGramMaxDegree});
  for (int n = 2; n <= naive_levels; ++n) {
    const GramBlock oracle = gram_block(s.Q, n, GramMode::naive);
    report.check_le(level_name("oracle_agreement", n),
                    (oracle.matrix() - s.stack.level(n)).cwiseAbs().maxCoeff(), 0.0,
                    config.tolerance("oracle", 1e-10));
  }
  report.set_cache_stats(s.stack.cache_hits(), s.stack.cache_writes());

  if (config.precision == "exact") {
    RatMat entries(config.d, config.d);
    for (int i = 0; i < config.d; ++i)
      for (int j = 0; j < config.d; ++j)
        entries(i, j) = parse_rational(config.q_rows_text[static_cast<std::size_t>(i)]
                                                          [static_cast<std::size_t>(j)]);
    const QMatrixExact qx(entries);
    for (int n = 0; n <= naive_levels; ++n) {
      const RatMat naive = exact_gram_naive(qx, n);
      const RatMat recursive = exact_gram_recursive(qx, n);
      report.check_le(level_name("exact_oracle_equal", n), rat_equal(naive, recursive) ? 0.0 : 1.0,
                      0.0, 0.0);
      report.check_le(level_name("exact_vs_float", n),
                      (rat_to_double(recursive) - s.stack.level(n)).cwiseAbs().maxCoeff(), 0.0,
                      config.tolerance("exact_float", 1e-12));
      report.check_le(level_name("exact_symmetry", n), rat_symmetric(naive) ? 0.0 : 1.0, 0.0, 0.0);
    }
  }
}

void run_ops(const RunConfig& config, Report& report) {
  const double tol = config.tolerance("adjoint", 1e-9);
  if (config.kind == RunConfig::Kind::mixed) {
    MixedSession s(config);
    for (int i = 0; i < config.d; ++i) {
      const AdjointReport adj = gram_adjoint_check(s.stack, i, tol);
      report.check_le("adjoint_left_" + std::to_string(i), adj.max_left, 0.0, tol);
      report.check_le("adjoint_right_" + std::to_string(i), adj.max_right, 0.0, tol);
    }
    return;
  }
  const AWModel model = make_aw(config);
  const GramContext& ctx = model.context();
  for (int i = 0; i < model.dim_R(); ++i) {
    const DVec e = DVec::Unit(model.dim_R(), i);
    const BlockOperator diff_l = ctx.adjoint(model.create_l(e)) - model.annihilate_l(e);
    const BlockOperator diff_r = ctx.adjoint(model.create_r(e)) - model.annihilate_r(e);
    report.check_le("adjoint_left_" + std::to_string(i), diff_l.max_abs_entry(), 0.0, tol);
    report.check_le("adjoint_right_" + std::to_string(i), diff_r.max_abs_entry(), 0.0, tol);
  }
}

void run_commutator_decay(const RunConfig& config, Report& report) {
  if (config.kind == RunConfig::Kind::mixed) {
    MixedSession s(config);
    const double slack = config.tolerance("bound_slack", 1e-12);
    for (int i = 0; i < config.d; ++i) {
      for (int j = 0; j < config.d; ++j) {
        const CommutatorBlocks blocks = commutator_blocks(s.Q, s.basis, i, j);
        const std::string tag = std::to_string(i) + "_" + std::to_string(j);
        for (std::size_t n = 0; n < blocks.norms.size(); ++n) {
          report.check_le("norm_" + tag + "_level_" + std::to_string(n), blocks.norms[n],
                          blocks.bounds[n], slack);
        }
        if (i != j) {
          report.check_le("offdiag_vanishes_" + tag, blocks.max_offdiag_entry, 0.0, slack);
        } else {
          report.check_le("diagonal_weights_" + tag, blocks.max_diag_deviation, 0.0, slack);
        }
      }
    }
    return;
  }
  // Deformed-group model: left/right generator commutation relations.
  const AWModel model = make_aw(config);
  CounterRng rng(config.seed);
  const DualityReport duality =
      hr_duality_check(model, config.param_int("trials", 10), rng, config.tolerance("identity", 1e-9));
  report.check_le("annihilator_commutator", duality.annihilator_commutator, 0.0, 1e-12);
  report.check_le("scalar_relation", duality.scalar_relation_residual, 0.0,
                  config.tolerance("identity", 1e-9));
}

void run_moments(const RunConfig& config, Report& report) {
  const double tol = config.tolerance("moments", 1e-9);
  if (config.kind == RunConfig::Kind::mixed) {
    MixedSession s(config);
    const int letter = config.param_int("letter", 0);
    int max_order = config.param_int("max_order", config.param_int("order", 10));
    max_order = std::min({max_order, kPairPartitionMaxOrder, config.N});
    for (int order = 2; order <= max_order; order += 2) {
      const Cplx measured = gaussian_moment(s.Q, s.basis, letter, order);
      const double expected = pair_partition_moment(s.Q(letter, letter), order);
      report.check_eq("moment_" + std::to_string(order), measured.real(), expected, tol);
      report.check_le("moment_" + std::to_string(order) + "_imag", std::abs(measured.imag()), 0.0,
                      tol);
    }
    // Odd moments vanish by degree parity.
    const Cplx odd = gaussian_moment(s.Q, s.basis, letter, 3);
    report.check_le("moment_3_vanishes", std::abs(odd), 0.0, tol);
    return;
  }
  const AWModel model = make_aw(config);
  const DVec xi0 = model.invariant_vector();
  const BlockOperator w0 = model.field(xi0);
  int max_order = std::min({config.param_int("max_order", 8), kPairPartitionMaxOrder, config.N});
  for (int order = 2; order <= max_order; order += 2) {
    std::vector<const BlockOperator*> ops(static_cast<std::size_t>(order), &w0);
    const Cplx measured = model.moment(ops);
    const double expected = pair_partition_moment(model.q(), order);
    report.check_eq("moment_" + std::to_string(order), measured.real(), expected, tol);
  }
}

void run_trace_check(const RunConfig& config, Report& report) {
  if (config.kind != RunConfig::Kind::mixed)
    throw UsageError(
        "config: trace-check needs kind mixed; the non-tracial witness lives in aw-centralizer");
  MixedSession s(config);
  CounterRng rng(config.seed);
  const double tol = config.tolerance("traciality", 1e-8);
  const TracialityReport tr = traciality_check(s.Q, s.basis, config.param_int("trials", 50),
                                               config.param_int("degree_cap", 3), rng, tol);
  report.check_le("traciality", tr.max_deviation, 0.0, tol)
      .note = std::to_string(tr.pairs) + " random word pairs";
}

void append_wick_fidelity(Report& report, const GramContext& ctx, WickBuilder& builder,
                          const std::string& prefix, int cap, double tol) {
  const FockBasis& basis = ctx.basis();
  const FockVector vacuum = FockVector::vacuum(basis);
  for (int deg = 0; deg <= cap; ++deg) {
    double worst = 0.0;
    for (std::int64_t k = 0; k < basis.level_dim(deg); ++k) {
      const Word w = basis.level_word(deg, k);
      const FockVector image = builder.of_word(w).apply(vacuum);
      worst = std::max(worst, ctx.norm(image - FockVector::unit(basis, w)));
    }
    report.check_le(prefix + "_deg_" + std::to_string(deg), worst, 0.0, tol);
  }
}

void run_wick(const RunConfig& config, Report& report) {
  const double vac_tol = config.tolerance("wick_vacuum", 1e-10);
  const double agree_tol = config.tolerance("crossing", 1e-9);
  const int cap = std::min(config.param_int("cap", 3), config.N - 1);

  if (config.kind == RunConfig::Kind::mixed) {
    MixedSession s(config);
    const GramContext ctx = context_from_stack(s.stack);

    std::vector<BlockOperator> lf, la, rf, ra;
    for (int i = 0; i < config.d; ++i) {
      lf.push_back(gaussian(s.Q, s.basis, Side::left, i));
      la.push_back(left_annihilation(s.Q, s.basis, i));
      rf.push_back(gaussian(s.Q, s.basis, Side::right, i));
      ra.push_back(right_annihilation(s.Q, s.basis, i));
    }
    WickBuilder left(s.basis, WickBuilder::Direction::prepend, lf, la);
    WickBuilder right_rec(s.basis, WickBuilder::Direction::append, rf, ra);
    append_wick_fidelity(report, ctx, left, "vacuum_left", cap, vac_tol);

    // Right products via conjugation, word by word.
    {
      const FockVector vacuum = FockVector::vacuum(s.basis);
      double worst = 0.0;
      double route_diff = 0.0;
      for (int deg = 0; deg <= cap; ++deg) {
        for (std::int64_t k = 0; k < s.basis.level_dim(deg); ++k) {
          const Word w = s.basis.level_word(deg, k);
          const WickOp wr = right_wick(s.Q, s.basis, FockVector::unit(s.basis, w));
          worst = std::max(worst, ctx.norm(wr.op.apply(vacuum) - FockVector::unit(s.basis, w)));
          const BlockOperator diff = wr.op - right_rec.of_word(w);
          route_diff = std::max(route_diff, diff.max_abs_entry());
        }
      }
      report.check_le("vacuum_right", worst, 0.0, vac_tol);
      report.check_le("right_route_agreement", route_diff, 0.0, agree_tol);
    }

    double q = 0.0;
    if (s.Q.is_constant(&q)) {
      double worst = 0.0;
      for (int deg = 1; deg <= std::min(cap, 3); ++deg) {
        // Exhaust words of the degree; letters as coordinate vectors.
        for (std::int64_t k = 0; k < s.basis.level_dim(deg); ++k) {
          const Word w = s.basis.level_word(deg, k);
          std::vector<DVec> letters;
          for (int p = 0; p < deg; ++p) letters.push_back(DVec::Unit(config.d, w.letter(p)));
          const WickOp crossing = wick_crossing(s.Q, s.basis, letters);
          const BlockOperator diff = crossing.op - left.of_word(w);
          // Sources with headroom stay clean under truncation.
          for (int n = 0; n + deg <= config.N; ++n) {
            for (const auto& [shift, block] : diff.blocks_at(n)) {
              worst = std::max(worst, diff.dense_block(n, shift).cwiseAbs().maxCoeff());
            }
          }
        }
      }
      report.check_le("crossing_agreement", worst, 0.0, agree_tol);
    }
    return;
  }

  const AWModel model = make_aw(config);
  const GramContext& ctx = model.context();
  WickBuilder left = model.wick_builder();
  WickBuilder right = model.right_wick_builder();
  append_wick_fidelity(report, ctx, left, "vacuum_left", cap, vac_tol);
  append_wick_fidelity(report, ctx, right, "vacuum_right", cap, vac_tol);

  CounterRng rng(config.seed);
  double worst = 0.0;
  for (int deg = 1; deg <= std::min(cap, 3); ++deg) {
    std::vector<DVec> letters;
    for (int p = 0; p < deg; ++p) {
      DVec e(model.dim_R());
      for (int k = 0; k < model.dim_R(); ++k) e[k] = Cplx(rng.next_sym(), rng.next_sym());
      letters.push_back(e);
    }
    const BlockOperator crossing = model.wick_crossing_of(letters);
    FockVector word = FockVector::vacuum(model.basis());
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
      word = model.create_l(*it).apply(word);
    const BlockOperator recursion = model.wick_of(word);
    const BlockOperator diff = crossing - recursion;
    for (int n = 0; n + deg <= config.N; ++n) {
      for (const auto& [shift, block] : diff.blocks_at(n)) {
        worst = std::max(worst, diff.dense_block(n, shift).cwiseAbs().maxCoeff());
      }
    }
  }
  report.check_le("crossing_agreement", worst, 0.0, agree_tol);
}

void run_commutant(const RunConfig& config, Report& report) {
  const double tol = config.tolerance("commutant", 1e-8);
  const int trials = config.param_int("trials", 30);
  const int deg_xi = config.param_int("deg_xi", 2);
  const int deg_eta = config.param_int("deg_eta", 2);
  const int deg_v = config.param_int("deg_v", 2);
  CounterRng rng(config.seed);

  if (config.kind == RunConfig::Kind::mixed) {
    MixedSession s(config);
    const GramContext ctx = context_from_stack(s.stack);
    const auto left = [&](const FockVector& xi) { return wick(s.Q, s.basis, xi).op; };
    const auto right = [&](const FockVector& eta) { return right_wick(s.Q, s.basis, eta).op; };
    const CommutantReport r =
        commutant_check(ctx, left, right, deg_xi, deg_eta, deg_v, trials, rng, tol);
    report.check_le("commutant_action", r.max_action_norm, 0.0, tol).note =
        std::to_string(r.trials) + " random pairs";
    return;
  }
  const AWModel model = make_aw(config);
  const auto left = [&](const FockVector& xi) { return model.wick_of(xi); };
  const auto right = [&](const FockVector& eta) { return model.right_wick_of(eta); };
  const CommutantReport r =
      commutant_check(model.context(), left, right, deg_xi, deg_eta, deg_v, trials, rng, tol);
  report.check_le("commutant_action", r.max_action_norm, 0.0, tol).note =
      std::to_string(r.trials) + " random pairs";
}

void append_conv_setup(Report& report, const std::string& tag, const ConvSetup& setup) {
  const HypothesisReport hypotheses = validate_setup(setup);
  report.check_le(tag + "_hypotheses", hypotheses.max_commutator_excess, 0.0, 1e-10).note =
      "fitted decay rate " + std::to_string(hypotheses.fitted_decay_rate);
  report.check_le(tag + "_k_invariance",
                  std::max({hypotheses.k_invariance_residual, hypotheses.k_annihilation_residual,
                            hypotheses.chain_annihilation_residual, hypotheses.support_residual}),
                  0.0, 1e-12);
  const ExpansionReport expansion = tn_expansion_check(setup);
  report.check_le(tag + "_expansion", expansion.residual, 0.0, expansion.tolerance);
  const BoundReport bound = conv_bound_check(setup);
  report.check_le(tag + "_bound", bound.lhs_abs, bound.rhs, bound.slack).note =
      "C = " + std::to_string(bound.constant);
  bool tail = bound.tail_pass;
  report.check_le(tag + "_tail", tail ? 0.0 : 1.0, 0.0, 0.0);
}

void run_conv_check(const RunConfig& config, Report& report) {
  CounterRng rng(config.seed);
  if (config.kind == RunConfig::Kind::mixed) {
    if (config.d < 2) throw UsageError("config: conv-check needs d >= 2");
    MixedSession s(config);
    const GramContext ctx = context_from_stack(s.stack);
    const auto K = single_letter_K(s.basis, 0);
    const double q = std::max(s.Q.qmax(), 0.05);  // keep the decay constant positive

    const int eta_hi = std::max(1, std::min(2, config.N - 4));
    // Annihilation family keeping/killing the single-letter space, creation
    // and mixed b-families.
    struct Variant {
      std::vector<BlockOperator> a, b;
      const char* tag;
    };
    std::vector<Variant> variants;
    variants.push_back({{right_annihilation(s.Q, s.basis, 0), right_annihilation(s.Q, s.basis, 1)},
                        {left_creation(s.basis, 0), left_creation(s.basis, 1)},
                        "setup_rr_ll"});
    variants.push_back({{right_annihilation(s.Q, s.basis, 1)},
                        {left_creation(s.basis, 0)},
                        "setup_r_l"});
    variants.push_back({{right_annihilation(s.Q, s.basis, 0), right_annihilation(s.Q, s.basis, 1)},
                        {left_creation(s.basis, 1), left_annihilation(s.Q, s.basis, 0)},
                        "setup_rr_lmix"});
    const int repeats = std::max(1, config.param_int("setups", 3) / 3);
    for (const Variant& variant : variants) {
      for (int rep = 0; rep < repeats; ++rep) {
        ConvSetup setup;
        setup.ctx = &ctx;
        setup.a_ops = variant.a;
        setup.b_ops = variant.b;
        setup.K = K;
        setup.q = q;
        setup.xi = random_K_vector(s.basis, K, 0, eta_hi, rng);
        setup.eta = random_K_vector(s.basis, K, 1, eta_hi, rng);
        append_conv_setup(report, variant.tag + std::string("_") + std::to_string(rep), setup);
      }
    }
    return;
  }

  const AWModel model = make_aw(config);
  const DVec xi0 = model.invariant_vector();
  // A dual-subspace vector on a non-invariant block is orthogonal to the
  // invariant line and kills its sub-Fock space from the right.
  int pair_at = -1;
  int at = 0;
  for (const AWBlockSpec& b : config.blocks) {
    if (b.lambda != 1.0) {
      pair_at = at;
      break;
    }
    at += 1;
  }
  if (pair_at < 0)
    throw UsageError("config: conv-check on araki-woods needs a pair block");
  const DMat closed = DMat::Identity(model.dim_R(), model.dim_R()) + model.A().inverse();
  const DVec g = closed.col(pair_at);
  const auto K = single_letter_K(model.basis(), 0);  // letter 0 is the invariant line
  ConvSetup setup;
  const GramContext& ctx = model.context();
  setup.ctx = &ctx;
  setup.a_ops = {model.annihilate_r(xi0), model.annihilate_r(g / model.aw_norm(g))};
  setup.b_ops = {model.create_l(xi0), model.annihilate_l(xi0)};
  setup.K = K;
  setup.q = std::max(std::abs(model.q()), 0.05);
  setup.xi = random_K_vector(model.basis(), K, 0, 2, rng);
  setup.eta = random_K_vector(model.basis(), K, 1, 2, rng);
  append_conv_setup(report, "setup_aw", setup);
}

void run_aw_inner(const RunConfig& config, Report& report) {
  require_kind(config, RunConfig::Kind::araki_woods);
  const AWModel model = make_aw(config);
  CounterRng rng(config.seed);
  const double tol = config.tolerance("structure", 1e-10);
  const AWStructureReport s = aw_structure_check(model, config.param_int("trials", 50), rng, tol);
  report.check_le("real_part_restriction", s.real_part_residual, 0.0, tol);
  report.check_le("unitarity", s.unitarity_residual, 0.0, tol);
  report.check_le("invariant_in_hr_prime", s.hr_prime_membership, 0.0, tol);
  report.check_le("hr_prime_closed_form", hr_prime_closed_form_residual(model), 0.0,
                  config.tolerance("identity", 1e-9));

  bool trivial = true;
  for (const AWBlockSpec& b : config.blocks) trivial = trivial && b.lambda == 1.0;
  if (trivial) {
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      DVec u(model.dim_R()), v(model.dim_R());
      for (int k = 0; k < model.dim_R(); ++k) {
        u[k] = Cplx(rng.next_sym(), rng.next_sym());
        v[k] = Cplx(rng.next_sym(), rng.next_sym());
      }
      worst = std::max(worst, std::abs(model.aw_inner(u, v) - v.dot(u)));
    }
    report.check_le("degeneration_undeformed", worst, 0.0, tol);
  }

  const IrOrthogonalityReport ir = ir_orthogonality_check(
      model, config.param_int("trials", 100), rng, config.tolerance("identity", 1e-9));
  report.check_le("ir_orthogonality", ir.max_residual, 0.0, ir.tolerance).note =
      std::to_string(ir.trials) + " trials";
}

void run_aw_modular(const RunConfig& config, Report& report) {
  require_kind(config, RunConfig::Kind::araki_woods);
  const AWModel model = make_aw(config);
  const int cap = config.param_int("cap", std::min(2, config.N / 2));
  const double tol = config.tolerance("modular", 1e-8);
  const ModularData data = modular_data(model, cap);
  report.check_le("s_involution", data.s_involution_residual, 0.0, tol);
  report.check_gt("delta_positive", data.delta_min_eig, 0.0);
  report.check_le("polar_reconstruction", data.polar_residual, 0.0, tol);
  report.check_le("jmod_unitarity", data.jmod_unitarity, 0.0, tol);
  report.check_le("delta_matches_candidate", data.candidate_residual, 0.0, tol);
  report.check_le("hr_vectors_fixed", data.hr_fixed_residual, 0.0,
                  config.tolerance("identity", 1e-9));
}

void run_aw_centralizer(const RunConfig& config, Report& report) {
  require_kind(config, RunConfig::Kind::araki_woods);
  const AWModel model = make_aw(config);
  CounterRng rng(config.seed);
  const double tol = config.tolerance("centralizer", 1e-8);
  const CentralizerReport c =
      centralizer_check(model, model.invariant_vector(), config.param_int("trials", 50),
                        config.param_int("degree_cap", 3), rng, tol);
  report.check_le("centralizer_commutation", c.max_commutation_deviation, 0.0, tol).note =
      std::to_string(c.trials) + " random words";
  report.check_eq("moment_2", c.moment2, c.moment2_expected, tol);
  report.check_eq("moment_4", c.moment4, c.moment4_expected, tol);

  bool has_pair = false;
  for (const AWBlockSpec& b : config.blocks) has_pair = has_pair || b.lambda != 1.0;
  if (has_pair) {
    const double violation = traciality_violation(model, config.param_int("trials", 20),
                                                  config.param_int("degree_cap", 3), rng);
    report.check_gt("noninvariant_violation", violation, 1e-3).note =
        "non-tracial witness: a large deviation is the expected outcome";
  }
}

void run_aw_thm44(const RunConfig& config, Report& report) {
  require_kind(config, RunConfig::Kind::araki_woods);
  const AWModel model = make_aw(config);
  CounterRng rng(config.seed);
  const double tol = config.tolerance("chain", 1e-9);

  // eta: dual-subspace vector supported on a non-invariant block.
  int pair_at = -1;
  int at = 0;
  for (const AWBlockSpec& b : config.blocks) {
    if (b.lambda != 1.0) {
      pair_at = at;
      break;
    }
    at += 1;
  }
  if (pair_at < 0) throw UsageError("config: aw-thm44 needs at least one pair block");
  const DMat closed = DMat::Identity(model.dim_R(), model.dim_R()) + model.A().inverse();
  const DVec eta = closed.col(pair_at);

  const DVec xi0 = model.invariant_vector();
  const int deg = std::min(config.param_int("degree_cap", 2), config.N - 1);
  FockVector xi(model.basis());
  {
    FockVector power = FockVector::vacuum(model.basis());
    const BlockOperator raise = model.create_l(xi0);
    for (int k = 0; k <= deg; ++k) {
      xi += Cplx(rng.next_sym(), rng.next_sym()) * power;
      power = raise.apply(power);
    }
  }
  const Thm44Witness witness = make_thm44_witness(model, xi, eta);
  const ChainReport chain = thm44_chain_check(model, witness, tol);
  report.check_le("wick_moves_argument", chain.wick_action_residual, 0.0, tol);
  report.check_le("right_route", chain.right_route_residual, 0.0, tol);
  report.check_le("norm_split", chain.norm_split_residual, 0.0, tol);
  report.check_le("scalar_case", chain.scalar_case_residual, 0.0, tol);
  report.check_le("wr_selfadjoint", chain.wr_selfadjoint_residual, 0.0, tol);
}

void run_aw_fixed(const RunConfig& config, Report& report) {
  require_kind(config, RunConfig::Kind::araki_woods);
  const AWModel model = make_aw(config);
  const FixedSubspaceReport fixed = fixed_vector_subspace(model);
  for (std::size_t n = 0; n < fixed.enumerated_dims.size(); ++n) {
    report.check_eq(level_name("fixed_dim", static_cast<int>(n)),
                    static_cast<double>(fixed.enumerated_dims[n]),
                    static_cast<double>(fixed.kernel_dims[n]), 0.0);
    report.check_le(level_name("span_residual", static_cast<int>(n)), fixed.span_residuals[n],
                    0.0, config.tolerance("modular", 1e-8));
  }
}

}  // namespace

Report run(const RunConfig& config) {
  if (config.command.empty()) throw UsageError("config: missing field 'command'");
  Report report(config.command);
  report.set_config_echo(config_to_json(config));
  const auto start = std::chrono::steady_clock::now();

  try {
    if (config.command == "gram") run_gram(config, report);
    else if (config.command == "ops") run_ops(config, report);
    else if (config.command == "commutator-decay") run_commutator_decay(config, report);
    else if (config.command == "moments") run_moments(config, report);
    else if (config.command == "trace-check") run_trace_check(config, report);
    else if (config.command == "wick") run_wick(config, report);
    else if (config.command == "commutant") run_commutant(config, report);
    else if (config.command == "conv-check") run_conv_check(config, report);
    else if (config.command == "aw-inner") run_aw_inner(config, report);
    else if (config.command == "aw-modular") run_aw_modular(config, report);
    else if (config.command == "aw-centralizer") run_aw_centralizer(config, report);
    else if (config.command == "aw-thm44") run_aw_thm44(config, report);
    else if (config.command == "aw-fixed") run_aw_fixed(config, report);
    else throw UsageError("config: unknown command '" + config.command + "'");
  } catch (const SizeError& e) {
    report.add_error("size_budget", e.what());
  } catch (const TruncationError& e) {
    report.add_error("truncation", e.what());
  } catch (const PreconditionError& e) {
    report.add_error("precondition", e.what());
  } catch (const DegeneracyError& e) {
    report.add_error("degeneracy", e.what());
  }

  const auto stop = std::chrono::steady_clock::now();
  report.set_total_ms(std::chrono::duration<double, std::milli>(stop - start).count());
  return report;
}

}  // namespace qfock
