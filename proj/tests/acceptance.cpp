// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

// Runs the eleven acceptance criteria and prints one PASS/FAIL line each.
// Exit status is nonzero when any criterion fails.

#include <Eigen/Eigenvalues>
#include <chrono>
#include <cstdio>
#include <map>
#include <string>

#include "rwgf/adapt.hpp"
#include "rwgf/costmodel.hpp"
#include "rwgf/losses.hpp"
#include "rwgf/mixture.hpp"
#include "rwgf/reconstruction.hpp"
#include "rwgf/sp_kernel.hpp"
#include "rwgf/train.hpp"
#include "support.hpp"

using namespace rwgf;
using namespace rwgf::test;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

WalkParams walk(double p, double q, std::size_t k, std::size_t l, std::uint64_t seed) {
  WalkParams w;
  w.p = p;
  w.q = q;
  w.walks = k;
  w.length = l;
  w.seed = seed;
  return w;
}

// 1. Positional encodings and exact SP pairs against BFS.
Outcome oracle_equivalence() {
  const auto t0 = Clock::now();
  std::size_t mismatches = 0, tokens = 0, triples = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t n = 5 + seed % 26;
    const Graph g = with_random_features(random_connected(n, 2 + seed % 4, seed, 0.8), 3, seed);
    const auto fw = floyd_warshall(g);
    const std::vector<double> v(3, 0.0);
    for (NodeId root = 0; root < n; root += 3) {
      const WalkSet ws = sample_walks(g, root, walk(1.0, 0.1 + 0.3 * (seed % 4), 4, 8, seed * 31 + root));
      const EncodedSample s = build_sequence(g, ws, v);
      for (std::size_t t = 2; t < s.length(); ++t) {
        ++tokens;
        if (static_cast<int>(s.positions[t]) != fw[root][static_cast<NodeId>(s.node_ids[t])]) ++mismatches;
      }
      for (const auto& tr : exact_sp_pairs(ws)) {
        ++triples;
        if (static_cast<int>(tr.distance) != fw[tr.a][tr.b]) ++mismatches;
      }
    }
  }
  const double secs = seconds_since(t0);
  return {mismatches == 0 && secs < 30.0,
          std::to_string(tokens) + " positions, " + std::to_string(triples) + " SP triples, " +
              std::to_string(mismatches) + " mismatches, " + fmt("%.2f s", secs)};
}

// Independent statement of the transition law from SP distances.
std::map<NodeId, double> law(const Graph& g, NodeId prev, NodeId cur, double p, double q) {
  std::map<NodeId, double> w;
  double total = 0.0;
  for (NodeId x : g.neighbors(cur)) {
    const Hop d = *sp_distance(g, prev, x);
    const double v = d == 0 ? 1.0 / p : (d == 1 ? 1.0 : 1.0 / q);
    w[x] = v;
    total += v;
  }
  for (auto& [x, v] : w) v /= total;
  return w;
}

// 2. Empirical next-step frequencies of sample_walks.
Outcome transition_law() {
  double worst = 0.0;
  const Graph g = random_connected(20, 5, 4, 2.0);
  NodeId root = 0;
  for (NodeId u = 0; u < 20; ++u) {
    if (g.degree(u) > g.degree(root)) root = u;
  }
  for (auto [p, q] : {std::pair{1.0, 0.1}, std::pair{1.0, 1.0}, std::pair{4.0, 0.5}, std::pair{0.25, 2.0}}) {
    const WalkSet ws = sample_walks(g, root, walk(p, q, 100000, 2, 7));
    std::map<NodeId, double> first;
    std::map<NodeId, std::map<NodeId, double>> second;
    std::map<NodeId, double> visits;
    for (const auto& w : ws.walks) {
      first[w[0]] += 1.0;
      second[w[0]][w[1]] += 1.0;
      visits[w[0]] += 1.0;
    }
    double tv = 0.0;
    for (NodeId x : g.neighbors(root)) tv += std::abs(first[x] / 1e5 - 1.0 / static_cast<double>(g.degree(root)));
    worst = std::max(worst, tv / 2.0);
    for (const auto& [cur, counts] : second) {
      double t = 0.0;
      for (const auto& [x, pr] : law(g, root, cur, p, q)) {
        const auto it = counts.find(x);
        t += std::abs(pr - (it == counts.end() ? 0.0 : it->second / visits[cur]));
      }
      worst = std::max(worst, t / 2.0);
    }
  }
  const WalkSet path = sample_walks(path_graph(9), 4, walk(1.0, 0.1, 100000, 2, 9));
  double outward = 0.0;
  for (const auto& w : path.walks) outward += w[1] != 4 ? 1.0 : 0.0;
  const double path_tv = std::abs(outward / 1e5 - 10.0 / 11.0);
  worst = std::max(worst, path_tv);
  return {worst < 0.02, fmt("max TV %.4f", worst) + fmt(", path continue-outward %.4f vs 0.9091", outward / 1e5)};
}

// 3. Hitting-time scaling on paths.
Outcome hitting_scaling() {
  const auto t0 = Clock::now();
  std::vector<double> ratios;
  std::string detail = "unbiased mean/r^2:";
  for (Hop r : {8u, 16u, 32u}) {
    const auto h = hitting_time(path_graph(r + 1), 0, r, walk(1.0, 1.0, 1, 1, 11), 4000);
    ratios.push_back(h.mean / (double(r) * r));
    detail += fmt(" %.3f", ratios.back());
  }
  const double mid = (*std::min_element(ratios.begin(), ratios.end()) + *std::max_element(ratios.begin(), ratios.end())) / 2.0;
  bool pass = std::all_of(ratios.begin(), ratios.end(), [&](double x) { return std::abs(x - mid) <= 0.3 * mid; });
  const double p = 1.0, q = 0.1, c = 2.0;
  pass = pass && linear_hitting_condition(p, q, 2.0, c);
  detail += "; biased (p=1, q=0.1, C=2) mean/r:";
  for (Hop r : {8u, 16u, 32u}) {
    const auto h = hitting_time(path_graph(r + 1), 0, r, walk(p, q, 1, 1, 12), 4000);
    detail += fmt(" %.3f", h.mean / r);
    pass = pass && h.mean - h.ci95 <= c * r && h.censored == 0;
  }
  const double secs = seconds_since(t0);
  detail += fmt(", exact at r=32 %.3f", path_hitting_time_exact(32, p, q) / 32.0) + fmt(", %.2f s", secs);
  return {pass && secs < 120.0, detail};
}

// 4. Ball reconstruction soundness and completeness.
Outcome reconstruction() {
  std::size_t sound = 0, complete = 0;
  const std::size_t trials = 100;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const std::size_t n = 10 + t % 41;
    const Graph g = random_connected(n, 3 + t % 3, 1000 + t, 0.6);
    const Hop r = 1 + t % 4;
    const NodeId root = static_cast<NodeId>(t % n);
    const std::size_t ball_n = ball(g, root, r).size();
    const auto orders = coverage_orders(ball_n, r);
    const auto k = static_cast<std::size_t>(std::ceil(4.0 * orders.analytic));
    const auto est = reconstruct_ball(g, sample_walks(g, root, walk(1.0, 0.1, k, 4 * r, t)), r);
    sound += est.coverage.sound;
    complete += est.coverage.complete;
  }
  return {sound == trials && complete >= 95,
          std::to_string(sound) + "/100 sound, " + std::to_string(complete) + "/100 complete"};
}

double min_over_max_eigen(const Matrix& g) {
  Eigen::MatrixXd m(g.rows(), g.cols());
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t j = 0; j < g.cols(); ++j) m(i, j) = g(i, j);
  }
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues();
  return ev.minCoeff() / ev.maxCoeff();
}

// 5. Shortest-path kernel values, PSD and separation.
Outcome kernel_checks() {
  const auto k3 = sp_triplets(complete_graph(3));
  const auto p3 = sp_triplets(path_graph(3));
  bool pass = kernel(k3, k3) == 9.0 && kernel(p3, p3) == 5.0 && kernel(k3, p3) == 0.0;
  std::vector<Ball> balls;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const Graph g = random_connected(12 + i % 8, 3 + i % 3, 500 + i);
    balls.push_back(ball(g, static_cast<NodeId>(i % g.node_count()), 1 + i % 3));
  }
  const double ratio = min_over_max_eigen(gram(balls));
  pass = pass && ratio >= -1e-8;
  const auto corpus = kernel_corpus();
  std::size_t pairs = 0, separated = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (std::size_t j = i + 1; j < corpus.size(); ++j) {
      if (corpus[i].node_count() == corpus[j].node_count() && is_isomorphic(corpus[i], corpus[j])) continue;
      ++pairs;
      separated += kernel_distance(sp_triplets(corpus[i]), sp_triplets(corpus[j])) > 0.0;
    }
  }
  pass = pass && separated == pairs;
  return {pass, "K3/K3=9 P3/P3=5 K3/P3=0" + fmt(", Gram min/max eigen %.2e", ratio) + ", " +
                    std::to_string(separated) + "/" + std::to_string(pairs) + " corpus pairs separated"};
}

// FD of a scalar function over every entry of the given matrices.
double fd_inputs(std::vector<Matrix*> xs, const std::vector<const Matrix*>& analytic,
                 const std::function<double()>& f) {
  double worst = 0.0;
  for (std::size_t m = 0; m < xs.size(); ++m) {
    for (std::size_t i = 0; i < xs[m]->size(); ++i) {
      double& v = xs[m]->flat()[i];
      const double keep = v;
      v = keep + 1e-5;
      const double up = f();
      v = keep - 1e-5;
      const double down = f();
      v = keep;
      const double num = (up - down) / 2e-5, a = analytic[m]->flat()[i];
      worst = std::max(worst, std::abs(num - a) / std::max({std::abs(num), std::abs(a), 1e-5}));
    }
  }
  return worst;
}

ModelConfig tiny_model() {
  ModelConfig c;
  c.feature_dim = 5;
  c.dim = 8;
  c.blocks = 2;
  c.heads = 2;
  c.max_position = 3;
  return c;
}

// 6. Finite-difference gradient checks at d=8, T=2, L=6.
Outcome gradients() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  std::string which;
  auto note = [&](const std::string& name, double v) {
    if (v > worst) {
      worst = v;
      which = name;
    }
  };
  const Graph g = with_random_features(random_connected(12, 3, 31, 1.0), 5, 31);

  // Encoder, parameters and inputs.
  {
    const ModelConfig c = tiny_model();
    EncodedSample s = random_sample(g, 3, 2, 2, 5);
    ParamStore params = make_encoder(c, 1);
    perturb(params, 2);
    Matrix w(s.length(), c.dim);
    Rng rng(3);
    for (double& v : w.flat()) v = standard_normal(rng);
    auto f = [&] { return dot(encoder_forward(c, params, s).h.flat(), w.flat()); };
    const EncoderOutput out = encoder_forward(c, params, s);
    ParamStore grads = params.zeros_like();
    const InputGrads in = encoder_backward(c, params, s, {}, out.cache, w, grads);
    note("encoder params", check_gradients(params, grads, f).max_rel);
    note("encoder inputs", fd_inputs({&s.tokens, &s.edges}, {&in.tokens, &in.edges}, f));
  }

  // Losses with respect to encoder outputs and their own parameters.
  std::vector<EncodedSample> samples;
  std::vector<Matrix> hs, negs;
  Rng rng(8);
  for (std::size_t i = 0; i < 3; ++i) {
    samples.push_back(random_sample(g, static_cast<NodeId>(3 * i), 2, 2, 40 + i));
    Matrix h(samples.back().length(), 8), n(samples.back().length(), 8);
    for (double& v : h.flat()) v = 0.5 * standard_normal(rng);
    for (double& v : n.flat()) v = 0.5 * standard_normal(rng);
    hs.push_back(h);
    negs.push_back(n);
  }
  auto items = [&](std::vector<Matrix>& m) {
    std::vector<LossItem> out;
    for (std::size_t i = 0; i < samples.size(); ++i) out.push_back({&samples[i], &m[i]});
    return out;
  };
  auto ptrs = [](std::vector<Matrix>& m) {
    std::vector<Matrix*> out;
    for (auto& x : m) out.push_back(&x);
    return out;
  };
  auto cptrs = [](const std::vector<Matrix>& m, std::size_t from, std::size_t count) {
    std::vector<const Matrix*> out;
    for (std::size_t i = from; i < from + count; ++i) out.push_back(&m[i]);
    return out;
  };
  {
    ParamStore disc;
    init_discriminator(disc, 8, 4);
    perturb(disc, 5, 0.2);
    ParamStore grads = disc.zeros_like();
    const auto r = context_loss(items(hs), disc, grads);
    auto f = [&] {
      ParamStore scratch = disc.zeros_like();
      return context_loss(items(hs), disc, scratch).loss;
    };
    note("context h", fd_inputs(ptrs(hs), cptrs(r.d_h, 0, 3), f));
    note("context disc", check_gradients(disc, grads, f).max_rel);
  }
  {
    const auto r = dgi_loss(items(hs), items(negs));
    auto f = [&] { return dgi_loss(items(hs), items(negs)).loss; };
    note("dgi h", fd_inputs(ptrs(hs), cptrs(r.d_h, 0, 3), f));
    note("dgi corrupted h", fd_inputs(ptrs(negs), cptrs(r.d_h, 3, 3), f));
  }
  {
    const auto r = graphprompt_loss(items(hs), 0.5);
    note("graphprompt h", fd_inputs(ptrs(hs), cptrs(r.d_h, 0, 3), [&] { return graphprompt_loss(items(hs), 0.5).loss; }));
  }
  {
    const auto r = maskgae_loss(items(hs));
    note("maskgae h", fd_inputs(ptrs(hs), cptrs(r.d_h, 0, 3), [&] { return maskgae_loss(items(hs)).loss; }));
  }
  for (ReconstructionMode mode : {ReconstructionMode::token, ReconstructionMode::position}) {
    ModelConfig c = tiny_model();
    ParamStore params = make_encoder(c, 1);
    init_position_head(params, 8, c.max_position, 2);
    perturb(params, 3);
    const auto masked = choose_masked_tokens(samples[0], 0.5, 9);
    ParamStore grads = params.zeros_like();
    const auto r = reconstruction_loss(c, params, samples[0], hs[0], masked, mode, grads);
    auto f = [&] {
      ParamStore scratch = params.zeros_like();
      return reconstruction_loss(c, params, samples[0], hs[0], masked, mode, scratch).loss;
    };
    const std::string name = mode == ReconstructionMode::token ? "token recon" : "position recon";
    note(name + " h", fd_inputs({&hs[0]}, {&r.d_h}, f));
    note(name + " params", check_gradients(params, grads, f).max_rel);
  }

  // Full pipeline through Trainer::batch_loss for every objective.
  Dataset d;
  d.name = "toy";
  d.graph = with_random_features(random_connected(14, 3, 5, 1.0), 5, 5);
  d.dataset_feature = {0.1, -0.2, 0.3, 0.0, 0.5};
  for (ContrastiveLoss loss : {ContrastiveLoss::context, ContrastiveLoss::dgi, ContrastiveLoss::graphprompt,
                               ContrastiveLoss::maskgae}) {
    for (bool recon : {false, true}) {
      RunConfig cfg;
      cfg.graphs = {"toy"};
      cfg.walk.walks = 2;
      cfg.walk.length = 2;
      cfg.model = tiny_model();
      cfg.loss = loss;
      if (recon) cfg.recon = loss == ContrastiveLoss::maskgae ? ReconstructionMode::position : ReconstructionMode::token;
      cfg.recon_rate = 0.5;
      cfg.batch = 3;
      Trainer t(cfg, {d});
      perturb(t.params(), 11, 0.05);
      const std::vector<PlanItem> batch{{0, 1}, {0, 6}, {0, 9}};
      ParamStore grads = t.params().zeros_like();
      t.batch_loss(batch, 42, &grads);
      const auto gc = check_gradients(t.params(), grads, [&] { return t.batch_loss(batch, 42, nullptr).total; });
      note(std::string(contrastive_loss_name(loss)) + (recon ? "+recon" : "") + " end-to-end", gc.max_rel);
    }
  }
  const double secs = seconds_since(t0);
  return {worst < 1e-4 && secs < 60.0, fmt("max rel error %.2e", worst) + " (" + which + ")" + fmt(", %.2f s", secs)};
}

// 7. Exact loss values at an uninformative discriminator.
Outcome loss_anchors() {
  const Graph g = with_random_features(random_connected(12, 3, 2, 1.0), 5, 2);
  std::vector<EncodedSample> samples{random_sample(g, 0, 2, 3, 1), random_sample(g, 5, 2, 3, 2)};
  std::vector<Matrix> hs, negs;
  Rng rng(3);
  for (const auto& s : samples) {
    Matrix h(s.length(), 8), n(s.length(), 8);
    for (double& v : h.flat()) v = standard_normal(rng);
    for (double& v : n.flat()) v = standard_normal(rng);
    hs.push_back(h);
    negs.push_back(n);
  }
  ParamStore disc;
  init_discriminator(disc, 8, 1);
  disc["disc.w2"].fill(0.0);
  disc["disc.b2"].fill(0.0);
  ParamStore grads = disc.zeros_like();
  const std::vector<LossItem> batch{{&samples[0], &hs[0]}, {&samples[1], &hs[1]}};
  const double ctx = context_loss(batch, disc, grads).loss;
  // A zero summary row makes the bilinear score vanish, so sigmoid gives 0.5.
  for (auto* set : {&hs, &negs}) {
    for (auto& h : *set) std::fill(h.row(1).begin(), h.row(1).end(), 0.0);
  }
  const std::vector<LossItem> pos{{&samples[0], &hs[0]}, {&samples[1], &hs[1]}};
  const std::vector<LossItem> neg{{&samples[0], &negs[0]}, {&samples[1], &negs[1]}};
  const double dgi = dgi_loss(pos, neg).loss;
  const double e1 = std::abs(ctx - 2.0 * std::log(2.0)), e2 = std::abs(dgi - std::log(2.0));
  return {e1 <= 1e-12 && e2 <= 1e-12, fmt("context %.15f", ctx) + fmt(" (err %.1e)", e1) + fmt(", DGI %.15f", dgi) +
                                          fmt(" (err %.1e)", e2)};
}

// 8. Walk-order invariance, per-walk vs full at k=1, cross-walk locality.
Outcome architecture() {
  ModelConfig c = tiny_model();
  c.dim = 16;
  c.heads = 4;
  c.max_position = 6;
  const Graph g = with_random_features(random_connected(30, 4, 3), 5, 3);
  const ParamStore params = make_encoder(c, 9);
  const WalkSet ws = sample_walks(g, 7, walk(1.0, 0.5, 5, 6, 4));
  WalkSet rev = ws;
  std::reverse(rev.walks.begin(), rev.walks.end());
  std::reverse(rev.walk_edges.begin(), rev.walk_edges.end());
  std::reverse(rev.positions.begin(), rev.positions.end());
  const std::vector<double> v(5, 0.3);
  const Matrix a = encoder_forward(c, params, build_sequence(g, ws, v)).h;
  const Matrix b = encoder_forward(c, params, build_sequence(g, rev, v)).h;
  const double perm = max_abs_diff(a.row(1), b.row(1)) / norm2(a.row(1));

  ModelConfig k1 = tiny_model();
  k1.max_position = 4;
  const ParamStore p1 = make_encoder(k1, 2);
  const Graph small = with_random_features(random_connected(10, 3, 17, 1.0), 5, 17);
  const bool same = encoder_forward(k1, p1, random_sample(small, 4, 1, 4, 6, MaskMode::per_walk)).h ==
                    encoder_forward(k1, p1, random_sample(small, 4, 1, 4, 6, MaskMode::full)).h;

  double leak[2] = {0.0, 0.0};
  for (std::size_t blocks : {1, 2}) {
    ModelConfig cb = tiny_model();
    cb.blocks = blocks;
    const ParamStore pb = make_encoder(cb, 12);
    EncodedSample s = random_sample(small, 2, 2, 3, 3);
    const Matrix before = encoder_forward(cb, pb, s).h;
    for (std::size_t t = 5; t < 8; ++t) {
      for (double& x : s.tokens.row(t)) x += 1.0;
    }
    const Matrix after = encoder_forward(cb, pb, s).h;
    for (std::size_t t = 2; t < 5; ++t) leak[blocks - 1] = std::max(leak[blocks - 1], max_abs_diff(before.row(t), after.row(t)));
  }
  return {perm <= 1e-10 && same && leak[0] == 0.0 && leak[1] > 1e-6,
          fmt("walk-order rel diff %.1e", perm) + (same ? ", per-walk == full at k=1" : ", per-walk != full at k=1") +
              fmt(", cross-walk change T=1 %.1e", leak[0]) + fmt(", T=2 %.1e", leak[1])};
}

// 9. Pass composition under the published multipliers.
Outcome mixture() {
  std::vector<MixtureEntry> mix;
  std::size_t size = 37;
  for (const auto& m : reference_multipliers()) {
    mix.push_back({std::string(m.name), m.multiplier, size});
    size += 11;
  }
  bool pass = mix.size() == 10;
  std::size_t total = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    std::vector<std::size_t> counts(mix.size(), 0);
    const auto plan = build_pass(mix, seed);
    for (const auto& it : plan) ++counts[it.dataset];
    for (std::size_t d = 0; d < mix.size(); ++d) {
      const auto want = static_cast<std::size_t>(std::llround(mix[d].multiplier * static_cast<double>(mix[d].size)));
      pass = pass && counts[d] == want;
    }
    total = plan.size();
  }
  return {pass, std::to_string(total) + " roots per pass across 10 datasets, counts exact over 5 seeds"};
}

struct EndToEnd {
  double initial = 0.0, final = 0.0, accuracy = 0.0, untrained_accuracy = 0.0;
};

// Head on a 60/40 split of the community labels.
double community_accuracy(const Matrix& emb) {
  std::vector<std::size_t> order(60);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(21);
  std::shuffle(order.begin(), order.end(), rng);
  Matrix xtr(36, emb.cols()), ytr(36, 1), xte(24, emb.cols()), yte(24, 1);
  for (std::size_t i = 0; i < 60; ++i) {
    const std::size_t u = order[i];
    Matrix& x = i < 36 ? xtr : xte;
    Matrix& y = i < 36 ? ytr : yte;
    const std::size_t row = i < 36 ? i : i - 36;
    std::copy(emb.row(u).begin(), emb.row(u).end(), x.row(row).begin());
    y(row, 0) = u < 30 ? 0.0 : 1.0;
  }
  HeadConfig hc;
  hc.hidden = 32;
  hc.lr = 1e-2;
  hc.epochs = 200;
  hc.seed = 3;
  const TrainedHead head = train_head(hc, xtr, ytr);
  return head_metric(head.head, xte, yte);
}

EndToEnd run_end_to_end(const Graph& graph) {
  RunConfig cfg;
  cfg.graphs = {"communities"};
  cfg.walk.walks = 8;
  cfg.walk.length = 4;
  cfg.model.dim = 32;
  cfg.model.blocks = 2;
  cfg.model.heads = 4;
  cfg.model.max_position = 4;
  cfg.batch = 16;
  cfg.steps = 500;
  cfg.optim.lr = 1e-3;
  cfg.optim.warmup = 50;
  cfg.seed = 5;
  Dataset d;
  d.name = "communities";
  d.graph = graph;
  d.dataset_feature = std::vector<double>(graph.feature_dim(), 0.0);
  Trainer t(cfg, {d});
  std::vector<PlanItem> probe;
  for (NodeId u = 0; u < 60; u += 4) probe.push_back({0, u});
  RunConfig embed_cfg = cfg;
  embed_cfg.model = t.model();
  EndToEnd r;
  r.untrained_accuracy = community_accuracy(embed_nodes(embed_cfg, t.params(), t.datasets()[0]));
  r.initial = t.batch_loss(probe, 99, nullptr).total;
  for (std::size_t s = 0; s < cfg.steps; ++s) t.step();
  r.final = t.batch_loss(probe, 99, nullptr).total;
  r.accuracy = community_accuracy(embed_nodes(embed_cfg, t.params(), t.datasets()[0]));
  return r;
}

// 10. Pre-training lowers the loss and separates the communities.
Outcome end_to_end() {
  const auto t0 = Clock::now();
  // 128-wide Gaussian node features, no edge features.
  const Graph base = with_random_features(two_communities(30, 0.3, 0.02, 7), 128, 7);
  const Graph g = base.with_features(base.node_features(), Matrix(base.edge_count(), 128));
  const EndToEnd a = run_end_to_end(g);
  const EndToEnd b = run_end_to_end(g);
  const double secs = seconds_since(t0) / 2.0;
  const bool det = a.initial == b.initial && a.final == b.final && a.accuracy == b.accuracy;
  return {a.final < a.initial && a.accuracy >= 0.9 && det && secs < 300.0,
          fmt("loss %.4f", a.initial) + fmt(" -> %.4f", a.final) + fmt(", test accuracy %.3f", a.accuracy) +
              fmt(" (untrained backbone %.3f)", a.untrained_accuracy) +
              (det ? ", repeat identical" : ", repeat differs") + fmt(", %.1f s per run", secs)};
}

// 11. Cost model anchors and crossover predicate.
Outcome cost_model() {
  CostInputs in;
  in.dim = 768;
  in.blocks = 12;
  const long double size = rwpt_cost(in).size;
  bool pass = size == 84934656.0L;
  std::size_t points = 0, agree = 0;
  for (std::uint64_t d : {1, 4, 16, 64, 256}) {
    for (std::uint64_t t : {1, 2, 4, 8, 12}) {
      for (std::uint64_t k : {2, 5, 10, 25}) {
        CostInputs c;
        c.dim = c.gnn_dim = c.context = d;
        c.blocks = c.gnn_layers = t;
        c.fanout = k;
        ++points;
        agree += tied_crossover(d, t, k) == (rwpt_cost(c).time < gnn_cost(c).time);
      }
    }
  }
  pass = pass && points == 100 && agree == points;
  return {pass, "size " + std::to_string(static_cast<std::uint64_t>(size)) + ", crossover agrees on " +
                    std::to_string(agree) + "/" + std::to_string(points) + " grid points"};
}

}  // namespace

int main() {
  const std::pair<const char*, Outcome (*)()> criteria[] = {
      {"oracle equivalence", oracle_equivalence},
      {"transition law", transition_law},
      {"hitting-time scaling", hitting_scaling},
      {"ball reconstruction", reconstruction},
      {"kernel checks", kernel_checks},
      {"gradient correctness", gradients},
      {"loss anchors", loss_anchors},
      {"architectural invariants", architecture},
      {"mixture batching", mixture},
      {"end-to-end learning signal", end_to_end},
      {"cost model", cost_model},
  };
  int failed = 0, index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
