// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#include "rwgf/train.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "rwgf/checkpoint.hpp"
#include "rwgf/error.hpp"
#include "rwgf/graph_io.hpp"
#include "rwgf/losses.hpp"
#include "rwgf/parallel.hpp"
#include "rwgf/rng.hpp"
#include "rwgf/version.hpp"

namespace rwgf {

namespace {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream ss;
  ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return ss.str();
}

void write_atomic(const std::filesystem::path& path, const std::string& text) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp);
    if (!out) fail(Errc::io_error, "cannot write " + tmp.string());
    out << text;
    if (!out) fail(Errc::io_error, "failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

enum SeedPart : std::uint64_t { walk_part = 1, corrupt_part = 2, mask_part = 3 };

}  // namespace

FeatureProvider make_feature_provider(const RunConfig& cfg, const Graph& g) {
  const std::uint64_t seed = substream(cfg.seed, "features");
  switch (cfg.feature_source) {
    case FeatureSource::structural:
      return FeatureProvider::structural(cfg.feature_dim, seed);
    case FeatureSource::graph:
      if (g.feature_dim() == 0) fail(Errc::missing_feature, "graph file carries no features");
      return FeatureProvider::structural(g.feature_dim(), seed);
    case FeatureSource::file:
      break;
  }
  std::optional<Matrix> edges, datasets;
  if (!cfg.edge_features.empty()) edges = read_feature_file(cfg.edge_features);
  if (!cfg.dataset_features.empty()) datasets = read_feature_file(cfg.dataset_features);
  return FeatureProvider::from_files(read_feature_file(cfg.node_features), std::move(edges), std::move(datasets),
                                     cfg.normalize_features, seed);
}

std::vector<Dataset> load_datasets(const RunConfig& cfg) {
  std::vector<Dataset> out;
  for (const auto& path : cfg.graphs) {
    Graph g = load_graph(path);
    const FeatureProvider provider = make_feature_provider(cfg, g);
    if (cfg.feature_source != FeatureSource::graph) g = provider.apply(g);
    Dataset d;
    d.name = std::filesystem::path(path).stem().string();
    d.dataset_feature = provider.dataset_feature(g.dataset_tag());
    d.graph = std::move(g);
    if (!out.empty() && d.graph.feature_dim() != out.front().graph.feature_dim()) {
      fail(Errc::dimension_mismatch, "graph " + path + " has a different feature dim");
    }
    out.push_back(std::move(d));
  }
  return out;
}

EncodedSample encode_input(const RunConfig& cfg, const Dataset& data, NodeId root, std::uint64_t seed) {
  const Graph& g = data.graph;
  g.check_node(root);
  if (cfg.input == InputMode::neighbors) {
    if (g.degree(root) == 0) return build_degenerate_sequence(g, root, cfg.fanouts.size(), data.dataset_feature);
    return build_neighbor_sequence(g, root, cfg.fanouts, seed, data.dataset_feature);
  }
  WalkParams wp = cfg.walk;
  wp.seed = seed;
  return encode_root(g, root, wp, data.dataset_feature, cfg.model.mask_mode);
}

Trainer::Trainer(RunConfig cfg, std::vector<Dataset> data)
    : cfg_(std::move(cfg)), data_(std::move(data)), optimizer_(ParamStore(), cfg_.optim) {
  if (data_.empty()) fail(Errc::config_error, "no datasets");
  cfg_.model.feature_dim = data_.front().graph.feature_dim();
  cfg_.validate(false);
  const std::uint64_t init = substream(cfg_.seed, "init");
  init_encoder(cfg_.model, params_, init);
  if (cfg_.loss == ContrastiveLoss::context) init_discriminator(params_, cfg_.model.dim, init);
  if (cfg_.recon == ReconstructionMode::position) {
    init_position_head(params_, cfg_.model.dim, cfg_.model.max_position, init);
  }
  optimizer_ = AdamW(params_, cfg_.optim);
  for (std::size_t i = 0; i < data_.size(); ++i) {
    const double alpha = cfg_.multipliers.empty() ? 1.0 : cfg_.multipliers[i];
    mixture_.push_back({data_[i].name, alpha, data_[i].graph.node_count()});
  }
}

std::vector<PlanItem> Trainer::next_batch() {
  if (plan_.empty() || cursor_ + std::min(cfg_.batch, plan_.size()) > plan_.size()) {
    if (!plan_.empty()) ++pass_;
    plan_ = build_pass(mixture_, derive_seed(substream(cfg_.seed, "batch"), {pass_}));
    cursor_ = 0;
  }
  const std::size_t b = std::min(cfg_.batch, plan_.size());
  const std::size_t min_batch = cfg_.loss == ContrastiveLoss::dgi ? 1 : 2;
  if (b < min_batch) fail(Errc::batch_too_small, "a pass holds fewer roots than the loss needs");
  std::vector<PlanItem> batch(plan_.begin() + static_cast<std::ptrdiff_t>(cursor_),
                              plan_.begin() + static_cast<std::ptrdiff_t>(cursor_ + b));
  cursor_ += b;
  return batch;
}

BatchLoss Trainer::batch_loss(std::span<const PlanItem> items, std::uint64_t seed, ParamStore* grads) const {
  const std::size_t n = items.size();
  const bool dgi = cfg_.loss == ContrastiveLoss::dgi;
  const bool recon = cfg_.recon.has_value();
  std::vector<EncodedSample> samples(n), corrupted(dgi ? n : 0);
  std::vector<EncoderOutput> outs(n), corrupted_outs(dgi ? n : 0), masked_outs(recon ? n : 0);
  std::vector<ForwardOptions> mask_opts(recon ? n : 0);
  std::vector<ReconstructionResult> recon_res(recon ? n : 0);
  std::vector<ParamStore> sample_grads(n);

  parallel_for(n, [&](std::size_t i) {
    const Dataset& data = data_.at(items[i].dataset);
    samples[i] = encode_input(cfg_, data, items[i].root, derive_seed(seed, {i, walk_part}));
    outs[i] = encoder_forward(cfg_.model, params_, samples[i]);
    if (dgi) {
      corrupted[i] = corrupt_sample(data.graph, samples[i], derive_seed(seed, {i, corrupt_part}));
      corrupted_outs[i] = encoder_forward(cfg_.model, params_, corrupted[i]);
    }
    sample_grads[i] = params_.zeros_like();
    if (recon) {
      mask_opts[i].masked_tokens = choose_masked_tokens(samples[i], cfg_.recon_rate, derive_seed(seed, {i, mask_part}));
      mask_opts[i].masked_keep_position = *cfg_.recon == ReconstructionMode::token;
      masked_outs[i] = encoder_forward(cfg_.model, params_, samples[i], mask_opts[i]);
      ParamStore head = params_.zeros_like();
      recon_res[i] = reconstruction_loss(cfg_.model, params_, samples[i], masked_outs[i].h,
                                         mask_opts[i].masked_tokens, *cfg_.recon, head);
      sample_grads[i].add_scaled(head, cfg_.recon_weight / static_cast<double>(n));
    }
  });

  std::vector<LossItem> pos(n), neg(dgi ? n : 0);
  for (std::size_t i = 0; i < n; ++i) pos[i] = {&samples[i], &outs[i].h};
  for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = {&corrupted[i], &corrupted_outs[i].h};

  ParamStore scratch;
  ParamStore& head_grads = grads ? *grads : (scratch = params_.zeros_like());
  LossResult lr;
  switch (cfg_.loss) {
    case ContrastiveLoss::context: lr = context_loss(pos, params_, head_grads); break;
    case ContrastiveLoss::dgi: lr = dgi_loss(pos, neg); break;
    case ContrastiveLoss::graphprompt: lr = graphprompt_loss(pos, cfg_.tau); break;
    case ContrastiveLoss::maskgae: lr = maskgae_loss(pos); break;
  }
  BatchLoss out;
  out.contrastive = lr.loss;
  for (const auto& r : recon_res) out.recon += r.loss / static_cast<double>(n);
  out.total = out.contrastive + cfg_.recon_weight * out.recon;
  if (!std::isfinite(out.total)) fail(Errc::non_finite_loss, "batch loss is not finite");
  if (!grads) return out;

  parallel_for(n, [&](std::size_t i) {
    encoder_backward(cfg_.model, params_, samples[i], {}, outs[i].cache, lr.d_h[i], sample_grads[i]);
    if (dgi) {
      encoder_backward(cfg_.model, params_, corrupted[i], {}, corrupted_outs[i].cache, lr.d_h[n + i],
                       sample_grads[i]);
    }
    if (recon) {
      Matrix d = recon_res[i].d_h;
      for (double& v : d.flat()) v *= cfg_.recon_weight / static_cast<double>(n);
      encoder_backward(cfg_.model, params_, samples[i], mask_opts[i], masked_outs[i].cache, d, sample_grads[i]);
    }
  });
  for (std::size_t i = 0; i < n; ++i) grads->add_scaled(sample_grads[i], 1.0);
  return out;
}

StepMetrics Trainer::step() {
  ParamStore grads = params_.zeros_like();
  StepMetrics m;
  m.step = step_;
  const std::size_t acc = cfg_.optim.accumulate;
  const std::uint64_t step_seed = substream(cfg_.seed, "step");
  for (std::size_t a = 0; a < acc; ++a) {
    const auto batch = next_batch();
    const BatchLoss bl = batch_loss(batch, derive_seed(step_seed, {step_, a}), &grads);
    m.loss += bl.total / static_cast<double>(acc);
    m.contrastive += bl.contrastive / static_cast<double>(acc);
    m.recon += bl.recon / static_cast<double>(acc);
  }
  m.pass = pass_;
  if (acc > 1) {
    for (std::size_t i = 0; i < grads.size(); ++i) {
      for (double& v : grads.at(i).value.flat()) v /= static_cast<double>(acc);
    }
  }
  m.grad_norm = clip_global_norm(grads, cfg_.optim.clip);
  m.lr = scheduled_lr(cfg_.optim, step_, cfg_.steps);
  optimizer_.step(params_, grads, m.lr);
  ++step_;
  return m;
}

Matrix embed_nodes(const RunConfig& cfg, const ParamStore& params, const Dataset& data) {
  const std::size_t n = data.graph.node_count();
  Matrix out(n, cfg.model.dim);
  const std::uint64_t seed = substream(cfg.seed, "embed");
  parallel_for(n, [&](std::size_t u) {
    const EncodedSample s = encode_input(cfg, data, static_cast<NodeId>(u), derive_seed(seed, {u}));
    const EncoderOutput o = encoder_forward(cfg.model, params, s);
    std::copy(o.h_0().begin(), o.h_0().end(), out.row(u).begin());
  });
  return out;
}

RunSummary run_pretraining(const RunConfig& cfg, const std::filesystem::path& out_dir,
                           const std::function<void(const StepMetrics&)>& on_step) {
  cfg.validate(true);
  const std::string started = utc_now();
  std::filesystem::create_directories(out_dir);
  Trainer trainer(cfg, load_datasets(cfg));

  auto checkpoint = [&](const std::string& name) {
    Checkpoint ck;
    ck.model = trainer.model();
    ck.walk = cfg.walk;
    ck.meta = {{"run_config", to_json(cfg)}, {"steps", trainer.steps_done()}, {"version", kVersion}};
    ck.meta["run_config"]["model"]["feature_dim"] = trainer.model().feature_dim;
    ck.params = trainer.params();
    const auto path = out_dir / name;
    save_checkpoint(path, ck);
    return path.string();
  };

  RunSummary summary;
  std::ofstream metrics(out_dir / "metrics.jsonl", std::ios::trunc);
  if (!metrics) fail(Errc::io_error, "cannot write metrics log in " + out_dir.string());
  for (std::size_t s = 0; s < cfg.steps; ++s) {
    StepMetrics m;
    try {
      m = trainer.step();
    } catch (const Error& e) {
      if (e.code() == Errc::non_finite_loss || e.code() == Errc::non_finite_gradient ||
          e.code() == Errc::non_finite_activation) {
        summary.checkpoints.push_back(checkpoint("last_good.ckpt"));
      }
      throw;
    }
    nlohmann::json line{{"step", m.step},     {"pass", m.pass},           {"loss", m.loss},
                        {"contrastive", m.contrastive}, {"recon", m.recon}, {"grad_norm", m.grad_norm},
                        {"lr", m.lr}};
    metrics << line.dump() << '\n';
    metrics.flush();
    summary.history.push_back(m);
    if (on_step) on_step(m);
    if (cfg.checkpoint_every > 0 && (s + 1) % cfg.checkpoint_every == 0 && s + 1 < cfg.steps) {
      summary.checkpoints.push_back(checkpoint("step_" + std::to_string(s + 1) + ".ckpt"));
    }
  }
  summary.checkpoints.push_back(checkpoint("final.ckpt"));

  nlohmann::json passes = nlohmann::json::array();
  std::size_t pass = 0, count = 0;
  double total = 0.0;
  auto flush_pass = [&] {
    if (count) passes.push_back({{"pass", pass}, {"steps", count}, {"mean_loss", total / static_cast<double>(count)}});
  };
  for (const auto& m : summary.history) {
    if (m.pass != pass) {
      flush_pass();
      pass = m.pass;
      count = 0;
      total = 0.0;
    }
    ++count;
    total += m.loss;
  }
  flush_pass();
  nlohmann::json manifest{{"config", to_json(cfg)},
                          {"code_version", kVersion},
                          {"seed", cfg.seed},
                          {"started", started},
                          {"finished", utc_now()},
                          {"steps", summary.history.size()},
                          {"final_loss", summary.history.empty() ? 0.0 : summary.history.back().loss},
                          {"passes", passes},
                          {"checkpoints", summary.checkpoints}};
  write_atomic(out_dir / "manifest.json", manifest.dump(2) + "\n");
  return summary;
}

}  // namespace rwgf
