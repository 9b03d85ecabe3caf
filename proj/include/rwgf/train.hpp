// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rwgf/config.hpp"
#include "rwgf/encoder.hpp"
#include "rwgf/features.hpp"
#include "rwgf/graph.hpp"
#include "rwgf/mixture.hpp"
#include "rwgf/optim.hpp"
#include "rwgf/params.hpp"

namespace rwgf {

struct Dataset {
  std::string name;
  Graph graph;  // features materialized
  std::vector<double> dataset_feature;
};

/// Loads every configured graph and fills its features.
std::vector<Dataset> load_datasets(const RunConfig& cfg);

/// Feature provider for a graph under the configured feature source.
FeatureProvider make_feature_provider(const RunConfig& cfg, const Graph& g);

/// Encoder input for one root under the configured input mode. Isolated
/// roots yield the two-token degenerate sample.
EncodedSample encode_input(const RunConfig& cfg, const Dataset& data, NodeId root, std::uint64_t seed);

struct StepMetrics {
  std::size_t step = 0;
  std::size_t pass = 0;
  double loss = 0.0;
  double contrastive = 0.0;
  double recon = 0.0;
  double grad_norm = 0.0;  // before clipping
  double lr = 0.0;
};

struct BatchLoss {
  double total = 0.0;
  double contrastive = 0.0;
  double recon = 0.0;
};

class Trainer {
 public:
  Trainer(RunConfig cfg, std::vector<Dataset> data);

  /// One optimizer step over `accumulate` micro-batches.
  StepMetrics step();

  /// Loss of a fixed batch under the current parameters; gradients are
  /// accumulated into `grads` when given.
  BatchLoss batch_loss(std::span<const PlanItem> items, std::uint64_t seed, ParamStore* grads) const;

  const RunConfig& config() const noexcept { return cfg_; }
  const ModelConfig& model() const noexcept { return cfg_.model; }
  const ParamStore& params() const noexcept { return params_; }
  ParamStore& params() noexcept { return params_; }
  const std::vector<Dataset>& datasets() const noexcept { return data_; }
  std::size_t steps_done() const noexcept { return step_; }
  std::size_t pass() const noexcept { return pass_; }

 private:
  std::vector<PlanItem> next_batch();

  RunConfig cfg_;
  std::vector<Dataset> data_;
  std::vector<MixtureEntry> mixture_;
  ParamStore params_;
  AdamW optimizer_;
  std::vector<PlanItem> plan_;
  std::size_t cursor_ = 0;
  std::size_t pass_ = 0;
  std::size_t step_ = 0;
};

/// Root representations h_0 for every node of a graph, one row per node.
Matrix embed_nodes(const RunConfig& cfg, const ParamStore& params, const Dataset& data);

struct RunSummary {
  std::vector<StepMetrics> history;
  std::vector<std::string> checkpoints;
};

/// Full run under `out_dir`: metrics.jsonl, step checkpoints, final.ckpt and
/// manifest.json (written atomically at the end). A non-finite loss writes
/// last_good.ckpt and rethrows.
RunSummary run_pretraining(const RunConfig& cfg, const std::filesystem::path& out_dir,
                           const std::function<void(const StepMetrics&)>& on_step = {});

}  // namespace rwgf
