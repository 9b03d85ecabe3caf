// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "rwgf/encoder.hpp"
#include "rwgf/losses.hpp"
#include "rwgf/optim.hpp"
#include "rwgf/walks.hpp"

namespace rwgf {

enum class InputMode { walks, neighbors };

/// structural: synthesized; graph: rows stored in the graph file; file:
/// external feature matrices.
enum class FeatureSource { structural, graph, file };

/// Everything a pre-training run needs. Parsed from `key = value` lines;
/// `#` starts a comment. Relative paths resolve against the config file.
struct RunConfig {
  std::vector<std::string> graphs;
  std::vector<double> multipliers;  // empty means 1.0 each

  FeatureSource feature_source = FeatureSource::structural;
  std::string node_features;
  std::string edge_features;
  std::string dataset_features;
  std::size_t feature_dim = 64;  // structural mode only
  bool normalize_features = false;

  WalkParams walk;
  InputMode input = InputMode::walks;
  std::vector<std::size_t> fanouts{4, 4, 2};

  ModelConfig model;

  ContrastiveLoss loss = ContrastiveLoss::context;
  double tau = 0.5;
  std::optional<ReconstructionMode> recon;
  double recon_weight = 1.0;
  double recon_rate = 0.15;

  OptimConfig optim;
  std::size_t batch = 32;
  std::size_t steps = 1000;
  std::size_t checkpoint_every = 0;  // 0: final checkpoint only
  std::uint64_t seed = 0;
  std::string out = "run";

  /// Rejects inconsistent settings; with check_paths also missing files.
  void validate(bool check_paths = true) const;
  /// Number of context windows a sample carries in this configuration.
  std::size_t window_count() const;
};

/// Applies one key. Throws ConfigError on unknown keys or bad values.
void set_config_value(RunConfig& cfg, std::string_view key, std::string_view value);

RunConfig parse_run_config(std::istream& in, const std::string& source,
                           const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

nlohmann::json to_json(const RunConfig& cfg);

/// Inverse of to_json; throws ParseError on missing or mistyped fields.
RunConfig run_config_from_json(const nlohmann::json& j);

}  // namespace rwgf
