// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "rwgf/graph.hpp"
#include "rwgf/matrix.hpp"

namespace rwgf {

// Feature matrix files.
//
// Binary (.f32bin): 8-byte magic "RWGFF32\0", uint64 row count, uint64 dim,
// then row-major little-endian float32 values. Any other extension is read
// as CSV: one row per line, comma-separated.
Matrix read_feature_file(const std::filesystem::path& path);
void write_feature_file(const std::filesystem::path& path, const Matrix& m);

enum class FeatureMode { from_file, structural };

/// Supplies fixed-dimension vectors for nodes, edges and dataset tokens.
///
/// Structural mode projects per-node statistics (degree, local clustering
/// coefficient, number of nodes at distance exactly 2, log(1 + degree)) and
/// per-edge endpoint degrees through seeded Gaussian matrices, then scales to
/// unit norm. Dataset vectors are seeded per tag.
class FeatureProvider {
 public:
  static FeatureProvider structural(std::size_t dim, std::uint64_t seed);

  /// Node rows are required. Without an edge matrix edge features are zero;
  /// without a dataset matrix dataset vectors fall back to the seeded ones.
  static FeatureProvider from_files(Matrix nodes, std::optional<Matrix> edges = std::nullopt,
                                    std::optional<Matrix> datasets = std::nullopt, bool normalize_rows = false,
                                    std::uint64_t seed = 0);

  FeatureMode mode() const noexcept { return mode_; }
  std::size_t dim() const noexcept { return dim_; }

  std::vector<double> node_feature(const Graph& g, NodeId u) const;
  std::vector<double> edge_feature(const Graph& g, EdgeId e) const;
  std::vector<double> dataset_feature(int tag) const;

  /// Copy of g with every node and edge feature filled from this provider.
  Graph apply(const Graph& g) const;

 private:
  FeatureProvider() = default;
  std::vector<double> finish(std::vector<double> v) const;

  FeatureMode mode_ = FeatureMode::structural;
  std::size_t dim_ = 0;
  std::uint64_t seed_ = 0;
  bool normalize_ = true;
  Matrix node_projection_;  // 4 x dim
  Matrix edge_projection_;  // 2 x dim
  Matrix nodes_;
  std::optional<Matrix> edges_;
  std::optional<Matrix> datasets_;
};

/// The four structural statistics of a node, in projection order.
std::vector<double> structural_stats(const Graph& g, NodeId u);

}  // namespace rwgf
