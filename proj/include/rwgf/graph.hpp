// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rwgf/matrix.hpp"

namespace rwgf {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;
using Hop = std::uint32_t;

/// Immutable undirected simple graph in CSR form.
///
/// Neighbor lists are sorted by node id and carry the id of the connecting
/// edge, so every traversal order is deterministic. Edge ids follow insertion
/// order and index rows of edge_features().
class Graph {
 public:
  Graph() = default;

  std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return endpoints_.size(); }
  std::size_t feature_dim() const noexcept { return node_features_.cols(); }
  int dataset_tag() const noexcept { return dataset_tag_; }

  std::span<const NodeId> neighbors(NodeId u) const;
  std::span<const EdgeId> incident_edges(NodeId u) const;
  std::size_t degree(NodeId u) const { return neighbors(u).size(); }

  std::optional<EdgeId> edge_id(NodeId u, NodeId v) const;
  bool has_edge(NodeId u, NodeId v) const { return edge_id(u, v).has_value(); }
  /// Endpoints with first < second.
  std::pair<NodeId, NodeId> endpoints(EdgeId e) const;

  const Matrix& node_features() const noexcept { return node_features_; }
  const Matrix& edge_features() const noexcept { return edge_features_; }

  bool has_labels() const noexcept { return !labels_.empty(); }
  int label(NodeId u) const;
  const std::vector<int>& labels() const noexcept { return labels_; }

  /// Copy with replaced feature matrices. Node matrix must have node_count rows,
  /// edge matrix edge_count rows and the same column count.
  Graph with_features(Matrix node_features, Matrix edge_features) const;
  Graph with_labels(std::vector<int> labels) const;
  Graph with_dataset_tag(int tag) const;

  /// Throws InvalidNode when u is out of range.
  void check_node(NodeId u) const;

 private:
  friend class GraphBuilder;

  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adjacency_;
  std::vector<EdgeId> adjacency_edges_;
  std::vector<std::pair<NodeId, NodeId>> endpoints_;
  Matrix node_features_;
  Matrix edge_features_;
  std::vector<int> labels_;
  int dataset_tag_ = 0;
};

class GraphBuilder {
 public:
  explicit GraphBuilder(std::size_t node_count, std::size_t feature_dim = 0, int dataset_tag = 0);

  /// Throws SelfLoop, DuplicateEdge or InvalidNode.
  EdgeId add_edge(NodeId u, NodeId v);
  std::optional<EdgeId> find_edge(NodeId u, NodeId v) const;

  void set_node_feature(NodeId u, std::span<const double> values);
  void set_edge_feature(EdgeId e, std::span<const double> values);
  void set_label(NodeId u, int label);

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t feature_dim() const noexcept { return feature_dim_; }

  Graph build() const;

 private:
  std::size_t node_count_;
  std::size_t feature_dim_;
  int dataset_tag_;
  std::vector<std::pair<NodeId, NodeId>> edges_;
  std::unordered_map<std::uint64_t, EdgeId> edge_lookup_;
  std::vector<std::vector<double>> node_rows_;
  std::vector<std::vector<double>> edge_rows_;
  std::vector<int> labels_;
  bool any_label_ = false;
};

/// Exact BFS hop count; nullopt when v is unreachable from u.
std::optional<Hop> sp_distance(const Graph& g, NodeId u, NodeId v);

/// Distances from u to every node; nullopt entries are unreachable.
std::vector<std::optional<Hop>> bfs_distances(const Graph& g, NodeId u);

/// Exact distances for all nodes within `depth` hops of u.
std::unordered_map<NodeId, Hop> truncated_bfs(const Graph& g, NodeId u, Hop depth);

/// Shortest-path oracle with a lazily filled per-source row cache.
/// Safe to query concurrently.
class SPOracle {
 public:
  explicit SPOracle(const Graph& g) : graph_(&g) {}

  std::optional<Hop> distance(NodeId u, NodeId v) const;
  const Graph& graph() const noexcept { return *graph_; }

 private:
  const std::vector<std::int32_t>& row(NodeId u) const;

  const Graph* graph_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<NodeId, std::vector<std::int32_t>> rows_;
};

/// Induced ball: all nodes within `radius` hops of `center` and every edge
/// with both endpoints inside. `local` is the same ball relabeled to
/// 0..n-1 in ascending global id order, carrying labels when the source has them.
struct Ball {
  NodeId center = 0;
  Hop radius = 0;
  std::vector<NodeId> nodes;
  std::vector<EdgeId> edges;
  Graph local;

  std::size_t size() const noexcept { return nodes.size(); }
};

Ball ball(const Graph& g, NodeId u, Hop r);

/// Builds a Ball from explicit global node and edge sets (edges must lie
/// inside the node set).
Ball make_ball(const Graph& g, NodeId center, Hop radius, std::vector<NodeId> nodes,
               std::vector<EdgeId> edges);

/// Exact isomorphism test by backtracking over permutations. Labels are
/// compared when either graph carries them. Throws TooLarge above 10 nodes.
bool is_isomorphic(const Graph& a, const Graph& b);
bool is_isomorphic(const Ball& a, const Ball& b);

inline constexpr std::size_t kMaxIsomorphismNodes = 10;

}  // namespace rwgf
