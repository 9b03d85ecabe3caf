// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#include "rwgf/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <string>

#include "rwgf/error.hpp"

namespace rwgf {

namespace {

std::uint64_t edge_key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

}  // namespace

std::span<const NodeId> Graph::neighbors(NodeId u) const {
  check_node(u);
  return {adjacency_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
}

std::span<const EdgeId> Graph::incident_edges(NodeId u) const {
  check_node(u);
  return {adjacency_edges_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
}

std::optional<EdgeId> Graph::edge_id(NodeId u, NodeId v) const {
  check_node(v);
  auto nbrs = neighbors(u);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
  if (it == nbrs.end() || *it != v) return std::nullopt;
  return adjacency_edges_[offsets_[u] + static_cast<std::size_t>(it - nbrs.begin())];
}

std::pair<NodeId, NodeId> Graph::endpoints(EdgeId e) const {
  if (e >= endpoints_.size()) fail(Errc::invalid_id, "edge id " + std::to_string(e));
  return endpoints_[e];
}

int Graph::label(NodeId u) const {
  check_node(u);
  return labels_.empty() ? 0 : labels_[u];
}

Graph Graph::with_features(Matrix node_features, Matrix edge_features) const {
  if (node_features.rows() != node_count() || edge_features.rows() != edge_count() ||
      (edge_count() > 0 && node_features.cols() != edge_features.cols())) {
    fail(Errc::dimension_mismatch, "feature matrices do not match graph shape");
  }
  Graph g = *this;
  g.node_features_ = std::move(node_features);
  g.edge_features_ = edge_count() > 0 ? std::move(edge_features) : Matrix(0, g.node_features_.cols());
  return g;
}

Graph Graph::with_labels(std::vector<int> labels) const {
  if (!labels.empty() && labels.size() != node_count()) fail(Errc::dimension_mismatch, "label count");
  Graph g = *this;
  g.labels_ = std::move(labels);
  return g;
}

Graph Graph::with_dataset_tag(int tag) const {
  Graph g = *this;
  g.dataset_tag_ = tag;
  return g;
}

void Graph::check_node(NodeId u) const {
  if (u >= node_count()) {
    fail(Errc::invalid_node, "node " + std::to_string(u) + " (graph has " + std::to_string(node_count()) + ")");
  }
}

GraphBuilder::GraphBuilder(std::size_t node_count, std::size_t feature_dim, int dataset_tag)
    : node_count_(node_count),
      feature_dim_(feature_dim),
      dataset_tag_(dataset_tag),
      node_rows_(node_count),
      labels_(node_count, 0) {}

EdgeId GraphBuilder::add_edge(NodeId u, NodeId v) {
  if (u >= node_count_ || v >= node_count_) {
    fail(Errc::invalid_node, "edge " + std::to_string(u) + " " + std::to_string(v));
  }
  if (u == v) fail(Errc::self_loop, "edge " + std::to_string(u) + " " + std::to_string(v));
  const auto key = edge_key(u, v);
  if (edge_lookup_.contains(key)) {
    fail(Errc::duplicate_edge, "edge " + std::to_string(u) + " " + std::to_string(v));
  }
  const auto id = static_cast<EdgeId>(edges_.size());
  edges_.emplace_back(std::min(u, v), std::max(u, v));
  edge_lookup_.emplace(key, id);
  edge_rows_.emplace_back();
  return id;
}

std::optional<EdgeId> GraphBuilder::find_edge(NodeId u, NodeId v) const {
  auto it = edge_lookup_.find(edge_key(u, v));
  if (it == edge_lookup_.end()) return std::nullopt;
  return it->second;
}

void GraphBuilder::set_node_feature(NodeId u, std::span<const double> values) {
  if (u >= node_count_) fail(Errc::invalid_node, "node " + std::to_string(u));
  if (values.size() != feature_dim_) fail(Errc::dimension_mismatch, "node feature length");
  node_rows_[u].assign(values.begin(), values.end());
}

void GraphBuilder::set_edge_feature(EdgeId e, std::span<const double> values) {
  if (e >= edges_.size()) fail(Errc::invalid_id, "edge id " + std::to_string(e));
  if (values.size() != feature_dim_) fail(Errc::dimension_mismatch, "edge feature length");
  edge_rows_[e].assign(values.begin(), values.end());
}

void GraphBuilder::set_label(NodeId u, int label) {
  if (u >= node_count_) fail(Errc::invalid_node, "node " + std::to_string(u));
  labels_[u] = label;
  any_label_ = true;
}

Graph GraphBuilder::build() const {
  Graph g;
  g.dataset_tag_ = dataset_tag_;
  std::vector<std::vector<std::pair<NodeId, EdgeId>>> adj(node_count_);
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    auto [u, v] = edges_[e];
    adj[u].emplace_back(v, e);
    adj[v].emplace_back(u, e);
  }
  g.offsets_.assign(node_count_ + 1, 0);
  for (std::size_t u = 0; u < node_count_; ++u) {
    std::sort(adj[u].begin(), adj[u].end());
    g.offsets_[u + 1] = g.offsets_[u] + adj[u].size();
  }
  g.adjacency_.reserve(g.offsets_.back());
  g.adjacency_edges_.reserve(g.offsets_.back());
  for (const auto& list : adj) {
    for (auto [v, e] : list) {
      g.adjacency_.push_back(v);
      g.adjacency_edges_.push_back(e);
    }
  }
  g.endpoints_ = edges_;
  g.node_features_ = Matrix(node_count_, feature_dim_);
  for (std::size_t u = 0; u < node_count_; ++u) {
    if (!node_rows_[u].empty()) std::copy(node_rows_[u].begin(), node_rows_[u].end(), g.node_features_.row(u).begin());
  }
  g.edge_features_ = Matrix(edges_.size(), feature_dim_);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (!edge_rows_[e].empty()) std::copy(edge_rows_[e].begin(), edge_rows_[e].end(), g.edge_features_.row(e).begin());
  }
  if (any_label_) g.labels_ = labels_;
  return g;
}

std::vector<std::optional<Hop>> bfs_distances(const Graph& g, NodeId u) {
  g.check_node(u);
  std::vector<std::optional<Hop>> dist(g.node_count());
  std::deque<NodeId> queue{u};
  dist[u] = 0;
  while (!queue.empty()) {
    const NodeId x = queue.front();
    queue.pop_front();
    for (NodeId y : g.neighbors(x)) {
      if (!dist[y]) {
        dist[y] = *dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  return dist;
}

std::optional<Hop> sp_distance(const Graph& g, NodeId u, NodeId v) {
  g.check_node(u);
  g.check_node(v);
  if (u == v) return 0;
  std::vector<std::int32_t> dist(g.node_count(), -1);
  std::deque<NodeId> queue{u};
  dist[u] = 0;
  while (!queue.empty()) {
    const NodeId x = queue.front();
    queue.pop_front();
    for (NodeId y : g.neighbors(x)) {
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        if (y == v) return static_cast<Hop>(dist[y]);
        queue.push_back(y);
      }
    }
  }
  return std::nullopt;
}

std::unordered_map<NodeId, Hop> truncated_bfs(const Graph& g, NodeId u, Hop depth) {
  g.check_node(u);
  std::unordered_map<NodeId, Hop> dist{{u, 0}};
  std::vector<NodeId> frontier{u};
  for (Hop level = 1; level <= depth && !frontier.empty(); ++level) {
    std::vector<NodeId> next;
    for (NodeId x : frontier) {
      for (NodeId y : g.neighbors(x)) {
        if (dist.emplace(y, level).second) next.push_back(y);
      }
    }
    frontier = std::move(next);
  }
  return dist;
}

const std::vector<std::int32_t>& SPOracle::row(NodeId u) const {
  std::lock_guard lock(mutex_);
  auto it = rows_.find(u);
  if (it != rows_.end()) return it->second;
  auto dist = bfs_distances(*graph_, u);
  std::vector<std::int32_t> packed(dist.size());
  std::transform(dist.begin(), dist.end(), packed.begin(),
                 [](const std::optional<Hop>& d) { return d ? static_cast<std::int32_t>(*d) : -1; });
  // unordered_map references stay valid across rehashing.
  return rows_.emplace(u, std::move(packed)).first->second;
}

std::optional<Hop> SPOracle::distance(NodeId u, NodeId v) const {
  graph_->check_node(u);
  graph_->check_node(v);
  const std::int32_t d = row(u)[v];
  if (d < 0) return std::nullopt;
  return static_cast<Hop>(d);
}

Ball make_ball(const Graph& g, NodeId center, Hop radius, std::vector<NodeId> nodes, std::vector<EdgeId> edges) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::unordered_map<NodeId, NodeId> local_id;
  for (NodeId i = 0; i < nodes.size(); ++i) local_id.emplace(nodes[i], i);

  GraphBuilder builder(nodes.size(), g.feature_dim(), g.dataset_tag());
  for (EdgeId e : edges) {
    auto [a, b] = g.endpoints(e);
    auto ia = local_id.find(a);
    auto ib = local_id.find(b);
    if (ia == local_id.end() || ib == local_id.end()) {
      fail(Errc::invalid_id, "ball edge " + std::to_string(e) + " leaves the node set");
    }
    const EdgeId le = builder.add_edge(ia->second, ib->second);
    builder.set_edge_feature(le, g.edge_features().row(e));
  }
  for (NodeId i = 0; i < nodes.size(); ++i) {
    builder.set_node_feature(i, g.node_features().row(nodes[i]));
    if (g.has_labels()) builder.set_label(i, g.label(nodes[i]));
  }
  return Ball{center, radius, std::move(nodes), std::move(edges), builder.build()};
}

Ball ball(const Graph& g, NodeId u, Hop r) {
  auto dist = truncated_bfs(g, u, r);
  std::vector<NodeId> nodes;
  nodes.reserve(dist.size());
  for (const auto& [v, d] : dist) nodes.push_back(v);
  std::vector<EdgeId> edges;
  for (NodeId v : nodes) {
    auto nbrs = g.neighbors(v);
    auto ids = g.incident_edges(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (v < nbrs[i] && dist.contains(nbrs[i])) edges.push_back(ids[i]);
    }
  }
  return make_ball(g, u, r, std::move(nodes), std::move(edges));
}

}  // namespace rwgf
