// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#include "rwgf/walks.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "rwgf/error.hpp"

namespace rwgf {

void WalkParams::validate() const {
  if (!(p > 0.0) || !(q > 0.0)) fail(Errc::config_error, "walk parameters p and q must be positive");
  if (walks < 1 || length < 1) fail(Errc::config_error, "walk count and length must be at least 1");
}

std::vector<double> transition_weights(const Graph& g, std::optional<NodeId> previous, NodeId current, double p,
                                       double q) {
  auto nbrs = g.neighbors(current);
  std::vector<double> w(nbrs.size(), 1.0);
  if (!previous) return w;
  auto prev_nbrs = g.neighbors(*previous);
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    const NodeId x = nbrs[i];
    if (x == *previous) {
      w[i] = 1.0 / p;
    } else if (std::binary_search(prev_nbrs.begin(), prev_nbrs.end(), x)) {
      w[i] = 1.0;
    } else {
      w[i] = 1.0 / q;
    }
  }
  return w;
}

std::size_t sample_step(const Graph& g, std::optional<NodeId> previous, NodeId current, double p, double q,
                        Rng& rng) {
  const std::size_t deg = g.degree(current);
  if (deg == 0) fail(Errc::isolated_node, "node " + std::to_string(current));
  if (!previous) return static_cast<std::size_t>(uniform_index(rng, deg));
  const auto w = transition_weights(g, previous, current, p, q);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  double target = uniform01(rng) * total;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (target < w[i]) return i;
    target -= w[i];
  }
  return w.size() - 1;
}

WalkSet sample_walks(const Graph& g, NodeId root, const WalkParams& params) {
  params.validate();
  g.check_node(root);
  if (g.degree(root) == 0) fail(Errc::isolated_node, "root " + std::to_string(root) + " has degree 0");

  WalkSet ws;
  ws.root = root;
  ws.walks.resize(params.walks);
  ws.walk_edges.resize(params.walks);
  ws.positions.resize(params.walks);
  const auto dist = truncated_bfs(g, root, static_cast<Hop>(params.length));

  for (std::size_t r = 0; r < params.walks; ++r) {
    Rng rng(derive_seed(params.seed, {root, r}));
    auto& nodes = ws.walks[r];
    auto& edges = ws.walk_edges[r];
    auto& pos = ws.positions[r];
    nodes.reserve(params.length);
    std::optional<NodeId> prev;
    NodeId cur = root;
    for (std::size_t s = 0; s < params.length; ++s) {
      const std::size_t idx = sample_step(g, prev, cur, params.p, params.q, rng);
      const NodeId next = g.neighbors(cur)[idx];
      edges.push_back(g.incident_edges(cur)[idx]);
      nodes.push_back(next);
      pos.push_back(dist.at(next));
      prev = cur;
      cur = next;
    }
  }
  return ws;
}

std::size_t AttentionMask::nonzeros() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

AttentionMask build_mask(std::size_t walks, std::size_t length, MaskMode mode) {
  const std::size_t n = 2 + walks * length;
  if (mode == MaskMode::full) return AttentionMask(n, true);
  AttentionMask mask(n);
  for (std::size_t c = 0; c < n; ++c) {
    mask.set(0, c, true);
    mask.set(1, c, true);
  }
  for (std::size_t r = 0; r < walks; ++r) {
    const std::size_t begin = 2 + r * length;
    for (std::size_t i = begin; i < begin + length; ++i) {
      mask.set(i, 0, true);
      mask.set(i, 1, true);
      for (std::size_t j = begin; j < begin + length; ++j) mask.set(i, j, true);
    }
  }
  return mask;
}

namespace {

void check_dataset_feature(const Graph& g, std::span<const double> dataset_feature) {
  if (dataset_feature.size() != g.feature_dim()) {
    fail(Errc::dimension_mismatch, "dataset feature has " + std::to_string(dataset_feature.size()) +
                                       " entries, graph features have " + std::to_string(g.feature_dim()));
  }
}

void copy_row(std::span<const double> src, std::span<double> dst) { std::copy(src.begin(), src.end(), dst.begin()); }

EncodedSample header(const Graph& g, NodeId root, std::size_t n, std::span<const double> dataset_feature) {
  EncodedSample s;
  s.root = root;
  s.dataset_tag = g.dataset_tag();
  s.tokens = Matrix(n, g.feature_dim());
  s.edges = Matrix(n, g.feature_dim());
  s.positions.assign(n, 0);
  s.steps.assign(n, 0);
  s.kinds.assign(n, TokenKind::node);
  s.node_ids.assign(n, -1);
  copy_row(dataset_feature, s.tokens.row(0));
  copy_row(g.node_features().row(root), s.tokens.row(1));
  s.kinds[0] = TokenKind::dataset;
  s.kinds[1] = TokenKind::root;
  s.node_ids[1] = root;
  return s;
}

}  // namespace

EncodedSample build_sequence(const Graph& g, const WalkSet& ws, std::span<const double> dataset_feature,
                             MaskMode mode) {
  check_dataset_feature(g, dataset_feature);
  g.check_node(ws.root);
  const std::size_t k = ws.walk_count();
  const std::size_t len = ws.length();
  for (std::size_t r = 0; r < k; ++r) {
    if (ws.walks[r].size() != len || ws.walk_edges[r].size() != len || ws.positions[r].size() != len) {
      fail(Errc::dimension_mismatch, "walk " + std::to_string(r) + " has inconsistent length");
    }
  }
  EncodedSample s = header(g, ws.root, 2 + k * len, dataset_feature);
  s.window_count = len;
  for (std::size_t r = 0; r < k; ++r) {
    const std::size_t begin = 2 + r * len;
    s.walk_spans.emplace_back(begin, begin + len);
    for (std::size_t step = 0; step < len; ++step) {
      const std::size_t t = begin + step;
      const NodeId node = ws.walks[r][step];
      copy_row(g.node_features().row(node), s.tokens.row(t));
      copy_row(g.edge_features().row(ws.walk_edges[r][step]), s.edges.row(t));
      s.positions[t] = ws.positions[r][step];
      s.steps[t] = static_cast<int>(step + 1);
      s.node_ids[t] = node;
    }
  }
  s.mask = build_mask(k, len, mode);
  return s;
}

EncodedSample build_degenerate_sequence(const Graph& g, NodeId root, std::size_t length,
                                        std::span<const double> dataset_feature) {
  check_dataset_feature(g, dataset_feature);
  g.check_node(root);
  EncodedSample s = header(g, root, 2, dataset_feature);
  s.window_count = length;
  s.mask = AttentionMask(2, true);
  return s;
}

EncodedSample encode_root(const Graph& g, NodeId root, const WalkParams& params,
                          std::span<const double> dataset_feature, MaskMode mode) {
  g.check_node(root);
  if (g.degree(root) == 0) return build_degenerate_sequence(g, root, params.length, dataset_feature);
  return build_sequence(g, sample_walks(g, root, params), dataset_feature, mode);
}

std::size_t neighbor_budget(std::span<const std::size_t> fanouts) {
  std::size_t total = 2;
  std::size_t layer = 1;
  for (std::size_t f : fanouts) {
    layer *= f;
    total += layer;
  }
  return total;
}

EncodedSample build_neighbor_sequence(const Graph& g, NodeId root, std::span<const std::size_t> fanouts,
                                      std::uint64_t seed, std::span<const double> dataset_feature) {
  check_dataset_feature(g, dataset_feature);
  g.check_node(root);
  if (fanouts.empty()) fail(Errc::config_error, "fanout list is empty");
  if (std::find(fanouts.begin(), fanouts.end(), std::size_t{0}) != fanouts.end()) {
    fail(Errc::fanout_too_small, "fanouts must be positive");
  }
  if (g.degree(root) == 0) fail(Errc::isolated_node, "root " + std::to_string(root) + " has degree 0");

  const std::size_t n = neighbor_budget(fanouts);
  EncodedSample s = header(g, root, n, dataset_feature);
  s.window_count = fanouts.size();

  Rng rng(derive_seed(seed, {root, 0x6e62ULL}));
  std::vector<NodeId> frontier{root};
  std::size_t t = 2;
  for (std::size_t hop = 1; hop <= fanouts.size(); ++hop) {
    std::vector<NodeId> next;
    for (NodeId x : frontier) {
      std::vector<NodeId> pool(g.neighbors(x).begin(), g.neighbors(x).end());
      const std::size_t take = std::min(fanouts[hop - 1], pool.size());
      // Partial Fisher-Yates: the first `take` entries become the sample.
      for (std::size_t i = 0; i < take; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(uniform_index(rng, pool.size() - i));
        std::swap(pool[i], pool[j]);
        next.push_back(pool[i]);
      }
    }
    for (NodeId y : next) {
      copy_row(g.node_features().row(y), s.tokens.row(t));
      s.positions[t] = static_cast<Hop>(hop);
      s.steps[t] = static_cast<int>(hop);
      s.node_ids[t] = y;
      ++t;
    }
    frontier = std::move(next);
  }
  for (std::size_t pad = t; pad < n; ++pad) {
    s.kinds[pad] = TokenKind::pad;
    s.steps[pad] = -1;
  }

  s.mask = AttentionMask(n);
  for (std::size_t r = 0; r < n; ++r) {
    if (s.kinds[r] == TokenKind::pad) {
      s.mask.set(r, r, true);
      continue;
    }
    for (std::size_t c = 0; c < t; ++c) s.mask.set(r, c, true);
  }
  return s;
}

}  // namespace rwgf
