// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "rwgf/features.hpp"
#include "rwgf/graph.hpp"
#include "rwgf/params.hpp"
#include "rwgf/rng.hpp"
#include "rwgf/walks.hpp"

namespace rwgf::test {

inline Graph path_graph(std::size_t n) {
  GraphBuilder b(n);
  for (NodeId i = 0; i + 1 < n; ++i) b.add_edge(i, i + 1);
  return b.build();
}

inline Graph cycle_graph(std::size_t n) {
  GraphBuilder b(n);
  for (NodeId i = 0; i < n; ++i) b.add_edge(i, static_cast<NodeId>((i + 1) % n));
  return b.build();
}

inline Graph complete_graph(std::size_t n) {
  GraphBuilder b(n);
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) b.add_edge(i, j);
  }
  return b.build();
}

inline Graph star_graph(std::size_t leaves) {
  GraphBuilder b(leaves + 1);
  for (NodeId i = 1; i <= leaves; ++i) b.add_edge(0, i);
  return b.build();
}

inline Graph from_edges(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
  GraphBuilder b(n);
  for (auto [u, v] : edges) b.add_edge(u, v);
  return b.build();
}

/// Connected graph: random tree plus extra edges, every degree <= max_degree.
inline Graph random_connected(std::size_t n, std::size_t max_degree, std::uint64_t seed, double extra = 0.5) {
  std::mt19937_64 rng(seed);
  GraphBuilder b(n);
  std::vector<std::size_t> deg(n, 0);
  for (NodeId v = 1; v < n; ++v) {
    std::vector<NodeId> open;
    for (NodeId u = 0; u < v; ++u) {
      if (deg[u] < max_degree) open.push_back(u);
    }
    const NodeId u = open[std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng)];
    b.add_edge(u, v);
    ++deg[u];
    ++deg[v];
  }
  const auto tries = static_cast<std::size_t>(extra * static_cast<double>(n));
  for (std::size_t t = 0; t < tries; ++t) {
    const auto u = static_cast<NodeId>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
    const auto v = static_cast<NodeId>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
    if (u == v || b.find_edge(u, v) || deg[u] >= max_degree || deg[v] >= max_degree) continue;
    b.add_edge(u, v);
    ++deg[u];
    ++deg[v];
  }
  return b.build();
}

/// Two planted communities with intra and inter edge probabilities.
inline Graph two_communities(std::size_t half, double p_in, double p_out, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  GraphBuilder b(2 * half);
  for (NodeId i = 0; i < 2 * half; ++i) {
    for (NodeId j = i + 1; j < 2 * half; ++j) {
      const bool same = (i < half) == (j < half);
      if (u01(rng) < (same ? p_in : p_out)) b.add_edge(i, j);
    }
  }
  return b.build();
}

/// Every connected graph on n nodes, one representative per isomorphism class.
inline std::vector<Graph> connected_graphs(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> slots;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) slots.emplace_back(i, j);
  }
  std::vector<Graph> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (std::size_t s = 0; s < slots.size(); ++s) {
      if (mask >> s & 1) edges.push_back(slots[s]);
    }
    if (edges.size() + 1 < n) continue;
    Graph g = from_edges(n, edges);
    const auto d = bfs_distances(g, 0);
    if (std::any_of(d.begin(), d.end(), [](const auto& x) { return !x; })) continue;
    if (std::none_of(out.begin(), out.end(), [&](const Graph& h) {
          return h.edge_count() == g.edge_count() && is_isomorphic(h, g);
        })) {
      out.push_back(std::move(g));
    }
  }
  return out;
}

/// Copy of g carrying the given node labels.
inline Graph with_labels(const Graph& g, const std::vector<int>& labels) {
  GraphBuilder b(g.node_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.endpoints(e);
    b.add_edge(u, v);
  }
  for (NodeId u = 0; u < g.node_count(); ++u) b.set_label(u, labels[u]);
  return b.build();
}

/// Small-graph corpus for kernel separation: every connected graph on up to
/// five nodes, every six-node tree, C6 and K6 (degree labels), and every
/// two-letter labeling of the connected three-node graphs up to isomorphism.
inline std::vector<Graph> kernel_corpus() {
  std::vector<Graph> out;
  for (std::size_t n = 1; n <= 5; ++n) {
    for (Graph& g : connected_graphs(n)) out.push_back(std::move(g));
  }
  for (Graph& g : connected_graphs(6)) {
    if (g.edge_count() == 5) out.push_back(std::move(g));
  }
  out.push_back(cycle_graph(6));
  out.push_back(complete_graph(6));
  std::vector<Graph> labeled;
  for (const Graph& g : connected_graphs(3)) {
    for (int m = 0; m < 8; ++m) {
      Graph h = with_labels(g, {7 + (m & 1), 7 + (m >> 1 & 1), 7 + (m >> 2 & 1)});
      if (std::none_of(labeled.begin(), labeled.end(), [&](const Graph& x) { return is_isomorphic(x, h); })) {
        labeled.push_back(std::move(h));
      }
    }
  }
  out.insert(out.end(), labeled.begin(), labeled.end());
  return out;
}

constexpr int kInf = std::numeric_limits<int>::max() / 4;

/// All-pairs distances by Floyd-Warshall on the adjacency matrix.
inline std::vector<std::vector<int>> floyd_warshall(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<int>> d(n, std::vector<int>(n, kInf));
  for (NodeId u = 0; u < n; ++u) {
    d[u][u] = 0;
    for (NodeId v : g.neighbors(u)) d[u][v] = 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    }
  }
  return d;
}

/// Graph with structural features of the given width filled in.
inline Graph with_structural(const Graph& g, std::size_t dim, std::uint64_t seed) {
  return FeatureProvider::structural(dim, seed).apply(g);
}

/// Graph whose node and edge features are independent Gaussian draws.
inline Graph with_random_features(const Graph& g, std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  Matrix nodes(g.node_count(), dim), edges(g.edge_count(), dim);
  for (double& v : nodes.flat()) v = standard_normal(rng);
  for (double& v : edges.flat()) v = standard_normal(rng);
  return g.with_features(std::move(nodes), std::move(edges));
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

struct GradCheck {
  double max_rel = 0.0;
  std::string worst;
  std::size_t checked = 0;
};

/// Central differences of `loss` against `analytic` for every scalar of every
/// non-frozen tensor. Relative error uses max(|a|, |n|, floor).
inline GradCheck check_gradients(ParamStore& params, const ParamStore& analytic, const std::function<double()>& loss,
                                 double step = 1e-5, double floor = 1e-5) {
  GradCheck out;
  for (std::size_t t = 0; t < params.size(); ++t) {
    Tensor& p = params.at(t);
    if (p.frozen) continue;
    const auto g = analytic.at(t).value.flat();
    auto v = p.value.flat();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double keep = v[i];
      v[i] = keep + step;
      const double up = loss();
      v[i] = keep - step;
      const double down = loss();
      v[i] = keep;
      const double num = (up - down) / (2.0 * step);
      const double rel = std::abs(num - g[i]) / std::max({std::abs(num), std::abs(g[i]), floor});
      ++out.checked;
      if (rel > out.max_rel) {
        out.max_rel = rel;
        out.worst = p.name + "[" + std::to_string(i) + "] analytic " + std::to_string(g[i]) + " numeric " +
                    std::to_string(num);
      }
    }
  }
  return out;
}

/// Adds N(0, scale^2) noise to every tensor so no parameter sits at a
/// symmetric initial value.
inline void perturb(ParamStore& params, std::uint64_t seed, double scale = 0.1) {
  Rng rng(seed);
  for (std::size_t t = 0; t < params.size(); ++t) {
    for (double& v : params.at(t).value.flat()) v += scale * standard_normal(rng);
  }
}

/// Walk sample of k walks of length l with random node and edge features.
inline EncodedSample random_sample(const Graph& featured, NodeId root, std::size_t k, std::size_t l,
                                   std::uint64_t seed, MaskMode mode = MaskMode::per_walk) {
  WalkParams wp;
  wp.walks = k;
  wp.length = l;
  wp.seed = seed;
  Rng rng(derive_seed(seed, {99}));
  std::vector<double> v(featured.feature_dim());
  for (double& x : v) x = standard_normal(rng);
  return build_sequence(featured, sample_walks(featured, root, wp), v, mode);
}

}  // namespace rwgf::test
