// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <array>
#include <string>

#include "rwgf/error.hpp"
#include "rwgf/graph.hpp"

namespace rwgf {

namespace {

struct SmallGraph {
  std::size_t n = 0;
  std::array<std::array<bool, kMaxIsomorphismNodes>, kMaxIsomorphismNodes> adj{};
  std::array<int, kMaxIsomorphismNodes> degree{};
  std::array<int, kMaxIsomorphismNodes> label{};
};

SmallGraph pack(const Graph& g, bool use_labels) {
  if (g.node_count() > kMaxIsomorphismNodes) {
    fail(Errc::too_large, std::to_string(g.node_count()) + " nodes exceeds isomorphism limit");
  }
  SmallGraph s;
  s.n = g.node_count();
  for (NodeId u = 0; u < s.n; ++u) {
    s.degree[u] = static_cast<int>(g.degree(u));
    s.label[u] = use_labels ? g.label(u) : 0;
    for (NodeId v : g.neighbors(u)) s.adj[u][v] = true;
  }
  return s;
}

// Maps nodes of a (in order) onto unused nodes of b, checking adjacency
// against every already-mapped node.
bool extend(const SmallGraph& a, const SmallGraph& b, std::size_t depth,
            std::array<int, kMaxIsomorphismNodes>& map, std::array<bool, kMaxIsomorphismNodes>& used) {
  if (depth == a.n) return true;
  for (std::size_t cand = 0; cand < b.n; ++cand) {
    if (used[cand] || a.degree[depth] != b.degree[cand] || a.label[depth] != b.label[cand]) continue;
    bool ok = true;
    for (std::size_t prev = 0; prev < depth && ok; ++prev) {
      ok = a.adj[depth][prev] == b.adj[cand][static_cast<std::size_t>(map[prev])];
    }
    if (!ok) continue;
    map[depth] = static_cast<int>(cand);
    used[cand] = true;
    if (extend(a, b, depth + 1, map, used)) return true;
    used[cand] = false;
  }
  return false;
}

}  // namespace

bool is_isomorphic(const Graph& a, const Graph& b) {
  const bool use_labels = a.has_labels() || b.has_labels();
  const SmallGraph sa = pack(a, use_labels);
  const SmallGraph sb = pack(b, use_labels);
  if (sa.n != sb.n || a.edge_count() != b.edge_count()) return false;

  auto signature = [](const SmallGraph& s) {
    std::vector<std::pair<int, int>> sig;
    for (std::size_t i = 0; i < s.n; ++i) sig.emplace_back(s.degree[i], s.label[i]);
    std::sort(sig.begin(), sig.end());
    return sig;
  };
  if (signature(sa) != signature(sb)) return false;

  std::array<int, kMaxIsomorphismNodes> map{};
  std::array<bool, kMaxIsomorphismNodes> used{};
  return extend(sa, sb, 0, map, used);
}

bool is_isomorphic(const Ball& a, const Ball& b) { return is_isomorphic(a.local, b.local); }

}  // namespace rwgf
