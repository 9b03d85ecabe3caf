// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#include "rwgf/sp_kernel.hpp"

#include <algorithm>
#include <cmath>

#include "rwgf/error.hpp"
#include "rwgf/parallel.hpp"

namespace rwgf {

SPTripletSet sp_triplets(const Graph& g) {
  SPTripletSet out;
  const std::size_t n = g.node_count();
  auto label = [&](NodeId u) { return g.has_labels() ? g.label(u) : static_cast<int>(g.degree(u)); };
  for (NodeId u = 0; u < n; ++u) {
    const auto dist = bfs_distances(g, u);
    for (NodeId v = u + 1; v < n; ++v) {
      if (!dist[v]) {
        fail(Errc::disconnected_ball,
             "nodes " + std::to_string(u) + " and " + std::to_string(v) + " are disconnected inside the ball");
      }
      const int la = label(u), lb = label(v);
      ++out[{std::min(la, lb), std::max(la, lb), *dist[v]}];
    }
  }
  return out;
}

SPTripletSet sp_triplets(const Ball& b) { return sp_triplets(b.local); }

std::size_t triplet_count(const SPTripletSet& s) {
  std::size_t total = 0;
  for (const auto& [t, c] : s) total += c;
  return total;
}

double kernel(const SPTripletSet& a, const SPTripletSet& b) {
  const SPTripletSet& small = a.size() <= b.size() ? a : b;
  const SPTripletSet& large = a.size() <= b.size() ? b : a;
  double total = 0.0;
  for (const auto& [t, c] : small) {
    auto it = large.find(t);
    if (it != large.end()) total += static_cast<double>(c) * static_cast<double>(it->second);
  }
  return total;
}

double kernel(const Ball& a, const Ball& b) { return kernel(sp_triplets(a), sp_triplets(b)); }

Matrix gram(std::span<const SPTripletSet> sets) {
  const std::size_t n = sets.size();
  Matrix g(n, n);
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = 0; j <= i; ++j) g(i, j) = kernel(sets[i], sets[j]);
  });
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) g(i, j) = g(j, i);
  }
  return g;
}

Matrix gram(std::span<const Ball> balls) {
  std::vector<SPTripletSet> sets(balls.size());
  parallel_for(balls.size(), [&](std::size_t i) { sets[i] = sp_triplets(balls[i]); });
  return gram(std::span<const SPTripletSet>(sets));
}

double kernel_distance(const SPTripletSet& a, const SPTripletSet& b) {
  return std::sqrt(std::max(0.0, kernel(a, a) + kernel(b, b) - 2.0 * kernel(a, b)));
}

}  // namespace rwgf
