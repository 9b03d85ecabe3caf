// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#include "rwgf/reconstruction.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include "rwgf/error.hpp"
#include "rwgf/rng.hpp"

namespace rwgf {

std::vector<NodeId> rooted_walk(const WalkSet& ws, std::size_t r) {
  std::vector<NodeId> out{ws.root};
  out.insert(out.end(), ws.walks.at(r).begin(), ws.walks.at(r).end());
  return out;
}

std::vector<Hop> rooted_positions(const WalkSet& ws, std::size_t r) {
  std::vector<Hop> out{0};
  out.insert(out.end(), ws.positions.at(r).begin(), ws.positions.at(r).end());
  return out;
}

PseudoSPOracle::PseudoSPOracle(std::vector<std::vector<NodeId>> walks, Occurrence occurrence)
    : walks_(std::move(walks)), occurrence_(occurrence) {
  index_.resize(walks_.size());
  for (std::size_t w = 0; w < walks_.size(); ++w) {
    for (std::size_t i = 0; i < walks_[w].size(); ++i) index_[w][walks_[w][i]].push_back(i);
  }
}

PseudoSPOracle PseudoSPOracle::from_walk_set(const WalkSet& ws, Occurrence occurrence) {
  std::vector<std::vector<NodeId>> walks;
  for (std::size_t r = 0; r < ws.walk_count(); ++r) walks.push_back(rooted_walk(ws, r));
  return PseudoSPOracle(std::move(walks), occurrence);
}

std::optional<Hop> PseudoSPOracle::distance(NodeId a, NodeId b) const {
  std::optional<Hop> best;
  for (const auto& idx : index_) {
    auto ia = idx.find(a);
    auto ib = idx.find(b);
    if (ia == idx.end() || ib == idx.end()) continue;
    std::size_t gap;
    if (occurrence_ == Occurrence::first) {
      const std::size_t x = ia->second.front(), y = ib->second.front();
      gap = x > y ? x - y : y - x;
    } else {
      gap = static_cast<std::size_t>(-1);
      for (std::size_t x : ia->second) {
        for (std::size_t y : ib->second) gap = std::min(gap, x > y ? x - y : y - x);
      }
    }
    if (!best || gap < *best) best = static_cast<Hop>(gap);
  }
  return best;
}

std::vector<std::pair<std::size_t, std::size_t>> monotone_segments(std::span<const Hop> positions) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= positions.size(); ++i) {
    if (i < positions.size() && positions[i] == positions[i - 1] + 1) continue;
    if (i - begin >= 2) out.emplace_back(begin, i);
    begin = i;
  }
  return out;
}

std::vector<SPTriple> exact_sp_pairs(const WalkSet& ws) {
  std::set<SPTriple> found;
  for (std::size_t r = 0; r < ws.walk_count(); ++r) {
    const auto nodes = rooted_walk(ws, r);
    const auto pos = rooted_positions(ws, r);
    for (auto [begin, end] : monotone_segments(pos)) {
      for (std::size_t i = begin; i < end; ++i) {
        for (std::size_t j = i + 1; j < end; ++j) {
          found.insert({std::min(nodes[i], nodes[j]), std::max(nodes[i], nodes[j]), static_cast<Hop>(j - i)});
        }
      }
    }
  }
  return {found.begin(), found.end()};
}

BallEstimate reconstruct_ball(const Graph& g, const WalkSet& ws, Hop r) {
  g.check_node(ws.root);
  std::set<NodeId> nodes{ws.root};
  for (std::size_t w = 0; w < ws.walk_count(); ++w) {
    for (std::size_t s = 0; s < ws.walks[w].size(); ++s) {
      if (ws.positions[w][s] <= r) nodes.insert(ws.walks[w][s]);
    }
  }
  std::set<EdgeId> edges;
  for (std::size_t w = 0; w < ws.walk_count(); ++w) {
    for (EdgeId e : ws.walk_edges[w]) {
      auto [a, b] = g.endpoints(e);
      if (nodes.count(a) && nodes.count(b)) edges.insert(e);
    }
  }
  BallEstimate out{make_ball(g, ws.root, r, {nodes.begin(), nodes.end()}, {edges.begin(), edges.end()}), {}};
  const Ball truth = ball(g, ws.root, r);
  auto& c = out.coverage;
  c.nodes_found = out.ball.nodes.size();
  c.edges_found = out.ball.edges.size();
  c.nodes_true = truth.nodes.size();
  c.edges_true = truth.edges.size();
  c.sound = std::includes(truth.nodes.begin(), truth.nodes.end(), out.ball.nodes.begin(), out.ball.nodes.end()) &&
            std::includes(truth.edges.begin(), truth.edges.end(), out.ball.edges.begin(), out.ball.edges.end());
  c.complete = out.ball.nodes == truth.nodes && out.ball.edges == truth.edges;
  return out;
}

HittingEstimate hitting_time(const Graph& g, NodeId u, Hop r, const WalkParams& params, std::size_t trials,
                             double cap_factor) {
  g.check_node(u);
  if (r == 0) fail(Errc::config_error, "hitting radius must be at least 1");
  if (trials == 0) fail(Errc::config_error, "at least one trial is required");
  const auto dist = bfs_distances(g, u);
  if (std::none_of(dist.begin(), dist.end(), [&](const auto& d) { return d && *d == r; })) {
    fail(Errc::no_node_at_radius, "no node at distance " + std::to_string(r) + " from " + std::to_string(u));
  }
  HittingEstimate est;
  est.radius = r;
  est.trials = trials;
  est.cap = static_cast<std::size_t>(std::ceil(cap_factor * static_cast<double>(r) * static_cast<double>(r)));
  double sum = 0.0, sum_sq = 0.0;
  std::size_t reached = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(params.seed, {u, r, t}));
    std::optional<NodeId> prev;
    NodeId cur = u;
    std::size_t steps = 0;
    bool hit = false;
    while (steps < est.cap) {
      const std::size_t idx = sample_step(g, prev, cur, params.p, params.q, rng);
      prev = cur;
      cur = g.neighbors(cur)[idx];
      ++steps;
      if (*dist[cur] == r) {
        hit = true;
        break;
      }
    }
    if (!hit) {
      ++est.censored;
      continue;
    }
    ++reached;
    sum += static_cast<double>(steps);
    sum_sq += static_cast<double>(steps) * static_cast<double>(steps);
  }
  if (reached > 0) {
    est.mean = sum / static_cast<double>(reached);
    const double var = reached > 1 ? (sum_sq - sum * est.mean) / static_cast<double>(reached - 1) : 0.0;
    est.stddev = std::sqrt(std::max(0.0, var));
    est.ci95 = 1.96 * est.stddev / std::sqrt(static_cast<double>(reached));
  }
  return est;
}

double path_hitting_time_exact(Hop r, double p, double q) {
  if (r == 0) return 0.0;
  if (!(p > 0.0) || !(q > 0.0)) fail(Errc::config_error, "p and q must be positive");
  if (r == 1) return 1.0;
  // Unknowns: F(i) for i in 1..r-1 (arrived at i from i-1), B(i) for i in
  // 0..r-1 (arrived at i from i+1). Reaching r costs nothing further.
  const int n = static_cast<int>(r);
  auto f = [&](int i) { return i - 1; };
  auto b = [&](int i) { return (n - 1) + i; };
  const int size = 2 * n - 1;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(size, size);
  Eigen::VectorXd rhs = Eigen::VectorXd::Ones(size);
  const double keep = (1.0 / q) / (1.0 / p + 1.0 / q);  // keep moving the same way
  auto forward_to = [&](int row, int node, double prob) {
    if (node < n) a(row, f(node)) -= prob;
  };
  for (int i = 1; i < n; ++i) {
    a(f(i), f(i)) += 1.0;
    forward_to(f(i), i + 1, keep);
    a(f(i), b(i - 1)) -= 1.0 - keep;
    a(b(i), b(i)) += 1.0;
    forward_to(b(i), i + 1, 1.0 - keep);
    a(b(i), b(i - 1)) -= keep;
  }
  a(b(0), b(0)) += 1.0;
  forward_to(b(0), 1, 1.0);
  const Eigen::VectorXd x = a.partialPivLu().solve(rhs);
  return 1.0 + x(f(1));
}

bool linear_hitting_condition(double p, double q, double max_degree, double c) {
  if (!(c > 1.0)) return false;
  return 1.0 / q >= ((c + 1.0) / (c - 1.0)) * (1.0 / p) + max_degree / (c - 1.0);
}

CoverageReport coverage_orders(std::size_t n, Hop r) {
  if (n == 0 || r == 0) fail(Errc::config_error, "coverage needs n >= 1 and r >= 1");
  CoverageReport c;
  c.n = n;
  c.r = r;
  const double nd = static_cast<double>(n), rd = static_cast<double>(r);
  c.order_nr = nd * rd;
  c.order_n2_r2 = nd * nd / (rd * rd);
  c.analytic = std::max(c.order_nr, c.order_n2_r2);
  return c;
}

CoverageReport coverage_walk_count(const Graph& g, NodeId u, Hop r, const WalkParams& params, std::size_t trials,
                                   std::size_t max_walks) {
  params.validate();
  const Ball truth = ball(g, u, r);
  CoverageReport c = coverage_orders(truth.nodes.size(), r);
  c.trials = trials;
  if (g.degree(u) == 0) return c;
  double sum = 0.0, sum_sq = 0.0;
  std::size_t done = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    std::unordered_set<NodeId> missing(truth.nodes.begin(), truth.nodes.end());
    missing.erase(u);
    std::size_t walks = 0;
    while (!missing.empty() && walks < max_walks) {
      Rng rng(derive_seed(params.seed, {u, t, walks}));
      ++walks;
      std::optional<NodeId> prev;
      NodeId cur = u;
      for (std::size_t s = 0; s < params.length; ++s) {
        const std::size_t idx = sample_step(g, prev, cur, params.p, params.q, rng);
        prev = cur;
        cur = g.neighbors(cur)[idx];
        missing.erase(cur);
      }
    }
    if (!missing.empty()) {
      ++c.censored;
      continue;
    }
    ++done;
    sum += static_cast<double>(walks);
    sum_sq += static_cast<double>(walks) * static_cast<double>(walks);
  }
  if (done > 0) {
    c.empirical_mean = sum / static_cast<double>(done);
    const double var = done > 1 ? (sum_sq - sum * c.empirical_mean) / static_cast<double>(done - 1) : 0.0;
    c.empirical_ci95 = 1.96 * std::sqrt(std::max(0.0, var) / static_cast<double>(done));
  }
  return c;
}

}  // namespace rwgf
