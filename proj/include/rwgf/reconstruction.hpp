// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rwgf/graph.hpp"
#include "rwgf/walks.hpp"

namespace rwgf {

/// A walk as seen by the theory code: the root followed by every step.
std::vector<NodeId> rooted_walk(const WalkSet& ws, std::size_t r);
std::vector<Hop> rooted_positions(const WalkSet& ws, std::size_t r);

/// Upper bound on SP distances from index gaps along walks.
class PseudoSPOracle {
 public:
  enum class Occurrence { first, all };

  explicit PseudoSPOracle(std::vector<std::vector<NodeId>> walks, Occurrence occurrence = Occurrence::first);
  static PseudoSPOracle from_walk_set(const WalkSet& ws, Occurrence occurrence = Occurrence::first);

  /// Minimum index gap over walks holding both nodes; empty if none does.
  std::optional<Hop> distance(NodeId a, NodeId b) const;

 private:
  std::vector<std::vector<NodeId>> walks_;
  std::vector<std::unordered_map<NodeId, std::vector<std::size_t>>> index_;
  Occurrence occurrence_;
};

/// Maximal [begin, end) ranges where positions rise by exactly 1 per step;
/// ranges shorter than 2 are omitted.
std::vector<std::pair<std::size_t, std::size_t>> monotone_segments(std::span<const Hop> positions);

struct SPTriple {
  NodeId a = 0;  // a <= b
  NodeId b = 0;
  Hop distance = 0;

  auto operator<=>(const SPTriple&) const = default;
};

/// Every within-segment pair of every monotone segment, deduplicated and sorted.
std::vector<SPTriple> exact_sp_pairs(const WalkSet& ws);

struct BallCoverage {
  std::size_t nodes_found = 0, nodes_true = 0;
  std::size_t edges_found = 0, edges_true = 0;
  bool sound = true;     // estimate is a subgraph of the true ball
  bool complete = false; // estimate equals the true ball
};

struct BallEstimate {
  Ball ball;
  BallCoverage coverage;
};

/// Nodes: the root plus walk nodes at position <= r. Edges: traversed walk
/// edges with both endpoints among those nodes.
BallEstimate reconstruct_ball(const Graph& g, const WalkSet& ws, Hop r);

struct HittingEstimate {
  Hop radius = 0;
  std::size_t trials = 0;
  std::size_t censored = 0;  // runs that hit the cap
  std::size_t cap = 0;
  double mean = 0.0;         // over uncensored runs
  double stddev = 0.0;
  double ci95 = 0.0;         // half width
};

/// Monte Carlo first time a walk from u reaches SP distance r. Throws
/// NoNodeAtRadius when nothing lies at distance exactly r.
HittingEstimate hitting_time(const Graph& g, NodeId u, Hop r, const WalkParams& params, std::size_t trials,
                             double cap_factor = 100.0);

/// Exact expected hitting time from node 0 to node r on the path 0 - 1 - ... - r
/// under the (p, q) walk with a uniform first step, by solving the
/// first-step equations of the (node, direction) chain.
double path_hitting_time_exact(Hop r, double p, double q);

/// 1/q >= ((C + 1)/(C - 1)) (1/p) + d/(C - 1).
bool linear_hitting_condition(double p, double q, double max_degree, double c);

struct CoverageReport {
  std::size_t n = 0;
  Hop r = 0;
  double order_nr = 0.0;
  double order_n2_r2 = 0.0;
  double analytic = 0.0;  // max of the two orders
  double empirical_mean = 0.0;
  double empirical_ci95 = 0.0;
  std::size_t trials = 0;
  std::size_t censored = 0;
};

/// Analytic orders n r and n^2 / r^2 only.
CoverageReport coverage_orders(std::size_t n, Hop r);

/// Adds the mean number of walks of `params.length` steps needed before
/// every node of B(u, r) has been visited.
CoverageReport coverage_walk_count(const Graph& g, NodeId u, Hop r, const WalkParams& params, std::size_t trials,
                                   std::size_t max_walks = 1'000'000);

}  // namespace rwgf
