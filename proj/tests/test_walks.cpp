// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>

#include "rwgf/error.hpp"
#include "support.hpp"

using namespace rwgf;
using namespace rwgf::test;

namespace {

// Next-step law written out from the walk definition.
std::map<NodeId, double> expected_law(const Graph& g, std::optional<NodeId> prev, NodeId cur, double p, double q) {
  std::map<NodeId, double> w;
  double total = 0.0;
  for (NodeId x : g.neighbors(cur)) {
    double v = 1.0;
    if (prev) v = x == *prev ? 1.0 / p : (g.has_edge(x, *prev) ? 1.0 : 1.0 / q);
    w[x] = v;
    total += v;
  }
  for (auto& [x, v] : w) v /= total;
  return w;
}

}  // namespace

TEST_CASE("transition weights follow the definition") {
  const Graph g = from_edges(5, {{0, 1}, {1, 2}, {1, 3}, {0, 3}, {1, 4}});
  const auto w = transition_weights(g, NodeId{0}, 1, 2.0, 0.5);
  // neighbors of 1: 0 (return), 2 (far), 3 (adjacent to 0), 4 (far)
  REQUIRE(w.size() == 4);
  CHECK(w[0] == doctest::Approx(0.5));
  CHECK(w[1] == doctest::Approx(2.0));
  CHECK(w[2] == doctest::Approx(1.0));
  CHECK(w[3] == doctest::Approx(2.0));
  const auto first = transition_weights(g, std::nullopt, 1, 2.0, 0.5);
  for (double v : first) CHECK(v == doctest::Approx(first[0]));
}

TEST_CASE("sampled steps match the law in total variation") {
  const Graph g = random_connected(15, 5, 9, 1.5);
  Rng rng(1);
  for (auto [p, q] : {std::pair{1.0, 0.1}, std::pair{1.0, 1.0}, std::pair{4.0, 0.5}}) {
    for (NodeId cur = 0; cur < 15; cur += 4) {
      const NodeId prev = g.neighbors(cur)[0];
      const auto law = expected_law(g, prev, cur, p, q);
      std::map<NodeId, double> freq;
      const int draws = 40000;
      for (int i = 0; i < draws; ++i) freq[g.neighbors(cur)[sample_step(g, prev, cur, p, q, rng)]] += 1.0 / draws;
      double tv = 0.0;
      for (const auto& [x, v] : law) tv += std::abs(v - freq[x]);
      CHECK(tv / 2.0 < 0.02);
    }
  }
}

TEST_CASE("path graph momentum: continue outward with probability 10/11") {
  const Graph g = path_graph(9);
  WalkParams wp;
  wp.p = 1.0;
  wp.q = 0.1;
  wp.walks = 20000;
  wp.length = 2;
  wp.seed = 5;
  const WalkSet ws = sample_walks(g, 4, wp);
  int outward = 0;
  for (const auto& w : ws.walks) outward += w[1] != 4 ? 1 : 0;
  CHECK(static_cast<double>(outward) / 20000.0 == doctest::Approx(10.0 / 11.0).epsilon(0.02));
}

TEST_CASE("walk sets are consistent with the graph and BFS") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = random_connected(25, 4, seed);
    const auto fw = floyd_warshall(g);
    WalkParams wp;
    wp.walks = 5;
    wp.length = 7;
    wp.seed = seed;
    const NodeId root = static_cast<NodeId>(seed % 25);
    const WalkSet ws = sample_walks(g, root, wp);
    REQUIRE(ws.walk_count() == 5);
    for (std::size_t r = 0; r < 5; ++r) {
      NodeId prev = root;
      for (std::size_t s = 0; s < 7; ++s) {
        const NodeId x = ws.walks[r][s];
        REQUIRE(g.edge_id(prev, x) == ws.walk_edges[r][s]);
        REQUIRE(static_cast<int>(ws.positions[r][s]) == fw[root][x]);
        prev = x;
      }
    }
  }
}

TEST_CASE("walks are reproducible and isolated roots are rejected") {
  const Graph g = random_connected(20, 4, 3);
  WalkParams wp;
  wp.seed = 77;
  const WalkSet a = sample_walks(g, 2, wp), b = sample_walks(g, 2, wp);
  CHECK(a.walks == b.walks);
  wp.seed = 78;
  CHECK(sample_walks(g, 2, wp).walks != a.walks);
  const Graph lonely = from_edges(3, {{0, 1}});
  try {
    sample_walks(lonely, 2, wp);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::isolated_node);
  }
}

TEST_CASE("per-walk mask structure") {
  const AttentionMask m = build_mask(3, 2, MaskMode::per_walk);
  REQUIRE(m.size() == 8);
  for (std::size_t r = 0; r < 8; ++r) {
    for (std::size_t c = 0; c < 8; ++c) {
      bool expect;
      if (r < 2) {
        expect = true;
      } else if (c < 2) {
        expect = true;
      } else {
        expect = (r - 2) / 2 == (c - 2) / 2;
      }
      CHECK(m(r, c) == expect);
    }
  }
  CHECK(build_mask(3, 2, MaskMode::full).nonzeros() == 64);
  CHECK(build_mask(1, 4, MaskMode::per_walk) == build_mask(1, 4, MaskMode::full));
}

TEST_CASE("sequence layout") {
  const Graph g = with_random_features(random_connected(12, 3, 4), 3, 4);
  WalkParams wp;
  wp.walks = 3;
  wp.length = 4;
  wp.seed = 2;
  const WalkSet ws = sample_walks(g, 5, wp);
  const std::vector<double> v{0.5, -1.0, 2.0};
  const EncodedSample s = build_sequence(g, ws, v);
  REQUIRE(s.length() == 2 + 3 * 4);
  CHECK(s.kinds[0] == TokenKind::dataset);
  CHECK(s.kinds[1] == TokenKind::root);
  CHECK(s.positions[0] == 0);
  CHECK(s.positions[1] == 0);
  CHECK(max_abs_diff(s.tokens.row(0), v) == 0.0);
  CHECK(max_abs_diff(s.tokens.row(1), g.node_features().row(5)) == 0.0);
  CHECK(s.window_count == 4);
  for (std::size_t r = 0; r < 3; ++r) {
    CHECK(s.walk_spans[r] == std::pair<std::size_t, std::size_t>{2 + 4 * r, 6 + 4 * r});
    for (std::size_t j = 0; j < 4; ++j) {
      const std::size_t t = 2 + 4 * r + j;
      CHECK(s.kinds[t] == TokenKind::node);
      CHECK(s.steps[t] == static_cast<int>(j + 1));
      CHECK(s.node_ids[t] == ws.walks[r][j]);
      CHECK(max_abs_diff(s.tokens.row(t), g.node_features().row(ws.walks[r][j])) == 0.0);
      CHECK(max_abs_diff(s.edges.row(t), g.edge_features().row(ws.walk_edges[r][j])) == 0.0);
    }
  }
  CHECK(max_abs_diff(s.edges.row(0), std::vector<double>(3, 0.0)) == 0.0);
  CHECK_THROWS_AS(build_sequence(g, ws, std::vector<double>{1.0}), Error);
}

TEST_CASE("degenerate and neighbor sequences") {
  const Graph g = with_random_features(from_edges(5, {{0, 1}, {1, 2}, {1, 3}, {3, 4}}), 2, 1);
  const std::vector<double> v{0.0, 1.0};
  const EncodedSample d = build_degenerate_sequence(g, 0, 4, v);
  CHECK(d.length() == 2);
  CHECK(d.window_count == 4);

  const std::vector<std::size_t> fanouts{2, 2};
  CHECK(neighbor_budget(fanouts) == 2 + 2 + 4);
  const EncodedSample n = build_neighbor_sequence(g, 1, fanouts, 3, v);
  REQUIRE(n.length() == 8);
  std::size_t hop1 = 0;
  for (std::size_t t = 2; t < n.length(); ++t) {
    if (n.kinds[t] == TokenKind::pad) {
      CHECK(n.steps[t] == -1);
      for (std::size_t c = 0; c < n.length(); ++c) CHECK(n.mask(c, t) == (c == t));
      continue;
    }
    if (n.positions[t] == 1) {
      ++hop1;
      CHECK(g.has_edge(1, static_cast<NodeId>(n.node_ids[t])));
    }
  }
  CHECK(hop1 == 2);
  const EncodedSample again = build_neighbor_sequence(g, 1, fanouts, 3, v);
  CHECK(again.node_ids == n.node_ids);
}
