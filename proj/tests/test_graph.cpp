// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "rwgf/error.hpp"
#include "rwgf/graph_io.hpp"
#include "support.hpp"

using namespace rwgf;
using namespace rwgf::test;

TEST_CASE("sp_distance examples") {
  CHECK(sp_distance(path_graph(4), 0, 3) == 3u);
  CHECK(sp_distance(cycle_graph(5), 0, 3) == 2u);
  const Graph g = random_connected(12, 3, 5);
  for (NodeId u = 0; u < 12; ++u) CHECK(sp_distance(g, u, u) == 0u);
  const Graph split = from_edges(4, {{0, 1}, {2, 3}});
  CHECK_FALSE(sp_distance(split, 0, 3).has_value());
  CHECK_THROWS_AS(sp_distance(split, 0, 4), Error);
}

TEST_CASE("sp_distance agrees with Floyd-Warshall and the triangle inequality") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = random_connected(5 + seed % 20, 2 + seed % 4, seed);
    const auto fw = floyd_warshall(g);
    const SPOracle oracle(g);
    const std::size_t n = g.node_count();
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = 0; v < n; ++v) {
        REQUIRE(static_cast<int>(*sp_distance(g, u, v)) == fw[u][v]);
        REQUIRE(static_cast<int>(*oracle.distance(u, v)) == fw[u][v]);
        for (NodeId w = 0; w < n; ++w) REQUIRE(fw[u][w] <= fw[u][v] + fw[v][w]);
      }
    }
  }
}

TEST_CASE("ball examples") {
  const Ball s = ball(star_graph(4), 0, 1);
  CHECK(s.nodes.size() == 5);
  CHECK(s.edges.size() == 4);
  const Ball p = ball(path_graph(5), 2, 1);
  CHECK(p.nodes == std::vector<NodeId>{1, 2, 3});
  CHECK(p.edges.size() == 2);
  CHECK(p.local.node_count() == 3);
  CHECK(p.local.edge_count() == 2);
  const Ball zero = ball(complete_graph(4), 3, 0);
  CHECK(zero.nodes == std::vector<NodeId>{3});
  CHECK(zero.edges.empty());
  CHECK_THROWS_AS(ball(path_graph(3), 7, 1), Error);
}

TEST_CASE("balls are exact, induced and nested") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = random_connected(20, 4, seed + 100);
    const auto fw = floyd_warshall(g);
    for (NodeId u = 0; u < 20; u += 3) {
      std::vector<NodeId> prev;
      for (Hop r = 0; r <= 5; ++r) {
        const Ball b = ball(g, u, r);
        std::vector<NodeId> expect;
        for (NodeId v = 0; v < 20; ++v) {
          if (fw[u][v] <= static_cast<int>(r)) expect.push_back(v);
        }
        REQUIRE(b.nodes == expect);
        std::set<NodeId> inside(expect.begin(), expect.end());
        std::size_t induced = 0;
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
          auto [a, c] = g.endpoints(e);
          induced += inside.count(a) && inside.count(c) ? 1 : 0;
        }
        REQUIRE(b.edges.size() == induced);
        REQUIRE(std::includes(b.nodes.begin(), b.nodes.end(), prev.begin(), prev.end()));
        prev = b.nodes;
      }
    }
  }
}

TEST_CASE("truncated_bfs") {
  const auto m = truncated_bfs(path_graph(4), 0, 2);
  CHECK(m.size() == 3);
  CHECK(m.at(0) == 0);
  CHECK(m.at(1) == 1);
  CHECK(m.at(2) == 2);
  CHECK(truncated_bfs(path_graph(4), 2, 0).size() == 1);
  CHECK(truncated_bfs(complete_graph(4), 0, 1).size() == 4);
}

TEST_CASE("isomorphism examples") {
  CHECK(is_isomorphic(complete_graph(3), complete_graph(3)));
  CHECK_FALSE(is_isomorphic(complete_graph(3), path_graph(3)));
  CHECK_FALSE(is_isomorphic(cycle_graph(4), path_graph(4)));
  const Graph a = from_edges(4, {{0, 1}, {1, 2}, {1, 3}});
  const Graph b = from_edges(4, {{3, 2}, {2, 0}, {2, 1}});
  CHECK(is_isomorphic(a, b));
  CHECK_FALSE(is_isomorphic(a.with_labels({0, 1, 0, 0}), b.with_labels({1, 0, 0, 0})));
  CHECK(is_isomorphic(a.with_labels({0, 1, 0, 0}), b.with_labels({0, 0, 1, 0})));
  CHECK_THROWS_AS(is_isomorphic(path_graph(11), path_graph(11)), Error);
}

TEST_CASE("builder rejects self loops and duplicates") {
  GraphBuilder b(3);
  b.add_edge(0, 1);
  CHECK_THROWS_AS(b.add_edge(1, 0), Error);
  CHECK_THROWS_AS(b.add_edge(2, 2), Error);
  CHECK_THROWS_AS(b.add_edge(0, 3), Error);
}

TEST_CASE("adjacency is symmetric and sorted") {
  const Graph g = random_connected(30, 5, 42);
  for (NodeId u = 0; u < 30; ++u) {
    const auto nb = g.neighbors(u);
    CHECK(std::is_sorted(nb.begin(), nb.end()));
    for (std::size_t i = 0; i < nb.size(); ++i) {
      CHECK(g.has_edge(nb[i], u));
      CHECK(g.incident_edges(u)[i] == *g.edge_id(u, nb[i]));
    }
  }
}

TEST_CASE("graph text format") {
  std::istringstream two("graph 2 0 0\nedge 0 1\n");
  const Graph g = parse_graph(two);
  CHECK(g.node_count() == 2);
  CHECK(g.neighbors(0).size() == 1);
  CHECK(g.neighbors(0)[0] == 1);
  CHECK(g.neighbors(1)[0] == 0);

  std::istringstream loop("graph 2 0 0\nedge 0 0\n");
  try {
    parse_graph(loop);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::self_loop);
  }
  std::istringstream dup("graph 3 0 0\nedge 0 1\nedge 1 0\n");
  CHECK_THROWS_AS(parse_graph(dup), Error);
  std::istringstream bad("graph 3 0 0\nedge 0 x\n");
  try {
    parse_graph(bad, "bad.graph");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::parse_error);
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }
}

TEST_CASE("save then load is the identity") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Graph g = with_random_features(random_connected(15, 4, seed), 3, seed).with_dataset_tag(2);
    std::vector<int> labels(15);
    for (int i = 0; i < 15; ++i) labels[i] = i % 3;
    g = g.with_labels(labels);
    std::stringstream ss;
    write_graph(ss, g);
    const Graph h = parse_graph(ss);
    CHECK(h.node_count() == g.node_count());
    CHECK(h.edge_count() == g.edge_count());
    CHECK(h.dataset_tag() == 2);
    CHECK(h.labels() == g.labels());
    for (EdgeId e = 0; e < g.edge_count(); ++e) CHECK(h.endpoints(e) == g.endpoints(e));
    CHECK(max_abs_diff(h.node_features().flat(), g.node_features().flat()) == 0.0);
    CHECK(max_abs_diff(h.edge_features().flat(), g.edge_features().flat()) == 0.0);
  }
}
