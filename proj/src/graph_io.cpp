// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#include "rwgf/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "rwgf/error.hpp"

namespace rwgf {

namespace {

struct PendingEdgeFeature {
  std::size_t line;
  NodeId u, v;
  std::vector<double> values;
};

[[noreturn]] void parse_fail(const std::string& source, std::size_t line, const std::string& msg) {
  fail(Errc::parse_error, source + ":" + std::to_string(line) + ": " + msg);
}

template <class T>
T read_value(std::istringstream& ss, const std::string& source, std::size_t line, const char* what) {
  T value{};
  if (!(ss >> value)) parse_fail(source, line, std::string("expected ") + what);
  return value;
}

std::vector<double> read_features(std::istringstream& ss, std::size_t dim, const std::string& source,
                                  std::size_t line) {
  std::vector<double> values(dim);
  for (auto& v : values) v = read_value<double>(ss, source, line, "feature value");
  std::string extra;
  if (ss >> extra) parse_fail(source, line, "expected " + std::to_string(dim) + " feature values");
  return values;
}

void expect_end(std::istringstream& ss, const std::string& source, std::size_t line) {
  std::string extra;
  if (ss >> extra) parse_fail(source, line, "unexpected token '" + extra + "'");
}

// Re-raises builder errors that carry no position with the line number attached.
template <class Fn>
auto at_line(const std::string& source, std::size_t line, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.code(), source + ":" + std::to_string(line) + ": " + e.what());
  }
}

}  // namespace

Graph parse_graph(std::istream& in, const std::string& source) {
  std::optional<GraphBuilder> builder;
  std::vector<PendingEdgeFeature> edge_feats;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    std::istringstream ss(text);
    std::string kind;
    if (!(ss >> kind) || kind[0] == '#') continue;
    if (kind == "graph") {
      if (builder) parse_fail(source, line, "duplicate header");
      const auto n = read_value<long long>(ss, source, line, "node count");
      const auto dim = read_value<long long>(ss, source, line, "feature dim");
      const auto tag = read_value<int>(ss, source, line, "dataset tag");
      expect_end(ss, source, line);
      if (n < 0 || dim < 0) parse_fail(source, line, "negative size in header");
      builder.emplace(static_cast<std::size_t>(n), static_cast<std::size_t>(dim), tag);
      continue;
    }
    if (!builder) parse_fail(source, line, "missing 'graph' header");
    if (kind == "edge") {
      const auto u = read_value<NodeId>(ss, source, line, "node id");
      const auto v = read_value<NodeId>(ss, source, line, "node id");
      expect_end(ss, source, line);
      at_line(source, line, [&] { return builder->add_edge(u, v); });
    } else if (kind == "nodefeat") {
      const auto u = read_value<NodeId>(ss, source, line, "node id");
      auto values = read_features(ss, builder->feature_dim(), source, line);
      at_line(source, line, [&] { builder->set_node_feature(u, values); return 0; });
    } else if (kind == "edgefeat") {
      const auto u = read_value<NodeId>(ss, source, line, "node id");
      const auto v = read_value<NodeId>(ss, source, line, "node id");
      edge_feats.push_back({line, u, v, read_features(ss, builder->feature_dim(), source, line)});
    } else if (kind == "label") {
      const auto u = read_value<NodeId>(ss, source, line, "node id");
      const auto value = read_value<int>(ss, source, line, "label");
      expect_end(ss, source, line);
      at_line(source, line, [&] { builder->set_label(u, value); return 0; });
    } else {
      parse_fail(source, line, "unknown record '" + kind + "'");
    }
  }
  if (!builder) fail(Errc::parse_error, source + ": empty input (missing 'graph' header)");

  // Edge features may precede their edge line; resolve after all edges are known.
  std::map<EdgeId, const PendingEdgeFeature*> seen;
  for (const auto& f : edge_feats) {
    const auto id = builder->find_edge(f.u, f.v);
    if (!id) parse_fail(source, f.line, "edgefeat for unknown edge " + std::to_string(f.u) + " " + std::to_string(f.v));
    if (auto it = seen.find(*id); it != seen.end()) {
      if (it->second->values != f.values) {
        fail(Errc::symmetry_violation, source + ":" + std::to_string(f.line) + ": edge " + std::to_string(f.u) + " " +
                                           std::to_string(f.v) + " has conflicting features (first at line " +
                                           std::to_string(it->second->line) + ")");
      }
      continue;
    }
    seen.emplace(*id, &f);
    builder->set_edge_feature(*id, f.values);
  }
  return builder->build();
}

Graph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::io_error, "cannot open graph file " + path.string());
  return parse_graph(in, path.string());
}

namespace {

void write_row(std::ostream& out, std::span<const double> row) {
  char buf[32];
  for (double v : row) {
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    out << ' ' << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf));
  }
}

bool is_zero(std::span<const double> row) {
  for (double v : row) {
    if (v != 0.0) return false;
  }
  return true;
}

}  // namespace

void write_graph(std::ostream& out, const Graph& g) {
  out << "graph " << g.node_count() << ' ' << g.feature_dim() << ' ' << g.dataset_tag() << '\n';
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.endpoints(e);
    out << "edge " << u << ' ' << v << '\n';
  }
  for (NodeId u = 0; u < g.node_count(); ++u) {
    if (g.feature_dim() == 0 || is_zero(g.node_features().row(u))) continue;
    out << "nodefeat " << u;
    write_row(out, g.node_features().row(u));
    out << '\n';
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (g.feature_dim() == 0 || is_zero(g.edge_features().row(e))) continue;
    auto [u, v] = g.endpoints(e);
    out << "edgefeat " << u << ' ' << v;
    write_row(out, g.edge_features().row(e));
    out << '\n';
  }
  if (g.has_labels()) {
    for (NodeId u = 0; u < g.node_count(); ++u) out << "label " << u << ' ' << g.label(u) << '\n';
  }
}

void save_graph(const std::filesystem::path& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) fail(Errc::io_error, "cannot write graph file " + path.string());
  write_graph(out, g);
}

}  // namespace rwgf
