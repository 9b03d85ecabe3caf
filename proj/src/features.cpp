// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#include "rwgf/features.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_set>

#include "rwgf/error.hpp"
#include "rwgf/rng.hpp"

namespace rwgf {

namespace {

constexpr char kMagic[8] = {'R', 'W', 'G', 'F', 'F', '3', '2', '\0'};

template <class T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    std::reverse(b, b + sizeof(T));
    std::memcpy(&v, b, sizeof(T));
  }
  return v;
}

Matrix read_binary(std::ifstream& in, const std::filesystem::path& path) {
  char magic[8];
  std::uint64_t rows = 0, dim = 0;
  in.read(magic, 8);
  in.read(reinterpret_cast<char*>(&rows), 8);
  in.read(reinterpret_cast<char*>(&dim), 8);
  if (!in || std::memcmp(magic, kMagic, 8) != 0) fail(Errc::parse_error, path.string() + ": bad feature header");
  rows = to_little(rows);
  dim = to_little(dim);
  Matrix m(rows, dim);
  std::vector<float> buf(dim);
  for (std::uint64_t r = 0; r < rows; ++r) {
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(dim * sizeof(float)));
    if (!in) fail(Errc::parse_error, path.string() + ": truncated at row " + std::to_string(r));
    for (std::uint64_t c = 0; c < dim; ++c) m(r, c) = static_cast<double>(to_little(buf[c]));
  }
  return m;
}

Matrix read_csv(std::ifstream& in, const std::filesystem::path& path) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        fail(Errc::parse_error, path.string() + ":" + std::to_string(lineno) + ": bad value '" + cell + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      fail(Errc::parse_error, path.string() + ":" + std::to_string(lineno) + ": ragged row");
    }
    rows.push_back(std::move(row));
  }
  Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  return m;
}

void normalize(std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  if (s <= 0.0) return;
  const double inv = 1.0 / std::sqrt(s);
  for (double& x : v) x *= inv;
}

Matrix gaussian(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  Rng rng(seed);
  Matrix m(rows, cols);
  for (double& x : m.flat()) x = standard_normal(rng);
  return m;
}

}  // namespace

Matrix read_feature_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_error, "cannot open feature file " + path.string());
  if (path.extension() == ".f32bin") return read_binary(in, path);
  return read_csv(in, path);
}

void write_feature_file(const std::filesystem::path& path, const Matrix& m) {
  if (path.extension() == ".f32bin") {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::io_error, "cannot write " + path.string());
    const std::uint64_t rows = to_little<std::uint64_t>(m.rows());
    const std::uint64_t dim = to_little<std::uint64_t>(m.cols());
    out.write(kMagic, 8);
    out.write(reinterpret_cast<const char*>(&rows), 8);
    out.write(reinterpret_cast<const char*>(&dim), 8);
    for (double v : m.flat()) {
      const float f = to_little(static_cast<float>(v));
      out.write(reinterpret_cast<const char*>(&f), sizeof f);
    }
    return;
  }
  std::ofstream out(path);
  if (!out) fail(Errc::io_error, "cannot write " + path.string());
  out.precision(9);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? "," : "") << m(r, c);
    out << '\n';
  }
}

std::vector<double> structural_stats(const Graph& g, NodeId u) {
  auto nbrs = g.neighbors(u);
  const double deg = static_cast<double>(nbrs.size());
  std::size_t links = 0;
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    for (std::size_t j = i + 1; j < nbrs.size(); ++j) links += g.has_edge(nbrs[i], nbrs[j]) ? 1 : 0;
  }
  const double clustering = nbrs.size() < 2 ? 0.0 : 2.0 * static_cast<double>(links) / (deg * (deg - 1.0));
  std::unordered_set<NodeId> two_hop;
  for (NodeId v : nbrs) {
    for (NodeId w : g.neighbors(v)) {
      if (w != u && !std::binary_search(nbrs.begin(), nbrs.end(), w)) two_hop.insert(w);
    }
  }
  return {deg, clustering, static_cast<double>(two_hop.size()), std::log1p(deg)};
}

FeatureProvider FeatureProvider::structural(std::size_t dim, std::uint64_t seed) {
  if (dim == 0) fail(Errc::config_error, "feature dim must be positive");
  FeatureProvider p;
  p.mode_ = FeatureMode::structural;
  p.dim_ = dim;
  p.seed_ = seed;
  p.normalize_ = true;
  p.node_projection_ = gaussian(4, dim, substream(seed, "features.node"));
  p.edge_projection_ = gaussian(2, dim, substream(seed, "features.edge"));
  return p;
}

FeatureProvider FeatureProvider::from_files(Matrix nodes, std::optional<Matrix> edges,
                                            std::optional<Matrix> datasets, bool normalize_rows,
                                            std::uint64_t seed) {
  if (nodes.cols() == 0) fail(Errc::config_error, "node feature file has zero columns");
  if ((edges && edges->cols() != nodes.cols()) || (datasets && datasets->cols() != nodes.cols())) {
    fail(Errc::dimension_mismatch, "feature files disagree on dimension");
  }
  FeatureProvider p;
  p.mode_ = FeatureMode::from_file;
  p.dim_ = nodes.cols();
  p.seed_ = seed;
  p.normalize_ = normalize_rows;
  p.nodes_ = std::move(nodes);
  p.edges_ = std::move(edges);
  p.datasets_ = std::move(datasets);
  return p;
}

std::vector<double> FeatureProvider::finish(std::vector<double> v) const {
  if (normalize_) normalize(v);
  return v;
}

std::vector<double> FeatureProvider::node_feature(const Graph& g, NodeId u) const {
  g.check_node(u);
  if (mode_ == FeatureMode::from_file) {
    if (u >= nodes_.rows()) fail(Errc::missing_feature, "no feature row for node " + std::to_string(u));
    auto row = nodes_.row(u);
    return finish({row.begin(), row.end()});
  }
  const auto stats = structural_stats(g, u);
  std::vector<double> v(dim_, 0.0);
  for (std::size_t i = 0; i < stats.size(); ++i) {
    for (std::size_t c = 0; c < dim_; ++c) v[c] += stats[i] * node_projection_(i, c);
  }
  return finish(std::move(v));
}

std::vector<double> FeatureProvider::edge_feature(const Graph& g, EdgeId e) const {
  auto [a, b] = g.endpoints(e);
  if (mode_ == FeatureMode::from_file) {
    if (!edges_) return std::vector<double>(dim_, 0.0);
    if (e >= edges_->rows()) fail(Errc::missing_feature, "no feature row for edge " + std::to_string(e));
    auto row = edges_->row(e);
    return finish({row.begin(), row.end()});
  }
  const double da = static_cast<double>(g.degree(a));
  const double db = static_cast<double>(g.degree(b));
  const double stats[2] = {std::min(da, db), std::max(da, db)};
  std::vector<double> v(dim_, 0.0);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t c = 0; c < dim_; ++c) v[c] += stats[i] * edge_projection_(i, c);
  }
  return finish(std::move(v));
}

std::vector<double> FeatureProvider::dataset_feature(int tag) const {
  if (tag < 0) fail(Errc::invalid_id, "dataset tag " + std::to_string(tag));
  if (mode_ == FeatureMode::from_file && datasets_) {
    if (static_cast<std::size_t>(tag) >= datasets_->rows()) {
      fail(Errc::missing_feature, "no feature row for dataset tag " + std::to_string(tag));
    }
    auto row = datasets_->row(static_cast<std::size_t>(tag));
    return finish({row.begin(), row.end()});
  }
  Rng rng(derive_seed(substream(seed_, "features.dataset"), {static_cast<std::uint64_t>(tag)}));
  std::vector<double> v(dim_);
  for (double& x : v) x = standard_normal(rng);
  normalize(v);
  return v;
}

Graph FeatureProvider::apply(const Graph& g) const {
  Matrix nodes(g.node_count(), dim_);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const auto v = node_feature(g, u);
    std::copy(v.begin(), v.end(), nodes.row(u).begin());
  }
  Matrix edges(g.edge_count(), dim_);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto v = edge_feature(g, e);
    std::copy(v.begin(), v.end(), edges.row(e).begin());
  }
  return g.with_features(std::move(nodes), std::move(edges));
}

}  // namespace rwgf
