// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rwgf/graph.hpp"
#include "rwgf/matrix.hpp"
#include "rwgf/rng.hpp"

namespace rwgf {

/// Second-order walk parameters. After moving u -> v, the next node x gets
/// unnormalized weight 1/p when x == u, 1 when x is adjacent to u, and 1/q
/// otherwise. The first step from the root is uniform.
struct WalkParams {
  double p = 1.0;
  double q = 0.1;
  std::size_t walks = 8;   // k
  std::size_t length = 4;  // steps per walk
  std::uint64_t seed = 0;

  void validate() const;
};

/// k rooted walks. walks[r][s] is the node reached at step s+1, walk_edges[r][s]
/// the edge traversed to get there, positions[r][s] its hop distance from root.
struct WalkSet {
  NodeId root = 0;
  std::vector<std::vector<NodeId>> walks;
  std::vector<std::vector<EdgeId>> walk_edges;
  std::vector<std::vector<Hop>> positions;

  std::size_t walk_count() const noexcept { return walks.size(); }
  std::size_t length() const noexcept { return walks.empty() ? 0 : walks.front().size(); }
};

/// Unnormalized next-step weights aligned with g.neighbors(current).
std::vector<double> transition_weights(const Graph& g, std::optional<NodeId> previous, NodeId current, double p,
                                       double q);

/// Draws one step; `previous` is empty on the first step of a walk.
/// Returns the index into g.neighbors(current).
std::size_t sample_step(const Graph& g, std::optional<NodeId> previous, NodeId current, double p, double q,
                        Rng& rng);

/// Throws IsolatedNode when the root has degree 0.
WalkSet sample_walks(const Graph& g, NodeId root, const WalkParams& params);

enum class MaskMode { per_walk, full };

/// Dense L x L attention mask; true means the row token may attend the column.
class AttentionMask {
 public:
  AttentionMask() = default;
  explicit AttentionMask(std::size_t n, bool fill = false) : n_(n), bits_(n * n, fill ? 1 : 0) {}

  std::size_t size() const noexcept { return n_; }
  bool operator()(std::size_t r, std::size_t c) const noexcept { return bits_[r * n_ + c] != 0; }
  void set(std::size_t r, std::size_t c, bool v) noexcept { bits_[r * n_ + c] = v ? 1 : 0; }
  std::size_t nonzeros() const noexcept;

  bool operator==(const AttentionMask&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> bits_;
};

/// Mask for the layout [v, root, walk_1 ... walk_k], each walk `length` tokens.
/// per_walk: rows 0 and 1 attend everything; a walk row attends {0, 1} and
/// its own walk. full: everything.
AttentionMask build_mask(std::size_t walks, std::size_t length, MaskMode mode);

enum class TokenKind : std::uint8_t { dataset, root, node, pad };

/// Transformer input for one root.
struct EncodedSample {
  Matrix tokens;                   // L x feature_dim
  Matrix edges;                    // L x feature_dim, rows 0 and 1 zero
  std::vector<Hop> positions;      // hop distance from the root (v and root: 0)
  std::vector<int> steps;          // walk step (or sampling hop); 0 for v/root, -1 for pad
  std::vector<TokenKind> kinds;
  std::vector<std::int64_t> node_ids;  // -1 for v and pad
  AttentionMask mask;
  std::vector<std::pair<std::size_t, std::size_t>> walk_spans;  // [begin, end)
  std::size_t window_count = 0;    // number of context windows (walk length or hop count)
  NodeId root = 0;
  int dataset_tag = 0;

  std::size_t length() const noexcept { return positions.size(); }
};

EncodedSample build_sequence(const Graph& g, const WalkSet& ws, std::span<const double> dataset_feature,
                             MaskMode mode = MaskMode::per_walk);

/// Root-only sample [v, root] with an all-true 2 x 2 mask, used for isolated
/// roots. window_count is kept at `length` so batches stay aligned.
EncodedSample build_degenerate_sequence(const Graph& g, NodeId root, std::size_t length,
                                        std::span<const double> dataset_feature);

/// Samples walks and builds the sequence, falling back to the degenerate
/// sample for isolated roots.
EncodedSample encode_root(const Graph& g, NodeId root, const WalkParams& params,
                          std::span<const double> dataset_feature, MaskMode mode = MaskMode::per_walk);

/// Maximum token count for a fanout list: 2 + f1 + f1 f2 + ...
std::size_t neighbor_budget(std::span<const std::size_t> fanouts);

/// Layer-wise neighborhood sampling: hop h draws up to fanouts[h-1] distinct
/// neighbors of every node sampled at hop h-1. Positions are hop numbers,
/// edge rows are zero, and the sequence is padded to neighbor_budget() with
/// zero-feature pad tokens that the mask excludes.
EncodedSample build_neighbor_sequence(const Graph& g, NodeId root, std::span<const std::size_t> fanouts,
                                      std::uint64_t seed, std::span<const double> dataset_feature);

}  // namespace rwgf
