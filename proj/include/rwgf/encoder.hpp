// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rwgf/matrix.hpp"
#include "rwgf/params.hpp"
#include "rwgf/walks.hpp"

namespace rwgf {

/// Where edge features enter the network.
enum class EdgeMode { per_block, input_only, off };

struct ModelConfig {
  std::size_t feature_dim = 64;
  std::size_t dim = 64;
  std::size_t blocks = 4;
  std::size_t heads = 4;
  std::size_t mlp_dim = 0;       // 0 means 4 * dim
  std::size_t max_position = 8;  // positional table has max_position + 1 rows
  EdgeMode edge_mode = EdgeMode::per_block;
  MaskMode mask_mode = MaskMode::per_walk;
  bool pre_norm = true;
  bool final_norm = true;

  std::size_t mlp() const noexcept { return mlp_dim ? mlp_dim : 4 * dim; }
  std::size_t head_dim() const noexcept { return dim / heads; }
  void validate() const;

  static ModelConfig desk();
  static ModelConfig reference();
};

/// Adds every encoder tensor to `params` and initializes it from `seed`.
void init_encoder(const ModelConfig& cfg, ParamStore& params, std::uint64_t seed);
ParamStore make_encoder(const ModelConfig& cfg, std::uint64_t seed);

struct ForwardOptions {
  /// Token slots whose input is replaced by the learned mask embedding.
  std::vector<std::size_t> masked_tokens;
  /// When false, masked slots get no positional embedding either.
  bool masked_keep_position = true;
};

struct LayerNormCache {
  Matrix xhat;
  std::vector<double> rstd;
};

struct BlockCache {
  Matrix x;       // block input after edge injection
  Matrix a;       // attention input (normalized in pre-norm)
  Matrix q, k, v;
  std::vector<Matrix> probs;  // per head, L x L
  Matrix ctx;     // concatenated head outputs
  Matrix mid;     // between the two sublayers
  Matrix b;       // MLP input
  Matrix z1, g1;  // MLP pre/post activation
  LayerNormCache ln1, ln2;
};

struct ForwardCache {
  Matrix h0;
  std::vector<BlockCache> blocks;
  Matrix pre_final;
  LayerNormCache final_ln;
};

struct EncoderOutput {
  Matrix h;  // L x d
  ForwardCache cache;

  std::span<const double> h_v() const { return h.row(0); }
  std::span<const double> h_0() const { return h.row(1); }
};

/// Throws DimensionMismatch on shape errors and NonFiniteActivation when any
/// output is NaN or infinite.
EncoderOutput encoder_forward(const ModelConfig& cfg, const ParamStore& params, const EncodedSample& sample,
                              const ForwardOptions& options = {});

struct InputGrads {
  Matrix tokens;  // L x feature_dim
  Matrix edges;   // L x feature_dim
};

/// Accumulates parameter gradients into `grads` (frozen tensors untouched)
/// and returns gradients for the input features. Throws NonFiniteGradient.
InputGrads encoder_backward(const ModelConfig& cfg, const ParamStore& params, const EncodedSample& sample,
                            const ForwardOptions& options, const ForwardCache& cache, const Matrix& d_h,
                            ParamStore& grads);

double gelu(double z) noexcept;
double gelu_grad(double z) noexcept;

}  // namespace rwgf
