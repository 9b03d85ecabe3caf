// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "rwgf/encoder.hpp"
#include "rwgf/graph.hpp"
#include "rwgf/matrix.hpp"
#include "rwgf/params.hpp"
#include "rwgf/walks.hpp"

namespace rwgf {

inline constexpr double kProbEps = 1e-7;

/// Row j-1 holds the mean of the walk-token outputs with step <= j, for
/// j = 1 .. window_count. Windows with no contributing token are zero.
Matrix context_windows(const EncodedSample& s, const Matrix& h);

/// Adds the gradient of the windows back onto the walk rows of d_h.
void context_windows_backward(const EncodedSample& s, const Matrix& d_windows, Matrix& d_h);

/// d -> d -> 1 MLP with GELU hidden layer and sigmoid output.
void init_discriminator(ParamStore& params, std::size_t dim, std::uint64_t seed);

/// Discriminator probabilities for each row of x.
std::vector<double> discriminator(const ParamStore& params, const Matrix& x);

/// One batch element as seen by a loss: the sample and its encoder output.
struct LossItem {
  const EncodedSample* sample = nullptr;
  const Matrix* h = nullptr;
};

struct LossResult {
  double loss = 0.0;
  std::vector<Matrix> d_h;  // aligned with the input items
};

enum class ContrastiveLoss { context, dgi, graphprompt, maskgae };

ContrastiveLoss parse_contrastive_loss(std::string_view name);
std::string_view contrastive_loss_name(ContrastiveLoss loss) noexcept;

/// Batch mean of the per-root context prediction loss. All B - 1 other
/// roots act as negatives. Throws BatchTooSmall when B < 2.
LossResult context_loss(std::span<const LossItem> batch, const ParamStore& params, ParamStore& grads);

/// Per root: positive windows from its sample, negative windows from its
/// corrupted sample, scored by sigmoid(h_0 . window). Returns gradients for
/// the positive items followed by the corrupted ones.
LossResult dgi_loss(std::span<const LossItem> batch, std::span<const LossItem> corrupted);

/// Cosine-similarity softmax over all windows of the batch at temperature tau.
LossResult graphprompt_loss(std::span<const LossItem> batch, double tau = 0.5);

/// Window j is predicted from window j - 1 (window 0 is h_0); other roots'
/// windows are negatives.
LossResult maskgae_loss(std::span<const LossItem> batch);

/// Same root and positions, walk tokens replaced by uniformly drawn nodes,
/// edge rows zeroed.
EncodedSample corrupt_sample(const Graph& g, const EncodedSample& s, std::uint64_t seed);

enum class ReconstructionMode { token, position };

/// round(rate * walk tokens) walk-token slots, at least one when any exist.
std::vector<std::size_t> choose_masked_tokens(const EncodedSample& s, double rate, std::uint64_t seed);

/// Linear head from the model dim to position classes 0 .. max_position.
void init_position_head(ParamStore& params, std::size_t dim, std::size_t max_position, std::uint64_t seed);

/// Token mode: mean squared error between output rows at masked slots and
/// the projected input features (tokens . embed.node). Position mode:
/// cross entropy of the position head against the clipped SP distance.
/// Parameter gradients go to `grads`; the output gradient is returned.
struct ReconstructionResult {
  double loss = 0.0;
  Matrix d_h;
};
ReconstructionResult reconstruction_loss(const ModelConfig& cfg, const ParamStore& params, const EncodedSample& s,
                                         const Matrix& h, std::span<const std::size_t> masked,
                                         ReconstructionMode mode, ParamStore& grads);

}  // namespace rwgf
