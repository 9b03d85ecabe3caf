// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>

#include "rwgf/params.hpp"

namespace rwgf {

struct OptimConfig {
  double lr = 3e-4;
  double weight_decay = 0.0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double clip = 1.0;          // global-norm clip; 0 disables
  double final_scale = 0.1;   // lr multiplier reached at the last step
  std::size_t warmup = 100;
  std::size_t accumulate = 1;  // micro-batches per optimizer step

  void validate() const;
};

/// Linear warm-up to lr over `warmup` steps, then linear decay to
/// lr * final_scale at `total` steps.
double scheduled_lr(const OptimConfig& cfg, std::size_t step, std::size_t total);

double global_norm(const ParamStore& grads);

/// Rescales grads so their global norm is at most max_norm; returns the
/// norm before clipping.
double clip_global_norm(ParamStore& grads, double max_norm);

/// Decoupled weight decay Adam. Frozen tensors are never updated.
class AdamW {
 public:
  AdamW(const ParamStore& params, const OptimConfig& cfg);

  void step(ParamStore& params, const ParamStore& grads, double lr);
  std::size_t steps() const noexcept { return t_; }

 private:
  OptimConfig cfg_;
  ParamStore m_, v_;
  std::size_t t_ = 0;
};

}  // namespace rwgf
