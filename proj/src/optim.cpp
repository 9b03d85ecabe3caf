// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#include "rwgf/optim.hpp"

#include <cmath>

#include "rwgf/error.hpp"

namespace rwgf {

void OptimConfig::validate() const {
  if (!(lr > 0.0)) fail(Errc::config_error, "learning rate must be positive");
  if (weight_decay < 0.0 || clip < 0.0 || final_scale < 0.0) {
    fail(Errc::config_error, "weight decay, clip and final scale must be nonnegative");
  }
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0) || !(eps > 0.0)) {
    fail(Errc::config_error, "Adam betas must lie in [0, 1) and eps must be positive");
  }
  if (accumulate == 0) fail(Errc::config_error, "accumulate must be at least 1");
}

double scheduled_lr(const OptimConfig& cfg, std::size_t step, std::size_t total) {
  if (step < cfg.warmup) return cfg.lr * static_cast<double>(step + 1) / static_cast<double>(cfg.warmup);
  if (total <= cfg.warmup + 1) return cfg.lr;
  const double span = static_cast<double>(total - 1 - cfg.warmup);
  const double frac = std::min(1.0, static_cast<double>(step - cfg.warmup) / span);
  return cfg.lr * (1.0 - frac * (1.0 - cfg.final_scale));
}

double global_norm(const ParamStore& grads) {
  double s = 0.0;
  for (const auto& t : grads) {
    for (double v : t.value.flat()) s += v * v;
  }
  return std::sqrt(s);
}

double clip_global_norm(ParamStore& grads, double max_norm) {
  const double norm = global_norm(grads);
  if (max_norm > 0.0 && norm > max_norm) {
    const double scale = max_norm / norm;
    for (std::size_t i = 0; i < grads.size(); ++i) {
      for (double& v : grads.at(i).value.flat()) v *= scale;
    }
  }
  return norm;
}

AdamW::AdamW(const ParamStore& params, const OptimConfig& cfg)
    : cfg_(cfg), m_(params.zeros_like()), v_(params.zeros_like()) {
  cfg_.validate();
}

void AdamW::step(ParamStore& params, const ParamStore& grads, double lr) {
  if (grads.size() != params.size()) fail(Errc::dimension_mismatch, "gradient layout differs from parameters");
  ++t_;
  const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
  for (std::size_t i = 0; i < params.size(); ++i) {
    Tensor& p = params.at(i);
    if (p.frozen) continue;
    auto w = p.value.flat();
    auto g = grads.at(i).value.flat();
    auto m = m_.at(i).value.flat();
    auto v = v_.at(i).value.flat();
    for (std::size_t k = 0; k < w.size(); ++k) {
      m[k] = cfg_.beta1 * m[k] + (1.0 - cfg_.beta1) * g[k];
      v[k] = cfg_.beta2 * v[k] + (1.0 - cfg_.beta2) * g[k] * g[k];
      const double mhat = m[k] / bc1;
      const double vhat = v[k] / bc2;
      w[k] -= lr * (mhat / (std::sqrt(vhat) + cfg_.eps) + cfg_.weight_decay * w[k]);
    }
  }
}

}  // namespace rwgf
