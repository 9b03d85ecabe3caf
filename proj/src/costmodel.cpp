// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#include "rwgf/costmodel.hpp"

#include <cmath>

#include "rwgf/error.hpp"

namespace rwgf {

namespace {

using Wide = unsigned __int128;

// Saturates at 2^127 so overflow never wraps.
Wide power(std::uint64_t base, std::uint64_t exp) {
  const Wide cap = Wide{1} << 127;
  Wide out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (out > cap / base) return cap;
    out *= base;
  }
  return out;
}

}  // namespace

void CostInputs::validate() const {
  if (batch == 0 || blocks == 0 || context == 0 || dim == 0 || gnn_layers == 0 || gnn_dim == 0 || fanout == 0) {
    fail(Errc::config_error, "cost inputs must be positive integers");
  }
}

Cost rwpt_cost(const CostInputs& in) {
  in.validate();
  const long double d = in.dim, t = in.blocks, l = in.context, b = in.batch;
  return {12.0L * d * d * t, (11.0L * l * d * d + 2.0L * l * l * d) * t * b};
}

Cost gnn_cost(const CostInputs& in) {
  in.validate();
  if (in.fanout < 2) fail(Errc::fanout_too_small, "GNN fanout must be at least 2");
  const long double d = in.gnn_dim, k = in.fanout, b = in.batch;
  const long double grow = std::pow(k, static_cast<long double>(in.gnn_layers));
  return {d * d * static_cast<long double>(in.gnn_layers), k / (k - 1.0L) * d * d * grow * b};
}

bool rwpt_faster(const CostInputs& in) { return rwpt_cost(in).time < gnn_cost(in).time; }

bool tied_crossover(std::uint64_t dim, std::uint64_t blocks, std::uint64_t fanout) {
  if (fanout < 2) fail(Errc::fanout_too_small, "GNN fanout must be at least 2");
  const Wide lhs = Wide{13} * dim * blocks * (fanout - 1);
  return lhs < power(fanout, blocks + 1);
}

bool tied_crossover_sufficient(std::uint64_t dim, std::uint64_t blocks, std::uint64_t fanout) {
  return power(fanout, blocks) > Wide{13} * dim * blocks;
}

}  // namespace rwgf
