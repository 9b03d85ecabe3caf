// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace rwgf {

struct CostInputs {
  std::uint64_t batch = 1;       // B
  std::uint64_t blocks = 1;      // T
  std::uint64_t context = 1;     // L
  std::uint64_t dim = 1;         // d
  std::uint64_t gnn_layers = 1;  // l'
  std::uint64_t gnn_dim = 1;     // d'
  std::uint64_t fanout = 2;      // k'

  void validate() const;
};

struct Cost {
  long double size = 0;
  long double time = 0;
};

/// size 12 d^2 T, time (11 L d^2 + 2 L^2 d) T B.
Cost rwpt_cost(const CostInputs& in);

/// size d'^2 l', time k'/(k'-1) d'^2 k'^l' B. Throws FanoutTooSmall for k' < 2.
Cost gnn_cost(const CostInputs& in);

/// Direct comparison of the two forward times.
bool rwpt_faster(const CostInputs& in);

/// Tied setting l' = T, d' = d, L = d: RWPT is faster exactly when
/// 13 d T (k' - 1) < k'^(T + 1).
bool tied_crossover(std::uint64_t dim, std::uint64_t blocks, std::uint64_t fanout);

/// k'^T > 13 d T; sufficient for tied_crossover but not necessary.
bool tied_crossover_sufficient(std::uint64_t dim, std::uint64_t blocks, std::uint64_t fanout);

}  // namespace rwgf
