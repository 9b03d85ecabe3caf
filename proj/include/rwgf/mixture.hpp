// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rwgf/graph.hpp"

namespace rwgf {

struct MixtureEntry {
  std::string name;
  double multiplier = 1.0;  // alpha_D
  std::size_t size = 0;     // n_D, number of candidate roots
};

struct PlanItem {
  std::size_t dataset = 0;
  NodeId root = 0;

  bool operator==(const PlanItem&) const = default;
};

/// round(alpha_D * n_D), rounding halves away from zero.
std::size_t planned_roots(const MixtureEntry& entry);

/// One pass: planned_roots() roots per dataset (without replacement when
/// they fit, uniformly with replacement otherwise), then a global shuffle.
/// Throws EmptyPlan when the pass would be empty and ConfigError on a
/// negative multiplier.
std::vector<PlanItem> build_pass(std::span<const MixtureEntry> mixture, std::uint64_t seed);

struct NamedMultiplier {
  std::string_view name;
  double multiplier;
};

/// Pre-training multipliers of the ten-dataset mixture.
std::span<const NamedMultiplier> reference_multipliers() noexcept;

}  // namespace rwgf
