// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#include "rwgf/mixture.hpp"

#include <array>
#include <cmath>
#include <numeric>

#include "rwgf/error.hpp"
#include "rwgf/rng.hpp"

namespace rwgf {

std::size_t planned_roots(const MixtureEntry& entry) {
  if (!(entry.multiplier >= 0.0) || !std::isfinite(entry.multiplier)) {
    fail(Errc::config_error, "multiplier of " + entry.name + " must be finite and nonnegative");
  }
  return static_cast<std::size_t>(std::llround(entry.multiplier * static_cast<double>(entry.size)));
}

std::vector<PlanItem> build_pass(std::span<const MixtureEntry> mixture, std::uint64_t seed) {
  std::vector<PlanItem> plan;
  for (std::size_t d = 0; d < mixture.size(); ++d) {
    const std::size_t want = planned_roots(mixture[d]);
    if (want == 0) continue;
    const std::size_t n = mixture[d].size;
    Rng rng(derive_seed(seed, {d}));
    if (want <= n) {
      std::vector<NodeId> pool(n);
      std::iota(pool.begin(), pool.end(), NodeId{0});
      for (std::size_t i = 0; i < want; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(uniform_index(rng, n - i));
        std::swap(pool[i], pool[j]);
        plan.push_back({d, pool[i]});
      }
    } else {
      for (std::size_t i = 0; i < want; ++i) plan.push_back({d, static_cast<NodeId>(uniform_index(rng, n))});
    }
  }
  if (plan.empty()) fail(Errc::empty_plan, "every dataset contributes zero roots");
  Rng rng(derive_seed(seed, {0x73687566ULL}));
  for (std::size_t i = plan.size(); i > 1; --i) {
    std::swap(plan[i - 1], plan[static_cast<std::size_t>(uniform_index(rng, i))]);
  }
  return plan;
}

std::span<const NamedMultiplier> reference_multipliers() noexcept {
  static constexpr std::array<NamedMultiplier, 10> table{{
      {"PubMed", 3.0},
      {"Products", 0.5},
      {"WikiCS", 2.0},
      {"Arxiv", 0.7},
      {"WN18RR", 0.8},
      {"FB15k237", 0.1},
      {"PCBA", 0.2},
      {"ChEMBL", 0.1},
      {"HIV", 1.0},
      {"Tox21", 2.0},
  }};
  return table;
}

}  // namespace rwgf
