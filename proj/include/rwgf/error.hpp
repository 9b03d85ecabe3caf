// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rwgf {

enum class Errc {
  invalid_node,
  invalid_id,
  too_large,
  isolated_node,
  dimension_mismatch,
  non_finite_activation,
  non_finite_gradient,
  non_finite_loss,
  batch_too_small,
  empty_plan,
  empty_graph,
  empty_support,
  one_class_only,
  degenerate_labels,
  no_node_at_radius,
  disconnected_ball,
  fanout_too_small,
  missing_feature,
  parse_error,
  self_loop,
  duplicate_edge,
  symmetry_violation,
  config_error,
  io_error,
};

std::string_view errc_name(Errc code) noexcept;

// Process exit code for the CLI: 2 config, 3 data, 4 numeric.
int exit_code_for(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace rwgf
