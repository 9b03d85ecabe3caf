// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#include "rwgf/error.hpp"

namespace rwgf {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_node: return "InvalidNode";
    case Errc::invalid_id: return "InvalidId";
    case Errc::too_large: return "TooLarge";
    case Errc::isolated_node: return "IsolatedNode";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::non_finite_activation: return "NonFiniteActivation";
    case Errc::non_finite_gradient: return "NonFiniteGradient";
    case Errc::non_finite_loss: return "NonFiniteLoss";
    case Errc::batch_too_small: return "BatchTooSmall";
    case Errc::empty_plan: return "EmptyPlan";
    case Errc::empty_graph: return "EmptyGraph";
    case Errc::empty_support: return "EmptySupport";
    case Errc::one_class_only: return "OneClassOnly";
    case Errc::degenerate_labels: return "DegenerateLabels";
    case Errc::no_node_at_radius: return "NoNodeAtRadius";
    case Errc::disconnected_ball: return "DisconnectedBall";
    case Errc::fanout_too_small: return "FanoutTooSmall";
    case Errc::missing_feature: return "MissingFeature";
    case Errc::parse_error: return "ParseError";
    case Errc::self_loop: return "SelfLoop";
    case Errc::duplicate_edge: return "DuplicateEdge";
    case Errc::symmetry_violation: return "SymmetryViolation";
    case Errc::config_error: return "ConfigError";
    case Errc::io_error: return "IoError";
  }
  return "Unknown";
}

int exit_code_for(Errc code) noexcept {
  switch (code) {
    case Errc::config_error:
    case Errc::dimension_mismatch:
    case Errc::fanout_too_small:
    case Errc::batch_too_small:
      return 2;
    case Errc::non_finite_activation:
    case Errc::non_finite_gradient:
    case Errc::non_finite_loss:
      return 4;
    default:
      return 3;
  }
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace rwgf
