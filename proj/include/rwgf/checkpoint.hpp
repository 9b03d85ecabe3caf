// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>

#include "json.hpp"
#include "rwgf/encoder.hpp"
#include "rwgf/params.hpp"
#include "rwgf/walks.hpp"

namespace rwgf {

inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Checkpoint {
  ModelConfig model;
  WalkParams walk;
  nlohmann::json meta = nlohmann::json::object();
  ParamStore params;
};

// Layout: 8-byte magic "RWGFCKPT", uint32 version, uint64 header length,
// JSON header {model, walk, meta}, uint64 tensor count, then per tensor
// uint32 name length, name bytes, uint64 rows, uint64 cols and row-major
// little-endian float32 values. Written to a temporary file and renamed.
void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::filesystem::path& path);

nlohmann::json to_json(const ModelConfig& cfg);
ModelConfig model_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const WalkParams& walk);
WalkParams walk_params_from_json(const nlohmann::json& j);

std::string_view edge_mode_name(EdgeMode mode) noexcept;
EdgeMode parse_edge_mode(std::string_view name);
std::string_view mask_mode_name(MaskMode mode) noexcept;
MaskMode parse_mask_mode(std::string_view name);

}  // namespace rwgf
