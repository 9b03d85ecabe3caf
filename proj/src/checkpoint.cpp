// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#include "rwgf/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "rwgf/error.hpp"

namespace rwgf {

namespace {

constexpr char kMagic[8] = {'R', 'W', 'G', 'F', 'C', 'K', 'P', 'T'};

template <class T>
void put(std::ostream& out, T v) {
  static_assert(std::endian::native == std::endian::little, "checkpoint I/O assumes a little-endian host");
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& in, const std::filesystem::path& path) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) fail(Errc::parse_error, path.string() + ": truncated checkpoint");
  return v;
}

std::string get_string(std::istream& in, std::size_t n, const std::filesystem::path& path) {
  std::string s(n, '\0');
  in.read(s.data(), static_cast<std::streamsize>(n));
  if (!in) fail(Errc::parse_error, path.string() + ": truncated checkpoint");
  return s;
}

}  // namespace

std::string_view edge_mode_name(EdgeMode mode) noexcept {
  switch (mode) {
    case EdgeMode::per_block: return "per_block";
    case EdgeMode::input_only: return "input_only";
    case EdgeMode::off: return "off";
  }
  return "per_block";
}

EdgeMode parse_edge_mode(std::string_view name) {
  if (name == "per_block") return EdgeMode::per_block;
  if (name == "input_only") return EdgeMode::input_only;
  if (name == "off") return EdgeMode::off;
  fail(Errc::config_error, "unknown edge mode '" + std::string(name) + "'");
}

std::string_view mask_mode_name(MaskMode mode) noexcept { return mode == MaskMode::full ? "full" : "per_walk"; }

MaskMode parse_mask_mode(std::string_view name) {
  if (name == "per_walk") return MaskMode::per_walk;
  if (name == "full") return MaskMode::full;
  fail(Errc::config_error, "unknown mask mode '" + std::string(name) + "'");
}

nlohmann::json to_json(const ModelConfig& c) {
  return {{"feature_dim", c.feature_dim}, {"dim", c.dim},
          {"blocks", c.blocks},           {"heads", c.heads},
          {"mlp_dim", c.mlp()},           {"max_position", c.max_position},
          {"edge_mode", edge_mode_name(c.edge_mode)},
          {"mask_mode", mask_mode_name(c.mask_mode)},
          {"pre_norm", c.pre_norm},       {"final_norm", c.final_norm}};
}

ModelConfig model_config_from_json(const nlohmann::json& j) {
  try {
    ModelConfig c;
    c.feature_dim = j.at("feature_dim").get<std::size_t>();
    c.dim = j.at("dim").get<std::size_t>();
    c.blocks = j.at("blocks").get<std::size_t>();
    c.heads = j.at("heads").get<std::size_t>();
    c.mlp_dim = j.at("mlp_dim").get<std::size_t>();
    c.max_position = j.at("max_position").get<std::size_t>();
    c.edge_mode = parse_edge_mode(j.at("edge_mode").get<std::string>());
    c.mask_mode = parse_mask_mode(j.at("mask_mode").get<std::string>());
    c.pre_norm = j.at("pre_norm").get<bool>();
    c.final_norm = j.at("final_norm").get<bool>();
    c.validate();
    return c;
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::parse_error, std::string("model config: ") + e.what());
  }
}

nlohmann::json to_json(const WalkParams& w) {
  return {{"p", w.p}, {"q", w.q}, {"walks", w.walks}, {"length", w.length}, {"seed", w.seed}};
}

WalkParams walk_params_from_json(const nlohmann::json& j) {
  try {
    WalkParams w;
    w.p = j.at("p").get<double>();
    w.q = j.at("q").get<double>();
    w.walks = j.at("walks").get<std::size_t>();
    w.length = j.at("length").get<std::size_t>();
    w.seed = j.at("seed").get<std::uint64_t>();
    w.validate();
    return w;
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::parse_error, std::string("walk params: ") + e.what());
  }
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) fail(Errc::io_error, "cannot write checkpoint " + tmp.string());
    const std::string header = nlohmann::json{{"model", to_json(ckpt.model)}, {"walk", to_json(ckpt.walk)},
                                              {"meta", ckpt.meta}}
                                   .dump();
    out.write(kMagic, 8);
    put<std::uint32_t>(out, kCheckpointVersion);
    put<std::uint64_t>(out, header.size());
    out.write(header.data(), static_cast<std::streamsize>(header.size()));
    put<std::uint64_t>(out, ckpt.params.size());
    for (const auto& t : ckpt.params) {
      put<std::uint32_t>(out, static_cast<std::uint32_t>(t.name.size()));
      out.write(t.name.data(), static_cast<std::streamsize>(t.name.size()));
      put<std::uint64_t>(out, t.value.rows());
      put<std::uint64_t>(out, t.value.cols());
      for (double v : t.value.flat()) put<float>(out, static_cast<float>(v));
    }
    if (!out) fail(Errc::io_error, "failed writing checkpoint " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_error, "cannot open checkpoint " + path.string());
  if (get_string(in, 8, path) != std::string(kMagic, 8)) fail(Errc::parse_error, path.string() + ": not a checkpoint");
  const auto version = get<std::uint32_t>(in, path);
  if (version != kCheckpointVersion) {
    fail(Errc::parse_error, path.string() + ": unsupported checkpoint version " + std::to_string(version));
  }
  Checkpoint ckpt;
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(get_string(in, get<std::uint64_t>(in, path), path));
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::parse_error, path.string() + ": bad header: " + e.what());
  }
  ckpt.model = model_config_from_json(header.at("model"));
  ckpt.walk = walk_params_from_json(header.at("walk"));
  ckpt.meta = header.value("meta", nlohmann::json::object());
  const auto count = get<std::uint64_t>(in, path);
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::string name = get_string(in, get<std::uint32_t>(in, path), path);
    const auto rows = get<std::uint64_t>(in, path);
    const auto cols = get<std::uint64_t>(in, path);
    Matrix& m = ckpt.params.add(name, rows, cols);
    for (double& v : m.flat()) v = static_cast<double>(get<float>(in, path));
  }
  return ckpt;
}

}  // namespace rwgf
