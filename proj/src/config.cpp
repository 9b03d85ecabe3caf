// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#include "rwgf/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>

#include "rwgf/checkpoint.hpp"
#include "rwgf/error.hpp"

namespace rwgf {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (!s.empty()) {
    const auto comma = s.find(',');
    const auto item = trim(s.substr(0, comma));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

template <class T>
T parse_number(std::string_view key, std::string_view v) {
  T out{};
  const auto* end = v.data() + v.size();
  const auto res = std::from_chars(v.data(), end, out);
  if (res.ec != std::errc() || res.ptr != end) {
    fail(Errc::config_error, "bad value '" + std::string(v) + "' for " + std::string(key));
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  fail(Errc::config_error, "bad boolean '" + std::string(v) + "' for " + std::string(key));
}

using Setter = std::function<void(RunConfig&, std::string_view, std::string_view)>;

template <class T>
Setter number(T RunConfig::*field) {
  return [field](RunConfig& c, std::string_view k, std::string_view v) { c.*field = parse_number<T>(k, v); };
}

template <class S, class T>
Setter nested(S RunConfig::*outer, T S::*field) {
  return [outer, field](RunConfig& c, std::string_view k, std::string_view v) {
    if constexpr (std::is_same_v<T, bool>) {
      (c.*outer).*field = parse_bool(k, v);
    } else {
      (c.*outer).*field = parse_number<T>(k, v);
    }
  };
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table{
      {"graphs",
       [](RunConfig& c, std::string_view, std::string_view v) {
         c.graphs.clear();
         for (auto item : split_list(v)) c.graphs.emplace_back(item);
       }},
      {"multipliers",
       [](RunConfig& c, std::string_view k, std::string_view v) {
         c.multipliers.clear();
         for (auto item : split_list(v)) c.multipliers.push_back(parse_number<double>(k, item));
       }},
      {"features",
       [](RunConfig& c, std::string_view, std::string_view v) {
         c.node_features.clear();
         if (v == "structural") {
           c.feature_source = FeatureSource::structural;
         } else if (v == "graph") {
           c.feature_source = FeatureSource::graph;
         } else {
           c.feature_source = FeatureSource::file;
           c.node_features = v;
         }
       }},
      {"features.edges", [](RunConfig& c, std::string_view, std::string_view v) { c.edge_features = v; }},
      {"features.datasets", [](RunConfig& c, std::string_view, std::string_view v) { c.dataset_features = v; }},
      {"features.dim", number(&RunConfig::feature_dim)},
      {"features.normalize",
       [](RunConfig& c, std::string_view k, std::string_view v) { c.normalize_features = parse_bool(k, v); }},
      {"walk.p", nested(&RunConfig::walk, &WalkParams::p)},
      {"walk.q", nested(&RunConfig::walk, &WalkParams::q)},
      {"walk.k", nested(&RunConfig::walk, &WalkParams::walks)},
      {"walk.length", nested(&RunConfig::walk, &WalkParams::length)},
      {"input",
       [](RunConfig& c, std::string_view k, std::string_view v) {
         if (v == "walks") {
           c.input = InputMode::walks;
         } else if (v == "neighbors") {
           c.input = InputMode::neighbors;
         } else {
           fail(Errc::config_error, "bad value '" + std::string(v) + "' for " + std::string(k));
         }
       }},
      {"fanouts",
       [](RunConfig& c, std::string_view k, std::string_view v) {
         c.fanouts.clear();
         for (auto item : split_list(v)) c.fanouts.push_back(parse_number<std::size_t>(k, item));
       }},
      {"model.dim", nested(&RunConfig::model, &ModelConfig::dim)},
      {"model.blocks", nested(&RunConfig::model, &ModelConfig::blocks)},
      {"model.heads", nested(&RunConfig::model, &ModelConfig::heads)},
      {"model.mlp_dim", nested(&RunConfig::model, &ModelConfig::mlp_dim)},
      {"model.max_position", nested(&RunConfig::model, &ModelConfig::max_position)},
      {"model.pre_norm", nested(&RunConfig::model, &ModelConfig::pre_norm)},
      {"model.final_norm", nested(&RunConfig::model, &ModelConfig::final_norm)},
      {"model.edges",
       [](RunConfig& c, std::string_view, std::string_view v) { c.model.edge_mode = parse_edge_mode(v); }},
      {"model.mask",
       [](RunConfig& c, std::string_view, std::string_view v) { c.model.mask_mode = parse_mask_mode(v); }},
      {"loss", [](RunConfig& c, std::string_view, std::string_view v) { c.loss = parse_contrastive_loss(v); }},
      {"loss.tau", number(&RunConfig::tau)},
      {"recon",
       [](RunConfig& c, std::string_view k, std::string_view v) {
         if (v == "none") {
           c.recon.reset();
         } else if (v == "token") {
           c.recon = ReconstructionMode::token;
         } else if (v == "position") {
           c.recon = ReconstructionMode::position;
         } else {
           fail(Errc::config_error, "bad value '" + std::string(v) + "' for " + std::string(k));
         }
       }},
      {"recon.weight", number(&RunConfig::recon_weight)},
      {"recon.rate", number(&RunConfig::recon_rate)},
      {"optim.lr", nested(&RunConfig::optim, &OptimConfig::lr)},
      {"optim.weight_decay", nested(&RunConfig::optim, &OptimConfig::weight_decay)},
      {"optim.beta1", nested(&RunConfig::optim, &OptimConfig::beta1)},
      {"optim.beta2", nested(&RunConfig::optim, &OptimConfig::beta2)},
      {"optim.eps", nested(&RunConfig::optim, &OptimConfig::eps)},
      {"optim.clip", nested(&RunConfig::optim, &OptimConfig::clip)},
      {"optim.final_scale", nested(&RunConfig::optim, &OptimConfig::final_scale)},
      {"optim.warmup", nested(&RunConfig::optim, &OptimConfig::warmup)},
      {"optim.accumulate", nested(&RunConfig::optim, &OptimConfig::accumulate)},
      {"batch", number(&RunConfig::batch)},
      {"steps", number(&RunConfig::steps)},
      {"checkpoint_every", number(&RunConfig::checkpoint_every)},
      {"seed", number(&RunConfig::seed)},
      {"out", [](RunConfig& c, std::string_view, std::string_view v) { c.out = v; }},
  };
  return table;
}

std::string resolve(const std::filesystem::path& base, const std::string& p) {
  if (p.empty() || base.empty() || std::filesystem::path(p).is_absolute()) return p;
  return (base / p).lexically_normal().string();
}

}  // namespace

void set_config_value(RunConfig& cfg, std::string_view key, std::string_view value) {
  const auto& table = setters();
  auto it = table.find(key);
  if (it == table.end()) fail(Errc::config_error, "unknown config key '" + std::string(key) + "'");
  it->second(cfg, key, trim(value));
}

std::size_t RunConfig::window_count() const {
  return input == InputMode::walks ? walk.length : fanouts.size();
}

void RunConfig::validate(bool check_paths) const {
  if (graphs.empty()) fail(Errc::config_error, "no graphs configured");
  if (!multipliers.empty() && multipliers.size() != graphs.size()) {
    fail(Errc::config_error, "multipliers must list one value per graph");
  }
  for (double m : multipliers) {
    if (!(m >= 0.0)) fail(Errc::config_error, "multipliers must be nonnegative");
  }
  walk.validate();
  model.validate();
  optim.validate();
  if (input == InputMode::neighbors) {
    if (fanouts.empty()) fail(Errc::config_error, "fanouts must not be empty");
    for (auto f : fanouts) {
      if (f == 0) fail(Errc::fanout_too_small, "fanouts must be positive");
    }
  }
  if (model.max_position < window_count()) {
    fail(Errc::config_error, "model.max_position must be at least the walk length or hop count");
  }
  if (feature_source == FeatureSource::structural && feature_dim == 0) {
    fail(Errc::config_error, "features.dim must be positive");
  }
  if (feature_source != FeatureSource::file && (!edge_features.empty() || !dataset_features.empty())) {
    fail(Errc::config_error, "edge or dataset feature files need a node feature file");
  }
  const std::size_t min_batch = loss == ContrastiveLoss::dgi ? 1 : 2;
  if (batch < min_batch) fail(Errc::batch_too_small, "batch must be at least " + std::to_string(min_batch));
  if (steps == 0) fail(Errc::config_error, "steps must be positive");
  if (!(tau > 0.0)) fail(Errc::config_error, "loss.tau must be positive");
  if (recon && (!(recon_rate > 0.0) || recon_rate > 1.0 || recon_weight < 0.0)) {
    fail(Errc::config_error, "recon.rate must lie in (0, 1] and recon.weight must be nonnegative");
  }
  if (out.empty()) fail(Errc::config_error, "out must not be empty");
  if (check_paths) {
    auto need = [](const std::string& p, const char* what) {
      if (!p.empty() && !std::filesystem::exists(p)) {
        fail(Errc::config_error, std::string(what) + " '" + p + "' does not exist");
      }
    };
    for (const auto& g : graphs) need(g, "graph file");
    need(node_features, "node feature file");
    need(edge_features, "edge feature file");
    need(dataset_features, "dataset feature file");
  }
}

RunConfig parse_run_config(std::istream& in, const std::string& source, const std::filesystem::path& base_dir) {
  RunConfig cfg;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    std::string_view view(text);
    if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      fail(Errc::config_error, source + ":" + std::to_string(line) + ": expected 'key = value'");
    }
    try {
      set_config_value(cfg, trim(view.substr(0, eq)), view.substr(eq + 1));
    } catch (const Error& e) {
      throw Error(e.code(), source + ":" + std::to_string(line) + ": " + e.what());
    }
  }
  for (auto& g : cfg.graphs) g = resolve(base_dir, g);
  cfg.node_features = resolve(base_dir, cfg.node_features);
  cfg.edge_features = resolve(base_dir, cfg.edge_features);
  cfg.dataset_features = resolve(base_dir, cfg.dataset_features);
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::config_error, "cannot open config " + path.string());
  return parse_run_config(in, path.string(), path.parent_path());
}

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j;
  j["graphs"] = c.graphs;
  j["multipliers"] = c.multipliers;
  j["features"] = c.feature_source == FeatureSource::file
                      ? c.node_features
                      : (c.feature_source == FeatureSource::graph ? "graph" : "structural");
  j["features.edges"] = c.edge_features;
  j["features.datasets"] = c.dataset_features;
  j["features.dim"] = c.feature_dim;
  j["features.normalize"] = c.normalize_features;
  j["walk"] = to_json(c.walk);
  j["input"] = c.input == InputMode::walks ? "walks" : "neighbors";
  j["fanouts"] = c.fanouts;
  j["model"] = to_json(c.model);
  j["loss"] = contrastive_loss_name(c.loss);
  j["loss.tau"] = c.tau;
  j["recon"] = !c.recon ? "none" : (*c.recon == ReconstructionMode::token ? "token" : "position");
  j["recon.weight"] = c.recon_weight;
  j["recon.rate"] = c.recon_rate;
  j["optim"] = {{"lr", c.optim.lr},         {"weight_decay", c.optim.weight_decay}, {"beta1", c.optim.beta1},
                {"beta2", c.optim.beta2},   {"eps", c.optim.eps},                   {"clip", c.optim.clip},
                {"final_scale", c.optim.final_scale}, {"warmup", c.optim.warmup},   {"accumulate", c.optim.accumulate}};
  j["batch"] = c.batch;
  j["steps"] = c.steps;
  j["checkpoint_every"] = c.checkpoint_every;
  j["seed"] = c.seed;
  j["out"] = c.out;
  return j;
}

RunConfig run_config_from_json(const nlohmann::json& j) {
  try {
    RunConfig c;
    c.graphs = j.at("graphs").get<std::vector<std::string>>();
    c.multipliers = j.at("multipliers").get<std::vector<double>>();
    const auto features = j.at("features").get<std::string>();
    if (features == "structural") {
      c.feature_source = FeatureSource::structural;
    } else if (features == "graph") {
      c.feature_source = FeatureSource::graph;
    } else {
      c.feature_source = FeatureSource::file;
      c.node_features = features;
    }
    c.edge_features = j.at("features.edges").get<std::string>();
    c.dataset_features = j.at("features.datasets").get<std::string>();
    c.feature_dim = j.at("features.dim").get<std::size_t>();
    c.normalize_features = j.at("features.normalize").get<bool>();
    c.walk = walk_params_from_json(j.at("walk"));
    set_config_value(c, "input", j.at("input").get<std::string>());
    c.fanouts = j.at("fanouts").get<std::vector<std::size_t>>();
    c.model = model_config_from_json(j.at("model"));
    c.loss = parse_contrastive_loss(j.at("loss").get<std::string>());
    c.tau = j.at("loss.tau").get<double>();
    set_config_value(c, "recon", j.at("recon").get<std::string>());
    c.recon_weight = j.at("recon.weight").get<double>();
    c.recon_rate = j.at("recon.rate").get<double>();
    const auto& o = j.at("optim");
    c.optim.lr = o.at("lr").get<double>();
    c.optim.weight_decay = o.at("weight_decay").get<double>();
    c.optim.beta1 = o.at("beta1").get<double>();
    c.optim.beta2 = o.at("beta2").get<double>();
    c.optim.eps = o.at("eps").get<double>();
    c.optim.clip = o.at("clip").get<double>();
    c.optim.final_scale = o.at("final_scale").get<double>();
    c.optim.warmup = o.at("warmup").get<std::size_t>();
    c.optim.accumulate = o.at("accumulate").get<std::size_t>();
    c.batch = j.at("batch").get<std::size_t>();
    c.steps = j.at("steps").get<std::size_t>();
    c.checkpoint_every = j.at("checkpoint_every").get<std::size_t>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.out = j.at("out").get<std::string>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::parse_error, std::string("run config: ") + e.what());
  }
}

}  // namespace rwgf
