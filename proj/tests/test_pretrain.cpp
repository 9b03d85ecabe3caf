// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <unistd.h>

#include "rwgf/checkpoint.hpp"
#include "rwgf/error.hpp"
#include "rwgf/graph_io.hpp"
#include "rwgf/mixture.hpp"
#include "rwgf/optim.hpp"
#include "rwgf/parallel.hpp"
#include "rwgf/train.hpp"
#include "support.hpp"

using namespace rwgf;
using namespace rwgf::test;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("rwgf_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

RunConfig small_run(const fs::path& dir) {
  save_graph(dir / "a.graph", random_connected(30, 4, 1));
  save_graph(dir / "b.graph", random_connected(20, 3, 2));
  RunConfig cfg;
  cfg.graphs = {(dir / "a.graph").string(), (dir / "b.graph").string()};
  cfg.multipliers = {1.0, 0.5};
  cfg.feature_dim = 6;
  cfg.walk.walks = 2;
  cfg.walk.length = 3;
  cfg.model.dim = 8;
  cfg.model.blocks = 2;
  cfg.model.heads = 2;
  cfg.model.max_position = 4;
  cfg.batch = 4;
  cfg.steps = 6;
  cfg.optim.warmup = 2;
  cfg.optim.lr = 1e-2;
  cfg.seed = 17;
  return cfg;
}

}  // namespace

TEST_CASE("mixture pass composition") {
  std::vector<MixtureEntry> mix;
  std::size_t size = 40;
  for (const auto& nm : reference_multipliers()) {
    mix.push_back({std::string(nm.name), nm.multiplier, size});
    size += 13;
  }
  REQUIRE(mix.size() == 10);
  const auto pass = build_pass(mix, 3);
  std::map<std::size_t, std::size_t> counts;
  for (const auto& item : pass) {
    ++counts[item.dataset];
    REQUIRE(item.root < mix[item.dataset].size);
  }
  for (std::size_t d = 0; d < mix.size(); ++d) {
    CHECK(counts[d] == static_cast<std::size_t>(std::llround(mix[d].multiplier * static_cast<double>(mix[d].size))));
    CHECK(counts[d] == planned_roots(mix[d]));
  }
  CHECK(build_pass(mix, 3) == pass);
  CHECK_FALSE(build_pass(mix, 4) == pass);
}

TEST_CASE("mixture multipliers and edge cases") {
  const auto m = reference_multipliers();
  CHECK(m[0].name == "PubMed");
  CHECK(m[0].multiplier == 3.0);
  CHECK(m[5].name == "FB15k237");
  CHECK(m[5].multiplier == 0.1);
  CHECK(planned_roots({"x", 0.5, 5}) == 3);
  CHECK(planned_roots({"x", 0.0, 5}) == 0);

  const std::vector<MixtureEntry> under{{"a", 0.5, 10}};
  const auto once = build_pass(under, 1);
  std::set<NodeId> distinct;
  for (const auto& it : once) distinct.insert(it.root);
  CHECK(distinct.size() == 5);

  try {
    build_pass(std::vector<MixtureEntry>{{"a", 0.0, 10}}, 1);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::empty_plan);
  }
  CHECK_THROWS_AS(build_pass(std::vector<MixtureEntry>{{"a", -1.0, 10}}, 1), Error);
}

TEST_CASE("learning rate schedule") {
  OptimConfig cfg;
  cfg.lr = 1.0;
  cfg.warmup = 4;
  cfg.final_scale = 0.1;
  CHECK(scheduled_lr(cfg, 0, 20) == doctest::Approx(0.25));
  CHECK(scheduled_lr(cfg, 3, 20) == doctest::Approx(1.0));
  CHECK(scheduled_lr(cfg, 4, 20) == doctest::Approx(1.0));
  CHECK(scheduled_lr(cfg, 19, 20) == doctest::Approx(0.1));
  double prev = 2.0;
  for (std::size_t s = 4; s < 20; ++s) {
    CHECK(scheduled_lr(cfg, s, 20) <= prev);
    prev = scheduled_lr(cfg, s, 20);
  }
}

TEST_CASE("gradient clipping") {
  ParamStore g;
  g.add("a", 1, 2);
  g["a"](0, 0) = 3.0;
  g["a"](0, 1) = 4.0;
  CHECK(clip_global_norm(g, 1.0) == doctest::Approx(5.0));
  CHECK(global_norm(g) == doctest::Approx(1.0));
  CHECK(g["a"](0, 0) == doctest::Approx(0.6));
  CHECK(clip_global_norm(g, 0.0) == doctest::Approx(1.0));
  CHECK(global_norm(g) == doctest::Approx(1.0));
}

TEST_CASE("AdamW") {
  ParamStore p;
  p.add("w", 1, 2).fill(1.0);
  p.add("frozen", 1, 1).fill(2.0);
  p.set_frozen("frozen", true);
  OptimConfig cfg;
  cfg.weight_decay = 0.1;
  AdamW opt(p, cfg);
  ParamStore g = p.zeros_like();
  g["w"](0, 0) = 0.5;
  g["w"](0, 1) = -2.0;
  g["frozen"](0, 0) = 1.0;
  opt.step(p, g, 0.1);
  // First step moves by lr * sign(g) up to eps, plus decoupled decay.
  CHECK(p["w"](0, 0) == doctest::Approx(1.0 - 0.1 - 0.1 * 0.1 * 1.0).epsilon(1e-6));
  CHECK(p["w"](0, 1) == doctest::Approx(1.0 + 0.1 - 0.1 * 0.1 * 1.0).epsilon(1e-6));
  CHECK(p["frozen"](0, 0) == 2.0);
  CHECK(opt.steps() == 1);

  // Minimizes a quadratic.
  ParamStore x;
  x.add("x", 1, 1).fill(5.0);
  AdamW quad(x, OptimConfig{});
  for (int i = 0; i < 2000; ++i) {
    ParamStore gx = x.zeros_like();
    gx["x"](0, 0) = 2.0 * x["x"](0, 0);
    quad.step(x, gx, 0.05);
  }
  CHECK(std::abs(x["x"](0, 0)) < 1e-2);
}

TEST_CASE("checkpoint round trip") {
  const fs::path dir = scratch_dir("ckpt");
  Checkpoint ck;
  ck.model.feature_dim = 5;
  ck.model.dim = 8;
  ck.model.heads = 2;
  ck.model.edge_mode = EdgeMode::input_only;
  ck.walk.q = 0.25;
  ck.walk.walks = 3;
  ck.params = make_encoder(ck.model, 4);
  ck.meta = {{"note", "x"}};
  save_checkpoint(dir / "m.ckpt", ck);
  const Checkpoint back = load_checkpoint(dir / "m.ckpt");
  CHECK(back.model.dim == 8);
  CHECK(back.model.edge_mode == EdgeMode::input_only);
  CHECK(back.walk.q == 0.25);
  CHECK(back.walk.walks == 3);
  CHECK(back.meta["note"] == "x");
  REQUIRE(back.params.size() == ck.params.size());
  for (std::size_t i = 0; i < ck.params.size(); ++i) {
    CHECK(back.params.at(i).name == ck.params.at(i).name);
    for (std::size_t k = 0; k < ck.params.at(i).value.size(); ++k) {
      const double v = ck.params.at(i).value.flat()[k];
      CHECK(back.params.at(i).value.flat()[k] == static_cast<double>(static_cast<float>(v)));
    }
  }
  {
    std::ofstream bad(dir / "bad.ckpt", std::ios::binary);
    bad << "NOTACKPT";
  }
  CHECK_THROWS_AS(load_checkpoint(dir / "bad.ckpt"), Error);
  CHECK_THROWS_AS(load_checkpoint(dir / "missing.ckpt"), Error);
  fs::remove_all(dir);
}

TEST_CASE("config parsing") {
  std::istringstream in(
      "# comment\n"
      "graphs = a.graph, b.graph\n"
      "multipliers = 3.0, 0.5\n"
      "walk.q = 0.2\n"
      "walk.k = 6\n"
      "model.dim = 16\n"
      "loss = dgi\n"
      "recon = position\n"
      "optim.lr = 0.001\n"
      "seed = 9\n");
  const RunConfig cfg = parse_run_config(in, "inline", "/data");
  REQUIRE(cfg.graphs.size() == 2);
  CHECK(cfg.graphs[0] == "/data/a.graph");
  CHECK(cfg.multipliers == std::vector<double>{3.0, 0.5});
  CHECK(cfg.walk.q == 0.2);
  CHECK(cfg.walk.walks == 6);
  CHECK(cfg.model.dim == 16);
  CHECK(cfg.loss == ContrastiveLoss::dgi);
  CHECK(cfg.recon == ReconstructionMode::position);
  CHECK(cfg.seed == 9);

  const RunConfig back = run_config_from_json(to_json(cfg));
  CHECK(to_json(back) == to_json(cfg));

  for (const char* bad : {"nokey = 1\n", "walk.q = abc\n", "model.dim\n", "loss = nce\n"}) {
    std::istringstream b(bad);
    try {
      parse_run_config(b, "inline");
      FAIL("expected an error for " << bad);
    } catch (const Error& e) {
      CHECK(exit_code_for(e.code()) == 2);
    }
  }
}

TEST_CASE("config validation") {
  RunConfig cfg;
  cfg.graphs = {"g"};
  CHECK_NOTHROW(cfg.validate(false));
  RunConfig heads = cfg;
  heads.model.heads = 3;
  CHECK_THROWS_AS(heads.validate(false), Error);
  RunConfig batch = cfg;
  batch.batch = 1;
  CHECK_THROWS_AS(batch.validate(false), Error);
  RunConfig p = cfg;
  p.walk.p = 0.0;
  CHECK_THROWS_AS(p.validate(false), Error);
  RunConfig mult = cfg;
  mult.multipliers = {1.0, 2.0};
  CHECK_THROWS_AS(mult.validate(false), Error);
  RunConfig none;
  CHECK_THROWS_AS(none.validate(false), Error);
}

TEST_CASE("training is deterministic and reduces the loss") {
  const fs::path dir = scratch_dir("det");
  RunConfig cfg = small_run(dir);
  auto run = [&] {
    Trainer t(cfg, load_datasets(cfg));
    std::vector<double> losses;
    for (std::size_t s = 0; s < cfg.steps; ++s) losses.push_back(t.step().loss);
    return std::make_pair(losses, t.params());
  };
  const auto a = run();
  const auto b = run();
  CHECK(a.first == b.first);
  CHECK(a.second == b.second);
  for (double l : a.first) CHECK(std::isfinite(l));

  cfg.seed = 18;
  CHECK_FALSE(run().first == a.first);
  fs::remove_all(dir);
}

TEST_CASE("thread count does not change results") {
  const fs::path dir = scratch_dir("threads");
  const RunConfig cfg = small_run(dir);
  auto final_params = [&](const char* threads) {
    ::setenv("RWGF_THREADS", threads, 1);
    Trainer t(cfg, load_datasets(cfg));
    for (int s = 0; s < 3; ++s) t.step();
    return t.params();
  };
  const ParamStore one = final_params("1");
  const ParamStore four = final_params("4");
  ::unsetenv("RWGF_THREADS");
  CHECK(one == four);
  fs::remove_all(dir);
}

TEST_CASE("accumulation averages micro-batches") {
  const fs::path dir = scratch_dir("acc");
  RunConfig cfg = small_run(dir);
  cfg.optim.accumulate = 3;
  Trainer t(cfg, load_datasets(cfg));
  const StepMetrics m = t.step();
  CHECK(t.steps_done() == 1);
  CHECK(std::isfinite(m.loss));
  fs::remove_all(dir);
}

TEST_CASE("run writes metrics, checkpoints and a manifest") {
  const fs::path dir = scratch_dir("run");
  RunConfig cfg = small_run(dir);
  cfg.checkpoint_every = 2;
  const RunSummary s = run_pretraining(cfg, dir / "out");
  CHECK(s.history.size() == cfg.steps);
  CHECK(fs::exists(dir / "out" / "final.ckpt"));
  CHECK(fs::exists(dir / "out" / "step_2.ckpt"));
  CHECK(fs::exists(dir / "out" / "manifest.json"));
  std::ifstream metrics(dir / "out" / "metrics.jsonl");
  std::size_t lines = 0;
  for (std::string line; std::getline(metrics, line);) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j.contains("loss"));
    ++lines;
  }
  CHECK(lines == cfg.steps);
  const Checkpoint ck = load_checkpoint(dir / "out" / "final.ckpt");
  CHECK(ck.meta["steps"] == cfg.steps);
  const RunConfig saved = run_config_from_json(ck.meta["run_config"]);
  CHECK(saved.walk.walks == cfg.walk.walks);
  CHECK(saved.model.feature_dim == 6);

  const auto data = load_datasets(cfg);
  const Matrix emb = embed_nodes(saved, ck.params, data[0]);
  CHECK(emb.rows() == 30);
  CHECK(emb.cols() == 8);
  fs::remove_all(dir);
}
