// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rwgf/adapt.hpp"
#include "rwgf/checkpoint.hpp"
#include "rwgf/config.hpp"
#include "rwgf/costmodel.hpp"
#include "rwgf/error.hpp"
#include "rwgf/features.hpp"
#include "rwgf/graph_io.hpp"
#include "rwgf/reconstruction.hpp"
#include "rwgf/rng.hpp"
#include "rwgf/sp_kernel.hpp"
#include "rwgf/train.hpp"
#include "rwgf/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rwgf;

namespace {

// Opens --out, or stdout when the path is empty or "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    if (fs::path(path).has_parent_path()) fs::create_directories(fs::path(path).parent_path());
    file_.open(path, std::ios::trunc);
    if (!file_) fail(Errc::io_error, "cannot write " + path);
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    cell.erase(0, cell.find_first_not_of(" \t\r"));
    cell.erase(cell.find_last_not_of(" \t\r") + 1);
    out.push_back(cell);
  }
  return out;
}

std::vector<std::vector<std::string>> read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::io_error, "cannot open " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    rows.push_back(split_csv_line(line));
  }
  return rows;
}

double to_double(const std::string& s, const std::string& where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(Errc::parse_error, where + ": '" + s + "' is not a number");
  }
}

NodeId to_node(const std::string& s, const std::string& where) {
  const double v = to_double(s, where);
  if (v < 0 || v != static_cast<double>(static_cast<NodeId>(v))) fail(Errc::invalid_node, where + ": bad node id " + s);
  return static_cast<NodeId>(v);
}

std::vector<NodeId> parse_nodes(const std::string& list) {
  std::vector<NodeId> out;
  for (const auto& cell : split_csv_line(list)) out.push_back(to_node(cell, "--centers"));
  return out;
}

// Parameters and config of a backbone, from a checkpoint or freshly
// initialized from a config file.
struct Backbone {
  RunConfig cfg;
  ParamStore params;
};

Backbone load_backbone(const std::string& checkpoint, const std::string& config, const std::vector<std::string>& graphs) {
  Backbone b;
  if (!checkpoint.empty()) {
    Checkpoint ck = load_checkpoint(checkpoint);
    if (!ck.meta.contains("run_config")) fail(Errc::parse_error, checkpoint + " carries no run config");
    b.cfg = run_config_from_json(ck.meta["run_config"]);
    b.cfg.model = ck.model;
    b.params = std::move(ck.params);
  } else {
    b.cfg = load_run_config(config);
  }
  if (!graphs.empty()) b.cfg.graphs = graphs;
  b.cfg.multipliers.clear();
  if (checkpoint.empty()) {
    const auto data = load_datasets(b.cfg);
    Trainer t(b.cfg, data);
    b.cfg.model = t.model();
    b.params = t.params();
  }
  return b;
}

int run_sample(const std::string& graph_path, const std::string& roots, WalkParams wp, const std::string& out) {
  const Graph g = load_graph(graph_path);
  std::vector<NodeId> list;
  if (roots.empty() || roots == "all") {
    for (NodeId u = 0; u < g.node_count(); ++u) list.push_back(u);
  } else {
    list = parse_nodes(roots);
  }
  Output o(out);
  for (NodeId u : list) {
    WalkParams p = wp;
    p.seed = derive_seed(substream(wp.seed, "walks"), {u});
    json line{{"root", u}};
    if (g.degree(u) == 0) {
      line["walks"] = json::array();
      line["edges"] = json::array();
      line["positions"] = json::array();
    } else {
      const WalkSet ws = sample_walks(g, u, p);
      line["walks"] = ws.walks;
      line["edges"] = ws.walk_edges;
      line["positions"] = ws.positions;
    }
    o.stream() << line.dump() << '\n';
  }
  return 0;
}

int run_pretrain(const std::string& config, const std::string& out, std::optional<std::uint64_t> seed,
                 std::optional<std::size_t> steps, bool quiet) {
  RunConfig cfg = load_run_config(config);
  if (!out.empty()) cfg.out = out;
  if (seed) cfg.seed = *seed;
  if (steps) cfg.steps = *steps;
  const auto summary = run_pretraining(cfg, cfg.out, [&](const StepMetrics& m) {
    if (!quiet && (m.step % 10 == 0 || m.step + 1 == cfg.steps)) {
      std::cerr << "step " << m.step << " loss " << m.loss << " lr " << m.lr << '\n';
    }
  });
  std::cout << "final_loss," << (summary.history.empty() ? 0.0 : summary.history.back().loss) << '\n';
  for (const auto& c : summary.checkpoints) std::cout << "checkpoint," << c << '\n';
  return 0;
}

int run_embed(const std::string& checkpoint, const std::string& config, const std::string& graph,
              const std::string& out) {
  Backbone b = load_backbone(checkpoint, config, {graph});
  const auto data = load_datasets(b.cfg);
  const Matrix emb = embed_nodes(b.cfg, b.params, data.front());
  write_feature_file(out, emb);
  std::cout << "rows," << emb.rows() << "\ncols," << emb.cols() << '\n';
  return 0;
}

struct AdaptArgs {
  std::string checkpoint, config, task = "node", target = "classification", pooling = "mean";
  std::vector<std::string> graphs;
  std::string labels, split, out;
  HeadConfig head;
};

int run_adapt(AdaptArgs a) {
  const TaskKind kind = parse_task_kind(a.task);
  a.head.target = parse_target(a.target);
  Backbone b = load_backbone(a.checkpoint, a.config, a.graphs);
  const auto data = load_datasets(b.cfg);
  std::vector<Matrix> reps;
  for (const auto& d : data) reps.push_back(embed_nodes(b.cfg, b.params, d));

  const auto table = read_table(a.labels);
  if (table.empty()) fail(Errc::parse_error, a.labels + " has no rows");
  const std::size_t keys = kind == TaskKind::link ? 2 : 1;
  const std::size_t targets = table.front().size() - keys;
  if (table.front().size() <= keys) fail(Errc::parse_error, a.labels + " has no target column");

  Matrix x, y(table.size(), targets), x_swapped;
  if (kind == TaskKind::node) {
    x = Matrix(table.size(), reps.front().cols());
  }
  std::vector<std::pair<NodeId, NodeId>> pairs;
  std::vector<std::size_t> graph_rows;
  for (std::size_t r = 0; r < table.size(); ++r) {
    const auto& row = table[r];
    const std::string where = a.labels + ":" + std::to_string(r + 1);
    if (row.size() != keys + targets) fail(Errc::parse_error, where + ": ragged row");
    for (std::size_t t = 0; t < targets; ++t) {
      y(r, t) = row[keys + t].empty() ? std::numeric_limits<double>::quiet_NaN() : to_double(row[keys + t], where);
    }
    if (kind == TaskKind::node) {
      const NodeId u = to_node(row[0], where);
      if (u >= reps.front().rows()) fail(Errc::invalid_node, where + ": node outside the graph");
      std::copy(reps.front().row(u).begin(), reps.front().row(u).end(), x.row(r).begin());
    } else if (kind == TaskKind::link) {
      pairs.emplace_back(to_node(row[0], where), to_node(row[1], where));
    } else {
      const NodeId gi = to_node(row[0], where);
      if (gi >= reps.size()) fail(Errc::invalid_id, where + ": graph index outside --graph list");
      graph_rows.push_back(gi);
    }
  }
  if (kind == TaskKind::link) {
    x = assemble_links(reps.front(), pairs, false);
    x_swapped = assemble_links(reps.front(), pairs, true);
  } else if (kind == TaskKind::graph) {
    const Matrix pooled = assemble_graphs(reps, parse_pooling(a.pooling));
    x = Matrix(graph_rows.size(), pooled.cols());
    for (std::size_t r = 0; r < graph_rows.size(); ++r) {
      std::copy(pooled.row(graph_rows[r]).begin(), pooled.row(graph_rows[r]).end(), x.row(r).begin());
    }
  }

  std::vector<std::string> split(table.size(), "train");
  if (!a.split.empty()) {
    const auto s = read_table(a.split);
    if (s.size() != table.size()) fail(Errc::parse_error, a.split + " must have one line per label row");
    for (std::size_t r = 0; r < s.size(); ++r) {
      if (s[r].empty() || (s[r][0] != "train" && s[r][0] != "val" && s[r][0] != "test")) {
        fail(Errc::parse_error, a.split + ":" + std::to_string(r + 1) + ": expected train, val or test");
      }
      split[r] = s[r][0];
    }
  }
  auto subset = [&](const Matrix& m, const std::string& which) {
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < split.size(); ++r) {
      if (split[r] == which) rows.push_back(r);
    }
    Matrix out(rows.size(), m.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) std::copy(m.row(rows[i]).begin(), m.row(rows[i]).end(), out.row(i).begin());
    return out;
  };
  if (a.head.target == Target::classification) {
    std::size_t classes = 0;
    for (std::size_t r = 0; r < y.rows(); ++r) classes = std::max(classes, static_cast<std::size_t>(y(r, 0)) + 1);
    a.head.outputs = classes;
  } else {
    a.head.outputs = targets;
  }
  const TrainedHead trained = train_head(a.head, subset(x, "train"), subset(y, "train"));
  if (trained.degenerate_labels) std::cerr << "warning: degenerate_labels: some label value is absent from training\n";

  Matrix pred = trained.head.predict(x);
  if (kind == TaskKind::link) {
    const Matrix back = trained.head.predict(x_swapped);
    for (std::size_t i = 0; i < pred.size(); ++i) pred.flat()[i] = 0.5 * (pred.flat()[i] + back.flat()[i]);
  }
  Output o(a.out);
  o.stream() << "row,split";
  for (std::size_t c = 0; c < pred.cols(); ++c) o.stream() << ",out" << c;
  o.stream() << '\n' << std::setprecision(10);
  for (std::size_t r = 0; r < pred.rows(); ++r) {
    o.stream() << r << ',' << split[r];
    for (double v : pred.row(r)) o.stream() << ',' << v;
    o.stream() << '\n';
  }
  for (const char* which : {"train", "val", "test"}) {
    const Matrix xs = subset(x, which);
    if (xs.rows() == 0) continue;
    std::cerr << which << "_metric," << head_metric(trained.head, xs, subset(y, which)) << '\n';
  }
  return 0;
}

struct TheoryArgs {
  std::string graph;
  std::size_t path = 0;
  NodeId root = 0;
  Hop radius = 1;
  std::size_t trials = 200;
  WalkParams walk;
  std::string out;
};

Graph theory_graph(const TheoryArgs& a) {
  if (!a.graph.empty()) return load_graph(a.graph);
  if (a.path == 0) fail(Errc::config_error, "give --graph or --path");
  GraphBuilder b(a.path + 1);
  for (NodeId i = 0; i < a.path; ++i) b.add_edge(i, i + 1);
  return b.build();
}

int run_theory(const std::string& which, const TheoryArgs& a) {
  const Graph g = theory_graph(a);
  Output o(a.out);
  auto& s = o.stream();
  s << std::setprecision(10);
  if (which == "hitting") {
    const auto e = hitting_time(g, a.root, a.radius, a.walk, a.trials);
    s << "radius,trials,censored,cap,mean,stddev,ci95,mean_over_r,mean_over_r2\n";
    const double r = a.radius;
    s << e.radius << ',' << e.trials << ',' << e.censored << ',' << e.cap << ',' << e.mean << ',' << e.stddev << ','
      << e.ci95 << ',' << e.mean / r << ',' << e.mean / (r * r) << '\n';
  } else if (which == "coverage") {
    const auto c = coverage_walk_count(g, a.root, a.radius, a.walk, a.trials);
    s << "n,r,order_nr,order_n2_r2,analytic,empirical_mean,empirical_ci95,trials,censored\n";
    s << c.n << ',' << c.r << ',' << c.order_nr << ',' << c.order_n2_r2 << ',' << c.analytic << ','
      << c.empirical_mean << ',' << c.empirical_ci95 << ',' << c.trials << ',' << c.censored << '\n';
  } else if (which == "reconstruct") {
    s << "trial,nodes_found,nodes_true,edges_found,edges_true,sound,complete,exact_sp_pairs\n";
    for (std::size_t t = 0; t < a.trials; ++t) {
      WalkParams wp = a.walk;
      wp.seed = derive_seed(a.walk.seed, {t});
      const WalkSet ws = sample_walks(g, a.root, wp);
      const auto est = reconstruct_ball(g, ws, a.radius);
      const auto& c = est.coverage;
      s << t << ',' << c.nodes_found << ',' << c.nodes_true << ',' << c.edges_found << ',' << c.edges_true << ','
        << c.sound << ',' << c.complete << ',' << exact_sp_pairs(ws).size() << '\n';
    }
  } else {
    fail(Errc::config_error, "unknown theory report '" + which + "'");
  }
  return 0;
}

int run_kernel(const std::string& graph, const std::string& centers, Hop radius, const std::string& out) {
  const Graph g = load_graph(graph);
  std::vector<Ball> balls;
  for (NodeId c : parse_nodes(centers)) balls.push_back(ball(g, c, radius));
  const Matrix k = gram(std::span<const Ball>(balls));
  Output o(out);
  for (std::size_t r = 0; r < k.rows(); ++r) {
    for (std::size_t c = 0; c < k.cols(); ++c) o.stream() << (c ? "," : "") << k(r, c);
    o.stream() << '\n';
  }
  return 0;
}

int run_cost(const std::string& preset, const std::string& compare, std::uint64_t batch, std::uint64_t context) {
  const ModelConfig m = preset == "reference" ? ModelConfig::reference() : ModelConfig::desk();
  if (preset != "reference" && preset != "desk") fail(Errc::config_error, "preset must be reference or desk");
  CostInputs in;
  in.batch = batch;
  in.blocks = m.blocks;
  in.dim = m.dim;
  const WalkParams wp;
  in.context = context ? context : 2 + wp.walks * wp.length;
  in.gnn_dim = in.dim;
  in.gnn_layers = in.blocks;
  in.fanout = 10;
  for (const auto& item : split_csv_line(compare)) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) fail(Errc::config_error, "--compare-gnn expects key=value pairs");
    const std::string key = item.substr(0, eq);
    const auto value = static_cast<std::uint64_t>(to_double(item.substr(eq + 1), "--compare-gnn"));
    if (key == "d'" || key == "d") {
      in.gnn_dim = value;
    } else if (key == "k'" || key == "k") {
      in.fanout = value;
    } else if (key == "l'" || key == "l") {
      in.gnn_layers = value;
    } else {
      fail(Errc::config_error, "unknown --compare-gnn key '" + key + "'");
    }
  }
  const Cost r = rwpt_cost(in), g = gnn_cost(in);
  // Integral values print exactly; fractional or huge ones in %g form.
  auto fmt = [](long double v) {
    if (v == std::floor(v) && v < 9.2e18L) return std::to_string(static_cast<std::uint64_t>(v));
    std::ostringstream os;
    os << std::setprecision(6) << static_cast<double>(v);
    return os.str();
  };
  std::cout << "model,size,forward_time,B,T,L,d,l',d',k'\n";
  std::cout << "rwpt," << fmt(r.size) << ',' << fmt(r.time) << ',' << in.batch << ',' << in.blocks << ','
            << in.context << ',' << in.dim << ",,,\n";
  std::cout << "gnn_upper_bound," << fmt(g.size) << ',' << fmt(g.time) << ','
            << in.batch << ",,,," << in.gnn_layers << ',' << in.gnn_dim << ',' << in.fanout << '\n';
  std::cout << "rwpt_faster," << (rwpt_faster(in) ? "yes" : "no") << '\n';
  return 0;
}

int run_report(const std::string& dir) {
  const fs::path metrics = fs::path(dir) / "metrics.jsonl";
  if (!fs::is_directory(dir)) fail(Errc::io_error, dir + " is not a directory");
  if (!fs::exists(metrics)) fail(Errc::io_error, dir + " holds no metrics.jsonl");
  std::ifstream in(metrics);
  std::string line;
  std::map<std::size_t, std::pair<std::size_t, double>> passes;
  std::size_t steps = 0;
  double first = 0.0, last = 0.0, best = std::numeric_limits<double>::infinity();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      fail(Errc::parse_error, metrics.string() + ": " + e.what());
    }
    const double loss = j.at("loss").get<double>();
    if (steps == 0) first = loss;
    last = loss;
    best = std::min(best, loss);
    auto& p = passes[j.at("pass").get<std::size_t>()];
    ++p.first;
    p.second += loss;
    ++steps;
  }
  if (steps == 0) fail(Errc::io_error, metrics.string() + " is empty");
  std::cout << std::setprecision(8) << "key,value\n";
  std::cout << "steps," << steps << "\ninitial_loss," << first << "\nfinal_loss," << last << "\nmin_loss," << best << '\n';
  for (const auto& [pass, p] : passes) {
    std::cout << "pass_" << pass << "_mean_loss," << p.second / static_cast<double>(p.first) << '\n';
  }
  const fs::path manifest = fs::path(dir) / "manifest.json";
  if (fs::exists(manifest)) {
    std::ifstream m(manifest);
    const json j = json::parse(m, nullptr, false);
    if (!j.is_discarded()) {
      if (j.contains("seed")) std::cout << "seed," << j["seed"] << '\n';
      if (j.contains("code_version")) std::cout << "code_version," << j["code_version"].get<std::string>() << '\n';
      if (j.contains("checkpoints")) {
        for (const auto& c : j["checkpoints"]) std::cout << "checkpoint," << c.get<std::string>() << '\n';
      }
    }
  }
  return 0;
}

void add_walk_options(CLI::App* cmd, WalkParams& wp) {
  cmd->add_option("--p", wp.p, "return parameter");
  cmd->add_option("--q", wp.q, "in-out parameter");
  cmd->add_option("--walks,-k", wp.walks, "walks per root");
  cmd->add_option("--length,-l", wp.length, "steps per walk");
  cmd->add_option("--seed", wp.seed, "seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random-walk graph Transformer toolkit"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::string graph, out, config, checkpoint, roots, centers;
  WalkParams wp;
  auto* sample = app.add_subcommand("sample", "sample walks, one JSON line per root");
  sample->add_option("--graph", graph, "graph file")->required();
  sample->add_option("--roots", roots, "comma-separated roots or 'all'");
  sample->add_option("--out", out, "output file (default stdout)");
  add_walk_options(sample, wp);

  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> steps;
  bool quiet = false;
  auto* pretrain = app.add_subcommand("pretrain", "pre-train a backbone");
  pretrain->add_option("--config", config, "run config")->required();
  pretrain->add_option("--out", out, "run directory (overrides config)");
  pretrain->add_option("--seed", seed, "seed (overrides config)");
  pretrain->add_option("--steps", steps, "steps (overrides config)");
  pretrain->add_flag("--quiet", quiet, "no progress lines");

  auto* embed = app.add_subcommand("embed", "write root representations of every node");
  auto* embed_src = embed->add_option_group("source");
  embed_src->add_option("--checkpoint", checkpoint, "trained checkpoint");
  embed_src->add_option("--config", config, "config for a freshly initialized backbone");
  embed_src->require_option(1);
  embed->add_option("--graph", graph, "graph file")->required();
  embed->add_option("--out", out, "feature file (.f32bin or CSV)")->required();

  AdaptArgs aa;
  auto* adapt = app.add_subcommand("adapt", "train a task head on a frozen backbone");
  auto* adapt_src = adapt->add_option_group("source");
  adapt_src->add_option("--checkpoint", aa.checkpoint, "trained checkpoint");
  adapt_src->add_option("--config", aa.config, "config for a freshly initialized backbone");
  adapt_src->require_option(1);
  adapt->add_option("--task", aa.task, "node, link or graph")->required();
  adapt->add_option("--graph", aa.graphs, "graph file(s); graph tasks index into this list")->required();
  adapt->add_option("--labels", aa.labels, "CSV: key column(s) then target column(s)")->required();
  adapt->add_option("--split", aa.split, "one of train/val/test per label row");
  adapt->add_option("--target", aa.target, "classification, multilabel or regression");
  adapt->add_option("--pooling", aa.pooling, "graph pooling: mean, sum or max");
  adapt->add_option("--hidden", aa.head.hidden);
  adapt->add_option("--layers", aa.head.layers);
  adapt->add_option("--dropout", aa.head.dropout);
  adapt->add_option("--lr", aa.head.lr);
  adapt->add_option("--weight-decay", aa.head.weight_decay);
  adapt->add_option("--epochs", aa.head.epochs);
  adapt->add_option("--batch", aa.head.batch, "0 trains full batch");
  adapt->add_option("--seed", aa.head.seed);
  adapt->add_option("--out", aa.out, "predictions CSV (default stdout)");

  TheoryArgs ta;
  std::string report_kind;
  auto* theory = app.add_subcommand("theory", "hitting time, coverage and reconstruction reports as CSV");
  theory->add_option("report", report_kind, "hitting, coverage or reconstruct")->required();
  theory->add_option("--graph", ta.graph, "graph file");
  theory->add_option("--path", ta.path, "use the path graph 0..N instead of a file");
  theory->add_option("--root", ta.root);
  theory->add_option("--radius,-r", ta.radius);
  theory->add_option("--trials", ta.trials);
  theory->add_option("--out", ta.out, "output CSV (default stdout)");
  add_walk_options(theory, ta.walk);

  Hop radius = 1;
  auto* kernel_cmd = app.add_subcommand("kernel", "shortest-path kernel Gram matrix of balls");
  kernel_cmd->add_option("--graph", graph, "graph file")->required();
  kernel_cmd->add_option("--centers", centers, "comma-separated centers")->required();
  kernel_cmd->add_option("--radius", radius);
  kernel_cmd->add_option("--out", out, "output CSV (default stdout)");

  std::string preset = "desk", compare;
  std::uint64_t cost_batch = 1, context = 0;
  auto* cost = app.add_subcommand("cost", "analytic size and forward-time model");
  cost->add_option("--preset", preset, "reference or desk");
  cost->add_option("--compare-gnn", compare, "d'=...,k'=...,l'=...");
  cost->add_option("--batch", cost_batch);
  cost->add_option("--context", context, "context length (default from walk settings)");

  std::string run_dir;
  auto* report = app.add_subcommand("report", "summarize a run directory");
  report->add_option("dir", run_dir, "run directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*sample) return run_sample(graph, roots, wp, out);
    if (*pretrain) return run_pretrain(config, out, seed, steps, quiet);
    if (*embed) return run_embed(checkpoint, config, graph, out);
    if (*adapt) return run_adapt(aa);
    if (*theory) return run_theory(report_kind, ta);
    if (*kernel_cmd) return run_kernel(graph, centers, radius, out);
    if (*cost) return run_cost(preset, compare, cost_batch, context);
    if (*report) return run_report(run_dir);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
