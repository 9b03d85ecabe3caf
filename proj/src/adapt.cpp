// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#include "rwgf/adapt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "rwgf/error.hpp"
#include "rwgf/optim.hpp"
#include "rwgf/rng.hpp"

namespace rwgf {

namespace {

constexpr double kNormEps = 1e-5;

std::string layer_name(std::size_t i, const char* what) { return "enc" + std::to_string(i) + "." + what; }

void add_bias(Matrix& m, const Matrix& b) {
  for (std::size_t r = 0; r < m.rows(); ++r) axpy(1.0, b.row(0), m.row(r));
}

void add_col_sums(const Matrix& m, Matrix& out) {
  for (std::size_t r = 0; r < m.rows(); ++r) axpy(1.0, m.row(r), out.row(0));
}

Matrix linear(const Matrix& x, const Matrix& w, const Matrix& b) {
  Matrix z(x.rows(), w.cols());
  matmul_acc(x, w, z);
  add_bias(z, b);
  return z;
}

void column_stats(const Matrix& z, std::vector<double>& mean, std::vector<double>& var) {
  const std::size_t n = z.rows(), c = z.cols();
  mean.assign(c, 0.0);
  var.assign(c, 0.0);
  for (std::size_t r = 0; r < n; ++r) axpy(1.0, z.row(r), mean);
  for (double& m : mean) m /= static_cast<double>(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t j = 0; j < c; ++j) var[j] += (z(r, j) - mean[j]) * (z(r, j) - mean[j]);
  }
  for (double& v : var) v /= static_cast<double>(n);
}

Matrix take_rows(const Matrix& m, std::span<const std::size_t> rows) {
  Matrix out(rows.size(), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) std::copy_n(m.row(rows[i]).begin(), m.cols(), out.row(i).begin());
  return out;
}

double sigmoid(double x) { return x >= 0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x)); }

std::size_t argmax(std::span<const double> v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

std::size_t class_of(double v, std::size_t classes) {
  if (!(v >= 0.0) || v != std::floor(v) || v >= static_cast<double>(classes)) {
    fail(Errc::invalid_id, "class label " + std::to_string(v) + " outside [0, " + std::to_string(classes) + ")");
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

TaskKind parse_task_kind(std::string_view s) {
  if (s == "node") return TaskKind::node;
  if (s == "link") return TaskKind::link;
  if (s == "graph") return TaskKind::graph;
  fail(Errc::config_error, "unknown task kind '" + std::string(s) + "'");
}

Target parse_target(std::string_view s) {
  if (s == "classification") return Target::classification;
  if (s == "multilabel") return Target::multilabel;
  if (s == "regression") return Target::regression;
  fail(Errc::config_error, "unknown target '" + std::string(s) + "'");
}

Pooling parse_pooling(std::string_view s) {
  if (s == "mean") return Pooling::mean;
  if (s == "sum") return Pooling::sum;
  if (s == "max") return Pooling::max;
  fail(Errc::config_error, "unknown pooling '" + std::string(s) + "'");
}

std::vector<double> assemble_input(TaskKind kind, const std::vector<std::span<const double>>& reps,
                                   Pooling pooling) {
  switch (kind) {
    case TaskKind::node:
      if (reps.size() != 1) fail(Errc::dimension_mismatch, "node task takes one representation");
      return {reps[0].begin(), reps[0].end()};
    case TaskKind::link: {
      if (reps.size() != 2) fail(Errc::dimension_mismatch, "link task takes two representations");
      if (reps[0].size() != reps[1].size()) fail(Errc::dimension_mismatch, "link endpoints differ in width");
      std::vector<double> out(reps[0].begin(), reps[0].end());
      out.insert(out.end(), reps[1].begin(), reps[1].end());
      return out;
    }
    case TaskKind::graph: {
      if (reps.empty()) fail(Errc::empty_graph, "graph task over a graph with no nodes");
      const std::size_t d = reps[0].size();
      std::vector<double> out(d, pooling == Pooling::max ? -std::numeric_limits<double>::infinity() : 0.0);
      for (const auto& r : reps) {
        if (r.size() != d) fail(Errc::dimension_mismatch, "node representations differ in width");
        for (std::size_t j = 0; j < d; ++j) out[j] = pooling == Pooling::max ? std::max(out[j], r[j]) : out[j] + r[j];
      }
      if (pooling == Pooling::mean) {
        for (double& v : out) v /= static_cast<double>(reps.size());
      }
      return out;
    }
  }
  return {};
}

Matrix assemble_links(const Matrix& reps, std::span<const std::pair<NodeId, NodeId>> pairs, bool swap) {
  const std::size_t d = reps.cols();
  Matrix out(pairs.size(), 2 * d);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [u, v] = pairs[i];
    if (u >= reps.rows() || v >= reps.rows()) fail(Errc::invalid_node, "link endpoint outside the graph");
    if (swap) std::swap(u, v);
    std::copy_n(reps.row(u).begin(), d, out.row(i).begin());
    std::copy_n(reps.row(v).begin(), d, out.row(i).begin() + static_cast<std::ptrdiff_t>(d));
  }
  return out;
}

Matrix assemble_graphs(const std::vector<Matrix>& reps, Pooling pooling) {
  if (reps.empty()) return {};
  Matrix out(reps.size(), reps[0].cols());
  for (std::size_t g = 0; g < reps.size(); ++g) {
    std::vector<std::span<const double>> rows;
    for (std::size_t r = 0; r < reps[g].rows(); ++r) rows.push_back(reps[g].row(r));
    const auto pooled = assemble_input(TaskKind::graph, rows, pooling);
    if (pooled.size() != out.cols()) fail(Errc::dimension_mismatch, "graphs differ in representation width");
    std::copy(pooled.begin(), pooled.end(), out.row(g).begin());
  }
  return out;
}

void HeadConfig::validate() const {
  if (outputs == 0) fail(Errc::config_error, "head needs at least one output");
  if (layers > 0 && hidden == 0) fail(Errc::config_error, "hidden width must be positive");
  if (!(dropout >= 0.0 && dropout < 1.0)) fail(Errc::config_error, "dropout must lie in [0, 1)");
  if (!(lr > 0.0) || weight_decay < 0.0) fail(Errc::config_error, "invalid head learning rate or weight decay");
  if (epochs == 0) fail(Errc::config_error, "head training needs at least one epoch");
}

TaskHead::TaskHead(HeadConfig cfg, std::size_t input_dim) : cfg_(cfg), input_dim_(input_dim) {
  cfg_.validate();
  if (input_dim == 0) fail(Errc::dimension_mismatch, "head input width must be positive");
  std::size_t in = input_dim;
  for (std::size_t i = 0; i < cfg_.layers; ++i) {
    init_normal(params_.add(layer_name(i, "w"), in, cfg_.hidden), std::sqrt(2.0 / static_cast<double>(in)),
                derive_seed(cfg_.seed, {i}));
    params_.add(layer_name(i, "b"), 1, cfg_.hidden);
    params_.add(layer_name(i, "gamma"), 1, cfg_.hidden).fill(1.0);
    params_.add(layer_name(i, "beta"), 1, cfg_.hidden);
    mean_.emplace_back(cfg_.hidden, 0.0);
    var_.emplace_back(cfg_.hidden, 1.0);
    in = cfg_.hidden;
  }
  init_normal(params_.add("dec.w", in, cfg_.outputs), std::sqrt(1.0 / static_cast<double>(in)),
              derive_seed(cfg_.seed, {cfg_.layers}));
  params_.add("dec.b", 1, cfg_.outputs);
}

Matrix TaskHead::encode(const Matrix& x) const {
  if (x.cols() != input_dim_) fail(Errc::dimension_mismatch, "head input has the wrong width");
  Matrix h = x;
  for (std::size_t i = 0; i < cfg_.layers; ++i) {
    Matrix z = linear(h, params_[layer_name(i, "w")], params_[layer_name(i, "b")]);
    const auto& gamma = params_[layer_name(i, "gamma")];
    const auto& beta = params_[layer_name(i, "beta")];
    for (std::size_t r = 0; r < z.rows(); ++r) {
      for (std::size_t j = 0; j < z.cols(); ++j) {
        const double y = gamma(0, j) * (z(r, j) - mean_[i][j]) / std::sqrt(var_[i][j] + kNormEps) + beta(0, j);
        z(r, j) = std::max(y, 0.0);
      }
    }
    h = std::move(z);
  }
  return h;
}

Matrix TaskHead::forward(const Matrix& x) const { return linear(encode(x), params_["dec.w"], params_["dec.b"]); }

Matrix TaskHead::predict(const Matrix& x) const {
  Matrix out = forward(x);
  for (std::size_t r = 0; r < out.rows(); ++r) {
    auto row = out.row(r);
    if (cfg_.target == Target::classification) {
      const double m = *std::max_element(row.begin(), row.end());
      double total = 0.0;
      for (double& v : row) total += (v = std::exp(v - m));
      for (double& v : row) v /= total;
    } else if (cfg_.target == Target::multilabel) {
      for (double& v : row) v = sigmoid(v);
    }
  }
  return out;
}

void TaskHead::set_norm_statistics(const Matrix& x) {
  if (x.rows() == 0) return;
  Matrix h = x;
  for (std::size_t i = 0; i < cfg_.layers; ++i) {
    const Matrix z = linear(h, params_[layer_name(i, "w")], params_[layer_name(i, "b")]);
    column_stats(z, mean_[i], var_[i]);
    Matrix next = z;
    const auto& gamma = params_[layer_name(i, "gamma")];
    const auto& beta = params_[layer_name(i, "beta")];
    for (std::size_t r = 0; r < z.rows(); ++r) {
      for (std::size_t j = 0; j < z.cols(); ++j) {
        next(r, j) = std::max(gamma(0, j) * (z(r, j) - mean_[i][j]) / std::sqrt(var_[i][j] + kNormEps) + beta(0, j), 0.0);
      }
    }
    h = std::move(next);
  }
}

double TaskHead::train_loss(const Matrix& x, const Matrix& y, std::uint64_t seed, ParamStore& grads) const {
  if (x.cols() != input_dim_ || x.rows() != y.rows()) fail(Errc::dimension_mismatch, "head batch shape mismatch");
  struct Cache {
    Matrix in, z_hat, pre, mask;
    std::vector<double> inv_std;
  };
  std::vector<Cache> caches(cfg_.layers);
  Rng rng(seed);
  const std::size_t n = x.rows();
  Matrix h = x;
  for (std::size_t i = 0; i < cfg_.layers; ++i) {
    Cache& c = caches[i];
    c.in = h;
    Matrix z = linear(h, params_[layer_name(i, "w")], params_[layer_name(i, "b")]);
    std::vector<double> mean, var;
    column_stats(z, mean, var);
    c.inv_std.resize(var.size());
    for (std::size_t j = 0; j < var.size(); ++j) c.inv_std[j] = 1.0 / std::sqrt(var[j] + kNormEps);
    const auto& gamma = params_[layer_name(i, "gamma")];
    const auto& beta = params_[layer_name(i, "beta")];
    c.z_hat = Matrix(n, z.cols());
    c.pre = Matrix(n, z.cols());
    c.mask = Matrix(n, z.cols(), 1.0);
    Matrix out(n, z.cols());
    const double keep = 1.0 - cfg_.dropout;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t j = 0; j < z.cols(); ++j) {
        c.z_hat(r, j) = (z(r, j) - mean[j]) * c.inv_std[j];
        c.pre(r, j) = gamma(0, j) * c.z_hat(r, j) + beta(0, j);
        if (cfg_.dropout > 0.0) c.mask(r, j) = uniform01(rng) < keep ? 1.0 / keep : 0.0;
        out(r, j) = std::max(c.pre(r, j), 0.0) * c.mask(r, j);
      }
    }
    h = std::move(out);
  }
  const Matrix out = linear(h, params_["dec.w"], params_["dec.b"]);
  Matrix d_out;
  const double loss = head_loss(cfg_.target, out, y, &d_out);
  matmul_tn_acc(h, d_out, grads["dec.w"]);
  add_col_sums(d_out, grads["dec.b"]);
  Matrix dh(n, h.cols());
  matmul_nt_acc(d_out, params_["dec.w"], dh);
  for (std::size_t i = cfg_.layers; i-- > 0;) {
    const Cache& c = caches[i];
    const auto& gamma = params_[layer_name(i, "gamma")];
    const std::size_t m = c.pre.cols();
    Matrix d_zhat(n, m);
    auto& d_gamma = grads[layer_name(i, "gamma")];
    auto& d_beta = grads[layer_name(i, "beta")];
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t j = 0; j < m; ++j) {
        const double dy = c.pre(r, j) > 0.0 ? dh(r, j) * c.mask(r, j) : 0.0;
        d_gamma(0, j) += dy * c.z_hat(r, j);
        d_beta(0, j) += dy;
        d_zhat(r, j) = dy * gamma(0, j);
      }
    }
    Matrix dz(n, m);
    const double nd = static_cast<double>(n);
    for (std::size_t j = 0; j < m; ++j) {
      double s = 0.0, sz = 0.0;
      for (std::size_t r = 0; r < n; ++r) {
        s += d_zhat(r, j);
        sz += d_zhat(r, j) * c.z_hat(r, j);
      }
      for (std::size_t r = 0; r < n; ++r) dz(r, j) = c.inv_std[j] / nd * (nd * d_zhat(r, j) - s - c.z_hat(r, j) * sz);
    }
    matmul_tn_acc(c.in, dz, grads[layer_name(i, "w")]);
    add_col_sums(dz, grads[layer_name(i, "b")]);
    Matrix next(n, c.in.cols());
    matmul_nt_acc(dz, params_[layer_name(i, "w")], next);
    dh = std::move(next);
  }
  return loss;
}

double head_loss(Target target, const Matrix& out, const Matrix& y, Matrix* d_out) {
  if (out.rows() != y.rows() || out.rows() == 0) fail(Errc::dimension_mismatch, "targets do not match outputs");
  const std::size_t n = out.rows(), c = out.cols();
  if (d_out) *d_out = Matrix(n, c);
  double loss = 0.0;
  switch (target) {
    case Target::classification:
      for (std::size_t r = 0; r < n; ++r) {
        const std::size_t k = class_of(y(r, 0), c);
        const auto row = out.row(r);
        const double m = *std::max_element(row.begin(), row.end());
        double total = 0.0;
        for (double v : row) total += std::exp(v - m);
        loss += std::log(total) + m - row[k];
        if (d_out) {
          for (std::size_t j = 0; j < c; ++j) {
            (*d_out)(r, j) = (std::exp(row[j] - m) / total - (j == k ? 1.0 : 0.0)) / static_cast<double>(n);
          }
        }
      }
      return loss / static_cast<double>(n);
    case Target::multilabel: {
      if (y.cols() != c) fail(Errc::dimension_mismatch, "label tasks do not match outputs");
      std::size_t count = 0;
      for (std::size_t i = 0; i < y.size(); ++i) count += std::isnan(y.flat()[i]) ? 0 : 1;
      if (count == 0) fail(Errc::degenerate_labels, "every label is missing");
      for (std::size_t i = 0; i < y.size(); ++i) {
        const double t = y.flat()[i];
        if (std::isnan(t)) continue;
        const double z = out.flat()[i];
        loss += std::max(z, 0.0) - z * t + std::log1p(std::exp(-std::abs(z)));
        if (d_out) d_out->flat()[i] = (sigmoid(z) - t) / static_cast<double>(count);
      }
      return loss / static_cast<double>(count);
    }
    case Target::regression:
      if (y.cols() != c) fail(Errc::dimension_mismatch, "regression targets do not match outputs");
      for (std::size_t i = 0; i < y.size(); ++i) {
        const double e = out.flat()[i] - y.flat()[i];
        loss += e * e;
        if (d_out) d_out->flat()[i] = 2.0 * e / static_cast<double>(y.size());
      }
      return loss / static_cast<double>(y.size());
  }
  return loss;
}

double head_metric(const TaskHead& head, const Matrix& x, const Matrix& y) {
  const Matrix out = head.forward(x);
  switch (head.config().target) {
    case Target::classification: {
      std::vector<std::size_t> pred(out.rows()), truth(out.rows());
      for (std::size_t r = 0; r < out.rows(); ++r) {
        pred[r] = argmax(out.row(r));
        truth[r] = class_of(y(r, 0), out.cols());
      }
      return accuracy(pred, truth);
    }
    case Target::multilabel: {
      double total = 0.0;
      std::size_t tasks = 0;
      for (std::size_t t = 0; t < out.cols(); ++t) {
        std::vector<double> scores;
        std::vector<int> labels;
        for (std::size_t r = 0; r < out.rows(); ++r) {
          if (std::isnan(y(r, t))) continue;
          scores.push_back(out(r, t));
          labels.push_back(y(r, t) > 0.5 ? 1 : 0);
        }
        const auto pos = std::count(labels.begin(), labels.end(), 1);
        if (pos == 0 || pos == static_cast<std::ptrdiff_t>(labels.size())) continue;
        total += auc(scores, labels);
        ++tasks;
      }
      if (tasks == 0) fail(Errc::one_class_only, "no label task has both classes");
      return total / static_cast<double>(tasks);
    }
    case Target::regression:
      return mae(out.flat(), y.flat());
  }
  return 0.0;
}

TrainedHead train_head(const HeadConfig& cfg, const Matrix& x, const Matrix& y) {
  if (x.rows() == 0 || x.rows() != y.rows()) fail(Errc::dimension_mismatch, "head training set is empty or ragged");
  TrainedHead result{TaskHead(cfg, x.cols()), {}, 0.0, false};
  TaskHead& head = result.head;
  if (cfg.target == Target::classification) {
    std::vector<bool> seen(cfg.outputs, false);
    for (std::size_t r = 0; r < y.rows(); ++r) seen[class_of(y(r, 0), cfg.outputs)] = true;
    result.degenerate_labels = std::find(seen.begin(), seen.end(), false) != seen.end();
  } else if (cfg.target == Target::multilabel) {
    for (std::size_t t = 0; t < y.cols(); ++t) {
      bool pos = false, neg = false;
      for (std::size_t r = 0; r < y.rows(); ++r) {
        if (std::isnan(y(r, t))) continue;
        (y(r, t) > 0.5 ? pos : neg) = true;
      }
      result.degenerate_labels = result.degenerate_labels || !(pos && neg);
    }
  }
  OptimConfig ocfg;
  ocfg.lr = cfg.lr;
  ocfg.weight_decay = cfg.weight_decay;
  ocfg.clip = 0.0;
  ocfg.warmup = 0;
  AdamW opt(head.params(), ocfg);
  ParamStore grads = head.params().zeros_like();
  const std::size_t n = x.rows();
  const std::size_t batch = cfg.batch == 0 ? n : std::min(cfg.batch, n);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng shuffle_rng(substream(cfg.seed, "head.batch"));
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    if (batch < n) std::shuffle(order.begin(), order.end(), shuffle_rng);
    double total = 0.0;
    std::size_t batches = 0;
    for (std::size_t start = 0; start < n; start += batch) {
      const std::span<const std::size_t> rows(order.data() + start, std::min(batch, n - start));
      const bool whole = rows.size() == n && batch == n;
      grads.zero();
      const std::uint64_t seed = derive_seed(substream(cfg.seed, "head.dropout"), {epoch, batches});
      total += whole ? head.train_loss(x, y, seed, grads)
                     : head.train_loss(take_rows(x, rows), take_rows(y, rows), seed, grads);
      opt.step(head.params(), grads, cfg.lr);
      ++batches;
    }
    result.loss_history.push_back(total / static_cast<double>(batches));
  }
  head.set_norm_statistics(x);
  result.train_metric = head_metric(head, x, y);
  return result;
}

FewShotResult few_shot_classify(const std::vector<Matrix>& support, std::span<const double> query) {
  if (support.empty()) fail(Errc::empty_support, "support set has no classes");
  std::vector<double> sims;
  for (std::size_t c = 0; c < support.size(); ++c) {
    const Matrix& s = support[c];
    if (s.rows() == 0) fail(Errc::empty_support, "class " + std::to_string(c) + " has no support examples");
    if (s.cols() != query.size()) fail(Errc::dimension_mismatch, "support and query widths differ");
    std::vector<double> proto(s.cols(), 0.0);
    for (std::size_t r = 0; r < s.rows(); ++r) axpy(1.0 / static_cast<double>(s.rows()), s.row(r), proto);
    const double denom = norm2(proto) * norm2(query);
    sims.push_back(denom > 0.0 ? dot(proto, query) / denom : 0.0);
  }
  FewShotResult out;
  out.label = argmax(sims);
  const double m = sims[out.label];
  double total = 0.0;
  for (double s : sims) total += std::exp(s - m);
  for (double s : sims) out.probabilities.push_back(std::exp(s - m) / total);
  return out;
}

std::vector<FewShotResult> few_shot_predict(HeadConfig cfg, const std::vector<Matrix>& support,
                                            const Matrix& queries) {
  if (support.empty()) fail(Errc::empty_support, "support set has no classes");
  std::size_t rows = 0;
  for (std::size_t c = 0; c < support.size(); ++c) {
    if (support[c].rows() == 0) fail(Errc::empty_support, "class " + std::to_string(c) + " has no support examples");
    if (support[c].cols() != queries.cols()) fail(Errc::dimension_mismatch, "support and query widths differ");
    rows += support[c].rows();
  }
  Matrix x(rows, queries.cols()), y(rows, 1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < support.size(); ++c) {
    for (std::size_t i = 0; i < support[c].rows(); ++i, ++r) {
      std::copy_n(support[c].row(i).begin(), x.cols(), x.row(r).begin());
      y(r, 0) = static_cast<double>(c);
    }
  }
  cfg.target = Target::classification;
  cfg.outputs = support.size();
  const TrainedHead trained = train_head(cfg, x, y);
  std::vector<Matrix> encoded;
  for (const auto& s : support) encoded.push_back(trained.head.encode(s));
  const Matrix q = trained.head.encode(queries);
  std::vector<FewShotResult> out;
  for (std::size_t i = 0; i < q.rows(); ++i) out.push_back(few_shot_classify(encoded, q.row(i)));
  return out;
}

double auc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) fail(Errc::dimension_mismatch, "scores and labels differ in length");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  double pos_rank_sum = 0.0;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j + 1);  // mean of 1-based ranks i+1..j
    for (std::size_t t = i; t < j; ++t) {
      if (labels[order[t]] != 0) {
        pos_rank_sum += rank;
        ++pos;
      }
    }
    i = j;
  }
  const std::size_t neg = scores.size() - pos;
  if (pos == 0 || neg == 0) fail(Errc::one_class_only, "AUC needs both classes");
  const double p = static_cast<double>(pos), q = static_cast<double>(neg);
  return (pos_rank_sum - p * (p + 1.0) / 2.0) / (p * q);
}

double accuracy(std::span<const std::size_t> predicted, std::span<const std::size_t> truth) {
  if (predicted.size() != truth.size() || truth.empty()) fail(Errc::dimension_mismatch, "accuracy inputs differ");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) hits += predicted[i] == truth[i] ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

double mae(std::span<const double> predicted, std::span<const double> truth) {
  if (predicted.size() != truth.size() || truth.empty()) fail(Errc::dimension_mismatch, "MAE inputs differ");
  double total = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) total += std::abs(predicted[i] - truth[i]);
  return total / static_cast<double>(truth.size());
}

}  // namespace rwgf
