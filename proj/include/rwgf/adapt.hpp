// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "rwgf/graph.hpp"
#include "rwgf/matrix.hpp"
#include "rwgf/params.hpp"

namespace rwgf {

enum class TaskKind { node, link, graph };
enum class Target { classification, multilabel, regression };
enum class Pooling { mean, sum, max };

TaskKind parse_task_kind(std::string_view s);
Target parse_target(std::string_view s);
Pooling parse_pooling(std::string_view s);

/// Node: the single representation. Link: [h_u | h_v]. Graph: pooled over
/// all node representations; throws EmptyGraph when there are none.
std::vector<double> assemble_input(TaskKind kind, const std::vector<std::span<const double>>& reps,
                                   Pooling pooling = Pooling::mean);

/// Rows [reps(u) | reps(v)] per pair, or [reps(v) | reps(u)] when `swap`.
Matrix assemble_links(const Matrix& reps, std::span<const std::pair<NodeId, NodeId>> pairs, bool swap = false);

/// One pooled row per graph.
Matrix assemble_graphs(const std::vector<Matrix>& reps, Pooling pooling = Pooling::mean);

struct HeadConfig {
  Target target = Target::classification;
  std::size_t outputs = 2;  // classes, label tasks or regression targets
  std::size_t hidden = 64;
  std::size_t layers = 1;   // encoder layers; 0 leaves only the decoder
  double dropout = 0.0;
  double lr = 1e-3;
  double weight_decay = 0.0;
  std::size_t epochs = 200;
  std::size_t batch = 0;    // 0 trains full batch
  std::uint64_t seed = 0;

  void validate() const;
};

/// Encoder (linear, batch norm, ReLU, dropout per layer) followed by a
/// linear decoder.
class TaskHead {
 public:
  TaskHead(HeadConfig cfg, std::size_t input_dim);

  const HeadConfig& config() const noexcept { return cfg_; }
  std::size_t input_dim() const noexcept { return input_dim_; }
  std::size_t encoded_dim() const noexcept { return cfg_.layers == 0 ? input_dim_ : cfg_.hidden; }
  const ParamStore& params() const noexcept { return params_; }
  ParamStore& params() noexcept { return params_; }

  /// Evaluation-mode encoder output.
  Matrix encode(const Matrix& x) const;
  /// Evaluation-mode decoder output: logits or regression values.
  Matrix forward(const Matrix& x) const;
  /// Class probabilities, label probabilities or regression values.
  Matrix predict(const Matrix& x) const;

  /// Training-mode loss on a batch; gradients are added to `grads`.
  double train_loss(const Matrix& x, const Matrix& y, std::uint64_t seed, ParamStore& grads) const;

  /// Sets the batch-norm evaluation statistics to the population statistics of x.
  void set_norm_statistics(const Matrix& x);

 private:
  HeadConfig cfg_;
  std::size_t input_dim_;
  ParamStore params_;
  std::vector<std::vector<double>> mean_, var_;
};

/// Loss of decoder outputs against targets. Classification targets hold the
/// class index in column 0; missing multilabel entries are NaN.
double head_loss(Target target, const Matrix& out, const Matrix& y, Matrix* d_out);

/// Accuracy, mean per-task AUC or MAE depending on the target.
double head_metric(const TaskHead& head, const Matrix& x, const Matrix& y);

struct TrainedHead {
  TaskHead head;
  std::vector<double> loss_history;  // per epoch
  double train_metric = 0.0;
  bool degenerate_labels = false;    // some class or label value never seen in training
};

TrainedHead train_head(const HeadConfig& cfg, const Matrix& x, const Matrix& y);

struct FewShotResult {
  std::size_t label = 0;
  std::vector<double> probabilities;  // softmax over cosine similarities
};

/// Prototype per class is the mean support row; the query goes to the
/// prototype with the largest cosine similarity. Throws EmptySupport.
FewShotResult few_shot_classify(const std::vector<Matrix>& support, std::span<const double> query);

/// Trains a head on the support set, then classifies each query row by
/// cosine similarity against prototypes of the frozen head's encodings.
std::vector<FewShotResult> few_shot_predict(HeadConfig cfg, const std::vector<Matrix>& support,
                                            const Matrix& queries);

/// Mann-Whitney statistic, ties count one half. Throws OneClassOnly.
double auc(std::span<const double> scores, std::span<const int> labels);
double accuracy(std::span<const std::size_t> predicted, std::span<const std::size_t> truth);
double mae(std::span<const double> predicted, std::span<const double> truth);

}  // namespace rwgf
