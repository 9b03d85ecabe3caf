// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#include "rwgf/losses.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rwgf/error.hpp"
#include "rwgf/rng.hpp"

namespace rwgf {

namespace {

double sigmoid(double s) noexcept {
  if (s >= 0.0) return 1.0 / (1.0 + std::exp(-s));
  const double e = std::exp(s);
  return e / (1.0 + e);
}

// log D and its derivative in the logit, clamped to [eps, 1 - eps].
std::pair<double, double> log_prob(double s) {
  const double p = sigmoid(s);
  if (p < kProbEps) return {std::log(kProbEps), 0.0};
  if (p > 1.0 - kProbEps) return {std::log1p(-kProbEps), 0.0};
  return {std::log(p), 1.0 - p};
}

// log(1 - D) and its derivative in the logit.
std::pair<double, double> log_one_minus(double s) {
  const double p = sigmoid(s);
  if (p < kProbEps) return {std::log1p(-kProbEps), 0.0};
  if (p > 1.0 - kProbEps) return {std::log(kProbEps), 0.0};
  return {std::log1p(-p), -p};
}

Matrix* grad_slot(const ParamStore& params, ParamStore& grads, const char* name) {
  return params.frozen(name) ? nullptr : &grads[name];
}

struct Batch {
  std::size_t size = 0;
  std::size_t windows = 0;
  std::size_t dim = 0;
  std::vector<Matrix> ctx;  // per item, windows x dim
};

Batch prepare(std::span<const LossItem> items, std::size_t min_size) {
  if (items.size() < min_size) {
    fail(Errc::batch_too_small, "loss needs a batch of at least " + std::to_string(min_size) + ", got " +
                                    std::to_string(items.size()));
  }
  Batch b;
  b.size = items.size();
  if (items.empty()) return b;
  b.windows = items[0].sample->window_count;
  b.dim = items[0].h->cols();
  if (b.windows == 0) fail(Errc::dimension_mismatch, "samples have no context windows");
  for (const auto& it : items) {
    if (it.sample->window_count != b.windows || it.h->cols() != b.dim) {
      fail(Errc::dimension_mismatch, "batch samples disagree on window count or model dim");
    }
    b.ctx.push_back(context_windows(*it.sample, *it.h));
  }
  return b;
}

std::vector<Matrix> zero_like(std::span<const LossItem> items) {
  std::vector<Matrix> out;
  out.reserve(items.size());
  for (const auto& it : items) out.emplace_back(it.h->rows(), it.h->cols());
  return out;
}

// Gradient of a score s = a . b.
void dot_backward(double ds, std::span<const double> a, std::span<const double> b, std::span<double> da,
                  std::span<double> db) {
  axpy(ds, b, da);
  axpy(ds, a, db);
}

constexpr double kNormFloor = 1e-12;

double cosine(std::span<const double> a, std::span<const double> b) {
  return dot(a, b) / (std::max(norm2(a), kNormFloor) * std::max(norm2(b), kNormFloor));
}

void cosine_backward(double dc, std::span<const double> a, std::span<const double> b, std::span<double> da,
                     std::span<double> db) {
  const double na = std::max(norm2(a), kNormFloor);
  const double nb = std::max(norm2(b), kNormFloor);
  const double c = dot(a, b) / (na * nb);
  for (std::size_t i = 0; i < a.size(); ++i) {
    da[i] += dc * (b[i] / (na * nb) - c * a[i] / (na * na));
    db[i] += dc * (a[i] / (na * nb) - c * b[i] / (nb * nb));
  }
}

struct DiscForward {
  Matrix z, g;
  std::vector<double> logits;
};

DiscForward disc_forward(const ParamStore& p, const Matrix& x) {
  DiscForward f;
  f.z = Matrix(x.rows(), p["disc.w1"].cols());
  matmul_acc(x, p["disc.w1"], f.z);
  for (std::size_t r = 0; r < x.rows(); ++r) axpy(1.0, p["disc.b1"].row(0), f.z.row(r));
  f.g = f.z;
  for (double& v : f.g.flat()) v = gelu(v);
  f.logits.resize(x.rows());
  const auto w2 = p["disc.w2"].flat();
  for (std::size_t r = 0; r < x.rows(); ++r) f.logits[r] = dot(f.g.row(r), w2) + p["disc.b2"](0, 0);
  return f;
}

Matrix disc_backward(const ParamStore& p, const Matrix& x, const DiscForward& f, const std::vector<double>& ds,
                     ParamStore& grads) {
  const std::size_t n = x.rows(), h = f.z.cols();
  Matrix dz(n, h);
  const auto w2 = p["disc.w2"].flat();
  Matrix* gw2 = grad_slot(p, grads, "disc.w2");
  Matrix* gb2 = grad_slot(p, grads, "disc.b2");
  for (std::size_t r = 0; r < n; ++r) {
    if (gw2) axpy(ds[r], f.g.row(r), gw2->flat());
    if (gb2) (*gb2)(0, 0) += ds[r];
    for (std::size_t c = 0; c < h; ++c) dz(r, c) = ds[r] * w2[c] * gelu_grad(f.z(r, c));
  }
  if (Matrix* gw1 = grad_slot(p, grads, "disc.w1")) matmul_tn_acc(x, dz, *gw1);
  if (Matrix* gb1 = grad_slot(p, grads, "disc.b1")) {
    for (std::size_t r = 0; r < n; ++r) axpy(1.0, dz.row(r), gb1->row(0));
  }
  Matrix dx(n, x.cols());
  matmul_nt_acc(dz, p["disc.w1"], dx);
  return dx;
}

// Score is a function of an anchor vector and a window; this records both
// so gradients can be routed back.
struct PairRef {
  std::size_t anchor_item;
  int anchor_window;  // -1 means h_0
  std::size_t ctx_item;
  std::size_t window;
};

std::span<const double> anchor_of(const Batch& b, std::span<const LossItem> items, const PairRef& r) {
  return r.anchor_window < 0 ? items[r.anchor_item].h->row(1)
                             : b.ctx[r.anchor_item].row(static_cast<std::size_t>(r.anchor_window));
}

// Routes the gradient of an anchor . window score into per-item buffers.
void route(const Batch& b, std::span<const LossItem> items, const PairRef& r, double ds, std::vector<Matrix>& d_h,
           std::vector<Matrix>& d_ctx) {
  const auto a = anchor_of(b, items, r);
  const auto c = b.ctx[r.ctx_item].row(r.window);
  std::span<double> da = r.anchor_window < 0 ? d_h[r.anchor_item].row(1)
                                             : d_ctx[r.anchor_item].row(static_cast<std::size_t>(r.anchor_window));
  dot_backward(ds, a, c, da, d_ctx[r.ctx_item].row(r.window));
}

void finish(std::span<const LossItem> items, const std::vector<Matrix>& d_ctx, std::vector<Matrix>& d_h) {
  for (std::size_t i = 0; i < items.size(); ++i) context_windows_backward(*items[i].sample, d_ctx[i], d_h[i]);
}

std::vector<Matrix> zero_ctx(const Batch& b) { return std::vector<Matrix>(b.size, Matrix(b.windows, b.dim)); }

}  // namespace

Matrix context_windows(const EncodedSample& s, const Matrix& h) {
  const std::size_t w = s.window_count;
  Matrix ctx(w, h.cols());
  std::vector<std::size_t> count(w, 0);
  for (std::size_t t = 0; t < s.length(); ++t) {
    if (s.kinds[t] != TokenKind::node || s.steps[t] < 1) continue;
    for (std::size_t j = static_cast<std::size_t>(s.steps[t]); j <= w; ++j) {
      axpy(1.0, h.row(t), ctx.row(j - 1));
      ++count[j - 1];
    }
  }
  for (std::size_t j = 0; j < w; ++j) {
    if (count[j] == 0) continue;
    const double inv = 1.0 / static_cast<double>(count[j]);
    for (double& v : ctx.row(j)) v *= inv;
  }
  return ctx;
}

void context_windows_backward(const EncodedSample& s, const Matrix& d_windows, Matrix& d_h) {
  const std::size_t w = s.window_count;
  std::vector<std::size_t> count(w, 0);
  for (std::size_t t = 0; t < s.length(); ++t) {
    if (s.kinds[t] != TokenKind::node || s.steps[t] < 1) continue;
    for (std::size_t j = static_cast<std::size_t>(s.steps[t]); j <= w; ++j) ++count[j - 1];
  }
  for (std::size_t t = 0; t < s.length(); ++t) {
    if (s.kinds[t] != TokenKind::node || s.steps[t] < 1) continue;
    for (std::size_t j = static_cast<std::size_t>(s.steps[t]); j <= w; ++j) {
      axpy(1.0 / static_cast<double>(count[j - 1]), d_windows.row(j - 1), d_h.row(t));
    }
  }
}

void init_discriminator(ParamStore& params, std::size_t dim, std::uint64_t seed) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  init_normal(params.add("disc.w1", dim, dim), scale, substream(seed, "disc.w1"));
  params.add("disc.b1", 1, dim);
  init_normal(params.add("disc.w2", dim, 1), scale, substream(seed, "disc.w2"));
  params.add("disc.b2", 1, 1);
}

std::vector<double> discriminator(const ParamStore& params, const Matrix& x) {
  auto f = disc_forward(params, x);
  for (double& v : f.logits) v = sigmoid(v);
  return f.logits;
}

ContrastiveLoss parse_contrastive_loss(std::string_view name) {
  if (name == "context") return ContrastiveLoss::context;
  if (name == "dgi") return ContrastiveLoss::dgi;
  if (name == "graphprompt") return ContrastiveLoss::graphprompt;
  if (name == "maskgae") return ContrastiveLoss::maskgae;
  fail(Errc::config_error, "unknown loss '" + std::string(name) + "'");
}

std::string_view contrastive_loss_name(ContrastiveLoss loss) noexcept {
  switch (loss) {
    case ContrastiveLoss::context: return "context";
    case ContrastiveLoss::dgi: return "dgi";
    case ContrastiveLoss::graphprompt: return "graphprompt";
    case ContrastiveLoss::maskgae: return "maskgae";
  }
  return "context";
}

LossResult context_loss(std::span<const LossItem> items, const ParamStore& params, ParamStore& grads) {
  const Batch b = prepare(items, 2);
  const std::size_t rows = b.size * b.size * b.windows;
  Matrix x(rows, b.dim);
  auto row_of = [&](std::size_t i, std::size_t o, std::size_t j) { return (i * b.size + o) * b.windows + j; };
  for (std::size_t i = 0; i < b.size; ++i) {
    const auto h0 = items[i].h->row(1);
    for (std::size_t o = 0; o < b.size; ++o) {
      for (std::size_t j = 0; j < b.windows; ++j) {
        auto dst = x.row(row_of(i, o, j));
        const auto c = b.ctx[o].row(j);
        for (std::size_t k = 0; k < b.dim; ++k) dst[k] = h0[k] * c[k];
      }
    }
  }
  const DiscForward f = disc_forward(params, x);
  const double scale = -1.0 / (static_cast<double>(b.size) * static_cast<double>(b.windows));
  LossResult out;
  std::vector<double> ds(rows);
  for (std::size_t i = 0; i < b.size; ++i) {
    for (std::size_t o = 0; o < b.size; ++o) {
      for (std::size_t j = 0; j < b.windows; ++j) {
        const std::size_t r = row_of(i, o, j);
        const auto [value, grad] = (o == i) ? log_prob(f.logits[r]) : log_one_minus(f.logits[r]);
        out.loss += scale * value;
        ds[r] = scale * grad;
      }
    }
  }
  const Matrix dx = disc_backward(params, x, f, ds, grads);
  out.d_h = zero_like(items);
  auto d_ctx = zero_ctx(b);
  for (std::size_t i = 0; i < b.size; ++i) {
    const auto h0 = items[i].h->row(1);
    auto dh0 = out.d_h[i].row(1);
    for (std::size_t o = 0; o < b.size; ++o) {
      for (std::size_t j = 0; j < b.windows; ++j) {
        const auto g = dx.row(row_of(i, o, j));
        const auto c = b.ctx[o].row(j);
        auto dc = d_ctx[o].row(j);
        for (std::size_t k = 0; k < b.dim; ++k) {
          dh0[k] += g[k] * c[k];
          dc[k] += g[k] * h0[k];
        }
      }
    }
  }
  finish(items, d_ctx, out.d_h);
  return out;
}

LossResult dgi_loss(std::span<const LossItem> items, std::span<const LossItem> corrupted) {
  if (items.size() != corrupted.size()) fail(Errc::dimension_mismatch, "one corrupted sample per root is required");
  const Batch pos = prepare(items, 1);
  const Batch neg = prepare(corrupted, 1);
  if (neg.windows != pos.windows || neg.dim != pos.dim) {
    fail(Errc::dimension_mismatch, "corrupted samples disagree with the batch");
  }
  const double scale = -1.0 / (2.0 * static_cast<double>(pos.windows) * static_cast<double>(pos.size));
  LossResult out;
  out.d_h = zero_like(items);
  auto neg_grads = zero_like(corrupted);
  auto d_pos = zero_ctx(pos);
  auto d_neg = zero_ctx(neg);
  for (std::size_t i = 0; i < pos.size; ++i) {
    const auto h0 = items[i].h->row(1);
    for (std::size_t j = 0; j < pos.windows; ++j) {
      const auto cp = pos.ctx[i].row(j);
      const auto cn = neg.ctx[i].row(j);
      const auto [lp, gp] = log_prob(dot(h0, cp));
      const auto [ln, gn] = log_one_minus(dot(h0, cn));
      out.loss += scale * (lp + ln);
      dot_backward(scale * gp, h0, cp, out.d_h[i].row(1), d_pos[i].row(j));
      dot_backward(scale * gn, h0, cn, out.d_h[i].row(1), d_neg[i].row(j));
    }
  }
  finish(items, d_pos, out.d_h);
  finish(corrupted, d_neg, neg_grads);
  for (auto& m : neg_grads) out.d_h.push_back(std::move(m));
  return out;
}

LossResult graphprompt_loss(std::span<const LossItem> items, double tau) {
  if (!(tau > 0.0)) fail(Errc::config_error, "temperature must be positive");
  const Batch b = prepare(items, 2);
  const double scale = 1.0 / (static_cast<double>(b.size) * static_cast<double>(b.windows));
  LossResult out;
  out.d_h = zero_like(items);
  auto d_ctx = zero_ctx(b);
  std::vector<double> logits(b.size), prob(b.size);
  for (std::size_t i = 0; i < b.size; ++i) {
    const auto h0 = items[i].h->row(1);
    for (std::size_t j = 0; j < b.windows; ++j) {
      for (std::size_t o = 0; o < b.size; ++o) logits[o] = cosine(h0, b.ctx[o].row(j)) / tau;
      const double mx = *std::max_element(logits.begin(), logits.end());
      double total = 0.0;
      for (std::size_t o = 0; o < b.size; ++o) total += std::exp(logits[o] - mx);
      const double log_z = mx + std::log(total);
      out.loss -= scale * (logits[i] - log_z);
      for (std::size_t o = 0; o < b.size; ++o) {
        prob[o] = std::exp(logits[o] - log_z);
        const double dlogit = scale * (prob[o] - (o == i ? 1.0 : 0.0));
        cosine_backward(dlogit / tau, h0, b.ctx[o].row(j), out.d_h[i].row(1), d_ctx[o].row(j));
      }
    }
  }
  finish(items, d_ctx, out.d_h);
  return out;
}

LossResult maskgae_loss(std::span<const LossItem> items) {
  const Batch b = prepare(items, 2);
  const double scale = -1.0 / (static_cast<double>(b.size) * static_cast<double>(b.windows));
  LossResult out;
  out.d_h = zero_like(items);
  auto d_ctx = zero_ctx(b);
  for (std::size_t i = 0; i < b.size; ++i) {
    for (std::size_t j = 0; j < b.windows; ++j) {
      for (std::size_t o = 0; o < b.size; ++o) {
        const PairRef ref{i, static_cast<int>(j) - 1, o, j};
        const double s = dot(anchor_of(b, items, ref), b.ctx[o].row(j));
        const auto [value, grad] = (o == i) ? log_prob(s) : log_one_minus(s);
        out.loss += scale * value;
        route(b, items, ref, scale * grad, out.d_h, d_ctx);
      }
    }
  }
  finish(items, d_ctx, out.d_h);
  return out;
}

EncodedSample corrupt_sample(const Graph& g, const EncodedSample& s, std::uint64_t seed) {
  if (g.node_count() == 0) fail(Errc::empty_graph, "cannot corrupt against an empty graph");
  EncodedSample c = s;
  Rng rng(derive_seed(seed, {s.root, 0x636f7272ULL}));
  for (std::size_t t = 0; t < c.length(); ++t) {
    if (c.kinds[t] != TokenKind::node) continue;
    const auto u = static_cast<NodeId>(uniform_index(rng, g.node_count()));
    std::copy(g.node_features().row(u).begin(), g.node_features().row(u).end(), c.tokens.row(t).begin());
    c.node_ids[t] = u;
    std::fill(c.edges.row(t).begin(), c.edges.row(t).end(), 0.0);
  }
  return c;
}

std::vector<std::size_t> choose_masked_tokens(const EncodedSample& s, double rate, std::uint64_t seed) {
  std::vector<std::size_t> pool;
  for (std::size_t t = 0; t < s.length(); ++t) {
    if (s.kinds[t] == TokenKind::node) pool.push_back(t);
  }
  if (pool.empty()) return {};
  const auto want = static_cast<std::size_t>(std::llround(rate * static_cast<double>(pool.size())));
  const std::size_t take = std::clamp<std::size_t>(want, 1, pool.size());
  Rng rng(derive_seed(seed, {s.root, 0x6d61736bULL}));
  for (std::size_t i = 0; i < take; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(uniform_index(rng, pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(take);
  std::sort(pool.begin(), pool.end());
  return pool;
}

void init_position_head(ParamStore& params, std::size_t dim, std::size_t max_position, std::uint64_t seed) {
  init_normal(params.add("recon.position.w", dim, max_position + 1), 1.0 / std::sqrt(static_cast<double>(dim)),
              substream(seed, "recon.position.w"));
  params.add("recon.position.b", 1, max_position + 1);
}

ReconstructionResult reconstruction_loss(const ModelConfig& cfg, const ParamStore& params, const EncodedSample& s,
                                         const Matrix& h, std::span<const std::size_t> masked,
                                         ReconstructionMode mode, ParamStore& grads) {
  ReconstructionResult out{0.0, Matrix(h.rows(), h.cols())};
  if (masked.empty()) return out;
  const double m = static_cast<double>(masked.size());
  if (mode == ReconstructionMode::token) {
    const Matrix& w = params["embed.node"];
    Matrix* gw = grad_slot(params, grads, "embed.node");
    const double scale = 1.0 / (m * static_cast<double>(cfg.dim));
    std::vector<double> target(cfg.dim), diff(cfg.dim);
    for (std::size_t t : masked) {
      std::fill(target.begin(), target.end(), 0.0);
      for (std::size_t i = 0; i < cfg.feature_dim; ++i) axpy(s.tokens(t, i), w.row(i), target);
      for (std::size_t c = 0; c < cfg.dim; ++c) {
        diff[c] = h(t, c) - target[c];
        out.loss += scale * diff[c] * diff[c];
        out.d_h(t, c) += 2.0 * scale * diff[c];
      }
      if (gw) {
        for (std::size_t i = 0; i < cfg.feature_dim; ++i) axpy(-2.0 * scale * s.tokens(t, i), diff, gw->row(i));
      }
    }
    return out;
  }
  const Matrix& w = params["recon.position.w"];
  const Matrix& bias = params["recon.position.b"];
  Matrix* gw = grad_slot(params, grads, "recon.position.w");
  Matrix* gb = grad_slot(params, grads, "recon.position.b");
  const std::size_t classes = w.cols();
  std::vector<double> logits(classes), dlogits(classes);
  for (std::size_t t : masked) {
    for (std::size_t c = 0; c < classes; ++c) logits[c] = bias(0, c);
    for (std::size_t k = 0; k < cfg.dim; ++k) axpy(h(t, k), w.row(k), logits);
    const double mx = *std::max_element(logits.begin(), logits.end());
    double total = 0.0;
    for (double v : logits) total += std::exp(v - mx);
    const double log_z = mx + std::log(total);
    const std::size_t label = std::min<std::size_t>(s.positions[t], classes - 1);
    out.loss -= (logits[label] - log_z) / m;
    for (std::size_t c = 0; c < classes; ++c) {
      dlogits[c] = (std::exp(logits[c] - log_z) - (c == label ? 1.0 : 0.0)) / m;
    }
    for (std::size_t k = 0; k < cfg.dim; ++k) {
      out.d_h(t, k) += dot(dlogits, w.row(k));
      if (gw) axpy(h(t, k), dlogits, gw->row(k));
    }
    if (gb) axpy(1.0, dlogits, gb->row(0));
  }
  return out;
}

}  // namespace rwgf
