// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#include "rwgf/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "rwgf/error.hpp"
#include "rwgf/rng.hpp"

namespace rwgf {

namespace {

constexpr double kLayerNormEps = 1e-5;
constexpr double kMaskedLogit = -1e30;

std::string block_name(std::size_t t, const char* leaf) { return "block" + std::to_string(t) + "." + leaf; }

// Routes gradients of frozen tensors into throwaway buffers.
class GradSink {
 public:
  GradSink(const ParamStore& params, ParamStore& grads) : params_(params), grads_(grads) {}

  Matrix& operator()(const std::string& name) {
    if (!params_.frozen(name)) return grads_[name];
    const Matrix& p = params_[name];
    auto [it, inserted] = scratch_.try_emplace(name, p.rows(), p.cols());
    return it->second;
  }

 private:
  const ParamStore& params_;
  ParamStore& grads_;
  std::map<std::string, Matrix> scratch_;
};

void add_row_bias(Matrix& y, const Matrix& bias) {
  for (std::size_t r = 0; r < y.rows(); ++r) axpy(1.0, bias.row(0), y.row(r));
}

void col_sum_acc(const Matrix& d, Matrix& gb) {
  for (std::size_t r = 0; r < d.rows(); ++r) axpy(1.0, d.row(r), gb.row(0));
}

Matrix linear(const Matrix& x, const Matrix& w, const Matrix* b) {
  Matrix y(x.rows(), w.cols());
  matmul_acc(x, w, y);
  if (b) add_row_bias(y, *b);
  return y;
}

// Accumulates dW, db and returns dx.
Matrix linear_backward(const Matrix& x, const Matrix& w, const Matrix& dy, Matrix& dw, Matrix* db) {
  matmul_tn_acc(x, dy, dw);
  if (db) col_sum_acc(dy, *db);
  Matrix dx(x.rows(), x.cols());
  matmul_nt_acc(dy, w, dx);
  return dx;
}

Matrix add(const Matrix& a, const Matrix& b) {
  Matrix c = a;
  axpy(1.0, b.flat(), c.flat());
  return c;
}

Matrix layer_norm(const Matrix& x, const Matrix& gamma, const Matrix& beta, LayerNormCache& cache) {
  const std::size_t n = x.rows(), d = x.cols();
  Matrix y(n, d);
  cache.xhat = Matrix(n, d);
  cache.rstd.assign(n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    auto row = x.row(r);
    double mean = 0.0;
    for (double v : row) mean += v;
    mean /= static_cast<double>(d);
    double var = 0.0;
    for (double v : row) var += (v - mean) * (v - mean);
    var /= static_cast<double>(d);
    const double rstd = 1.0 / std::sqrt(var + kLayerNormEps);
    cache.rstd[r] = rstd;
    for (std::size_t c = 0; c < d; ++c) {
      const double xh = (row[c] - mean) * rstd;
      cache.xhat(r, c) = xh;
      y(r, c) = xh * gamma(0, c) + beta(0, c);
    }
  }
  return y;
}

Matrix layer_norm_backward(const Matrix& dy, const Matrix& gamma, const LayerNormCache& cache, Matrix& dgamma,
                           Matrix& dbeta) {
  const std::size_t n = dy.rows(), d = dy.cols();
  Matrix dx(n, d);
  std::vector<double> dxhat(d);
  for (std::size_t r = 0; r < n; ++r) {
    double mean_dxhat = 0.0, mean_dxhat_xhat = 0.0;
    for (std::size_t c = 0; c < d; ++c) {
      const double g = dy(r, c);
      dgamma(0, c) += g * cache.xhat(r, c);
      dbeta(0, c) += g;
      dxhat[c] = g * gamma(0, c);
      mean_dxhat += dxhat[c];
      mean_dxhat_xhat += dxhat[c] * cache.xhat(r, c);
    }
    mean_dxhat /= static_cast<double>(d);
    mean_dxhat_xhat /= static_cast<double>(d);
    for (std::size_t c = 0; c < d; ++c) {
      dx(r, c) = cache.rstd[r] * (dxhat[c] - mean_dxhat - cache.xhat(r, c) * mean_dxhat_xhat);
    }
  }
  return dx;
}

Matrix slice_cols(const Matrix& m, std::size_t begin, std::size_t count) {
  Matrix out(m.rows(), count);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::copy_n(m.row(r).begin() + static_cast<std::ptrdiff_t>(begin), count, out.row(r).begin());
  }
  return out;
}

void scatter_cols(const Matrix& src, Matrix& dst, std::size_t begin) {
  for (std::size_t r = 0; r < src.rows(); ++r) {
    std::copy(src.row(r).begin(), src.row(r).end(), dst.row(r).begin() + static_cast<std::ptrdiff_t>(begin));
  }
}

void softmax_rows(Matrix& s) {
  for (std::size_t r = 0; r < s.rows(); ++r) {
    auto row = s.row(r);
    const double mx = *std::max_element(row.begin(), row.end());
    double total = 0.0;
    for (double& v : row) {
      v = std::exp(v - mx);
      total += v;
    }
    for (double& v : row) v /= total;
  }
}

Matrix attention(const ModelConfig& cfg, const ParamStore& p, std::size_t t, const AttentionMask& mask,
                 BlockCache& c) {
  c.q = linear(c.a, p[block_name(t, "attn.wq")], &p[block_name(t, "attn.bq")]);
  c.k = linear(c.a, p[block_name(t, "attn.wk")], &p[block_name(t, "attn.bk")]);
  c.v = linear(c.a, p[block_name(t, "attn.wv")], &p[block_name(t, "attn.bv")]);
  const std::size_t n = c.a.rows(), dh = cfg.head_dim();
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
  c.ctx = Matrix(n, cfg.dim);
  c.probs.assign(cfg.heads, Matrix());
  for (std::size_t h = 0; h < cfg.heads; ++h) {
    const Matrix qh = slice_cols(c.q, h * dh, dh);
    const Matrix kh = slice_cols(c.k, h * dh, dh);
    const Matrix vh = slice_cols(c.v, h * dh, dh);
    Matrix s(n, n);
    matmul_nt_acc(qh, kh, s);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) s(i, j) = mask(i, j) ? s(i, j) * scale : kMaskedLogit;
    }
    softmax_rows(s);
    Matrix oh(n, dh);
    matmul_acc(s, vh, oh);
    scatter_cols(oh, c.ctx, h * dh);
    c.probs[h] = std::move(s);
  }
  return linear(c.ctx, p[block_name(t, "attn.wo")], &p[block_name(t, "attn.bo")]);
}

Matrix attention_backward(const ModelConfig& cfg, const ParamStore& p, std::size_t t, const BlockCache& c,
                          const Matrix& d_out, GradSink& g) {
  const std::size_t n = c.a.rows(), dh = cfg.head_dim();
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
  const Matrix dctx =
      linear_backward(c.ctx, p[block_name(t, "attn.wo")], d_out, g(block_name(t, "attn.wo")), &g(block_name(t, "attn.bo")));
  Matrix dq(n, cfg.dim), dk(n, cfg.dim), dv(n, cfg.dim);
  for (std::size_t h = 0; h < cfg.heads; ++h) {
    const Matrix& prob = c.probs[h];
    const Matrix qh = slice_cols(c.q, h * dh, dh);
    const Matrix kh = slice_cols(c.k, h * dh, dh);
    const Matrix vh = slice_cols(c.v, h * dh, dh);
    const Matrix doh = slice_cols(dctx, h * dh, dh);
    Matrix dprob(n, n);
    matmul_nt_acc(doh, vh, dprob);
    Matrix dvh(n, dh);
    matmul_tn_acc(prob, doh, dvh);
    Matrix ds(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      const double rowdot = dot(dprob.row(i), prob.row(i));
      for (std::size_t j = 0; j < n; ++j) ds(i, j) = prob(i, j) * (dprob(i, j) - rowdot) * scale;
    }
    Matrix dqh(n, dh), dkh(n, dh);
    matmul_acc(ds, kh, dqh);
    matmul_tn_acc(ds, qh, dkh);
    scatter_cols(dqh, dq, h * dh);
    scatter_cols(dkh, dk, h * dh);
    scatter_cols(dvh, dv, h * dh);
  }
  Matrix da = linear_backward(c.a, p[block_name(t, "attn.wq")], dq, g(block_name(t, "attn.wq")), &g(block_name(t, "attn.bq")));
  axpy(1.0, linear_backward(c.a, p[block_name(t, "attn.wk")], dk, g(block_name(t, "attn.wk")), &g(block_name(t, "attn.bk"))).flat(),
       da.flat());
  axpy(1.0, linear_backward(c.a, p[block_name(t, "attn.wv")], dv, g(block_name(t, "attn.wv")), &g(block_name(t, "attn.bv"))).flat(),
       da.flat());
  return da;
}

Matrix mlp(const ParamStore& p, std::size_t t, BlockCache& c) {
  c.z1 = linear(c.b, p[block_name(t, "mlp.w1")], &p[block_name(t, "mlp.b1")]);
  c.g1 = c.z1;
  for (double& v : c.g1.flat()) v = gelu(v);
  return linear(c.g1, p[block_name(t, "mlp.w2")], &p[block_name(t, "mlp.b2")]);
}

Matrix mlp_backward(const ParamStore& p, std::size_t t, const BlockCache& c, const Matrix& d_out, GradSink& g) {
  Matrix dz = linear_backward(c.g1, p[block_name(t, "mlp.w2")], d_out, g(block_name(t, "mlp.w2")), &g(block_name(t, "mlp.b2")));
  auto z = c.z1.flat();
  auto dzf = dz.flat();
  for (std::size_t i = 0; i < dzf.size(); ++i) dzf[i] *= gelu_grad(z[i]);
  return linear_backward(c.b, p[block_name(t, "mlp.w1")], dz, g(block_name(t, "mlp.w1")), &g(block_name(t, "mlp.b1")));
}

void check_shapes(const ModelConfig& cfg, const ParamStore& params, const EncodedSample& s) {
  const std::size_t n = s.length();
  if (n == 0) fail(Errc::dimension_mismatch, "empty sample");
  if (s.tokens.rows() != n || s.edges.rows() != n || s.mask.size() != n || s.kinds.size() != n) {
    fail(Errc::dimension_mismatch, "sample fields disagree on length");
  }
  if (s.tokens.cols() != cfg.feature_dim || s.edges.cols() != cfg.feature_dim) {
    fail(Errc::dimension_mismatch, "sample feature dim " + std::to_string(s.tokens.cols()) + " but model expects " +
                                       std::to_string(cfg.feature_dim));
  }
  if (params["embed.node"].rows() != cfg.feature_dim || params["embed.node"].cols() != cfg.dim) {
    fail(Errc::dimension_mismatch, "parameters do not match the model config");
  }
}

std::vector<bool> masked_flags(std::size_t n, const ForwardOptions& options) {
  std::vector<bool> masked(n, false);
  for (std::size_t t : options.masked_tokens) {
    if (t >= n) fail(Errc::invalid_id, "masked token " + std::to_string(t) + " out of range");
    masked[t] = true;
  }
  return masked;
}

const Matrix& row_projector(const ParamStore& p, const EncodedSample& s, std::size_t t) {
  return (t == 0 && s.kinds[0] == TokenKind::dataset) ? p["embed.dataset"] : p["embed.node"];
}

}  // namespace

double gelu(double z) noexcept {
  constexpr double c = 0.7978845608028654;  // sqrt(2 / pi)
  return 0.5 * z * (1.0 + std::tanh(c * (z + 0.044715 * z * z * z)));
}

double gelu_grad(double z) noexcept {
  constexpr double c = 0.7978845608028654;
  const double th = std::tanh(c * (z + 0.044715 * z * z * z));
  return 0.5 * (1.0 + th) + 0.5 * z * (1.0 - th * th) * c * (1.0 + 3.0 * 0.044715 * z * z);
}

void ModelConfig::validate() const {
  if (dim == 0 || heads == 0 || blocks == 0 || feature_dim == 0) {
    fail(Errc::config_error, "model dims, heads and blocks must be positive");
  }
  if (dim % heads != 0) fail(Errc::config_error, "model dim must be divisible by the head count");
  if (max_position == 0) fail(Errc::config_error, "max_position must be positive");
}

ModelConfig ModelConfig::desk() { return ModelConfig{}; }

ModelConfig ModelConfig::reference() {
  ModelConfig c;
  c.feature_dim = 4096;
  c.dim = 768;
  c.blocks = 12;
  c.heads = 12;
  return c;
}

void init_encoder(const ModelConfig& cfg, ParamStore& p, std::uint64_t seed) {
  cfg.validate();
  const std::size_t d = cfg.dim, f = cfg.feature_dim, m = cfg.mlp();
  auto normal = [&](const std::string& name, std::size_t rows, std::size_t cols, double scale) {
    init_normal(p.add(name, rows, cols), scale, substream(seed, name));
  };
  auto constant = [&](const std::string& name, std::size_t cols, double value) { p.add(name, 1, cols).fill(value); };

  normal("embed.node", f, d, 1.0);
  normal("embed.dataset", f, d, 1.0);
  normal("embed.position", cfg.max_position + 1, d, 1.0);
  normal("embed.mask", 1, d, 1.0);
  if (cfg.edge_mode == EdgeMode::input_only) normal("embed.edge", f, d, 1.0);

  const double in_scale = 1.0 / std::sqrt(static_cast<double>(d));
  const double mlp_scale = 1.0 / std::sqrt(static_cast<double>(m));
  for (std::size_t t = 0; t < cfg.blocks; ++t) {
    if (cfg.edge_mode == EdgeMode::per_block) normal(block_name(t, "edge"), f, d, 1.0);
    constant(block_name(t, "ln1.gamma"), d, 1.0);
    constant(block_name(t, "ln1.beta"), d, 0.0);
    for (const char* w : {"attn.wq", "attn.wk", "attn.wv", "attn.wo"}) normal(block_name(t, w), d, d, in_scale);
    for (const char* b : {"attn.bq", "attn.bk", "attn.bv", "attn.bo"}) constant(block_name(t, b), d, 0.0);
    constant(block_name(t, "ln2.gamma"), d, 1.0);
    constant(block_name(t, "ln2.beta"), d, 0.0);
    normal(block_name(t, "mlp.w1"), d, m, in_scale);
    constant(block_name(t, "mlp.b1"), m, 0.0);
    normal(block_name(t, "mlp.w2"), m, d, mlp_scale);
    constant(block_name(t, "mlp.b2"), d, 0.0);
  }
  if (cfg.final_norm) {
    constant("final.gamma", d, 1.0);
    constant("final.beta", d, 0.0);
  }
}

ParamStore make_encoder(const ModelConfig& cfg, std::uint64_t seed) {
  ParamStore p;
  init_encoder(cfg, p, seed);
  return p;
}

EncoderOutput encoder_forward(const ModelConfig& cfg, const ParamStore& p, const EncodedSample& s,
                              const ForwardOptions& options) {
  check_shapes(cfg, p, s);
  const std::size_t n = s.length();
  const auto masked = masked_flags(n, options);
  EncoderOutput out;
  ForwardCache& cache = out.cache;

  cache.h0 = Matrix(n, cfg.dim);
  matmul_acc(s.tokens, p["embed.node"], cache.h0);
  const Matrix& pos = p["embed.position"];
  for (std::size_t t = 0; t < n; ++t) {
    auto row = cache.h0.row(t);
    if (masked[t]) {
      std::copy(p["embed.mask"].row(0).begin(), p["embed.mask"].row(0).end(), row.begin());
      if (!options.masked_keep_position) continue;
    } else if (t == 0 && s.kinds[0] == TokenKind::dataset) {
      std::fill(row.begin(), row.end(), 0.0);
      for (std::size_t i = 0; i < cfg.feature_dim; ++i) axpy(s.tokens(0, i), p["embed.dataset"].row(i), row);
    }
    axpy(1.0, pos.row(std::min<std::size_t>(s.positions[t], cfg.max_position)), row);
  }
  if (cfg.edge_mode == EdgeMode::input_only) matmul_acc(s.edges, p["embed.edge"], cache.h0);

  Matrix h = cache.h0;
  cache.blocks.resize(cfg.blocks);
  for (std::size_t t = 0; t < cfg.blocks; ++t) {
    BlockCache& c = cache.blocks[t];
    c.x = std::move(h);
    if (cfg.edge_mode == EdgeMode::per_block) matmul_acc(s.edges, p[block_name(t, "edge")], c.x);
    const Matrix& g1 = p[block_name(t, "ln1.gamma")];
    const Matrix& b1 = p[block_name(t, "ln1.beta")];
    const Matrix& g2 = p[block_name(t, "ln2.gamma")];
    const Matrix& b2 = p[block_name(t, "ln2.beta")];
    if (cfg.pre_norm) {
      c.a = layer_norm(c.x, g1, b1, c.ln1);
      c.mid = add(c.x, attention(cfg, p, t, s.mask, c));
      c.b = layer_norm(c.mid, g2, b2, c.ln2);
      h = add(c.mid, mlp(p, t, c));
    } else {
      c.a = c.x;
      c.mid = layer_norm(add(c.x, attention(cfg, p, t, s.mask, c)), g1, b1, c.ln1);
      c.b = c.mid;
      h = layer_norm(add(c.mid, mlp(p, t, c)), g2, b2, c.ln2);
    }
  }
  if (cfg.final_norm) {
    cache.pre_final = h;
    h = layer_norm(cache.pre_final, p["final.gamma"], p["final.beta"], cache.final_ln);
  }
  if (!all_finite(h.flat())) fail(Errc::non_finite_activation, "encoder output contains NaN or Inf");
  out.h = std::move(h);
  return out;
}

InputGrads encoder_backward(const ModelConfig& cfg, const ParamStore& p, const EncodedSample& s,
                            const ForwardOptions& options, const ForwardCache& cache, const Matrix& d_h,
                            ParamStore& grads) {
  check_shapes(cfg, p, s);
  const std::size_t n = s.length();
  if (d_h.rows() != n || d_h.cols() != cfg.dim) fail(Errc::dimension_mismatch, "upstream gradient shape");
  GradSink g(p, grads);
  InputGrads in{Matrix(n, cfg.feature_dim), Matrix(n, cfg.feature_dim)};

  Matrix dh = d_h;
  if (cfg.final_norm) dh = layer_norm_backward(dh, p["final.gamma"], cache.final_ln, g("final.gamma"), g("final.beta"));

  for (std::size_t t = cfg.blocks; t-- > 0;) {
    const BlockCache& c = cache.blocks[t];
    const Matrix& gamma1 = p[block_name(t, "ln1.gamma")];
    const Matrix& gamma2 = p[block_name(t, "ln2.gamma")];
    Matrix& dg1 = g(block_name(t, "ln1.gamma"));
    Matrix& db1 = g(block_name(t, "ln1.beta"));
    Matrix& dg2 = g(block_name(t, "ln2.gamma"));
    Matrix& db2 = g(block_name(t, "ln2.beta"));
    Matrix dx;
    if (cfg.pre_norm) {
      Matrix dmid = dh;
      const Matrix db = mlp_backward(p, t, c, dh, g);
      axpy(1.0, layer_norm_backward(db, gamma2, c.ln2, dg2, db2).flat(), dmid.flat());
      dx = dmid;
      const Matrix da = attention_backward(cfg, p, t, c, dmid, g);
      axpy(1.0, layer_norm_backward(da, gamma1, c.ln1, dg1, db1).flat(), dx.flat());
    } else {
      const Matrix ds2 = layer_norm_backward(dh, gamma2, c.ln2, dg2, db2);
      Matrix dmid = ds2;
      axpy(1.0, mlp_backward(p, t, c, ds2, g).flat(), dmid.flat());
      const Matrix ds1 = layer_norm_backward(dmid, gamma1, c.ln1, dg1, db1);
      dx = ds1;
      axpy(1.0, attention_backward(cfg, p, t, c, ds1, g).flat(), dx.flat());
    }
    if (cfg.edge_mode == EdgeMode::per_block) {
      const Matrix& proj = p[block_name(t, "edge")];
      matmul_tn_acc(s.edges, dx, g(block_name(t, "edge")));
      matmul_nt_acc(dx, proj, in.edges);
    }
    dh = std::move(dx);
  }

  // Embedding layer.
  if (cfg.edge_mode == EdgeMode::input_only) {
    matmul_tn_acc(s.edges, dh, g("embed.edge"));
    matmul_nt_acc(dh, p["embed.edge"], in.edges);
  }
  const auto masked = masked_flags(n, options);
  Matrix node_inputs(n, cfg.feature_dim);
  Matrix& dpos = g("embed.position");
  Matrix& dmask = g("embed.mask");
  for (std::size_t t = 0; t < n; ++t) {
    auto drow = dh.row(t);
    if (masked[t]) {
      axpy(1.0, drow, dmask.row(0));
      if (!options.masked_keep_position) continue;
    } else {
      const Matrix& w = row_projector(p, s, t);
      if (&w == &p["embed.dataset"]) {
        Matrix& dw = g("embed.dataset");
        for (std::size_t i = 0; i < cfg.feature_dim; ++i) axpy(s.tokens(0, i), drow, dw.row(i));
        for (std::size_t i = 0; i < cfg.feature_dim; ++i) in.tokens(0, i) = dot(drow, w.row(i));
      } else {
        std::copy(s.tokens.row(t).begin(), s.tokens.row(t).end(), node_inputs.row(t).begin());
        for (std::size_t i = 0; i < cfg.feature_dim; ++i) in.tokens(t, i) = dot(drow, w.row(i));
      }
    }
    axpy(1.0, drow, dpos.row(std::min<std::size_t>(s.positions[t], cfg.max_position)));
  }
  matmul_tn_acc(node_inputs, dh, g("embed.node"));

  for (const auto& t : grads) {
    if (!all_finite(t.value.flat())) fail(Errc::non_finite_gradient, "gradient of " + t.name + " is not finite");
  }
  return in;
}

}  // namespace rwgf
