// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#include "rwgf/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rwgf/error.hpp"
#include "rwgf/simd/kernels.hpp"

namespace rwgf {

void Matrix::fill(double v) { std::fill(data_.begin(), data_.end(), v); }

namespace {

std::string shape(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void shape_error(const char* op, const Matrix& a, const Matrix& b, const Matrix& c) {
  fail(Errc::dimension_mismatch,
       std::string(op) + ": " + shape(a) + ", " + shape(b) + " -> " + shape(c));
}

}  // namespace

void matmul_acc(const Matrix& a, const Matrix& b, Matrix& c) {
  if (a.cols() != b.rows() || c.rows() != a.rows() || c.cols() != b.cols()) shape_error("matmul", a, b, c);
  simd::active().gemm_nn(a.rows(), b.cols(), a.cols(), a.data(), a.cols(), b.data(), b.cols(), c.data(),
                         c.cols());
}

void matmul_nt_acc(const Matrix& a, const Matrix& b, Matrix& c) {
  if (a.cols() != b.cols() || c.rows() != a.rows() || c.cols() != b.rows()) shape_error("matmul_nt", a, b, c);
  simd::active().gemm_nt(a.rows(), b.rows(), a.cols(), a.data(), a.cols(), b.data(), b.cols(), c.data(),
                         c.cols());
}

void matmul_tn_acc(const Matrix& a, const Matrix& b, Matrix& c) {
  if (a.rows() != b.rows() || c.rows() != a.cols() || c.cols() != b.cols()) shape_error("matmul_tn", a, b, c);
  simd::active().gemm_tn(a.cols(), b.cols(), a.rows(), a.data(), a.cols(), b.data(), b.cols(), c.data(),
                         c.cols());
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  matmul_acc(a, b, c);
  return c;
}

double dot(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) fail(Errc::dimension_mismatch, "dot: length mismatch");
  return simd::active().dot(x.data(), y.data(), x.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size()) fail(Errc::dimension_mismatch, "axpy: length mismatch");
  simd::active().axpy(alpha, x.data(), y.data(), x.size());
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

bool all_finite(std::span<const double> x) noexcept {
  return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace rwgf
