// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

// AVX2 + FMA variants. This translation unit is compiled with -mavx2 -mfma and
// must only be entered after a runtime CPU check.

#include "rwgf/simd/kernels.hpp"

#include <immintrin.h>

#include <cmath>

namespace rwgf::simd {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  if (i + 4 <= n) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    i += 4;
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s = std::fma(x[i], y[i], s);
  return s;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d a = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(a, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] = std::fma(alpha, x[i], y[i]);
}

// One output row: c[0..n) += sum_p coef(p) * b[p*ldb + j]. The column loop is
// blocked 16 wide so four accumulators stay in registers across p.
template <class Coef>
inline void row_update(std::size_t n, std::size_t k, Coef coef, const double* b, std::size_t ldb,
                       double* c) {
  std::size_t j = 0;
  for (; j + 16 <= n; j += 16) {
    __m256d c0 = _mm256_loadu_pd(c + j);
    __m256d c1 = _mm256_loadu_pd(c + j + 4);
    __m256d c2 = _mm256_loadu_pd(c + j + 8);
    __m256d c3 = _mm256_loadu_pd(c + j + 12);
    for (std::size_t p = 0; p < k; ++p) {
      const __m256d a = _mm256_set1_pd(coef(p));
      const double* bp = b + p * ldb + j;
      c0 = _mm256_fmadd_pd(a, _mm256_loadu_pd(bp), c0);
      c1 = _mm256_fmadd_pd(a, _mm256_loadu_pd(bp + 4), c1);
      c2 = _mm256_fmadd_pd(a, _mm256_loadu_pd(bp + 8), c2);
      c3 = _mm256_fmadd_pd(a, _mm256_loadu_pd(bp + 12), c3);
    }
    _mm256_storeu_pd(c + j, c0);
    _mm256_storeu_pd(c + j + 4, c1);
    _mm256_storeu_pd(c + j + 8, c2);
    _mm256_storeu_pd(c + j + 12, c3);
  }
  for (; j + 4 <= n; j += 4) {
    __m256d c0 = _mm256_loadu_pd(c + j);
    for (std::size_t p = 0; p < k; ++p) {
      c0 = _mm256_fmadd_pd(_mm256_set1_pd(coef(p)), _mm256_loadu_pd(b + p * ldb + j), c0);
    }
    _mm256_storeu_pd(c + j, c0);
  }
  for (; j < n; ++j) {
    double s = c[j];
    for (std::size_t p = 0; p < k; ++p) s = std::fma(coef(p), b[p * ldb + j], s);
    c[j] = s;
  }
}

void gemm_nn_avx2(std::size_t m, std::size_t n, std::size_t k, const double* a, std::size_t lda,
                  const double* b, std::size_t ldb, double* c, std::size_t ldc) {
  for (std::size_t i = 0; i < m; ++i) {
    const double* ai = a + i * lda;
    row_update(n, k, [ai](std::size_t p) { return ai[p]; }, b, ldb, c + i * ldc);
  }
}

void gemm_nt_avx2(std::size_t m, std::size_t n, std::size_t k, const double* a, std::size_t lda,
                  const double* b, std::size_t ldb, double* c, std::size_t ldc) {
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) c[i * ldc + j] += dot_avx2(a + i * lda, b + j * ldb, k);
  }
}

void gemm_tn_avx2(std::size_t m, std::size_t n, std::size_t k, const double* a, std::size_t lda,
                  const double* b, std::size_t ldb, double* c, std::size_t ldc) {
  for (std::size_t i = 0; i < m; ++i) {
    row_update(n, k, [a, lda, i](std::size_t p) { return a[p * lda + i]; }, b, ldb, c + i * ldc);
  }
}

}  // namespace

const KernelTable& avx2_table() noexcept {
  static const KernelTable table{Isa::avx2, dot_avx2, axpy_avx2, gemm_nn_avx2, gemm_nt_avx2,
                                 gemm_tn_avx2};
  return table;
}

}  // namespace rwgf::simd
