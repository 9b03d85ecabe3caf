// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

// Dense double-precision kernels behind a runtime-selected dispatch table.
//
// All matrices are row-major with an explicit leading dimension. Every variant
// computes each output element with an order that depends only on the two
// input vectors involved, never on the output row index, so identical input
// rows always produce bit-identical output rows within one instruction set.

namespace rwgf::simd {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa) noexcept;
std::optional<Isa> parse_isa(std::string_view name) noexcept;

struct KernelTable {
  Isa isa;
  // sum_i x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // C[m x n] += A[m x k] * B[k x n]
  void (*gemm_nn)(std::size_t m, std::size_t n, std::size_t k, const double* a, std::size_t lda,
                  const double* b, std::size_t ldb, double* c, std::size_t ldc);
  // C[m x n] += A[m x k] * B[n x k]^T
  void (*gemm_nt)(std::size_t m, std::size_t n, std::size_t k, const double* a, std::size_t lda,
                  const double* b, std::size_t ldb, double* c, std::size_t ldc);
  // C[m x n] += A[k x m]^T * B[k x n]
  void (*gemm_tn)(std::size_t m, std::size_t n, std::size_t k, const double* a, std::size_t lda,
                  const double* b, std::size_t ldb, double* c, std::size_t ldc);
};

const KernelTable& scalar_table() noexcept;
#if defined(RWGF_HAVE_AVX2)
const KernelTable& avx2_table() noexcept;
#endif
#if defined(RWGF_HAVE_NEON)
const KernelTable& neon_table() noexcept;
#endif

/// True when the variant is compiled in and the running CPU supports it.
bool isa_available(Isa isa) noexcept;

/// Table for a specific instruction set; falls back to scalar when unavailable.
const KernelTable& table_for(Isa isa) noexcept;

/// Currently active table. Initialized once from the best available ISA,
/// overridable through RWGF_SIMD=scalar|avx2|neon.
const KernelTable& active() noexcept;

/// Switches the active table (tests and benchmarks). Returns false when the
/// requested ISA is unavailable; the active table is then unchanged.
bool select(Isa isa) noexcept;

}  // namespace rwgf::simd
