// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#include "rwgf/simd/kernels.hpp"

#include <atomic>
#include <cstdlib>

namespace rwgf::simd {

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "scalar";
}

std::optional<Isa> parse_isa(std::string_view name) noexcept {
  if (name == "scalar") return Isa::scalar;
  if (name == "avx2") return Isa::avx2;
  if (name == "neon") return Isa::neon;
  return std::nullopt;
}

bool isa_available(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(RWGF_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::neon:
#if defined(RWGF_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table_for(Isa isa) noexcept {
  if (!isa_available(isa)) return scalar_table();
  switch (isa) {
#if defined(RWGF_HAVE_AVX2)
    case Isa::avx2: return avx2_table();
#endif
#if defined(RWGF_HAVE_NEON)
    case Isa::neon: return neon_table();
#endif
    default: return scalar_table();
  }
}

namespace {

const KernelTable* initial_table() noexcept {
  if (const char* env = std::getenv("RWGF_SIMD")) {
    if (auto isa = parse_isa(env); isa && isa_available(*isa)) return &table_for(*isa);
  }
  for (Isa isa : {Isa::avx2, Isa::neon}) {
    if (isa_available(isa)) return &table_for(isa);
  }
  return &scalar_table();
}

std::atomic<const KernelTable*>& current() noexcept {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

const KernelTable& active() noexcept { return *current().load(std::memory_order_acquire); }

bool select(Isa isa) noexcept {
  if (!isa_available(isa)) return false;
  current().store(&table_for(isa), std::memory_order_release);
  return true;
}

}  // namespace rwgf::simd
