// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace rwgf {

/// Worker count: RWGF_DETERMINISTIC=1 forces 1, RWGF_THREADS caps the
/// hardware concurrency.
std::size_t worker_count();

/// Runs fn(i) for i in [0, n) on up to worker_count() threads. Callers
/// write into per-index slots and reduce afterwards in index order, so
/// results do not depend on the thread count. The exception of the lowest
/// failing index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace rwgf
