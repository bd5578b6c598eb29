// Copyright 2026 The eigentherm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace eigentherm {

/// Worker count: EIGENTHERM_THREADS when set and positive, else the
/// hardware concurrency (at least 1). `requested` > 0 takes precedence.
unsigned worker_count(unsigned requested = 0);

/// Run task(i) for i in [0, count) on up to `workers` threads. Tasks are
/// claimed dynamically; the first exception is rethrown after all workers
/// join.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& task);

/// Thread count handed to the BLAS backing the dense eigensolver.
void set_solver_threads(int threads);

}  // namespace eigentherm
