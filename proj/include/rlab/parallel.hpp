// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#pragma once

#include <cstddef>
#include <functional>

namespace rlab {

unsigned default_workers();

// Runs fn(i) for i in [0, n) on up to `workers` threads. Callers write results
// into per-index slots, so output does not depend on the schedule. The first
// exception thrown by any task is rethrown after all threads join.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn);

}  // namespace rlab
