// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#include "rlab/simulator.hpp"

#include "rlab/parallel.hpp"

namespace rlab {

std::vector<PathGrid> PathSimulator::simulate_many(const std::vector<std::uint64_t>& seeds,
                                                   unsigned workers) const {
  std::vector<PathGrid> out(seeds.size());
  parallel_for(seeds.size(), workers, [&](std::size_t i) { out[i] = simulate(seeds[i]); });
  return out;
}

}  // namespace rlab
