// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#pragma once

#include <cstdint>
#include <vector>

#include "rlab/hurst.hpp"
#include "rlab/path.hpp"

namespace rlab {

// Anything that maps a seed to a sample path on a fixed grid.
class PathSimulator {
 public:
  virtual ~PathSimulator() = default;
  virtual PathGrid simulate(std::uint64_t seed) const = 0;
  virtual const HurstPair& hurst() const = 0;
  virtual int grid_level() const = 0;
  // Paths for several seeds; each result equals simulate(seed) bit for bit.
  virtual std::vector<PathGrid> simulate_many(const std::vector<std::uint64_t>& seeds,
                                              unsigned workers) const;
};

}  // namespace rlab
