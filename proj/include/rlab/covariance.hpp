// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rlab/simulator.hpp"

namespace rlab {

struct CovarianceEstimate {
  double s = 0.0;
  double t = 0.0;
  double mean = 0.0;       // estimate of E[R(s) R(t)]
  double std_error = 0.0;  // standard error of the mean
};

// Monte Carlo estimates of E[R(s)R(t)] over paths seeded by
// replica_seed(seed, i), i < n_paths. Needs n_paths >= 100.
std::vector<CovarianceEstimate> covariance_mc(const PathSimulator& sim,
                                              const std::vector<std::pair<double, double>>& pairs,
                                              std::size_t n_paths, std::uint64_t seed, unsigned workers = 1);

}  // namespace rlab
