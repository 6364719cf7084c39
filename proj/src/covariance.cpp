// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#include "rlab/covariance.hpp"

#include <cmath>

#include "rlab/errors.hpp"
#include "rlab/numerics.hpp"
#include "rlab/parallel.hpp"
#include "rlab/rng.hpp"

namespace rlab {

std::vector<CovarianceEstimate> covariance_mc(const PathSimulator& sim,
                                              const std::vector<std::pair<double, double>>& pairs,
                                              std::size_t n_paths, std::uint64_t seed, unsigned workers) {
  if (n_paths < 100) fail(ErrorKind::ConfigInvalid, "covariance_mc needs at least 100 paths");
  for (const auto& [s, t] : pairs) {
    if (!(s >= 0.0 && s <= 1.0 && t >= 0.0 && t <= 1.0)) fail(ErrorKind::OutOfRange, "time outside [0,1]");
  }
  const std::size_t np = pairs.size();
  std::vector<double> products(n_paths * np);
  parallel_for(n_paths, workers, [&](std::size_t i) {
    const PathGrid p = sim.simulate(replica_seed(seed, i));
    for (std::size_t q = 0; q < np; ++q) products[i * np + q] = p.at(pairs[q].first) * p.at(pairs[q].second);
  });
  std::vector<CovarianceEstimate> out(np);
  const double n = static_cast<double>(n_paths);
  for (std::size_t q = 0; q < np; ++q) {
    KahanSum sum;
    for (std::size_t i = 0; i < n_paths; ++i) sum.add(products[i * np + q]);
    const double m = sum.value() / n;
    KahanSum sq;
    for (std::size_t i = 0; i < n_paths; ++i) {
      const double d = products[i * np + q] - m;
      sq.add(d * d);
    }
    out[q] = {pairs[q].first, pairs[q].second, m, std::sqrt(sq.value() / (n - 1.0) / n)};
  }
  return out;
}

}  // namespace rlab
