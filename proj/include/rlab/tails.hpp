// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace rlab {

// Empirical survival P(|X| >= y ||X||_2) and log-survival fits.
struct TailReport {
  std::vector<double> y_grid;
  std::vector<double> survival;
  std::vector<std::uint64_t> hits;
  double l2_norm = 0.0;
  std::uint64_t samples = 0;
  double fitted_slope_linear = 0.0;  // d log S / d y
  double fitted_intercept_linear = 0.0;
  double r2_linear = 0.0;
  double fitted_slope_quadratic = 0.0;  // d log S / d y^2
  double r2_quadratic = 0.0;
  // Range of -log S(y) / y over the fitted points.
  double rate_min = 0.0;
  double rate_max = 0.0;
};

using TailSampler = std::function<double(std::uint64_t index)>;

// Draws X_i = sampler(i), i < n. Points with y < 2 are reported but excluded
// from the fits. Throws InsufficientSamples if a fitted point has < 50 hits.
// `workers` only affects speed.
TailReport tail_estimate(const TailSampler& sampler, const std::vector<double>& y_grid,
                         std::uint64_t n, unsigned workers = 1);

// Same statistics from precomputed draws.
TailReport tail_from_samples(const std::vector<double>& draws, const std::vector<double>& y_grid);

}  // namespace rlab
