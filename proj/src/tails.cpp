// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#include "rlab/tails.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rlab/errors.hpp"
#include "rlab/numerics.hpp"
#include "rlab/parallel.hpp"

namespace rlab {

TailReport tail_from_samples(const std::vector<double>& draws, const std::vector<double>& y_grid) {
  if (draws.empty()) fail(ErrorKind::InsufficientSamples, "no draws");
  TailReport rep;
  rep.samples = draws.size();
  rep.y_grid = y_grid;
  KahanSum ss;
  for (double x : draws) ss.add(x * x);
  rep.l2_norm = std::sqrt(ss.value() / static_cast<double>(draws.size()));
  std::vector<double> mags(draws.size());
  for (std::size_t i = 0; i < draws.size(); ++i) mags[i] = std::abs(draws[i]);
  std::sort(mags.begin(), mags.end());
  std::vector<double> fy, fy2, flog;
  for (double y : y_grid) {
    const double thr = y * rep.l2_norm;
    const auto below = static_cast<std::uint64_t>(std::lower_bound(mags.begin(), mags.end(), thr) - mags.begin());
    const std::uint64_t hits = rep.samples - below;
    rep.hits.push_back(hits);
    const double s = static_cast<double>(hits) / static_cast<double>(rep.samples);
    rep.survival.push_back(s);
    if (y < 2.0) continue;
    if (hits < 50) {
      std::ostringstream os;
      os << "survival at y=" << y << " rests on " << hits << " hits (< 50)";
      fail(ErrorKind::InsufficientSamples, os.str());
    }
    fy.push_back(y);
    fy2.push_back(y * y);
    flog.push_back(std::log(s));
  }
  if (fy.size() >= 2) {
    const LinearFit lin = linear_fit(fy, flog);
    const LinearFit quad = linear_fit(fy2, flog);
    rep.fitted_slope_linear = lin.slope;
    rep.fitted_intercept_linear = lin.intercept;
    rep.r2_linear = lin.r2;
    rep.fitted_slope_quadratic = quad.slope;
    rep.r2_quadratic = quad.r2;
    rep.rate_min = rep.rate_max = -flog[0] / fy[0];
    for (std::size_t i = 0; i < fy.size(); ++i) {
      rep.rate_min = std::min(rep.rate_min, -flog[i] / fy[i]);
      rep.rate_max = std::max(rep.rate_max, -flog[i] / fy[i]);
    }
  }
  return rep;
}

TailReport tail_estimate(const TailSampler& sampler, const std::vector<double>& y_grid,
                         std::uint64_t n, unsigned workers) {
  if (n < 100000) fail(ErrorKind::InsufficientSamples, "tail_estimate needs n >= 1e5");
  std::vector<double> draws(n);
  const std::size_t chunk = 4096;
  const std::size_t chunks = (n + chunk - 1) / chunk;
  parallel_for(chunks, workers, [&](std::size_t c) {
    const std::size_t end = std::min<std::size_t>(n, (c + 1) * chunk);
    for (std::size_t i = c * chunk; i < end; ++i) draws[i] = sampler(i);
  });
  return tail_from_samples(draws, y_grid);
}

}  // namespace rlab
