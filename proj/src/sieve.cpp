// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#include "rlab/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rlab/errors.hpp"
#include "rlab/rng.hpp"

namespace rlab {

namespace {

// Neighbours beyond this many sigmas are never generated.
constexpr double kMaxSigma = 9.0;
constexpr double kMaxReach = 1 << 24;

// Largest l with 2^l mu < |e|, or -1 if |e| <= mu.
int band_of(double e, double mu) {
  const double a = std::abs(e);
  if (!(a > mu)) return -1;
  int l = static_cast<int>(std::ceil(std::log2(a / mu))) - 1;
  // Guard the boundary against rounding in log2.
  while (l > 0 && !(std::ldexp(mu, l) < a)) --l;
  while (std::ldexp(mu, l + 1) < a) ++l;
  return l;
}

}  // namespace

SieveResult slow_sieve(const ChaosField& field, double mu, double m_slope, int depth) {
  if (depth < 0 || depth > 24) fail(ErrorKind::ConfigInvalid, "sieve depth must lie in [0,24]");
  if (!(m_slope > 0.0)) fail(ErrorKind::ConfigInvalid, "sieve slope m must be positive");
  if (!(mu >= 0.0)) fail(ErrorKind::ConfigInvalid, "mu must be non-negative");
  SieveResult res;
  res.depth = depth;
  std::vector<std::int64_t> alive{0};
  for (int j = 0; j <= depth; ++j) {
    if (j > 0) {
      std::vector<std::int64_t> next;
      next.reserve(alive.size() * 2);
      for (auto k : alive) {
        next.push_back(2 * k);
        next.push_back(2 * k + 1);
      }
      alive.swap(next);
    }
    const std::int64_t width = std::int64_t{1} << j;
    if (mu == 0.0) {
      alive.clear();
    } else if (!alive.empty()) {
      const int l_max = band_of(kMaxSigma, mu);
      const double reach_d = l_max < 0 ? 0.0 : std::min(kMaxReach, std::exp2(m_slope * l_max));
      const auto reach = static_cast<std::int64_t>(std::floor(reach_d));
      // Difference array of kill marks over [0, width).
      std::vector<int> marks(static_cast<std::size_t>(width) + 1, 0);
      for (std::int64_t kp = -reach; kp < width + reach; ++kp) {
        const int l = band_of(field.gaussian_at(j, static_cast<std::int32_t>(kp)), mu);
        if (l < 0) continue;
        const double r = std::min(kMaxReach, std::floor(std::exp2(m_slope * l)));
        const auto ri = static_cast<std::int64_t>(r);
        const std::int64_t lo = std::max<std::int64_t>(0, kp - ri);
        const std::int64_t hi = std::min<std::int64_t>(width - 1, kp + ri);
        if (lo > hi) continue;
        ++marks[static_cast<std::size_t>(lo)];
        --marks[static_cast<std::size_t>(hi + 1)];
      }
      std::vector<char> dead(static_cast<std::size_t>(width), 0);
      int run = 0;
      for (std::int64_t k = 0; k < width; ++k) {
        run += marks[static_cast<std::size_t>(k)];
        dead[static_cast<std::size_t>(k)] = run > 0;
      }
      std::erase_if(alive, [&](std::int64_t k) { return dead[static_cast<std::size_t>(k)] != 0; });
    }
    res.trajectory.push_back(alive.size());
    res.levels.push_back(alive);
  }
  res.survivors = alive;
  return res;
}

double sieve_loss_bound(double mu, double m_slope) {
  double total = 0.0;
  for (int l = 0; l < 64; ++l) {
    const double lo = std::ldexp(mu, l), hi = std::ldexp(mu, l + 1);
    const double p = 2.0 * (normal_cdf(-lo) - normal_cdf(-hi));
    if (p <= 0.0 && lo > 40.0) break;
    total += (std::exp2(m_slope * l + 1.0) + 1.0) * (p + (l + 1) * std::sqrt(std::max(0.0, p * (1.0 - p))));
  }
  return 2.0 * total;
}

double calibrate_mu(double m_slope) {
  if (!(m_slope > 0.0)) fail(ErrorKind::ConfigInvalid, "sieve slope m must be positive");
  for (int i = 1; i <= 4000; ++i) {
    const double mu = 0.01 * i;
    if (sieve_loss_bound(mu, m_slope) <= 0.5) return mu;
  }
  fail(ErrorKind::NumericalFailure, "no mu below 40 meets the sieve loss bound");
}

void check_sieve_slope(const HurstPair& h, double m_slope) {
  if (!(m_slope > 0.0) || !(1.0 / m_slope < h.min_h())) {
    std::ostringstream os;
    os << "sieve slope m=" << m_slope << " must satisfy 1/m < min(H1,H2)=" << h.min_h();
    fail(ErrorKind::ConfigInvalid, os.str());
  }
}

}  // namespace rlab
