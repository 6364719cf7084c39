// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#pragma once

#include <cstdint>
#include <vector>

#include "rlab/chaos_field.hpp"
#include "rlab/hurst.hpp"

namespace rlab {

struct SieveResult {
  int depth = 0;
  // Indices k of the surviving intervals [k 2^-depth, (k+1) 2^-depth].
  std::vector<std::int64_t> survivors;
  // Survivor counts N_j for j = 0..depth.
  std::vector<std::size_t> trajectory;
  // Survivors at every level, for nesting checks.
  std::vector<std::vector<std::int64_t>> levels;
};

// Slow-point sieve on the Gaussians eps_{j,k} = field.gaussian_at(j,k).
// At level j an interval lambda dies when some lambda' at the same level has
// 2^l mu < |eps_lambda'| <= 2^{l+1} mu and |k - k'| <= 2^{m l}. Survivors are
// halved into the next level. mu = 0 removes everything.
SieveResult slow_sieve(const ChaosField& field, double mu, double m_slope, int depth);

// Expected-loss bound 2 sum_l (2^{m l + 1} + 1)(p_l + (l+1) sqrt(p_l (1-p_l)))
// with p_l = P(2^l mu < |Z| <= 2^{l+1} mu).
double sieve_loss_bound(double mu, double m_slope);

// Smallest mu on a 0.01 grid with sieve_loss_bound <= 1/2.
double calibrate_mu(double m_slope);

// Requires 1/m < min(H1,H2); throws ConfigInvalid otherwise.
void check_sieve_slope(const HurstPair& h, double m_slope);

}  // namespace rlab
