// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#pragma once

#include "rlab/hurst.hpp"

namespace rlab {

// Var R(t) = variance_constant(h) * t^{2 alpha}, from the Wiener isometry
// applied to the kernel (closed form through Beta functions).
double variance_constant(const HurstPair& h);
double rosenblatt_variance(const HurstPair& h, double t);
double rosenblatt_covariance(const HurstPair& h, double s, double t);

// int_{-inf}^{min(s,u)} (s-x)^a (u-x)^b dx for a, b > -1 with a + b < -1.
double power_gram(double a, double b, double s, double u);

}  // namespace rlab
