// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#include "rlab/variance.hpp"

#include <cmath>

#include "rlab/errors.hpp"

namespace rlab {

double power_gram(double a, double b, double s, double u) {
  const double d = std::abs(s - u);
  if (d == 0.0) return INFINITY;
  // With y measured from the earlier point, the integral is d^{a+b+1} B(.,.).
  const double e = -a - b - 1.0;
  const double beta = s >= u ? std::beta(b + 1.0, e) : std::beta(a + 1.0, e);
  return std::pow(d, a + b + 1.0) * beta;
}

double variance_constant(const HurstPair& h) {
  const double h1 = h.h1(), h2 = h.h2(), al = h.alpha();
  const double c = kernel_constant(h);
  const double b1 = std::beta(h1 - 0.5, 2.0 - 2.0 * h1);
  const double b2 = std::beta(h2 - 0.5, 2.0 - 2.0 * h2);
  const double bx = std::beta(h1 - 0.5, 2.0 - h1 - h2);
  const double by = std::beta(h2 - 0.5, 2.0 - h1 - h2);
  return c * c * (b1 * b2 + bx * by) / (al * (2.0 * al - 1.0));
}

double rosenblatt_variance(const HurstPair& h, double t) {
  return variance_constant(h) * std::pow(std::abs(t), 2.0 * h.alpha());
}

double rosenblatt_covariance(const HurstPair& h, double s, double t) {
  return 0.5 * (rosenblatt_variance(h, s) + rosenblatt_variance(h, t) - rosenblatt_variance(h, t - s));
}

}  // namespace rlab
