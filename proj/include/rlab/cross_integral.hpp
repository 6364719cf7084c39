// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#pragma once

#include <cstddef>

namespace rlab {

// Integral over the real line of psi_{h1}(2^{j1} x - k1) psi_{h2}(2^{j2} x - k2).
// Exactly zero when |j1 - j2| > 1; otherwise trapezoid quadrature of the
// Parseval form on the positive half of the Meyer band.
double cross_integral_fourier(double h1, double h2, int j1, int j2, long k1, long k2,
                              std::size_t freq_points = std::size_t{1} << 14);

// Integral of the same product over [a, b] by composite trapezoid on the
// sampled fractional antiderivatives; negated when b < a. The step starts at
// 2^{-10-max(j1,j2)} and is halved until the estimated error is below `tol`
// times the L1 mass of the integrand; throws GridTooCoarse otherwise.
double time_integral(double h1, double h2, int j1, long k1, int j2, long k2, double a, double b,
                     double tol = 1e-8);

}  // namespace rlab
