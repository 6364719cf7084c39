// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#include "rlab/cross_integral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "rlab/errors.hpp"
#include "rlab/meyer.hpp"
#include "rlab/numerics.hpp"

namespace rlab {

namespace {
constexpr double kPi = std::numbers::pi;
}

double cross_integral_fourier(double h1, double h2, int j1, int j2, long k1, long k2,
                              std::size_t freq_points) {
  const int dj = j1 - j2;
  if (dj > 1 || dj < -1) return 0.0;
  const int j = std::min(j1, j2);
  // After rescaling, the integral reads
  //   2^{-j}/(2 pi) int e^{-i d xi} psi1^(s1 xi) conj(psi2^(s2 xi)) d xi
  // with (d, s1, s2) fixed by which index is the finer one.
  double d;
  double s1 = 1.0, s2 = 1.0;
  if (dj == 0) {
    d = static_cast<double>(k1 - k2);
  } else if (dj == 1) {
    d = static_cast<double>(k1 - 2 * k2);
    s2 = 2.0;
  } else {
    d = static_cast<double>(2 * k1 - k2);
    s1 = 2.0;
  }
  // The integrand is conjugate-symmetric, so integrate over xi > 0 and take 2 Re.
  const double lo = 0.0, hi = 3.0 * kPi;
  const std::size_t n = std::max<std::size_t>(freq_points / 2, 64);
  const double dxi = (hi - lo) / static_cast<double>(n);
  KahanSum acc;
  for (std::size_t m = 1; m < n; ++m) {
    const double xi = lo + dxi * static_cast<double>(m);
    const std::complex<double> a = frac_fourier(h1, s1 * xi);
    if (a == std::complex<double>(0.0, 0.0)) continue;
    const std::complex<double> b = frac_fourier(h2, s2 * xi);
    if (b == std::complex<double>(0.0, 0.0)) continue;
    acc.add((std::polar(1.0, -d * xi) * a * std::conj(b)).real());
  }
  return std::ldexp(1.0, -j) / kPi * acc.value() * dxi;
}

double time_integral(double h1, double h2, int j1, long k1, int j2, long k2, double a, double b,
                     double tol) {
  if (a == b) return 0.0;
  const double sign = b < a ? -1.0 : 1.0;
  double lo = std::min(a, b), hi = std::max(a, b);
  const auto w1 = frac_antiderivative_cached(h1);
  const auto w2 = frac_antiderivative_cached(h2);
  const double s1 = std::ldexp(1.0, j1), s2 = std::ldexp(1.0, j2);
  // Restrict to where both tables are nonzero.
  lo = std::max({lo, (w1->grid_start + static_cast<double>(k1)) / s1,
                 (w2->grid_start + static_cast<double>(k2)) / s2});
  hi = std::min({hi, (w1->grid_end() + static_cast<double>(k1)) / s1,
                 (w2->grid_end() + static_cast<double>(k2)) / s2});
  if (!(hi > lo)) return 0.0;
  auto f = [&](double x) {
    return w1->value(s1 * x - static_cast<double>(k1)) * w2->value(s2 * x - static_cast<double>(k2));
  };
  const double base_step = std::ldexp(1.0, -10 - std::max(j1, j2));
  auto n = static_cast<std::size_t>(std::ceil((hi - lo) / base_step));
  n = std::max<std::size_t>(n + (n % 2), 2);
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i <= n; ++i) vals[i] = f(lo + (hi - lo) * static_cast<double>(i) / n);
  for (int refine = 0; refine < 5; ++refine) {
    const double h = (hi - lo) / static_cast<double>(n);
    KahanSum fine, coarse, mass;
    for (std::size_t i = 0; i <= n; ++i) {
      const double w = (i == 0 || i == n) ? 0.5 : 1.0;
      fine.add(w * vals[i]);
      mass.add(w * std::abs(vals[i]));
      if (i % 2 == 0) coarse.add(((i == 0 || i == n) ? 0.5 : 1.0) * vals[i]);
    }
    const double tf = fine.value() * h;
    const double tc = coarse.value() * 2.0 * h;
    const double err = std::abs(tf - tc) / 3.0;
    if (err <= tol * (mass.value() * h) || err < 1e-300) return sign * tf;
    std::vector<double> next(2 * n + 1);
    for (std::size_t i = 0; i <= n; ++i) next[2 * i] = vals[i];
    for (std::size_t i = 0; i < n; ++i) {
      next[2 * i + 1] = f(lo + (hi - lo) * (2.0 * static_cast<double>(i) + 1.0) / (2.0 * n));
    }
    vals.swap(next);
    n *= 2;
  }
  fail(ErrorKind::GridTooCoarse, "time_integral did not reach the requested tolerance");
}

}  // namespace rlab
