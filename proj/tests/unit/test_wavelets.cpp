// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#include <doctest.h>

#include <cmath>
#include <complex>

#include "rlab/daubechies.hpp"
#include "rlab/errors.hpp"
#include "rlab/meyer.hpp"
#include "rlab/numerics.hpp"

using namespace rlab;

TEST_CASE("meyer transform vanishes at zero and outside its band") {
  CHECK(std::abs(meyer_fourier(0.0)) == 0.0);
  CHECK(std::abs(meyer_fourier(10.0)) == 0.0);
  CHECK(std::abs(meyer_fourier(-10.0)) == 0.0);
}

TEST_CASE("meyer dyadic dilates form a partition of unity") {
  for (double xi : {1.0, 2.2, 3.7, -1.3}) {
    double s = 0.0;
    for (int j = -20; j <= 20; ++j) s += std::norm(meyer_fourier(std::ldexp(xi, j)));
    CHECK(s == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("fractional transform modulus") {
  for (double h : {0.6, 0.8, 0.95}) {
    CHECK(std::abs(frac_fourier(h, 2.0)) ==
          doctest::Approx(std::pow(2.0, -(h - 0.5)) * std::abs(meyer_fourier(2.0))).epsilon(1e-12));
  }
}

TEST_CASE("fractional antiderivative has zero mean and respects its decay envelope") {
  for (double h : {0.6, 0.8, 0.95}) {
    const auto w = frac_antiderivative_cached(h);
    KahanSum s;
    for (double v : w->samples) s.add(v);
    CHECK(std::abs(s.value() * w->grid_step) < 1e-8);
    CHECK(w->decay_exponent >= 4.0);
    CHECK(std::isfinite(w->decay_constant));
    for (std::size_t i = 0; i < w->samples.size(); ++i) {
      const double x = w->x_at(i);
      REQUIRE(std::abs(w->samples[i]) <= w->decay_constant * std::pow(1.0 + std::abs(x), -w->decay_exponent));
    }
  }
}

namespace {

// <Psi_{j1,k1}, Psi_{j2,k2}> with L2 normalization: Riemann sum of the
// cascade samples on the dyadic grid of the coarser scale, where both factors
// sit on exact sample points.
double inner(const DaubechiesWavelet& w, int j1, long k1, int j2, long k2) {
  const int coarse = std::min(j1, j2);
  const long per = 1L << w.depth;
  KahanSum s;
  // x = m 2^{-coarse-depth}; Psi(2^j x - k) sits at index m 2^{j-coarse} - k per.
  const long lo = -64 * per, hi = 64 * per;
  for (long m = lo; m <= hi; ++m) {
    const long i1 = m * (1L << (j1 - coarse)) - k1 * per;
    const long i2 = m * (1L << (j2 - coarse)) - k2 * per;
    const long lim = static_cast<long>(w.support_halfwidth) * per;
    if (std::abs(i1) >= lim || std::abs(i2) >= lim) continue;
    s.add(w.at_dyadic(i1) * w.at_dyadic(i2));
  }
  return s.value() * std::ldexp(1.0, -coarse - w.depth) * std::sqrt(std::ldexp(1.0, j1 + j2));
}

}  // namespace

TEST_CASE("daubechies filter normalization and vanishing first moment") {
  for (int order : {2, 3, 4, 6}) {
    const auto w = daubechies_cached(order);
    KahanSum f;
    for (double c : w->filter) f.add(c);
    CHECK(f.value() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    KahanSum s;
    for (double v : w->samples.samples) s.add(v);
    CHECK(std::abs(s.value() * w->samples.grid_step) < 1e-8);
  }
}

TEST_CASE("daubechies family is orthonormal on a test set") {
  const auto w = daubechies_cached(2);
  CHECK(std::abs(inner(*w, 3, 1, 3, 2)) < 1e-6);
  int pairs = 0;
  for (int j1 = 0; j1 <= 2; ++j1) {
    for (int j2 = j1; j2 <= j1 + 1; ++j2) {
      for (long k1 = 0; k1 < 3; ++k1) {
        for (long k2 = 0; k2 < 3 && pairs < 50; ++k2) {
          const double expected = (j1 == j2 && k1 == k2) ? 1.0 : 0.0;
          CHECK(inner(*w, j1, k1, j2, k2) == doctest::Approx(expected).epsilon(1e-6).scale(1.0));
          ++pairs;
        }
      }
    }
  }
  CHECK(pairs >= 50);
}

TEST_CASE("daubechies orders outside 2..10 are rejected") {
  CHECK_THROWS_AS(daubechies_build(1), LabError);
  CHECK_THROWS_AS(daubechies_build(11), LabError);
}
