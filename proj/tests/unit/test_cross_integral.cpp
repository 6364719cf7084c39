// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <tuple>

#include "rlab/cross_integral.hpp"
#include "rlab/numerics.hpp"

using namespace rlab;

TEST_CASE("cross integral vanishes exactly for scales more than one apart") {
  CHECK(cross_integral_fourier(0.8, 0.8, 5, 2, 0, 0) == 0.0);
  for (int j1 = -3; j1 <= 4; ++j1) {
    for (int j2 = -3; j2 <= 4; ++j2) {
      if (std::abs(j1 - j2) <= 1) continue;
      for (long k1 = -2; k1 <= 2; ++k1) {
        for (long k2 = -2; k2 <= 2; ++k2) REQUIRE(cross_integral_fourier(0.7, 0.9, j1, j2, k1, k2) == 0.0);
      }
    }
  }
}

TEST_CASE("cross integral scale covariance") {
  for (auto [j1, j2] : {std::pair{0, 0}, {0, 1}, {1, 0}}) {
    for (long d : {0L, 1L, 3L}) {
      const double base = cross_integral_fourier(0.8, 0.75, j1, j2, 0, d);
      for (int c = 1; c <= 3; ++c) {
        const double scaled = cross_integral_fourier(0.8, 0.75, j1 + c, j2 + c, 0, d);
        CHECK(scaled * std::ldexp(1.0, c) == doctest::Approx(base).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("cross integral decays faster than the cube of the offset") {
  std::vector<double> x, y;
  double prev = INFINITY;
  for (long d : {4L, 8L, 16L}) {
    const double v = std::abs(cross_integral_fourier(0.8, 0.8, 0, 0, 0, d));
    CHECK(v < prev);
    prev = v;
    x.push_back(std::log(3.0 + d));
    y.push_back(std::log(v));
  }
  CHECK(linear_fit(x, y).slope < -3.0);
}

TEST_CASE("time-domain route: orientation and agreement with the Fourier route") {
  CHECK(time_integral(0.8, 0.8, 0, 0, 0, 1, 0.3, 0.3) == 0.0);
  const double ab = time_integral(0.8, 0.7, 0, 0, 1, 1, -0.4, 1.3);
  CHECK(time_integral(0.8, 0.7, 0, 0, 1, 1, 1.3, -0.4) == -ab);
  using Case = std::tuple<int, int, std::int64_t, std::int64_t>;
  for (auto [j1, j2, k1, k2] : {Case{0, 0, 0, 0}, Case{0, 0, 0, 2}, Case{0, 1, 0, 1}, Case{1, 0, 3, -1}, Case{2, 2, 1, 1}}) {
    const double f = cross_integral_fourier(0.8, 0.7, j1, j2, k1, k2);
    const double t = time_integral(0.8, 0.7, j1, k1, j2, k2, -60.0, 60.0);
    CHECK(std::abs(f - t) < 1e-5);
  }
}
