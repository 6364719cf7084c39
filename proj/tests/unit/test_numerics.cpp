// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#include <doctest.h>

#include <cmath>
#include <vector>

#include "rlab/numerics.hpp"

using namespace rlab;

TEST_CASE("compensated sum keeps small terms next to large ones") {
  KahanSum s;
  s.add(1e16);
  s.add(1.0);
  s.add(-1e16);
  CHECK(s.value() == 1.0);
}

TEST_CASE("linear fit recovers an exact line") {
  const std::vector<double> x{1, 2, 3, 4, 5};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 - 0.5 * v);
  const auto f = linear_fit(x, y);
  CHECK(f.slope == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(f.intercept == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(f.r2 == doctest::Approx(1.0));
  CHECK(f.rss < 1e-25);
}

TEST_CASE("gauss-legendre is exact for polynomials of degree 2n-1") {
  std::vector<double> x, w;
  gauss_legendre(8, x, w);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], 14);
  CHECK(s == doctest::Approx(2.0 / 15.0).epsilon(1e-13));
}

TEST_CASE("cubic interpolation reproduces cubics and vanishes off the table") {
  std::vector<double> t;
  auto f = [](double x) { return 1.0 - 2.0 * x + 0.5 * x * x * x; };
  for (int i = 0; i <= 20; ++i) t.push_back(f(-1.0 + 0.1 * i));
  for (double x : {-0.73, 0.01, 0.55, 0.87}) CHECK(cubic_sample(t, -1.0, 0.1, x) == doctest::Approx(f(x)).epsilon(1e-12));
  CHECK(cubic_sample(t, -1.0, 0.1, 5.0) == 0.0);
}

TEST_CASE("order statistics and moments") {
  CHECK(median({3, 1, 2}) == 2.0);
  CHECK(median({4, 1, 2, 3}) == 2.5);
  const std::vector<double> v{1, 2, 3, 4};
  CHECK(mean(v) == 2.5);
  CHECK(variance(v) == doctest::Approx(5.0 / 3.0));
  CHECK(ks_distance({1, 2, 3}, {1, 2, 3}) == 0.0);
  CHECK(ks_distance({1, 2, 3}, {4, 5, 6}) == 1.0);
}
