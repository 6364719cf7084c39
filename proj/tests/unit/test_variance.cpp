// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#include <doctest.h>

#include <cmath>
#include <vector>

#include "rlab/hurst.hpp"
#include "rlab/numerics.hpp"
#include "rlab/variance.hpp"

using namespace rlab;

namespace {

// int_{-inf}^{min(s,u)} (s-x)^a (u-x)^b dx by Gauss-Legendre after
// y = min(s,u) - x = d (v^{-q} - 1) folding the power tail into [0,1].
double gram_quadrature(double a, double b, double s, double u) {
  const double m = std::min(s, u), ds = s - m, du = u - m;
  std::vector<double> x, w;
  gauss_legendre(64, x, w);
  // Split the near singular part [0, 1] and the tail [1, inf).
  double near = 0.0;
  const double e = std::min(a, b) + 1.0;  // y^{e-1} singularity at 0
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double t = 0.5 * (x[i] + 1.0);
    const double y = std::pow(t, 1.0 / e);
    const double jac = std::pow(t, 1.0 / e - 1.0) / e;
    near += 0.5 * w[i] * jac * std::pow(ds + y, a) * std::pow(du + y, b);
  }
  double tail = 0.0;
  const double g = -(a + b) - 1.0;  // decay y^{-(g+1)}
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double t = 0.5 * (x[i] + 1.0);
    const double y = std::pow(t, -1.0 / g);
    const double jac = std::pow(t, -1.0 / g - 1.0) / g;
    tail += 0.5 * w[i] * jac * std::pow(ds + y, a) * std::pow(du + y, b);
  }
  return near + tail;
}

}  // namespace

TEST_CASE("power gram matches direct quadrature") {
  for (auto [a, b] : {std::pair{-0.7, -0.7}, {-0.8, -0.65}, {-0.6, -0.95}}) {
    for (auto [s, u] : {std::pair{0.0, 0.5}, {0.3, 0.1}, {1.0, 3.0}}) {
      CHECK(power_gram(a, b, s, u) == doctest::Approx(gram_quadrature(a, b, s, u)).epsilon(1e-6));
    }
  }
}

TEST_CASE("variance constant assembled from quadrature grams") {
  for (auto [h1, h2] : {std::pair{0.8, 0.8}, {0.7, 0.85}, {0.6, 0.95}}) {
    const HurstPair h(h1, h2);
    const double b1 = h1 - 1.5, b2 = h2 - 1.5, al = h.alpha();
    // Grams at unit separation; int_0^1 int_0^1 |s-u|^{2 alpha - 2} = 1 / (alpha (2 alpha - 1)).
    const double g11 = gram_quadrature(b1, b1, 0, 1), g22 = gram_quadrature(b2, b2, 0, 1);
    const double g12 = gram_quadrature(b1, b2, 0, 1), g21 = gram_quadrature(b2, b1, 0, 1);
    const double c = kernel_constant(h);
    const double expected = c * c * (g11 * g22 + g12 * g21) / (al * (2 * al - 1));
    CHECK(variance_constant(h) == doctest::Approx(expected).epsilon(1e-6));
  }
}

TEST_CASE("variance scaling and covariance structure") {
  const HurstPair h(0.8, 0.75);
  const double v1 = rosenblatt_variance(h, 1.0);
  CHECK(rosenblatt_variance(h, 0.25) == doctest::Approx(v1 * std::pow(0.25, 2 * h.alpha())));
  CHECK(rosenblatt_covariance(h, 0.3, 0.3) == doctest::Approx(rosenblatt_variance(h, 0.3)));
  CHECK(rosenblatt_covariance(h, 0.3, 0.7) == rosenblatt_covariance(h, 0.7, 0.3));
  CHECK(rosenblatt_covariance(h, 0.0, 0.7) == doctest::Approx(0.0).scale(1.0));
  const double s = 0.2, t = 0.9;
  CHECK(rosenblatt_covariance(h, s, t) ==
        doctest::Approx(0.5 * (rosenblatt_variance(h, s) + rosenblatt_variance(h, t) - rosenblatt_variance(h, t - s))));
}
