// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#include <doctest.h>

#include <cmath>
#include <vector>

#include "rlab/daubechies.hpp"
#include "rlab/decomposition.hpp"
#include "rlab/errors.hpp"
#include "rlab/numerics.hpp"
#include "rlab/rng.hpp"

using namespace rlab;

namespace {

const HurstPair kH(0.8, 0.8);

double mc_norm(const CoefficientSampler& s, std::size_t m, bool near, int n, std::uint64_t seed) {
  KahanSum acc;
  for (int i = 0; i < n; ++i) {
    const auto d = s.sample(replica_seed(seed, static_cast<std::uint64_t>(i)));
    const double v = near ? d.near[m] : d.far[m];
    acc.add(v * v);
  }
  return std::sqrt(acc.value() / n);
}

double log_log_slope(const std::vector<double>& ms, const std::vector<double>& norms) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    x.push_back(std::log(ms[i]));
    y.push_back(std::log(norms[i]));
  }
  return linear_fit(x, y).slope;
}

}  // namespace

TEST_CASE("near and far parts add up to the coefficient on every draw") {
  const CoefficientSampler s(kH, 2, 3, {2, 4, 8, 16});
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto d = s.sample(seed);
    for (std::size_t m = 0; m < 4; ++m) REQUIRE(std::abs(d.near[m] + d.far[m] - d.direct) <= 1e-12);
  }
  const auto r = split_coefficient(kH, 1, 0, 4, 77);
  CHECK(std::abs(r.c_near + r.c_far - r.c_direct) <= 1e-12);
  const double n = daubechies_cached(2)->support_halfwidth;
  CHECK(r.box.lo == doctest::Approx(-4.0 * n / 2.0));
  CHECK(r.box.hi == doctest::Approx(n / 2.0));
}

TEST_CASE("box disjointness") {
  const int n = 3;
  CHECK(cm_condition({coefficient_box(0, 0, 2, n), coefficient_box(3, 40, 2, n)}));
  CHECK_FALSE(cm_condition({coefficient_box(1, 5, 4, n), coefficient_box(1, 5, 4, n)}));
  for (int m : {2, 3, 8}) {
    for (std::int64_t k : {-4, 0, 7}) {
      const std::int64_t k2 = k + static_cast<std::int64_t>(std::ceil(n * (m + 1.0))) + 1;
      CHECK(cm_condition({coefficient_box(2, k, m, n), coefficient_box(2, k2, m, n)}));
      CHECK_FALSE(cm_condition({coefficient_box(2, k, m, n), coefficient_box(2, k + 1, m, n)}));
    }
  }
  // Half-open boxes that only touch at an endpoint are disjoint.
  CHECK(cm_condition({coefficient_box(0, 0, 2, n), coefficient_box(0, 2 * n + n, 2, n)}));
  CHECK(cm_condition({}));
}

TEST_CASE("phi norm over the empty set vanishes and the squares increase") {
  const auto w = daubechies_cached(2);
  CHECK(phi_norm(kH, *w, PhiDomain::Empty) == 0.0);
  const double full = phi_norm(kH, *w, PhiDomain::Full);
  double prev = 0.0;
  for (double m : {2.0, 4.0, 8.0, 16.0, 32.0, 64.0}) {
    const double sq = phi_norm(kH, *w, PhiDomain::Square, m);
    REQUIRE(sq > prev);
    REQUIRE(sq < full);
    prev = sq;
  }
}

TEST_CASE("phi norm of the complement decays like M^{max H - 1}") {
  const auto w = daubechies_cached(2);
  for (const HurstPair& h : {kH, HurstPair(0.7, 0.85)}) {
    std::vector<double> ms, norms;
    for (double m : {2.0, 4.0, 8.0, 16.0, 32.0, 64.0}) {
      ms.push_back(m);
      norms.push_back(phi_norm(h, *w, PhiDomain::Complement, m));
    }
    const double slope = log_log_slope(ms, norms);
    MESSAGE("H = (" << h.h1() << ", " << h.h2() << ") complement slope " << slope);
    CHECK(std::abs(slope - (h.max_h() - 1.0)) < 0.1);
  }
}

// The decay law above forces a gap of order M^{2(max H - 1)} between the
// square norms at M = 32 and 64, far above 1e-4. Kept visible, not gating.
TEST_CASE("square norms are Cauchy within 1e-4 between M = 32 and 64" * doctest::may_fail()) {
  const auto w = daubechies_cached(2);
  const double a = phi_norm(kH, *w, PhiDomain::Square, 32.0), b = phi_norm(kH, *w, PhiDomain::Square, 64.0);
  MESSAGE("square norm gap " << b - a << " relative " << (b - a) / b);
  CHECK(b - a < 1e-4);
}

TEST_CASE("discrete near norms sit inside the continuous sandwich") {
  const auto w = daubechies_cached(2);
  std::vector<double> q;
  for (double m : {2.0, 4.0, 8.0, 16.0}) q.push_back(coefficient_norm_reference(kH, *w, PhiDomain::Square, m));
  for (int j = 0; j <= 3; ++j) {
    for (std::int64_t k : {0, 1, 5}) {
      const CoefficientSampler s(kH, j, k, {2, 4, 8, 16});
      for (std::size_t m = 0; m < 4; ++m) {
        const double r = s.norm_near(m) / s.scale();
        REQUIRE(r >= 0.5 * q[m]);
        REQUIRE(r <= 2.0 * q[m]);
      }
    }
  }
}

TEST_CASE("near norms are stable across scales and far norms follow the M law") {
  std::vector<double> ref;
  for (int j = 0; j <= 2; ++j) {
    const CoefficientSampler s(kH, j, 1, {2, 4, 8, 16});
    for (std::size_t m = 0; m < 4; ++m) {
      const double v = mc_norm(s, m, true, 4000, replica_seed(20261015, static_cast<std::uint64_t>(j))) / s.scale();
      if (j == 0) {
        ref.push_back(v);
      } else {
        CHECK(std::abs(v / ref[m] - 1.0) < 0.1);
      }
    }
    std::vector<double> ms{2, 4, 8, 16}, far;
    for (std::size_t m = 0; m < 4; ++m) far.push_back(s.norm_far(m));
    CHECK(std::abs(log_log_slope(ms, far) - (kH.max_h() - 1.0)) < 0.15);
  }
}

TEST_CASE("too coarse a cell grid is refused") {
  DecompositionOptions opt;
  opt.step_log2 = 1;
  CHECK_THROWS_AS(CoefficientSampler(kH, 0, 1, {2}, opt), LabError);
  CHECK_THROWS_AS(CoefficientSampler(kH, 0, 1, {1}), LabError);
}

TEST_CASE("near part tails: control, stability in M and deep hits") {
  const CoefficientSampler s(kH, 0, 1, {16, 32});
  const std::vector<double> ys{0.0, 2.0, 3.0, 4.0};
  const auto t16 = near_tail_lower(s, 0, ys, 100000, 5);
  const auto t32 = near_tail_lower(s, 1, ys, 100000, 5);
  CHECK(t16.survival[0] == 1.0);
  CHECK(t32.survival[0] == 1.0);
  MESSAGE("slopes " << t16.fitted_slope_linear << " " << t32.fitted_slope_linear << ", hits at 4: " << t16.hits[3]);
  CHECK(std::abs(t16.fitted_slope_linear / t32.fitted_slope_linear - 1.0) < 0.15);
  CHECK(t16.hits[3] >= 50);
  CHECK(t32.hits[3] >= 50);
}

TEST_CASE("near parts of box-disjoint coefficients are uncorrelated") {
  const int m = 2;
  const CoefficientSampler a(kH, 0, 1, {m});
  const std::int64_t k2 = 1 + static_cast<std::int64_t>(std::ceil(a.halfwidth() * (m + 1.0))) + 1;
  const CoefficientSampler b(kH, 0, k2, {m});
  REQUIRE(cm_condition({coefficient_box(0, 1, m, a.halfwidth()), coefficient_box(0, k2, m, a.halfwidth())}));
  const int n = 100000;
  std::vector<double> x(n), y(n);
  for (int i = 0; i < n; ++i) {
    const std::uint64_t seed = replica_seed(31, static_cast<std::uint64_t>(i));
    x[i] = a.sample(seed).near[0];
    y[i] = b.sample(seed).near[0];
  }
  const double mx = mean(x), my = mean(y);
  KahanSum sxy;
  for (int i = 0; i < n; ++i) sxy.add((x[i] - mx) * (y[i] - my));
  const double corr = sxy.value() / n / std::sqrt(variance(x) * variance(y));
  MESSAGE("near correlation " << corr);
  CHECK(std::abs(corr) < 0.02);
}
