// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#include <doctest.h>

#include <cmath>
#include <vector>

#include "rlab/errors.hpp"
#include "rlab/regularity.hpp"
#include "rlab/rng.hpp"
#include "rlab/wavelet_sim.hpp"

using namespace rlab;

namespace {

std::vector<std::pair<int, double>> synthetic(int model, double alpha, double noise = 0.0, std::uint64_t seed = 0) {
  std::vector<std::pair<int, double>> d;
  for (int j = 4; j <= 16; ++j) {
    double v = std::exp2(-alpha * j);
    if (model == 1) v *= std::log(j + 1.0);
    if (model == 2) v *= j;
    if (noise > 0.0) v *= std::exp2(noise * normal_at(seed, static_cast<std::uint64_t>(j)));
    d.emplace_back(j, v);
  }
  return d;
}

}  // namespace

TEST_CASE("pure power leaders give the exponent and the slow class") {
  const auto e = estimate_pointwise(synthetic(0, 0.6));
  CHECK(e.alpha_hat == doctest::Approx(0.6).epsilon(1e-9));
  CHECK(e.cls == RegularityClass::Slow);
  CHECK(estimate_pointwise(synthetic(0, 0.6), 0.2, 0.6).cls == RegularityClass::Slow);
}

TEST_CASE("log and linear corrections are recognised") {
  CHECK(estimate_pointwise(synthetic(2, 0.6)).cls == RegularityClass::Rapid);
  CHECK(estimate_pointwise(synthetic(1, 0.6)).cls == RegularityClass::Ordinary);
  CHECK(estimate_pointwise(synthetic(2, 0.6), 0.2, 0.6).cls == RegularityClass::Rapid);
  CHECK(estimate_pointwise(synthetic(1, 0.6), 0.2, 0.6).cls == RegularityClass::Ordinary);
}

TEST_CASE("classifier accuracy under multiplicative noise") {
  // Accuracy per noise level (standard deviation of log2 d_j), both modes.
  const double levels[] = {0.0, 0.01, 0.03, 0.1};
  double accuracy[2][4] = {};
  for (int mode = 0; mode < 2; ++mode) {
    for (int n = 0; n < 4; ++n) {
      int right = 0;
      for (int model = 0; model < 3; ++model) {
        for (std::uint64_t s = 0; s < 100; ++s) {
          const double ref = mode == 0 ? std::numeric_limits<double>::quiet_NaN() : 0.6;
          const auto e = estimate_pointwise(synthetic(model, 0.6, levels[n], replica_seed(9, s)), 0.2, ref);
          right += static_cast<int>(e.cls) == model;
        }
      }
      accuracy[mode][n] = right / 300.0;
      MESSAGE("mode " << mode << " noise " << levels[n] << " accuracy " << accuracy[mode][n]);
    }
    CHECK(accuracy[mode][0] == 1.0);
    for (int n = 1; n < 4; ++n) CHECK(accuracy[mode][n] <= accuracy[mode][0]);
  }
}

TEST_CASE("degenerate or short leader sequences are rejected") {
  auto d = synthetic(0, 0.6);
  d[3].second = 0.0;
  CHECK_THROWS_AS(estimate_pointwise(d), LabError);
  auto shortseq = synthetic(0, 0.6);
  shortseq.resize(5);
  CHECK_THROWS_AS(estimate_pointwise(shortseq), LabError);
}

TEST_CASE("merged reports pool points and average growth curves") {
  RegularityReport a, b;
  PointEstimate p;
  p.alpha_hat = 0.5;
  p.cls = RegularityClass::Ordinary;
  a.points = {p, p};
  p.alpha_hat = 0.7;
  p.cls = RegularityClass::Slow;
  b.points = {p};
  a.rapid_scales = b.rapid_scales = {5, 6, 7};
  a.rapid_log_growth = {1, 2, 3};
  b.rapid_log_growth = {3, 4, 5};
  const auto m = merge_reports({a, b});
  CHECK(m.points.size() == 3);
  CHECK(m.fraction_ordinary == doctest::Approx(2.0 / 3.0));
  CHECK(m.median_alpha == 0.5);
  CHECK(m.rapid_log_growth == std::vector<double>{2, 3, 4});
}

TEST_CASE("uniform modulus: log correction stable, pure power and excess exponent grow") {
  const HurstPair h(0.8, 0.8);
  // Scales resolved down to the grid; coarser truncations are smooth below 2^-j_max.
  TruncationSpec trunc;
  trunc.j_max = 12;
  const WaveletSimulator sim(h, 12, trunc);
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 50; ++i) seeds.push_back(replica_seed(20261015, i));
  const auto rep = uniform_modulus_check(sim.simulate_many(seeds, 2), h);
  MESSAGE("log-corrected growth " << rep.log_corrected_growth() << ", pure power " << rep.pure_power_growth()
                                  << ", alpha+0.2 " << rep.over_exponent_growth());
  CHECK(rep.log_corrected_growth() < 1.25);
  CHECK(rep.pure_power_growth() > 1.0);
  CHECK(rep.over_exponent_growth() > 1.25);
  CHECK(std::isfinite(rep.min_oscillation_exponent));
  CHECK(rep.lower_rate_log_exponent == doctest::Approx((1 - 0.8 - 0.8) / (1 - 0.8)));
  std::vector<PathGrid> few(sim.simulate_many({1, 2, 3}, 1));
  CHECK_THROWS_AS(uniform_modulus_check(few, h), LabError);
}
