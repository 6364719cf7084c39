// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#include <doctest.h>

#include <cmath>
#include <vector>

#include "rlab/daubechies.hpp"
#include "rlab/errors.hpp"
#include "rlab/leaders.hpp"
#include "rlab/numerics.hpp"
#include "rlab/rng.hpp"
#include "rlab/wavelet_sim.hpp"

using namespace rlab;

namespace {

PathGrid grid_path(int level) {
  PathGrid p;
  p.times = uniform_times(level);
  p.values.assign(p.times.size(), 0.0);
  p.grid_level = level;
  return p;
}

std::vector<double> t_grid(int n) {
  std::vector<double> t;
  for (int i = 0; i < n; ++i) t.push_back((i + 0.5) / n);
  return t;
}

}  // namespace

TEST_CASE("constant paths have vanishing coefficients") {
  const auto w = daubechies_cached(2);
  PathGrid p = grid_path(10);
  for (auto& v : p.values) v = 2.75;
  const LeaderPyramid pyr = wavelet_coeffs(p, *w, 0, 7);
  for (int j = 0; j <= 7; ++j) {
    for (std::int64_t k = pyr.k_first(j); k <= pyr.k_last(j); ++k) REQUIRE(std::abs(pyr.coeff(j, k)) < 1e-10);
  }
}

TEST_CASE("a sampled wavelet is its own coefficient") {
  const auto w = daubechies_cached(2);
  const int level = 12, j = 4;
  const std::int64_t k = 8;
  PathGrid p = grid_path(level);
  for (std::size_t i = 0; i < p.size(); ++i) p.values[i] = w->samples.value(std::ldexp(p.times[i], j) - k);
  const LeaderPyramid pyr = wavelet_coeffs(p, *w, 0, 8);
  CHECK(pyr.coeff(j, k) == doctest::Approx(1.0).epsilon(0.02));
  CHECK(std::abs(pyr.coeff(j, k - 1)) < 0.02);
  CHECK(std::abs(pyr.coeff(j, k + 1)) < 0.02);
  CHECK(std::abs(pyr.coeff(j + 1, 2 * k)) < 0.02);
}

TEST_CASE("shifting a path by a constant leaves coefficients unchanged") {
  const auto w = daubechies_cached(2);
  const PathGrid p = simulate_wavelet(HurstPair(0.8, 0.8), 10, TruncationSpec{}, 3);
  PathGrid q = p;
  for (auto& v : q.values) v += 3.7;
  const LeaderPyramid a = wavelet_coeffs(p, *w, 0, 7), b = wavelet_coeffs(q, *w, 0, 7);
  for (int j = 0; j <= 7; ++j) {
    for (std::int64_t k = a.k_first(j); k <= a.k_last(j); ++k) {
      REQUIRE(std::abs(a.coeff(j, k) - b.coeff(j, k)) <= 1e-12 * (1.0 + std::abs(a.coeff(j, k))) + 1e-14);
    }
  }
}

TEST_CASE("a single nonzero coefficient is seen exactly by the leaders above it") {
  LeaderPyramid pyr(0, 7, 3);
  pyr.set_coeff(4, 5, -2.5);
  pyr.rebuild();
  for (int j = 0; j <= 7; ++j) {
    for (double t : t_grid(64)) {
      const std::int64_t k = static_cast<std::int64_t>(std::floor(std::ldexp(t, j)));
      // lambda_{4,5} lies inside lambda_{j,k'} iff j <= 4 and k' = floor(5 2^{j-4}).
      const bool below = j <= 4 && std::abs(static_cast<std::int64_t>(std::floor(std::ldexp(5.0, j - 4))) - k) <= 1;
      REQUIRE(pyr.leader(t, j) == (below ? 2.5 : 0.0));
    }
  }
}

TEST_CASE("leaders dominate the coefficients of their neighbourhood and grow with depth") {
  const auto w = daubechies_cached(2);
  const PathGrid p = simulate_wavelet(HurstPair(0.7, 0.85), 12, TruncationSpec{}, 11);
  const LeaderPyramid shallow = wavelet_coeffs(p, *w, 0, 8), deep = wavelet_coeffs(p, *w, 0, 9);
  for (int j = 0; j <= 8; ++j) {
    for (double t : t_grid(64)) {
      const std::int64_t k = static_cast<std::int64_t>(std::floor(std::ldexp(t, j)));
      double m = 0.0;
      for (std::int64_t kk = k - 1; kk <= k + 1; ++kk) m = std::max(m, std::abs(shallow.coeff(j, kk)));
      REQUIRE(shallow.leader(t, j) >= m);
      REQUIRE(deep.leader(t, j) >= shallow.leader(t, j));
    }
  }
}

TEST_CASE("leaders respect the oscillation bound on simulated paths") {
  const auto w = daubechies_cached(2);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const PathGrid p = simulate_wavelet(HurstPair(0.8, 0.8), 10, TruncationSpec{}, replica_seed(1, s));
    const LeaderPyramid pyr = wavelet_coeffs(p, *w, 0, default_leader_depth(10));
    for (int j = 0; j <= pyr.j_hi(); ++j) {
      for (double t : t_grid(64)) REQUIRE(pyr.leader(t, j) <= leader_oscillation_bound(p, *w, t, j));
    }
  }
}

TEST_CASE("median coefficient size decays like 2^{-j alpha}") {
  const HurstPair h(0.8, 0.8);
  const auto w = daubechies_cached(2);
  const WaveletSimulator sim(h, 12, TruncationSpec{});
  std::vector<std::vector<double>> mags(10);
  for (std::uint64_t s = 0; s < 200; ++s) {
    const LeaderPyramid pyr = wavelet_coeffs(sim.simulate(replica_seed(20261015, s)), *w, 0, 9);
    for (int j = 2; j <= 9; ++j) {
      for (std::int64_t k = 0; k < (std::int64_t{1} << j); ++k) mags[j].push_back(std::abs(pyr.coeff(j, k)));
    }
  }
  std::vector<double> x, y;
  for (int j = 2; j <= 9; ++j) {
    x.push_back(j);
    y.push_back(std::log2(median(mags[j])));
  }
  CHECK(std::abs(linear_fit(x, y).slope + h.alpha()) < 0.1);
}

TEST_CASE("coefficients need a fine enough path grid") {
  const auto w = daubechies_cached(2);
  const PathGrid p = grid_path(8);
  CHECK_THROWS_AS(wavelet_coeffs(p, *w, 0, 6), LabError);
  LeaderPyramid pyr(0, 4, 3);
  CHECK_THROWS_AS(pyr.leader(0.5, 5), LabError);
  CHECK_THROWS_AS(pyr.leader(1.0, 2), LabError);
}
