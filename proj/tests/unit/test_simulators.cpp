// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#include <doctest.h>

#include <cmath>
#include <vector>

#include "rlab/covariance.hpp"
#include "rlab/errors.hpp"
#include "rlab/kernel_oracle.hpp"
#include "rlab/numerics.hpp"
#include "rlab/rng.hpp"
#include "rlab/variance.hpp"
#include "rlab/wavelet_sim.hpp"

using namespace rlab;

namespace {

std::vector<std::uint64_t> seeds(std::uint64_t base, std::size_t n, std::size_t offset = 0) {
  std::vector<std::uint64_t> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = replica_seed(base, i + offset);
  return s;
}

}  // namespace

TEST_CASE("expansion paths start at zero on a uniform grid and are deterministic") {
  const HurstPair h(0.8, 0.8);
  const WaveletSimulator sim(h, 8, TruncationSpec{});
  const PathGrid a = sim.simulate(7), b = sim.simulate(7), c = sim.simulate(8);
  REQUIRE(a.size() == 257);
  CHECK(a.values[0] == 0.0);
  CHECK(a.values == b.values);
  CHECK(a.values != c.values);
  for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(a.times[i] == std::ldexp(static_cast<double>(i), -8));
  const auto many1 = sim.simulate_many(seeds(3, 6), 1);
  const auto many3 = sim.simulate_many(seeds(3, 6), 3);
  for (std::size_t i = 0; i < many1.size(); ++i) CHECK(many1[i].values == many3[i].values);
}

TEST_CASE("expansion atom budget is enforced") {
  SimulationOptions opt;
  opt.max_atoms = 1000;
  CHECK_THROWS_AS(WaveletSimulator(HurstPair(0.8, 0.8), 8, TruncationSpec{}, opt), LabError);
}

TEST_CASE("raising j_max by one moves the path by less than the tail bound") {
  const HurstPair h(0.75, 0.85);
  SimulationOptions opt;
  opt.tail_compensation = false;
  TruncationSpec lo, hi;
  lo.j_max = 6;
  hi.j_max = 7;
  const WaveletSimulator a(h, 8, lo, opt), b(h, 8, hi, opt);
  const double bound = a.truncation_tail_bound(6.0);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const PathGrid pa = a.simulate(s), pb = b.simulate(s);
    double sup = 0.0;
    for (std::size_t i = 0; i < pa.size(); ++i) sup = std::max(sup, std::abs(pa.values[i] - pb.values[i]));
    CHECK(sup < bound);
  }
}

TEST_CASE("covariance estimates: zero at the origin, symmetric, self-similar") {
  const HurstPair h(0.8, 0.8);
  const WaveletSimulator sim(h, 10, TruncationSpec{});
  std::vector<std::pair<double, double>> pairs{{0.0, 0.5}, {0.25, 0.75}, {0.75, 0.25}};
  for (int k = 1; k <= 6; ++k) pairs.emplace_back(std::ldexp(1.0, -k), std::ldexp(1.0, -k));
  const auto est = covariance_mc(sim, pairs, 2000, 20261015, 2);
  CHECK(std::abs(est[0].mean) <= est[0].std_error);
  CHECK(est[1].mean == est[2].mean);
  CHECK(est[1].std_error == est[2].std_error);
  std::vector<double> x, y;
  for (std::size_t i = 3; i < est.size(); ++i) {
    x.push_back(std::log2(est[i].t));
    y.push_back(std::log2(est[i].mean));
  }
  CHECK(std::abs(linear_fit(x, y).slope - 2 * h.alpha()) < 0.1);
  CHECK_THROWS_AS(covariance_mc(sim, pairs, 50, 1, 1), LabError);
}

TEST_CASE("oracle paths start at zero and are deterministic") {
  const HurstPair h(0.8, 0.8);
  const KernelOracle sim(h, 8, TruncationSpec{});
  const PathGrid a = sim.simulate(4), b = sim.simulate(4);
  CHECK(a.values[0] == 0.0);
  CHECK(a.values == b.values);
  CHECK(a.method == Method::KernelOracle);
  CHECK(sim.deficit_fraction() < 0.5);
}

TEST_CASE("oracle rejects steps that lose too much variance") {
  TruncationSpec t;
  t.oracle_step = 0.25;
  CHECK_THROWS_AS(KernelOracle(HurstPair(0.6, 0.95), 4, t), LabError);
}

TEST_CASE("oracle increments are stationary") {
  const HurstPair h(0.8, 0.8);
  const KernelOracle sim(h, 8, TruncationSpec{});
  const auto p1 = sim.simulate_many(seeds(20261015, 2000), 2);
  const auto p2 = sim.simulate_many(seeds(20261015, 2000, 2000), 2);
  const std::size_t lag = 32, s = 26, t = 154;  // delta = 1/8 at s = 0.1, t = 0.6
  std::vector<double> a, b;
  for (const auto& p : p1) a.push_back(p.values[s + lag] - p.values[s]);
  for (const auto& p : p2) b.push_back(p.values[t + lag] - p.values[t]);
  // Two-sample 1% critical value for equal sizes n: 1.628 sqrt(2/n).
  CHECK(ks_distance(a, b) < 1.628 * std::sqrt(2.0 / 2000.0));
}

TEST_CASE("the two simulators agree on E[R(1/2) R(1)]") {
  const HurstPair h(0.8, 0.8);
  const WaveletSimulator ws(h, 8, TruncationSpec{});
  const KernelOracle ko(h, 8, TruncationSpec{});
  const auto a = covariance_mc(ws, {{0.5, 1.0}}, 5000, 20261015, 2)[0];
  const auto b = covariance_mc(ko, {{0.5, 1.0}}, 5000, 20261016, 2)[0];
  MESSAGE("expansion " << a.mean << " +- " << a.std_error << ", oracle " << b.mean << " +- " << b.std_error
                       << ", exact " << rosenblatt_covariance(h, 0.5, 1.0));
  CHECK(std::abs(a.mean - b.mean) / (0.5 * (a.mean + b.mean)) < 0.05);
}
