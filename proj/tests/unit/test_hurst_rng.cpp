// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#include <doctest.h>

#include <cmath>
#include <set>
#include <string>

#include "rlab/errors.hpp"
#include "rlab/hurst.hpp"
#include "rlab/rng.hpp"

using namespace rlab;

TEST_CASE("hurst pair accepts the admissible region") {
  const HurstPair h(0.8, 0.75);
  CHECK(h.alpha() == doctest::Approx(0.55).epsilon(1e-15));
  CHECK(h.max_h() == 0.8);
  CHECK(h.min_h() == 0.75);
  CHECK(HurstPair::valid(0.76, 0.76));
}

TEST_CASE("hurst pair rejects points outside the region with the constraint in the message") {
  for (auto [a, b] : {std::pair{0.6, 0.7}, {0.75, 0.75}, {1.0, 0.9}, {0.5, 0.99}, {NAN, 0.8}}) {
    CHECK_FALSE(HurstPair::valid(a, b));
    try {
      HurstPair(a, b);
      FAIL("accepted an invalid pair");
    } catch (const LabError& e) {
      CHECK(e.kind() == ErrorKind::ConfigInvalid);
      CHECK(std::string(e.what()).find("h1 + h2 > 3/2") != std::string::npos);
    }
  }
}

TEST_CASE("stream derivation is deterministic and separates purposes and replicas") {
  CHECK(derive_stream(7, purpose_tag("expansion")) == derive_stream(7, purpose_tag("expansion")));
  CHECK(derive_stream(7, purpose_tag("expansion")) != derive_stream(7, purpose_tag("brownian")));
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 10000; ++i) seen.insert(replica_seed(42, i));
  CHECK(seen.size() == 10000);
  CHECK(pack_index(-1, 2) != pack_index(2, -1));
}

TEST_CASE("uniform draws stay strictly inside (0,1)") {
  CHECK(uniform_open(0) > 0.0);
  CHECK(uniform_open(~std::uint64_t{0}) < 1.0);
}

TEST_CASE("normal quantile inverts the normal distribution function") {
  // Above x = 5 the double 1 - Phi(x) carries too few digits for a 1e-9 round trip.
  for (double x = -7.5; x <= 5.0; x += 0.25) {
    CHECK(inverse_normal_cdf(normal_cdf(x)) == doctest::Approx(x).epsilon(1e-9));
  }
  CHECK(normal_cdf(0.0) == 0.5);
  // Standard 97.5% quantile.
  CHECK(inverse_normal_cdf(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
}
