// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#pragma once

#include <cstdint>
#include <string_view>

#include "rlab/rng.hpp"

namespace rlab {

// Deterministic family of iid standard Gaussians g(j,k) and the derived
// second-chaos variables. Pure and cache-free: every query recomputes from
// (seed, purpose, j, k), so concurrent use needs no locking.
class ChaosField {
 public:
  explicit ChaosField(std::uint64_t seed, std::string_view purpose = "expansion")
      : seed_(seed), stream_(derive_stream(seed, purpose_tag(purpose))) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  double gaussian_at(std::int32_t j, std::int32_t k) const {
    return normal_at(stream_, pack_index(j, k));
  }

  // g(j1,k1) g(j2,k2) off the diagonal index pair, g(j1,k1)^2 - 1 on it.
  double epsilon(std::int32_t j1, std::int32_t j2, std::int32_t k1, std::int32_t k2) const {
    const double a = gaussian_at(j1, k1);
    if (j1 == j2 && k1 == k2) return a * a - 1.0;
    return a * gaussian_at(j2, k2);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
};

}  // namespace rlab
