// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#pragma once

#include <cstdint>
#include <string_view>

namespace rlab {

// 64-bit finalizer (bijective).
constexpr std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

// Compile-time purpose tag from a name.
constexpr std::uint64_t purpose_tag(std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Independent sub-stream key for (seed, purpose).
constexpr std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t tag) {
  return mix64(mix64(seed ^ 0x9e3779b97f4a7c15ULL) ^ mix64(tag + 0x632be59bd9b4e019ULL));
}

// Seed of replica `index` within a Monte Carlo batch.
constexpr std::uint64_t replica_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(derive_stream(seed, purpose_tag("replica")) + index * 0x9e3779b97f4a7c15ULL);
}

// Packs a pair of 32-bit signed indices into a 64-bit key, injectively.
constexpr std::uint64_t pack_index(std::int32_t a, std::int32_t b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint64_t>(static_cast<std::uint32_t>(b));
}

// Random bits at a counter; bijective in `key` for a fixed stream.
constexpr std::uint64_t counter_bits(std::uint64_t stream, std::uint64_t key) {
  return mix64(mix64(key ^ stream) ^ (stream >> 17 | stream << 47));
}

// Uniform in the open interval (0,1) from 52 high bits. With 53 bits the
// top value (2^53 - 1/2) 2^-53 would round to 1.
constexpr double uniform_open(std::uint64_t bits) {
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

// Inverse standard normal CDF (Wichura's rational approximation, relative error ~1e-16).
double inverse_normal_cdf(double p);

double normal_cdf(double x);

inline double normal_from_bits(std::uint64_t bits) { return inverse_normal_cdf(uniform_open(bits)); }

inline double normal_at(std::uint64_t stream, std::uint64_t key) {
  return normal_from_bits(counter_bits(stream, key));
}

}  // namespace rlab
