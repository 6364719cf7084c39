// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#pragma once

#include <cstdint>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rlab {

// A dyadic interval [index 2^-level, (index+1) 2^-level).
struct DyadicCell {
  int level = 0;
  std::int64_t index = 0;
  double left() const;
  double right() const;
  double width() const;
};

// Brownian motion on the real line built top-down by midpoint bridges
// (Levy construction). Increments over any dyadic interval at level >=
// top_level are consistent across levels and a pure function of the seed.
class DyadicBrownian {
 public:
  explicit DyadicBrownian(std::uint64_t seed, std::string_view purpose = "brownian",
                          int top_level = -48);

  int top_level() const { return top_; }

  // Increments of `count` consecutive cells at `level`, starting at `first`.
  void increments(int level, std::int64_t first, std::size_t count, double* out) const;

  // Increment over one dyadic cell; `memo` caches ancestors between calls.
  double increment(const DyadicCell& c, std::unordered_map<std::uint64_t, double>& memo) const;

 private:
  double split_normal(int level, std::int64_t index) const;
  double top_normal(std::int64_t index) const;

  std::uint64_t stream_;
  int top_;
};

// Cell layout: uniform cells of width 2^-level on [lo, hi), preceded by
// graded dyadic cells out to origin - far_extent whose width stays below 1/8
// of the distance to `origin` and at least the uniform width.
std::vector<DyadicCell> graded_layout(int level, std::int64_t lo_index, std::int64_t hi_index,
                                      double far_extent, double origin = 0.0);

// Increments for an arbitrary layout; uniform runs use the batched path.
std::vector<double> layout_increments(const DyadicBrownian& b, const std::vector<DyadicCell>& cells);

}  // namespace rlab
