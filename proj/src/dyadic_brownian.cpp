// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#include "rlab/dyadic_brownian.hpp"

#include <algorithm>
#include <cmath>

#include "rlab/errors.hpp"
#include "rlab/rng.hpp"

namespace rlab {

namespace {

std::int64_t floor_div2(std::int64_t i) { return i >= 0 ? i / 2 : -((-i + 1) / 2); }

std::uint64_t node_key(int level, std::int64_t index) {
  return mix64(static_cast<std::uint64_t>(static_cast<std::int64_t>(level) + 1024) * 0x9e3779b97f4a7c15ULL) ^
         static_cast<std::uint64_t>(index);
}

}  // namespace

double DyadicCell::left() const { return std::ldexp(static_cast<double>(index), -level); }
double DyadicCell::right() const { return std::ldexp(static_cast<double>(index + 1), -level); }
double DyadicCell::width() const { return std::ldexp(1.0, -level); }

DyadicBrownian::DyadicBrownian(std::uint64_t seed, std::string_view purpose, int top_level)
    : stream_(derive_stream(seed, purpose_tag(purpose))), top_(top_level) {}

double DyadicBrownian::top_normal(std::int64_t index) const {
  return normal_at(stream_, node_key(top_ - 1, index));
}

double DyadicBrownian::split_normal(int level, std::int64_t index) const {
  return normal_at(stream_, node_key(level, index));
}

void DyadicBrownian::increments(int level, std::int64_t first, std::size_t count, double* out) const {
  if (level < top_) fail(ErrorKind::OutOfRange, "Brownian cell coarser than the top level");
  if (count == 0) return;
  if (level == top_) {
    const double sd = std::sqrt(std::ldexp(1.0, -top_));
    for (std::size_t i = 0; i < count; ++i) out[i] = sd * top_normal(first + static_cast<std::int64_t>(i));
    return;
  }
  const std::int64_t last = first + static_cast<std::int64_t>(count) - 1;
  const std::int64_t p0 = floor_div2(first), p1 = floor_div2(last);
  std::vector<double> parent(static_cast<std::size_t>(p1 - p0 + 1));
  increments(level - 1, p0, parent.size(), parent.data());
  // Parent of width L with increment I splits into I/2 +- (sqrt(L)/2) Z.
  const double half_sd = 0.5 * std::sqrt(std::ldexp(1.0, -(level - 1)));
  for (std::int64_t i = first; i <= last; ++i) {
    const std::int64_t p = floor_div2(i);
    const double inc = parent[static_cast<std::size_t>(p - p0)];
    const double z = split_normal(level - 1, p);
    const bool left_child = (i - 2 * p) == 0;
    out[i - first] = 0.5 * inc + (left_child ? half_sd * z : -half_sd * z);
  }
}

double DyadicBrownian::increment(const DyadicCell& c, std::unordered_map<std::uint64_t, double>& memo) const {
  if (c.level < top_) fail(ErrorKind::OutOfRange, "Brownian cell coarser than the top level");
  const std::uint64_t key = node_key(c.level, c.index);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  double v;
  if (c.level == top_) {
    v = std::sqrt(std::ldexp(1.0, -top_)) * top_normal(c.index);
  } else {
    const std::int64_t p = floor_div2(c.index);
    const double inc = increment(DyadicCell{c.level - 1, p}, memo);
    const double half_sd = 0.5 * std::sqrt(std::ldexp(1.0, -(c.level - 1)));
    const double z = split_normal(c.level - 1, p);
    v = 0.5 * inc + ((c.index - 2 * p) == 0 ? half_sd * z : -half_sd * z);
  }
  memo.emplace(key, v);
  return v;
}

std::vector<DyadicCell> graded_layout(int level, std::int64_t lo_index, std::int64_t hi_index,
                                      double far_extent, double origin) {
  std::vector<DyadicCell> far;
  // Absolute coordinates; every edge is a dyadic rational so the arithmetic is exact.
  const double unit = std::ldexp(1.0, -level);
  double a = std::ldexp(static_cast<double>(lo_index), -level);
  while (origin - a < far_extent) {
    double w = unit;
    int lev = level;
    const double cap = std::max(unit, (origin - a) / 8.0);
    while (2.0 * w <= cap && std::fmod(a, 2.0 * w) == 0.0) {
      w *= 2.0;
      --lev;
    }
    far.push_back(DyadicCell{lev, static_cast<std::int64_t>(std::llround(a / w)) - 1});
    a -= w;
  }
  std::vector<DyadicCell> cells(far.rbegin(), far.rend());
  for (std::int64_t i = lo_index; i < hi_index; ++i) cells.push_back(DyadicCell{level, i});
  return cells;
}

std::vector<double> layout_increments(const DyadicBrownian& b, const std::vector<DyadicCell>& cells) {
  std::vector<double> out(cells.size());
  std::unordered_map<std::uint64_t, double> memo;
  std::size_t i = 0;
  while (i < cells.size()) {
    std::size_t j = i + 1;
    while (j < cells.size() && cells[j].level == cells[i].level && cells[j].index == cells[j - 1].index + 1) ++j;
    if (j - i >= 16) {
      b.increments(cells[i].level, cells[i].index, j - i, out.data() + i);
    } else {
      for (std::size_t q = i; q < j; ++q) out[q] = b.increment(cells[q], memo);
    }
    i = j;
  }
  return out;
}

}  // namespace rlab
