// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rlab {

enum class Method : std::uint32_t { WaveletExpansion = 0, KernelOracle = 1 };

const char* method_name(Method m);

// Truncation of the expansion and discretization of the oracle.
struct TruncationSpec {
  int j_min = -40;
  int j_max = 10;
  int k_band = 16;
  double oracle_left_cut = 8.0;
  double oracle_step = 1.0 / 512.0;

  // Throws ConfigInvalid.
  void validate() const;
};

struct PathGrid {
  std::vector<double> times;
  std::vector<double> values;
  std::uint64_t seed = 0;
  Method method = Method::WaveletExpansion;
  TruncationSpec truncation;
  double h1 = 0.0;
  double h2 = 0.0;
  int grid_level = 0;

  std::size_t size() const { return values.size(); }
  double step() const { return 1.0 / static_cast<double>(values.size() - 1); }
  // Linear interpolation on [0,1].
  double at(double t) const;
};

std::vector<double> uniform_times(int grid_level);

// CSV with columns t,value at full precision.
void write_path_csv(const PathGrid& p, std::ostream& os);
// Header: u64 seed, u32 method, f64 h1, f64 h2, i32 grid_level; then 2^G+1 f64
// values; all little-endian.
void write_path_binary(const PathGrid& p, std::ostream& os);
PathGrid read_path_binary(std::istream& is);
PathGrid read_path_csv(std::istream& is);

// Shortest round-trip decimal rendering.
std::string format_double(double x);

}  // namespace rlab
