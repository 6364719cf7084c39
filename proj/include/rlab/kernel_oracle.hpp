// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "rlab/dyadic_brownian.hpp"
#include "rlab/hurst.hpp"
#include "rlab/path.hpp"
#include "rlab/simulator.hpp"

namespace rlab {

struct OracleOptions {
  // Add an independent Brownian term carrying the variance lost to the
  // discretization (see tail_rate()).
  bool tail_compensation = true;
  // Largest tolerated ratio of lost variance to Var R(1).
  double max_deficit_fraction = 0.5;
  // Graded cells reach out to 2^far_log2 unless the kernel tail demands less.
  int far_log2_cap = 240;
};

struct OracleCalibration {
  double unit_rate = 0.0;      // lost variance per unit time at step 1
  double linearity_gap = 0.0;  // relative rate mismatch between two windows
};

// Variance lost by the discretized double integral at step 1 with
// `sub_nodes` quadrature nodes per cell, per unit time; graded cells reach
// 2^far_log2.
OracleCalibration oracle_tail_calibration(const HurstPair& h, int sub_nodes, int far_log2);

// log2 of the distance the graded cells must reach so that the kernel mass
// beyond, of order x^{2 max H - 2}, is about 1e-6; clamped to [8, cap].
int graded_extent_log2(const HurstPair& h, int cap);

// Average over [a,b] of (s-x)_+^beta.
double cell_average(double beta, double s, double a, double b);

// Direct discretization of the double Wiener-Ito integral
//   R(t) = C int' int [int_0^t (s-x1)_+^{H1-3/2} (s-x2)_+^{H2-3/2} ds] dB(x1) dB(x2)
// with Brownian increments on cells of width oracle_step over [-T, 1], graded
// dyadic cells further left, cell-averaged kernels, a midpoint rule in s and
// the diagonal cells removed.
class KernelOracle : public PathSimulator {
 public:
  KernelOracle(const HurstPair& h, int grid_level, const TruncationSpec& trunc, const OracleOptions& opt = {});
  ~KernelOracle() override;

  PathGrid simulate(std::uint64_t seed) const override;
  const HurstPair& hurst() const override { return h_; }
  int grid_level() const override { return grid_level_; }

  double tail_rate() const { return tail_rate_; }
  double deficit_fraction() const { return deficit_fraction_; }
  double far_extent() const { return far_extent_; }
  std::size_t cell_count() const { return uniform_cells_ + far_cells_.size(); }
  std::size_t sub_nodes() const { return sub_nodes_; }

 private:
  struct Convolver;

  HurstPair h_;
  int grid_level_;
  TruncationSpec trunc_;
  OracleOptions opt_;
  int step_level_ = 0;
  std::size_t sub_nodes_ = 0;   // s-nodes per cell
  std::size_t s_nodes_ = 0;     // s-nodes on [0,1]
  std::int64_t uniform_lo_ = 0; // first uniform cell index
  std::size_t uniform_cells_ = 0;
  double far_extent_ = 0.0;
  int top_level_ = 0;
  std::vector<DyadicCell> far_cells_;
  std::vector<double> far1_, far2_, far12_;  // cell-major weights
  double tail_rate_ = 0.0;
  double deficit_fraction_ = 0.0;
  std::unique_ptr<Convolver> conv_;
};

PathGrid simulate_oracle(const HurstPair& h, int grid_level, const TruncationSpec& trunc, std::uint64_t seed,
                         const OracleOptions& opt = {});

}  // namespace rlab
