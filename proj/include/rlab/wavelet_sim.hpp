// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "rlab/chaos_field.hpp"
#include "rlab/hurst.hpp"
#include "rlab/path.hpp"
#include "rlab/simulator.hpp"

namespace rlab {

struct SimulationOptions {
  // Add an independent Brownian term carrying the variance of the scales
  // above j_max (see tail_rate()).
  bool tail_compensation = true;
  // Fine integration grid has step 2^-(j_max + oversample_log2).
  int oversample_log2 = 3;
  // Cap on the number of (j,k) atoms.
  std::size_t max_atoms = std::size_t{1} << 24;
};

// Calibration of the variance carried by the scales above the truncation.
struct TailCalibration {
  double unit_rate = 0.0;       // variance per unit time at j_max = 0
  double linearity_gap = 0.0;   // relative mismatch of the rate between two windows
};

// Variance rate of the omitted fine scales for j_max = 0 and scales down to
// j_low; computed from the exact variance of the truncated series.
TailCalibration expansion_tail_calibration(const HurstPair& h, int k_band, int j_low);

// Truncated expansion R_J(t) = int_0^t (F1 F2 - E[F1 F2]) dx where
// F_i = sum_{j,k} 2^{j(1-H_i)} g_{jk} psi_{H_i}(2^j x - k) share the Gaussians
// g_{jk}. This equals the double sum over cells of the expansion with the
// chaos variables epsilon, evaluated in factorized form. Scales 4..j_max are
// synthesized by FFT on a periodic window [-1.5, 2.5); coarser scales are
// evaluated directly on auxiliary grids and interpolated.
class WaveletSimulator : public PathSimulator {
 public:
  WaveletSimulator(const HurstPair& h, int grid_level, const TruncationSpec& trunc,
                   const SimulationOptions& opt = {});
  ~WaveletSimulator() override;

  PathGrid simulate(std::uint64_t seed) const override;
  const HurstPair& hurst() const override { return h_; }
  int grid_level() const override { return grid_level_; }

  // Fractional noises F1, F2 on the fine grid over [0,1] (tests, diagnostics).
  void fine_fields(std::uint64_t seed, std::vector<double>& f1, std::vector<double>& f2) const;
  const std::vector<double>& mean_product() const { return mean_; }

  int fine_level() const { return fine_level_; }
  std::size_t atom_count() const { return atoms_; }
  double tail_rate() const { return tail_rate_; }
  const TruncationSpec& truncation() const { return trunc_; }
  // n_sigma times the standard deviation at t = 1 of the contribution of
  // scale j_max + 1; a bound on the sup-norm change when j_max grows by one.
  double truncation_tail_bound(double n_sigma) const;

 private:
  struct Group;
  struct FftScale;
  struct Plans;

  void add_direct(const Group& g, const ChaosField& field, std::vector<double>& f1,
                  std::vector<double>& f2) const;

  HurstPair h_;
  int grid_level_;
  TruncationSpec trunc_;
  SimulationOptions opt_;
  int fine_level_ = 0;
  std::size_t atoms_ = 0;
  double tail_rate_ = 0.0;
  double unit_rate_ = 0.0;
  std::vector<double> mean_;
  std::vector<Group> groups_;
  std::vector<FftScale> scales_;
  std::unique_ptr<Plans> plans_;
};

PathGrid simulate_wavelet(const HurstPair& h, int grid_level, const TruncationSpec& trunc,
                          std::uint64_t seed, const SimulationOptions& opt = {});

}  // namespace rlab
