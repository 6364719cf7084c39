// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <vector>

#include "rlab/daubechies.hpp"
#include "rlab/path.hpp"

namespace rlab {

// Coefficients c_{j,k} for j in [j_lo, j_hi] and every k whose wavelet
// support meets (0,1), plus the running sup D_j(k) = max |c_{j',k'}| over the
// stored dyadic subintervals of lambda_{j,k}.
class LeaderPyramid {
 public:
  LeaderPyramid(int j_lo, int j_hi, int halfwidth);

  int j_lo() const { return j_lo_; }
  int j_hi() const { return j_hi_; }
  // Deepest scale entering the sups.
  int depth() const { return j_hi_; }
  int halfwidth() const { return halfwidth_; }
  std::int64_t k_first(int /*j*/) const { return 1 - halfwidth_; }
  std::int64_t k_last(int j) const { return (std::int64_t{1} << j) + halfwidth_ - 1; }

  double coeff(int j, std::int64_t k) const;  // 0 outside the stored range
  void set_coeff(int j, std::int64_t k, double c);
  double sup_below(int j, std::int64_t k) const;

  // Recomputes the sups after coefficients change.
  void rebuild();

  // d_j(t): max of sup_below over the three intervals adjacent to lambda_j(t).
  // Throws OutOfRange for j outside the pyramid or t outside [0,1).
  double leader(double t, int j) const;
  // max over t in [0,1) of d_j(t).
  double max_leader(int j) const;

  void write_coeffs_csv(std::ostream& os) const;
  void write_leaders_csv(std::ostream& os, const std::vector<double>& t_grid) const;

 private:
  std::size_t slot(int j, std::int64_t k) const;

  int j_lo_;
  int j_hi_;
  int halfwidth_;
  std::vector<std::vector<double>> coeffs_;
  std::vector<std::vector<double>> sups_;
};

// Path value at grid index m with even reflection at both ends of [0,1].
double reflected_sample(const std::vector<double>& values, std::int64_t m);

// c_{j,k} = int (f((x+k)/2^j) - f(k/2^j)) Psi(x) dx with f the piecewise
// linear interpolant of the path (reflected outside [0,1]). The hat-function
// weights are integrated exactly against the sampled wavelet. Throws
// ResolutionMismatch unless grid_level >= j_hi + 3 and the wavelet samples
// resolve the path grid at scale j_lo.
LeaderPyramid wavelet_coeffs(const PathGrid& path, const DaubechiesWavelet& wavelet, int j_lo, int j_hi);

// Default deepest scale for a path: grid_level - 3.
inline int default_leader_depth(int grid_level) { return grid_level - 3; }

// 2N ||Psi||_inf times the oscillation of the reflected grid path over the
// open window (t - 2^-j (N+2), t + 2^-j (N+2)).
double leader_oscillation_bound(const PathGrid& path, const DaubechiesWavelet& wavelet, double t, int j);

}  // namespace rlab
