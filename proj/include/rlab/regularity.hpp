// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#pragma once

#include <array>
#include <iosfwd>
#include <limits>
#include <utility>
#include <vector>

#include "rlab/hurst.hpp"
#include "rlab/leaders.hpp"
#include "rlab/path.hpp"

namespace rlab {

// Correction class of the leader decay d_j ~ 2^{-j alpha} g(j):
// Slow (g constant), Ordinary (g ~ log j), Rapid (g ~ j).
enum class RegularityClass { Slow, Ordinary, Rapid, Indeterminate };

const char* class_name(RegularityClass c);

struct PointEstimate {
  double t = 0.0;
  double alpha_hat = 0.0;
  RegularityClass cls = RegularityClass::Indeterminate;
  // Residual sums of squares of the constant, log and linear models.
  std::array<double, 3> rss{};
  double fit_r2 = 0.0;
};

struct ClassifyOptions {
  int j_fit_lo = 4;
  int j_fit_hi = -1;  // default: grid_level - 4
  double margin = 0.2;  // best model must beat the runner-up RSS by this fraction
  int rapid_lo = 5;     // first scale of the rapid-growth regression (last: pyramid depth)
};

// alpha_hat is minus the slope of log2 d_j against j. Without a reference
// exponent each correction model {1, log(j+1), j} refits slope and intercept
// to log2 d_j. With one, the models are fitted (intercept only) to the
// running maximum of log2 d_j + j alpha_ref. Throws DegenerateLeaders if some
// d_j <= 0 and ConfigInvalid with fewer than 6 scales.
PointEstimate estimate_pointwise(const std::vector<std::pair<int, double>>& dj, double margin = 0.2,
                                 double alpha_ref = std::numeric_limits<double>::quiet_NaN());

struct RegularityReport {
  std::vector<PointEstimate> points;
  double fraction_slow = 0.0;
  double fraction_ordinary = 0.0;
  double fraction_rapid = 0.0;
  double fraction_indeterminate = 0.0;
  double median_alpha = 0.0;
  // Rapid diagnostics: log2(max_t d_j 2^{j alpha}) against log2 j.
  std::vector<int> rapid_scales;
  std::vector<double> rapid_log_growth;
  double rapid_slope = 0.0;
  double argmax_rapid_t = 0.0;  // location of the largest normalized leader at the deepest fitted scale

  void write_json(std::ostream& os) const;
  void write_points_csv(std::ostream& os) const;
};

RegularityReport classify_grid(const LeaderPyramid& pyramid, const std::vector<double>& t_grid,
                               const HurstPair& h, int grid_level, const ClassifyOptions& opt = {});

// Pools per-path reports: points are concatenated, fractions and the median
// recomputed, and the rapid growth curve averaged over paths before refitting.
RegularityReport merge_reports(const std::vector<RegularityReport>& parts);

// Least-squares slope of y against log2 j over the given scales.
double log_growth_slope(const std::vector<int>& scales, const std::vector<double>& log2_values);

struct ModulusReport {
  int coarse_level = 0;
  int fine_level = 0;
  // Mean over paths of sup |R(t)-R(s)| / rate(|t-s|) at each resolution.
  double log_corrected_coarse = 0.0, log_corrected_fine = 0.0;
  double pure_power_coarse = 0.0, pure_power_fine = 0.0;
  double over_exponent_coarse = 0.0, over_exponent_fine = 0.0;
  // Fitted exponent of min_k |increment at scale n| against n, and the
  // log-correction exponent (1-H1-H2)/(1-max H) it is compared against.
  double min_oscillation_exponent = 0.0;
  double lower_rate_log_exponent = 0.0;
  std::size_t paths = 0;

  double log_corrected_growth() const { return log_corrected_fine / log_corrected_coarse; }
  double pure_power_growth() const { return pure_power_fine / pure_power_coarse; }
  double over_exponent_growth() const { return over_exponent_fine / over_exponent_coarse; }
};

// Needs >= 50 paths at grid level >= 12; the coarse statistic uses the
// paths subsampled to fine_level - 2.
ModulusReport uniform_modulus_check(const std::vector<PathGrid>& paths, const HurstPair& h);

}  // namespace rlab
