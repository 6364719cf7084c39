// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rlab {

// Compensated summation (Neumaier variant).
class KahanSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (sum_ >= x || sum_ <= -x) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double rss = 0.0;
};

// Ordinary least squares of y on x with intercept.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Four-point Lagrange interpolation of uniform samples; zero outside the table.
double cubic_sample(std::span<const double> samples, double start, double step, double x);

double median(std::vector<double> values);
double mean(std::span<const double> values);
double variance(std::span<const double> values);

// Two-sample Kolmogorov-Smirnov distance.
double ks_distance(std::vector<double> a, std::vector<double> b);

}  // namespace rlab
