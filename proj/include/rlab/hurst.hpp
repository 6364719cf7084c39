// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#pragma once

namespace rlab {

// Parameter pair of the generalized Rosenblatt process.
// Both exponents lie in (1/2, 1) and their sum exceeds 3/2.
class HurstPair {
 public:
  HurstPair(double h1, double h2);

  double h1() const { return h1_; }
  double h2() const { return h2_; }
  double alpha() const { return h1_ + h2_ - 1.0; }
  double max_h() const { return h1_ > h2_ ? h1_ : h2_; }
  double min_h() const { return h1_ < h2_ ? h1_ : h2_; }

  static bool valid(double h1, double h2);

 private:
  double h1_;
  double h2_;
};

// 1 / (Gamma(h1 - 1/2) Gamma(h2 - 1/2)), the kernel normalization.
double kernel_constant(const HurstPair& h);

}  // namespace rlab
