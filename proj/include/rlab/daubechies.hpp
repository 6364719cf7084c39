// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#pragma once

#include <memory>
#include <vector>

#include "rlab/meyer.hpp"

namespace rlab {

// Minimal-phase Daubechies wavelet with `order` vanishing moments, centered so
// that its support lies in [-support_halfwidth, support_halfwidth].
struct DaubechiesWavelet {
  int order = 0;
  std::vector<double> filter;  // low-pass, sum = sqrt(2)
  int support_halfwidth = 0;
  int depth = 0;               // samples at spacing 2^-depth
  SampledWavelet samples;      // psi on [-N, N]
  double sup_norm = 0.0;

  // Exact dyadic sample lookup; x must be a multiple of 2^-depth.
  double at_dyadic(long index_at_depth) const;
};

// Spectral factorization plus cascade refinement. Throws UnsupportedOrder
// outside 2..10.
DaubechiesWavelet daubechies_build(int order, int depth = 14);

std::shared_ptr<const DaubechiesWavelet> daubechies_cached(int order, int depth = 14);

}  // namespace rlab
