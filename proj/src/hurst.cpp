// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#include "rlab/hurst.hpp"

#include <cmath>
#include <sstream>

#include "rlab/errors.hpp"

namespace rlab {

bool HurstPair::valid(double h1, double h2) {
  return std::isfinite(h1) && std::isfinite(h2) && h1 > 0.5 && h1 < 1.0 && h2 > 0.5 && h2 < 1.0 &&
         h1 + h2 > 1.5;
}

HurstPair::HurstPair(double h1, double h2) : h1_(h1), h2_(h2) {
  if (!valid(h1, h2)) {
    std::ostringstream os;
    os << "invalid Hurst pair (h1=" << h1 << ", h2=" << h2
       << "): need 1/2 < h1 < 1, 1/2 < h2 < 1 and h1 + h2 > 3/2";
    fail(ErrorKind::ConfigInvalid, os.str());
  }
}

double kernel_constant(const HurstPair& h) {
  return 1.0 / (std::tgamma(h.h1() - 0.5) * std::tgamma(h.h2() - 0.5));
}

}  // namespace rlab
