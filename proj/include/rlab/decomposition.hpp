// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <vector>

#include "rlab/daubechies.hpp"
#include "rlab/dyadic_brownian.hpp"
#include "rlab/hurst.hpp"
#include "rlab/tails.hpp"

namespace rlab {

// The square ((k - N M)/2^j, (k + N)/2^j]^2, stored by its side.
struct CoefficientBox {
  int j = 0;
  std::int64_t k = 0;
  int m = 0;
  double lo = 0.0;  // open end
  double hi = 0.0;  // closed end
};

CoefficientBox coefficient_box(int j, std::int64_t k, int m, int halfwidth);

// True iff the boxes are pairwise disjoint.
bool cm_condition(const std::vector<CoefficientBox>& boxes);

struct DecompositionOptions {
  int wavelet_order = 2;
  int step_log2 = 4;           // cells of width 2^-(j + step_log2)
  int sub_nodes = 2;           // quadrature nodes per cell in s
  int far_log2_cap = 240;
  // Variance share lost to cell averaging; 0.75 keeps the discrete norm
  // above half of the continuous one.
  double max_deficit_fraction = 0.75;
};

struct DecompositionReport {
  int j = 0;
  std::int64_t k = 0;
  int m = 0;
  std::uint64_t seed = 0;
  double c_near = 0.0;
  double c_far = 0.0;
  double c_direct = 0.0;       // the undivided coefficient on the same draw
  double norm_near_est = 0.0;  // exact L2 norms of the discretized parts
  double norm_far_est = 0.0;
  CoefficientBox box;
};

// Coefficient c_{j,k} of the process as the double Wiener-Ito integral of
//   C int Psi(x) int_{k/2^j}^{(x+k)/2^j} f(s,x1,x2) ds dx,
// discretized on Brownian cells shared by every (j,k) with the same seed.
// The near part keeps the cell pairs inside the box of each requested M.
class CoefficientSampler {
 public:
  struct Draw {
    double direct = 0.0;
    std::vector<double> near;  // per requested M
    std::vector<double> far;
  };

  CoefficientSampler(const HurstPair& h, int j, std::int64_t k, std::vector<int> ms,
                     const DecompositionOptions& opt = {});
  ~CoefficientSampler();

  Draw sample(std::uint64_t seed) const;

  const std::vector<int>& ms() const { return ms_; }
  int j() const { return j_; }
  std::int64_t k() const { return k_; }
  int halfwidth() const { return halfwidth_; }
  double scale() const;  // 2^{-j(H1+H2-1)}
  // Exact L2 norms of the discretized functionals.
  double norm_near(std::size_t m_index) const { return norm_near_[m_index]; }
  double norm_far(std::size_t m_index) const { return norm_far_[m_index]; }
  double norm_full() const { return norm_full_; }
  // 1 - (discrete variance / continuous variance) of the whole coefficient.
  double deficit_fraction() const { return deficit_fraction_; }

 private:
  HurstPair h_;
  int j_;
  std::int64_t k_;
  std::vector<int> ms_;
  DecompositionOptions opt_;
  int halfwidth_ = 0;
  int top_level_ = 0;
  std::vector<DyadicCell> cells_;
  std::vector<std::size_t> box_first_;  // first cell of each box
  std::size_t nodes_ = 0;
  std::vector<double> omega_;           // quadrature weight times w(s)
  std::vector<double> phi1_, phi2_;     // cell-major
  std::vector<double> norm_near_, norm_far_;
  double norm_full_ = 0.0;
  double deficit_fraction_ = 0.0;
};

DecompositionReport split_coefficient(const HurstPair& h, int j, std::int64_t k, int m, std::uint64_t seed,
                                      const DecompositionOptions& opt = {});

enum class PhiDomain { Empty, Square, Full, Complement };

// L2 norm of the symmetrized integrand Phi (at j = 0, k = 0) over the empty
// set, the square I_M = (-MN, N]^2, the quadrant (-inf, N]^2 or their
// difference. Throws ToleranceNotMet if two quadrature resolutions disagree
// by more than 1e-6 relative.
double phi_norm(const HurstPair& h, const DaubechiesWavelet& wavelet, PhiDomain domain, double m = 0.0);

// sqrt(2) C ||Phi||: the L2 norm of the scale-free coefficient part.
double coefficient_norm_reference(const HurstPair& h, const DaubechiesWavelet& wavelet, PhiDomain domain,
                                  double m = 0.0);

// Survival of |c_near| / ||c_near|| over n draws seeded by replica_seed(seed, i).
TailReport near_tail_lower(const CoefficientSampler& sampler, std::size_t m_index, const std::vector<double>& y_grid,
                           std::uint64_t n, std::uint64_t seed, unsigned workers = 1);

void write_decomposition_csv(std::ostream& os, const std::vector<DecompositionReport>& rows);

}  // namespace rlab
