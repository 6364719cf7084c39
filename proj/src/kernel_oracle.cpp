// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#include "rlab/kernel_oracle.hpp"

#include <fftw3.h>

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "rlab/chaos_field.hpp"
#include "rlab/errors.hpp"
#include "rlab/numerics.hpp"
#include "rlab/variance.hpp"

namespace rlab {

namespace {

std::mutex& planner_mutex() {
  static std::mutex mu;
  return mu;
}

}  // namespace

int graded_extent_log2(const HurstPair& h, int cap) {
  const double need = 20.0 / (2.0 - 2.0 * h.max_h());
  return std::clamp(static_cast<int>(std::ceil(need)), 8, cap);
}

double cell_average(double beta, double s, double a, double b) {
  if (s <= a) return 0.0;
  const double e = beta + 1.0;
  const double len = b - a;
  const double d = s - a;
  if (s >= b) return -std::pow(d, e) * std::expm1(e * std::log1p(-len / d)) / (e * len);
  return std::pow(d, e) / (e * len);
}

OracleCalibration oracle_tail_calibration(const HurstPair& h, int sub_nodes, int far_log2) {
  static std::mutex mu;
  static std::map<std::tuple<double, double, int, int>, OracleCalibration> cache;
  const auto key = std::make_tuple(h.h1(), h.h2(), sub_nodes, far_log2);
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  if (sub_nodes < 1) fail(ErrorKind::ConfigInvalid, "sub_nodes must be positive");
  constexpr int kSpan = 32;
  constexpr int kNear = 64;
  const auto cells = graded_layout(0, -kNear, kSpan, std::ldexp(1.0, far_log2));
  const auto nc = static_cast<Eigen::Index>(cells.size());
  const auto nm = static_cast<Eigen::Index>(kSpan * sub_nodes);
  const double omega = 1.0 / sub_nodes;
  const double g1 = std::tgamma(h.h1() - 0.5), g2 = std::tgamma(h.h2() - 0.5);
  Eigen::MatrixXd phi1(nm, nc), phi2(nm, nc);
  Eigen::VectorXd width(nc);
  for (Eigen::Index c = 0; c < nc; ++c) {
    const auto& cell = cells[static_cast<std::size_t>(c)];
    width(c) = cell.width();
    for (Eigen::Index m = 0; m < nm; ++m) {
      const double s = (static_cast<double>(m) + 0.5) * omega;
      phi1(m, c) = cell_average(h.h1() - 1.5, s, cell.left(), cell.right()) / g1;
      phi2(m, c) = cell_average(h.h2() - 1.5, s, cell.left(), cell.right()) / g2;
    }
  }
  const Eigen::MatrixXd g11 = phi1 * width.asDiagonal() * phi1.transpose();
  const Eigen::MatrixXd g22 = phi2 * width.asDiagonal() * phi2.transpose();
  const Eigen::MatrixXd g12 = phi1 * width.asDiagonal() * phi2.transpose();
  const Eigen::MatrixXd kernel = g11.cwiseProduct(g22) + g12.cwiseProduct(g12.transpose());
  const Eigen::MatrixXd prod = phi1.cwiseProduct(phi2);

  auto deficit = [&](int u) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(nm);
    w.head(u * sub_nodes).setConstant(omega);
    const Eigen::VectorXd diag = prod.transpose() * w;  // A_pp
    const double off_diag = w.dot(kernel * w) - 2.0 * diag.cwiseProduct(width).squaredNorm();
    return rosenblatt_variance(h, u) - off_diag;
  };
  const double d8 = deficit(8), d16 = deficit(16), d32 = deficit(32);
  OracleCalibration cal;
  cal.unit_rate = (d32 - d16) / 16.0;
  cal.linearity_gap = std::abs((d16 - d8) / 8.0 - cal.unit_rate) / std::abs(cal.unit_rate);
  if (!(cal.unit_rate > 0.0)) fail(ErrorKind::NumericalFailure, "oracle variance deficit rate is not positive");
  std::lock_guard lock(mu);
  cache.emplace(key, cal);
  return cal;
}

// Circular convolution of the upsampled increments with the uniform-cell
// kernel tables.
struct KernelOracle::Convolver {
  std::size_t size = 0;
  std::size_t offset = 0;
  std::vector<std::complex<double>> k1, k2, k12;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  ~Convolver() {
    std::lock_guard lock(planner_mutex());
    if (forward != nullptr) fftw_destroy_plan(forward);
    if (backward != nullptr) fftw_destroy_plan(backward);
  }
};

KernelOracle::KernelOracle(const HurstPair& h, int grid_level, const TruncationSpec& trunc,
                           const OracleOptions& opt)
    : h_(h), grid_level_(grid_level), trunc_(trunc), opt_(opt) {
  trunc_.validate();
  if (grid_level < 1 || grid_level > 16) fail(ErrorKind::ConfigInvalid, "oracle grid_level must lie in [1,16]");
  step_level_ = -std::ilogb(trunc_.oracle_step);
  if (step_level_ < 1) fail(ErrorKind::ConfigInvalid, "oracle_step must be at most 1/2");
  // Quadrature step in s: half a cell, or the output step if finer.
  const int s_level = std::max(step_level_ + 1, grid_level);
  sub_nodes_ = std::size_t{1} << (s_level - step_level_);
  s_nodes_ = std::size_t{1} << s_level;
  const double eta = std::ldexp(1.0, -s_level);
  const double delta = trunc_.oracle_step;
  const auto left_cells = static_cast<std::int64_t>(std::llround(trunc_.oracle_left_cut / delta));
  uniform_lo_ = -left_cells;
  uniform_cells_ = static_cast<std::size_t>(left_cells) + (std::size_t{1} << step_level_);

  const int far_log2 = graded_extent_log2(h, opt.far_log2_cap);
  far_extent_ = std::ldexp(1.0, far_log2);
  top_level_ = -far_log2 - 2;
  const auto layout = graded_layout(step_level_, uniform_lo_, uniform_lo_, far_extent_);
  far_cells_ = layout;

  const double b1 = h.h1() - 1.5, b2 = h.h2() - 1.5;
  const double g1 = std::tgamma(h.h1() - 0.5), g2 = std::tgamma(h.h2() - 0.5);
  far1_.resize(far_cells_.size() * s_nodes_);
  far2_.resize(far1_.size());
  far12_.resize(far1_.size());
  for (std::size_t c = 0; c < far_cells_.size(); ++c) {
    const double a = far_cells_[c].left(), b = far_cells_[c].right();
    for (std::size_t m = 0; m < s_nodes_; ++m) {
      const double s = (static_cast<double>(m) + 0.5) * eta;
      const double p1 = cell_average(b1, s, a, b) / g1;
      const double p2 = cell_average(b2, s, a, b) / g2;
      far1_[c * s_nodes_ + m] = p1;
      far2_[c * s_nodes_ + m] = p2;
      far12_[c * s_nodes_ + m] = p1 * p2;
    }
  }

  // Uniform cells: weight of cell p at node m depends on q = m + offset - r p.
  conv_ = std::make_unique<Convolver>();
  conv_->offset = static_cast<std::size_t>(left_cells) * sub_nodes_;
  conv_->size = std::bit_ceil(2 * s_nodes_ + conv_->offset);
  const std::size_t n = conv_->size, half = n / 2 + 1;
  const std::size_t q_max = s_nodes_ - 1 + conv_->offset;
  std::vector<double> t1(n, 0.0), t2(n, 0.0), t12(n, 0.0);
  for (std::size_t q = 0; q <= q_max; ++q) {
    const double s = (static_cast<double>(q) + 0.5) * eta;
    t1[q] = cell_average(b1, s, 0.0, delta) / g1;
    t2[q] = cell_average(b2, s, 0.0, delta) / g2;
    t12[q] = t1[q] * t2[q];
  }
  {
    std::lock_guard lock(planner_mutex());
    auto* re = static_cast<double*>(fftw_malloc(sizeof(double) * n));
    auto* cx = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * half));
    conv_->forward = fftw_plan_dft_r2c_1d(static_cast<int>(n), re, cx, FFTW_ESTIMATE);
    conv_->backward = fftw_plan_dft_c2r_1d(static_cast<int>(n), cx, re, FFTW_ESTIMATE);
    fftw_free(re);
    fftw_free(cx);
  }
  auto spectrum = [&](const std::vector<double>& t) {
    std::vector<std::complex<double>> out(half);
    std::vector<double> in(t);
    fftw_execute_dft_r2c(conv_->forward, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& z : out) z *= scale;
    return out;
  };
  conv_->k1 = spectrum(t1);
  conv_->k2 = spectrum(t2);
  conv_->k12 = spectrum(t12);

  const auto cal = oracle_tail_calibration(h_, static_cast<int>(sub_nodes_), far_log2 + step_level_);
  const double rate = cal.unit_rate * std::pow(delta, 2.0 * h_.alpha() - 1.0);
  deficit_fraction_ = rate / rosenblatt_variance(h_, 1.0);
  if (deficit_fraction_ > opt.max_deficit_fraction) {
    std::ostringstream os;
    os << "oracle step " << delta << " loses " << deficit_fraction_ << " of Var R(1), above "
       << opt.max_deficit_fraction;
    fail(ErrorKind::StepTooCoarse, os.str());
  }
  if (opt.tail_compensation) tail_rate_ = rate;
}

KernelOracle::~KernelOracle() = default;

PathGrid KernelOracle::simulate(std::uint64_t seed) const {
  const DyadicBrownian bm(seed, "brownian", top_level_);
  std::vector<double> uni(uniform_cells_);
  bm.increments(step_level_, uniform_lo_, uniform_cells_, uni.data());
  const auto far = layout_increments(bm, far_cells_);

  // FFTW's new-array execute needs buffers with the planner's alignment.
  const std::size_t n = conv_->size, half = n / 2 + 1;
  auto* re = static_cast<double*>(fftw_malloc(sizeof(double) * n));
  auto* sp = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * half));
  auto* sp2 = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * half));
  auto* prod = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * half));
  std::vector<double> y1(s_nodes_), y2(s_nodes_), diag(s_nodes_);
  auto backward = [&](const fftw_complex* spec, const std::vector<std::complex<double>>& k, std::vector<double>& out) {
    for (std::size_t i = 0; i < half; ++i) {
      const std::complex<double> v = std::complex<double>(spec[i][0], spec[i][1]) * k[i];
      prod[i][0] = v.real();
      prod[i][1] = v.imag();
    }
    fftw_execute_dft_c2r(conv_->backward, prod, re);
    for (std::size_t m = 0; m < s_nodes_; ++m) out[m] = re[conv_->offset + m];
  };
  std::fill(re, re + n, 0.0);
  for (std::size_t p = 0; p < uniform_cells_; ++p) re[p * sub_nodes_] = uni[p];
  fftw_execute_dft_r2c(conv_->forward, re, sp);
  std::fill(re, re + n, 0.0);
  for (std::size_t p = 0; p < uniform_cells_; ++p) re[p * sub_nodes_] = uni[p] * uni[p];
  fftw_execute_dft_r2c(conv_->forward, re, sp2);
  backward(sp, conv_->k1, y1);
  backward(sp, conv_->k2, y2);
  backward(sp2, conv_->k12, diag);
  fftw_free(re);
  fftw_free(sp);
  fftw_free(sp2);
  fftw_free(prod);

  for (std::size_t c = 0; c < far_cells_.size(); ++c) {
    const double z = far[c], z2 = z * z;
    const double* w1 = far1_.data() + c * s_nodes_;
    const double* w2 = far2_.data() + c * s_nodes_;
    const double* w12 = far12_.data() + c * s_nodes_;
    for (std::size_t m = 0; m < s_nodes_; ++m) {
      y1[m] += w1[m] * z;
      y2[m] += w2[m] * z;
      diag[m] += w12[m] * z2;
    }
  }

  PathGrid p;
  p.times = uniform_times(grid_level_);
  p.values.assign(p.times.size(), 0.0);
  p.seed = seed;
  p.method = Method::KernelOracle;
  p.truncation = trunc_;
  p.h1 = h_.h1();
  p.h2 = h_.h2();
  p.grid_level = grid_level_;
  const double eta = 1.0 / static_cast<double>(s_nodes_);
  const std::size_t stride = s_nodes_ >> grid_level_;
  KahanSum acc;
  for (std::size_t m = 0; m < s_nodes_; ++m) {
    acc.add(eta * (y1[m] * y2[m] - diag[m]));
    if ((m + 1) % stride == 0) p.values[(m + 1) / stride] = acc.value();
  }
  if (opt_.tail_compensation) {
    const ChaosField noise(seed, "oracle-compensation");
    const double sd = std::sqrt(tail_rate_ * p.step());
    KahanSum w;
    for (std::size_t o = 1; o < p.values.size(); ++o) {
      w.add(sd * noise.gaussian_at(0, static_cast<std::int32_t>(o - 1)));
      p.values[o] += w.value();
    }
  }
  return p;
}

PathGrid simulate_oracle(const HurstPair& h, int grid_level, const TruncationSpec& trunc, std::uint64_t seed,
                         const OracleOptions& opt) {
  return KernelOracle(h, grid_level, trunc, opt).simulate(seed);
}

}  // namespace rlab
