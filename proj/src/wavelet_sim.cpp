// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#include "rlab/wavelet_sim.hpp"

#include <fftw3.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <tuple>

#include "rlab/errors.hpp"
#include "rlab/meyer.hpp"
#include "rlab/numerics.hpp"
#include "rlab/variance.hpp"

namespace rlab {

namespace {

constexpr double kPi = std::numbers::pi;
// Window [-1.5, 2.5) of period 4 for the FFT scales.
constexpr double kWindowStart = -1.5;
constexpr int kWindowLog2 = 2;
// Finest scale evaluated directly rather than by FFT.
constexpr int kDirectTop = 4;

std::mutex& planner_mutex() {
  static std::mutex mu;
  return mu;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
template <class T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <class T>
FftwBuffer<T> fftw_buffer(std::size_t n) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(n, 1)));
  if (p == nullptr) fail(ErrorKind::NumericalFailure, "fftw_malloc failed");
  return FftwBuffer<T>(p);
}

double scale_factor(double h, int j) { return std::exp2(static_cast<double>(j) * (1.0 - h)); }

std::int32_t band_lo(int k_band) { return -k_band - 1; }
std::int32_t band_hi(int j, double extent, int k_band) {
  return static_cast<std::int32_t>(std::ceil(std::ldexp(extent, j))) + k_band;
}

// sum_k psi1(y-k) psi2(y-k) on one period, padded for four-point lookup.
struct PeriodicProduct {
  static constexpr int kLog2 = 10;
  std::vector<double> table;
  double step = std::ldexp(1.0, -kLog2);

  PeriodicProduct(const SampledWavelet& w1, const SampledWavelet& w2) {
    const int n = 1 << kLog2;
    table.resize(n + 5);
    for (int i = 0; i < n + 5; ++i) {
      const double y = step * (i - 2);
      KahanSum s;
      for (int k = -70; k <= 70; ++k) s.add(w1.value(y - k) * w2.value(y - k));
      table[i] = s.value();
    }
  }
  double operator()(double y) const {
    const double f = y - std::floor(y);
    return cubic_sample(table, -2.0 * step, step, f);
  }
};

}  // namespace

struct WaveletSimulator::Group {
  int j_lo = 0;
  int j_hi = 0;
  double start = 0.0;
  double step = 0.0;
  std::size_t nodes = 0;
  std::vector<std::pair<std::int32_t, std::int32_t>> atoms;
  std::vector<double> basis1;  // atom-major
  std::vector<double> basis2;
};

struct WaveletSimulator::FftScale {
  int j = 0;
  std::int64_t length = 0;
  std::int32_t k_lo = 0;
  std::int32_t k_hi = 0;
  std::int64_t n_lo = 0;
  std::vector<std::complex<double>> filter1;
  std::vector<std::complex<double>> filter2;
};

struct WaveletSimulator::Plans {
  std::int64_t size = 0;
  fftw_plan c2r = nullptr;
  std::vector<fftw_plan> r2c;
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (c2r != nullptr) fftw_destroy_plan(c2r);
    for (auto p : r2c) fftw_destroy_plan(p);
  }
};

TailCalibration expansion_tail_calibration(const HurstPair& h, int k_band, int j_low) {
  static std::mutex mu;
  static std::map<std::tuple<double, double, int, int>, TailCalibration> cache;
  const auto key = std::make_tuple(h.h1(), h.h2(), k_band, j_low);
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const auto w1 = frac_antiderivative_cached(h.h1());
  const auto w2 = frac_antiderivative_cached(h.h2());

  // Exact variance of the series with scales j_low..0 on [0,u], by Simpson
  // quadrature of sum over pairings of the field covariances.
  constexpr double kExtent = 32.0;
  constexpr int kPerUnit = 32;
  const int nx = static_cast<int>(kExtent) * kPerUnit + 1;
  const double hx = 1.0 / kPerUnit;
  std::vector<std::pair<int, int>> atoms;
  for (int j = j_low; j <= 0; ++j) {
    for (int k = band_lo(k_band); k <= band_hi(j, kExtent, k_band); ++k) atoms.emplace_back(j, k);
  }
  const auto na = static_cast<Eigen::Index>(atoms.size());
  Eigen::MatrixXd phi1(nx, na), phi2(nx, na);
  for (Eigen::Index a = 0; a < na; ++a) {
    const auto [j, k] = atoms[static_cast<std::size_t>(a)];
    const double c1 = scale_factor(h.h1(), j), c2 = scale_factor(h.h2(), j);
    for (int i = 0; i < nx; ++i) {
      const double y = std::ldexp(hx * i, j) - k;
      phi1(i, a) = c1 * w1->value(y);
      phi2(i, a) = c2 * w2->value(y);
    }
  }
  const Eigen::MatrixXd c11 = phi1 * phi1.transpose();
  const Eigen::MatrixXd c22 = phi2 * phi2.transpose();
  const Eigen::MatrixXd c12 = phi1 * phi2.transpose();
  const Eigen::MatrixXd kernel = c11.cwiseProduct(c22) + c12.cwiseProduct(c12.transpose());

  auto deficit = [&](double u) {
    const int m = static_cast<int>(std::lround(u * kPerUnit));
    Eigen::VectorXd w = Eigen::VectorXd::Zero(nx);
    for (int i = 0; i <= m; ++i) {
      const double c = (i == 0 || i == m) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      w(i) = c * hx / 3.0;
    }
    const double kept = w.dot(kernel * w);
    return rosenblatt_variance(h, u) - kept;
  };
  const double d8 = deficit(8.0), d16 = deficit(16.0), d32 = deficit(32.0);
  TailCalibration cal;
  cal.unit_rate = (d32 - d16) / 16.0;
  const double rate_short = (d16 - d8) / 8.0;
  cal.linearity_gap = std::abs(rate_short - cal.unit_rate) / std::abs(cal.unit_rate);
  if (!(cal.unit_rate > 0.0)) {
    fail(ErrorKind::NumericalFailure, "tail variance rate is not positive");
  }
  std::lock_guard lock(mu);
  cache.emplace(key, cal);
  return cal;
}

WaveletSimulator::WaveletSimulator(const HurstPair& h, int grid_level, const TruncationSpec& trunc,
                                   const SimulationOptions& opt)
    : h_(h), grid_level_(grid_level), trunc_(trunc), opt_(opt) {
  trunc_.validate();
  if (grid_level < 1 || grid_level > 24) fail(ErrorKind::ConfigInvalid, "grid_level must lie in [1,24]");
  if (opt.oversample_log2 < 2 || opt.oversample_log2 > 8) {
    fail(ErrorKind::ConfigInvalid, "oversample_log2 must lie in [2,8]");
  }
  fine_level_ = std::max(trunc_.j_max + opt.oversample_log2, grid_level);
  if (fine_level_ > 26) fail(ErrorKind::ConfigInvalid, "fine grid too large; lower j_max");

  for (int j = trunc_.j_min; j <= trunc_.j_max; ++j) {
    atoms_ += static_cast<std::size_t>(band_hi(j, 1.0, trunc_.k_band) - band_lo(trunc_.k_band) + 1);
  }
  if (atoms_ > opt.max_atoms) {
    std::ostringstream os;
    os << atoms_ << " atoms exceed the cap of " << opt.max_atoms;
    fail(ErrorKind::TruncationBudgetExceeded, os.str());
  }

  const auto w1 = frac_antiderivative_cached(h.h1());
  const auto w2 = frac_antiderivative_cached(h.h2());
  const std::size_t nf = (std::size_t{1} << fine_level_) + 1;
  const double hf = std::ldexp(1.0, -fine_level_);
  mean_.assign(nf, 0.0);

  // Directly evaluated groups: negative scales and 0..kDirectTop.
  auto make_group = [&](int lo, int hi, int step_log2) {
    Group g;
    g.j_lo = lo;
    g.j_hi = hi;
    g.step = std::ldexp(1.0, -step_log2);
    g.start = -2.0 * g.step;
    g.nodes = (std::size_t{1} << step_log2) + 5;
    for (int j = lo; j <= hi; ++j) {
      for (int k = band_lo(trunc_.k_band); k <= band_hi(j, 1.0, trunc_.k_band); ++k) g.atoms.emplace_back(j, k);
    }
    g.basis1.resize(g.atoms.size() * g.nodes);
    g.basis2.resize(g.atoms.size() * g.nodes);
    std::vector<double> gmean(g.nodes, 0.0);
    for (std::size_t a = 0; a < g.atoms.size(); ++a) {
      const auto [j, k] = g.atoms[a];
      const double c1 = scale_factor(h.h1(), j), c2 = scale_factor(h.h2(), j);
      for (std::size_t i = 0; i < g.nodes; ++i) {
        const double y = std::ldexp(g.start + g.step * static_cast<double>(i), j) - k;
        const double b1 = c1 * w1->value(y), b2 = c2 * w2->value(y);
        g.basis1[a * g.nodes + i] = b1;
        g.basis2[a * g.nodes + i] = b2;
        gmean[i] += b1 * b2;
      }
    }
    for (std::size_t i = 0; i < nf; ++i) {
      mean_[i] += cubic_sample(gmean, g.start, g.step, hf * static_cast<double>(i));
    }
    groups_.push_back(std::move(g));
  };
  if (trunc_.j_min < 0) make_group(trunc_.j_min, -1, 6);
  const int direct_hi = std::min(trunc_.j_max, kDirectTop);
  if (direct_hi >= 0) make_group(0, direct_hi, direct_hi + 7);

  // FFT scales.
  const int fft_lo = kDirectTop + 1;
  if (trunc_.j_max >= fft_lo) {
    const PeriodicProduct p12(*w1, *w2);
    const std::int64_t big_n = std::int64_t{1} << (fine_level_ + kWindowLog2);
    plans_ = std::make_unique<Plans>();
    plans_->size = big_n;
    const double inv_period = std::ldexp(1.0, -kWindowLog2);
    for (int j = fft_lo; j <= trunc_.j_max; ++j) {
      FftScale s;
      s.j = j;
      s.length = std::int64_t{1} << (j + kWindowLog2);
      s.k_lo = band_lo(trunc_.k_band);
      s.k_hi = band_hi(j, 1.0, trunc_.k_band);
      s.n_lo = s.length / 3 + 1;
      const std::int64_t n_hi = (4 * s.length) / 3;
      const double c1 = scale_factor(h.h1(), j) * std::ldexp(inv_period, -j);
      const double c2 = scale_factor(h.h2(), j) * std::ldexp(inv_period, -j);
      for (std::int64_t n = s.n_lo; n <= n_hi; ++n) {
        const double xi = 2.0 * kPi * static_cast<double>(n) / static_cast<double>(s.length);
        // e^{i omega_n x0} with omega_n x0 = -3 pi n / 4.
        const auto shift = std::polar(1.0, -0.25 * kPi * static_cast<double>((3 * n) % 8));
        s.filter1.push_back(c1 * frac_fourier(h.h1(), xi) * shift);
        s.filter2.push_back(c2 * frac_fourier(h.h2(), xi) * shift);
      }
      const double cc = scale_factor(h.h1(), j) * scale_factor(h.h2(), j);
      for (std::size_t i = 0; i < nf; ++i) mean_[i] += cc * p12(std::ldexp(hf * static_cast<double>(i), j));
      scales_.push_back(std::move(s));
    }
    std::lock_guard lock(planner_mutex());
    auto spec = fftw_buffer<fftw_complex>(static_cast<std::size_t>(big_n / 2 + 1));
    auto real = fftw_buffer<double>(static_cast<std::size_t>(big_n));
    plans_->c2r = fftw_plan_dft_c2r_1d(static_cast<int>(big_n), spec.get(), real.get(), FFTW_ESTIMATE);
    for (const auto& s : scales_) {
      plans_->r2c.push_back(
          fftw_plan_dft_r2c_1d(static_cast<int>(s.length), real.get(), spec.get(), FFTW_ESTIMATE));
    }
  }

  if (opt_.tail_compensation) {
    unit_rate_ = expansion_tail_calibration(h_, trunc_.k_band, trunc_.j_min - trunc_.j_max).unit_rate;
    tail_rate_ = unit_rate_ * std::exp2(static_cast<double>(trunc_.j_max) * (1.0 - 2.0 * h_.alpha()));
  }
}

WaveletSimulator::~WaveletSimulator() = default;

double WaveletSimulator::truncation_tail_bound(double n_sigma) const {
  const double unit = unit_rate_ > 0.0
                          ? unit_rate_
                          : expansion_tail_calibration(h_, trunc_.k_band, trunc_.j_min - trunc_.j_max).unit_rate;
  const double e = 1.0 - 2.0 * h_.alpha();
  const double var = unit * (std::exp2(trunc_.j_max * e) - std::exp2((trunc_.j_max + 1) * e));
  return n_sigma * std::sqrt(var);
}

void WaveletSimulator::add_direct(const Group& g, const ChaosField& field, std::vector<double>& f1,
                                  std::vector<double>& f2) const {
  std::vector<double> a1(g.nodes, 0.0), a2(g.nodes, 0.0);
  for (std::size_t a = 0; a < g.atoms.size(); ++a) {
    const double z = field.gaussian_at(g.atoms[a].first, g.atoms[a].second);
    const double* b1 = g.basis1.data() + a * g.nodes;
    const double* b2 = g.basis2.data() + a * g.nodes;
    for (std::size_t i = 0; i < g.nodes; ++i) {
      a1[i] += z * b1[i];
      a2[i] += z * b2[i];
    }
  }
  const double hf = std::ldexp(1.0, -fine_level_);
  const std::size_t nf = f1.size();
  if (g.step <= hf) {
    const auto ratio = static_cast<std::size_t>(std::llround(hf / g.step));
    for (std::size_t i = 0; i < nf; ++i) {
      f1[i] += a1[2 + i * ratio];
      f2[i] += a2[2 + i * ratio];
    }
  } else {
    for (std::size_t i = 0; i < nf; ++i) {
      const double x = hf * static_cast<double>(i);
      f1[i] += cubic_sample(a1, g.start, g.step, x);
      f2[i] += cubic_sample(a2, g.start, g.step, x);
    }
  }
}

void WaveletSimulator::fine_fields(std::uint64_t seed, std::vector<double>& f1, std::vector<double>& f2) const {
  const std::size_t nf = mean_.size();
  f1.assign(nf, 0.0);
  f2.assign(nf, 0.0);
  const ChaosField field(seed);
  if (!scales_.empty()) {
    const std::int64_t big_n = plans_->size;
    const auto half = static_cast<std::size_t>(big_n / 2 + 1);
    auto x1 = fftw_buffer<fftw_complex>(half);
    auto x2 = fftw_buffer<fftw_complex>(half);
    std::memset(x1.get(), 0, sizeof(fftw_complex) * half);
    std::memset(x2.get(), 0, sizeof(fftw_complex) * half);
    const auto max_len = static_cast<std::size_t>(scales_.back().length);
    auto coeff = fftw_buffer<double>(max_len);
    auto dft = fftw_buffer<fftw_complex>(max_len / 2 + 1);
    for (std::size_t si = 0; si < scales_.size(); ++si) {
      const FftScale& s = scales_[si];
      std::fill(coeff.get(), coeff.get() + s.length, 0.0);
      for (std::int32_t k = s.k_lo; k <= s.k_hi; ++k) {
        const std::int64_t idx = ((k % s.length) + s.length) % s.length;
        coeff[static_cast<std::size_t>(idx)] += field.gaussian_at(s.j, k);
      }
      fftw_execute_dft_r2c(plans_->r2c[si], coeff.get(), dft.get());
      for (std::size_t m = 0; m < s.filter1.size(); ++m) {
        const std::int64_t n = s.n_lo + static_cast<std::int64_t>(m);
        std::int64_t r = n % s.length;
        std::complex<double> gk;
        if (r <= s.length / 2) {
          gk = {dft[static_cast<std::size_t>(r)][0], dft[static_cast<std::size_t>(r)][1]};
        } else {
          r = s.length - r;
          gk = {dft[static_cast<std::size_t>(r)][0], -dft[static_cast<std::size_t>(r)][1]};
        }
        const auto v1 = s.filter1[m] * gk;
        const auto v2 = s.filter2[m] * gk;
        x1[static_cast<std::size_t>(n)][0] += v1.real();
        x1[static_cast<std::size_t>(n)][1] += v1.imag();
        x2[static_cast<std::size_t>(n)][0] += v2.real();
        x2[static_cast<std::size_t>(n)][1] += v2.imag();
      }
    }
    auto out = fftw_buffer<double>(static_cast<std::size_t>(big_n));
    const auto first = static_cast<std::size_t>(std::llround(-kWindowStart * std::ldexp(1.0, fine_level_)));
    fftw_execute_dft_c2r(plans_->c2r, x1.get(), out.get());
    for (std::size_t i = 0; i < nf; ++i) f1[i] = out[first + i];
    fftw_execute_dft_c2r(plans_->c2r, x2.get(), out.get());
    for (std::size_t i = 0; i < nf; ++i) f2[i] = out[first + i];
  }
  for (const auto& g : groups_) add_direct(g, field, f1, f2);
}

PathGrid WaveletSimulator::simulate(std::uint64_t seed) const {
  std::vector<double> f1, f2;
  fine_fields(seed, f1, f2);
  PathGrid p;
  p.times = uniform_times(grid_level_);
  p.values.assign(p.times.size(), 0.0);
  p.seed = seed;
  p.method = Method::WaveletExpansion;
  p.truncation = trunc_;
  p.h1 = h_.h1();
  p.h2 = h_.h2();
  p.grid_level = grid_level_;

  const double hf = std::ldexp(1.0, -fine_level_);
  const std::size_t stride = std::size_t{1} << (fine_level_ - grid_level_);
  KahanSum acc;
  double prev = f1[0] * f2[0] - mean_[0];
  for (std::size_t i = 1; i < f1.size(); ++i) {
    const double cur = f1[i] * f2[i] - mean_[i];
    acc.add(0.5 * hf * (prev + cur));
    prev = cur;
    if (i % stride == 0) p.values[i / stride] = acc.value();
  }
  if (opt_.tail_compensation) {
    const ChaosField noise(seed, "tail-compensation");
    const double sd = std::sqrt(tail_rate_ * p.step());
    KahanSum w;
    for (std::size_t o = 1; o < p.values.size(); ++o) {
      w.add(sd * noise.gaussian_at(0, static_cast<std::int32_t>(o - 1)));
      p.values[o] += w.value();
    }
  }
  return p;
}

PathGrid simulate_wavelet(const HurstPair& h, int grid_level, const TruncationSpec& trunc, std::uint64_t seed,
                          const SimulationOptions& opt) {
  return WaveletSimulator(h, grid_level, trunc, opt).simulate(seed);
}

}  // namespace rlab
