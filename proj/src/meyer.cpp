// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#include "rlab/meyer.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>

#include "rlab/errors.hpp"
#include "rlab/numerics.hpp"

namespace rlab {

namespace {
constexpr double kPi = std::numbers::pi;
}

double SampledWavelet::value(double x) const {
  return cubic_sample(samples, grid_start, grid_step, x);
}

void SampledWavelet::write_csv(std::ostream& os) const {
  os << "x,value\n";
  char buf[64];
  for (std::size_t i = 0; i < samples.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", x_at(i), samples[i]);
    os << buf;
  }
}

double meyer_aux(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return x * x * x * x * (35.0 - 84.0 * x + 70.0 * x * x - 20.0 * x * x * x);
}

std::complex<double> meyer_fourier(double xi) {
  const double a = std::abs(xi);
  double mod;
  if (a <= 2.0 * kPi / 3.0 || a >= 8.0 * kPi / 3.0) {
    return {0.0, 0.0};
  } else if (a <= 4.0 * kPi / 3.0) {
    mod = std::sin(0.5 * kPi * meyer_aux(3.0 * a / (2.0 * kPi) - 1.0));
  } else {
    mod = std::cos(0.5 * kPi * meyer_aux(3.0 * a / (4.0 * kPi) - 1.0));
  }
  return std::polar(mod, 0.5 * xi);
}

std::complex<double> frac_fourier(double h, double xi) {
  const std::complex<double> m = meyer_fourier(xi);
  if (m == std::complex<double>(0.0, 0.0)) return m;
  const double beta = h - 0.5;
  const double a = std::abs(xi);
  const double phase = -(xi > 0.0 ? 1.0 : -1.0) * kPi * beta / 2.0;
  return m * std::polar(std::pow(a, -beta), phase);
}

SampledWavelet frac_antiderivative(double h, const FrequencyGrid& freq, const TimeGrid& time) {
  if (!(h >= 0.5 && h < 1.0)) fail(ErrorKind::ConfigInvalid, "fractional order needs h in [1/2,1)");
  if (freq.points < 16 || !(freq.hi > freq.lo)) fail(ErrorKind::ConfigInvalid, "bad frequency grid");
  if (freq.lo > -8.0 * kPi / 3.0 || freq.hi < 8.0 * kPi / 3.0) {
    fail(ErrorKind::ToleranceNotMet, "frequency grid does not cover the Meyer band");
  }
  const double dxi = (freq.hi - freq.lo) / static_cast<double>(freq.points - 1);
  // The quadrature periodizes in x with period 2 pi / dxi.
  if (time.half_width >= kPi / dxi) {
    fail(ErrorKind::ToleranceNotMet, "time grid wider than the alias-free window of the frequency grid");
  }
  const auto nhalf = static_cast<std::size_t>(std::llround(time.half_width / time.step));
  SampledWavelet out;
  out.grid_step = time.step;
  out.grid_start = -static_cast<double>(nhalf) * time.step;
  out.freq_start = freq.lo;
  out.freq_step = dxi;
  out.fourier_samples.resize(freq.points);
  std::size_t m_first = freq.points, m_last = 0;
  for (std::size_t m = 0; m < freq.points; ++m) {
    const double xi = freq.lo + dxi * static_cast<double>(m);
    out.fourier_samples[m] = frac_fourier(h, xi);
    if (xi > 0.0 && out.fourier_samples[m] != std::complex<double>(0.0, 0.0)) {
      m_first = std::min(m_first, m);
      m_last = std::max(m_last, m);
    }
  }
  const std::size_t n = 2 * nhalf + 1;
  std::vector<double> acc(n, 0.0), zr(n), zi(n), rr(n), ri(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = out.x_at(i);
    rr[i] = std::cos(dxi * x);
    ri[i] = std::sin(dxi * x);
  }
  // psi_h(x) = (1/pi) Re sum_{xi_m > 0} psi_h^(xi_m) e^{i xi_m x} dxi.
  constexpr std::size_t kReseed = 128;
  for (std::size_t m = m_first; m <= m_last; ++m) {
    if ((m - m_first) % kReseed == 0) {
      const double xi = freq.lo + dxi * static_cast<double>(m);
      for (std::size_t i = 0; i < n; ++i) {
        const double x = out.x_at(i);
        zr[i] = std::cos(xi * x);
        zi[i] = std::sin(xi * x);
      }
    }
    const double cr = out.fourier_samples[m].real() * dxi / kPi;
    const double ci = out.fourier_samples[m].imag() * dxi / kPi;
    double* __restrict a = acc.data();
    double* __restrict pr = zr.data();
    double* __restrict pi = zi.data();
    const double* __restrict qr = rr.data();
    const double* __restrict qi = ri.data();
    for (std::size_t i = 0; i < n; ++i) {
      a[i] += cr * pr[i] - ci * pi[i];
      const double nr = pr[i] * qr[i] - pi[i] * qi[i];
      const double ni = pr[i] * qi[i] + pi[i] * qr[i];
      pr[i] = nr;
      pi[i] = ni;
    }
  }
  out.samples = std::move(acc);

  // Envelope: constant fitted on the inner quarter, then checked everywhere.
  out.decay_exponent = 4.0;
  double c_inner = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::abs(out.x_at(i));
    if (x <= 0.25 * time.half_width) {
      c_inner = std::max(c_inner, std::abs(out.samples[i]) * std::pow(1.0 + x, 4.0));
    }
  }
  out.decay_constant = c_inner * (1.0 + 1e-9);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::abs(out.x_at(i));
    if (std::abs(out.samples[i]) * std::pow(1.0 + x, 4.0) > out.decay_constant) {
      std::ostringstream os;
      os << "fractional antiderivative violates the (1+|x|)^-4 envelope at x=" << out.x_at(i);
      fail(ErrorKind::ToleranceNotMet, os.str());
    }
  }
  return out;
}

std::shared_ptr<const SampledWavelet> frac_antiderivative_cached(double h) {
  static std::mutex mu;
  static std::map<std::uint64_t, std::shared_ptr<const SampledWavelet>> cache;
  const auto key = std::bit_cast<std::uint64_t>(h);
  {
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto w = std::make_shared<const SampledWavelet>(frac_antiderivative(h));
  std::lock_guard lock(mu);
  auto [it, inserted] = cache.emplace(key, std::move(w));
  return it->second;
}

}  // namespace rlab
