// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#include "rlab/daubechies.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>

#include "rlab/errors.hpp"

namespace rlab {

namespace {

using cplx = std::complex<long double>;

// Roots of a real polynomial (coefficients low to high) by Durand-Kerner.
std::vector<cplx> poly_roots(const std::vector<long double>& coef) {
  const int deg = static_cast<int>(coef.size()) - 1;
  std::vector<cplx> roots(deg);
  if (deg <= 0) return roots;
  const cplx seed(0.4L, 0.9L);
  for (int i = 0; i < deg; ++i) roots[i] = std::pow(seed, i);
  auto eval = [&](cplx z) {
    cplx v = coef[deg];
    for (int i = deg - 1; i >= 0; --i) v = v * z + coef[i];
    return v / coef[deg];
  };
  for (int it = 0; it < 2000; ++it) {
    long double delta = 0.0L;
    for (int i = 0; i < deg; ++i) {
      cplx den = 1.0L;
      for (int k = 0; k < deg; ++k)
        if (k != i) den *= roots[i] - roots[k];
      const cplx step = eval(roots[i]) / den;
      roots[i] -= step;
      delta = std::max(delta, std::abs(step));
    }
    if (delta < 1e-18L) break;
  }
  return roots;
}

std::vector<double> daubechies_filter(int order) {
  // |m0|^2 = cos^{2N}(xi/2) P(sin^2(xi/2)),  P(y) = sum_k C(N-1+k, k) y^k.
  const int n = order;
  std::vector<long double> p(n);
  long double c = 1.0L;
  for (int k = 0; k < n; ++k) {
    p[k] = c;
    c = c * (n + k) / (k + 1);
  }
  const auto yroots = poly_roots(p);
  // Polynomial in z with h_m = coefficient of z^m; start from ((1+z)/2)^N.
  std::vector<cplx> poly{1.0L};
  auto mul = [&](cplx r0, cplx r1) {  // multiply by (r0 + r1 z)
    std::vector<cplx> out(poly.size() + 1, 0.0L);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      out[i] += poly[i] * r0;
      out[i + 1] += poly[i] * r1;
    }
    poly.swap(out);
  };
  for (int i = 0; i < n; ++i) mul(0.5L, 0.5L);
  for (const cplx& y : yroots) {
    // y - sin^2 = 0  <=>  z^2 - (2 - 4y) z + 1 = 0; keep the root outside the unit circle.
    const cplx b = 2.0L - 4.0L * y;
    const cplx disc = std::sqrt(b * b - 4.0L);
    cplx z = (b + disc) / 2.0L;
    if (std::abs(z) < 1.0L) z = (b - disc) / 2.0L;
    mul(-z, 1.0L);
  }
  long double s = 0.0L;
  for (const cplx& v : poly) s += v.real();
  std::vector<double> h(poly.size());
  const long double scale = std::sqrt(2.0L) / s;
  for (std::size_t i = 0; i < poly.size(); ++i) h[i] = static_cast<double>(poly[i].real() * scale);
  return h;
}

}  // namespace

double DaubechiesWavelet::at_dyadic(long index) const {
  const long offset = static_cast<long>(support_halfwidth) << depth;
  const long i = index + offset;
  if (i < 0 || i >= static_cast<long>(samples.samples.size())) return 0.0;
  return samples.samples[static_cast<std::size_t>(i)];
}

DaubechiesWavelet daubechies_build(int order, int depth) {
  if (order < 2 || order > 10) fail(ErrorKind::UnsupportedOrder, "Daubechies order must be in 2..10");
  if (depth < 4 || depth > 16) fail(ErrorKind::ConfigInvalid, "cascade depth must be in 4..16");
  DaubechiesWavelet w;
  w.order = order;
  w.depth = depth;
  w.filter = daubechies_filter(order);
  const int len = static_cast<int>(w.filter.size());  // 2N
  const int last = len - 1;                           // phi supported on [0, 2N-1]
  const double r2 = std::sqrt(2.0);

  // phi at the integers: eigenvector of the two-scale matrix, normalized to sum 1.
  const int m = last - 1;  // interior integers 1..2N-2
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j) {
      const int k = 2 * i - j;
      if (k >= 0 && k < len) a(i - 1, j - 1) = r2 * w.filter[k];
    }
  Eigen::MatrixXd sys = a - Eigen::MatrixXd::Identity(m, m);
  sys.row(m - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  rhs(m - 1) = 1.0;
  const Eigen::VectorXd phi_int = sys.fullPivLu().solve(rhs);

  // Dyadic refinement of phi up to depth-1.
  std::vector<double> phi(static_cast<std::size_t>(last) + 1, 0.0);
  for (int i = 1; i <= m; ++i) phi[i] = phi_int(i - 1);
  for (int d = 1; d < depth; ++d) {
    const long npts = (static_cast<long>(last) << d) + 1;
    std::vector<double> next(static_cast<std::size_t>(npts), 0.0);
    for (long p = 0; p < npts; ++p) {
      if (p % 2 == 0) {
        next[p] = phi[p / 2];
        continue;
      }
      // phi(p/2^d) = sqrt2 sum_k h_k phi(p/2^{d-1} - k)
      double v = 0.0;
      for (int k = 0; k < len; ++k) {
        const long q = p - (static_cast<long>(k) << (d - 1));
        if (q >= 0 && q < static_cast<long>(phi.size())) v += w.filter[k] * phi[q];
      }
      next[p] = r2 * v;
    }
    phi.swap(next);
  }
  // psi(x) = sqrt2 sum_k g_k phi(2x - k), g_k = (-1)^k h_{2N-1-k}; sampled at depth.
  const long npsi = (static_cast<long>(last) << depth) + 1;
  std::vector<double> psi(static_cast<std::size_t>(npsi), 0.0);
  for (long p = 0; p < npsi; ++p) {
    double v = 0.0;
    for (int k = 0; k < len; ++k) {
      const long q = p - (static_cast<long>(k) << (depth - 1));
      if (q < 0 || q >= static_cast<long>(phi.size())) continue;
      const double g = ((k % 2) ? -1.0 : 1.0) * w.filter[last - k];
      v += g * phi[q];
    }
    psi[p] = r2 * v;
  }
  // Center: support [0, 2N-1] shifted by -(N-1) lies in [-N, N].
  w.support_halfwidth = order;
  const long shift = static_cast<long>(order - 1) << depth;
  const long half = static_cast<long>(order) << depth;
  w.samples.grid_step = std::ldexp(1.0, -depth);
  w.samples.grid_start = -static_cast<double>(order);
  w.samples.samples.assign(static_cast<std::size_t>(2 * half + 1), 0.0);
  for (long p = 0; p < npsi; ++p) {
    const long idx = p - shift + half;
    if (idx >= 0 && idx <= 2 * half) w.samples.samples[idx] = psi[p];
  }
  w.sup_norm = 0.0;
  for (double v : w.samples.samples) w.sup_norm = std::max(w.sup_norm, std::abs(v));
  w.samples.decay_exponent = 0.0;
  w.samples.decay_constant = w.sup_norm;
  return w;
}

std::shared_ptr<const DaubechiesWavelet> daubechies_cached(int order, int depth) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const DaubechiesWavelet>> cache;
  std::lock_guard lock(mu);
  auto key = std::make_pair(order, depth);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto w = std::make_shared<const DaubechiesWavelet>(daubechies_build(order, depth));
  cache.emplace(key, w);
  return w;
}

}  // namespace rlab
