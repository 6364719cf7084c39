// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#include "rlab/leaders.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "rlab/errors.hpp"
#include "rlab/numerics.hpp"

namespace rlab {

LeaderPyramid::LeaderPyramid(int j_lo, int j_hi, int halfwidth) : j_lo_(j_lo), j_hi_(j_hi), halfwidth_(halfwidth) {
  if (j_lo < 0 || j_hi < j_lo || j_hi > 30) fail(ErrorKind::ConfigInvalid, "need 0 <= j_lo <= j_hi <= 30");
  if (halfwidth < 1) fail(ErrorKind::ConfigInvalid, "wavelet halfwidth must be positive");
  for (int j = j_lo; j <= j_hi; ++j) {
    const auto n = static_cast<std::size_t>(k_last(j) - k_first(j) + 1);
    coeffs_.emplace_back(n, 0.0);
    sups_.emplace_back(n, 0.0);
  }
}

std::size_t LeaderPyramid::slot(int j, std::int64_t k) const { return static_cast<std::size_t>(k - k_first(j)); }

double LeaderPyramid::coeff(int j, std::int64_t k) const {
  if (j < j_lo_ || j > j_hi_ || k < k_first(j) || k > k_last(j)) return 0.0;
  return coeffs_[static_cast<std::size_t>(j - j_lo_)][slot(j, k)];
}

void LeaderPyramid::set_coeff(int j, std::int64_t k, double c) {
  if (j < j_lo_ || j > j_hi_ || k < k_first(j) || k > k_last(j)) fail(ErrorKind::OutOfRange, "coefficient index");
  coeffs_[static_cast<std::size_t>(j - j_lo_)][slot(j, k)] = c;
}

double LeaderPyramid::sup_below(int j, std::int64_t k) const {
  if (j < j_lo_ || j > j_hi_ || k < k_first(j) || k > k_last(j)) return 0.0;
  return sups_[static_cast<std::size_t>(j - j_lo_)][slot(j, k)];
}

void LeaderPyramid::rebuild() {
  for (int j = j_hi_; j >= j_lo_; --j) {
    auto& s = sups_[static_cast<std::size_t>(j - j_lo_)];
    const auto& c = coeffs_[static_cast<std::size_t>(j - j_lo_)];
    for (std::int64_t k = k_first(j); k <= k_last(j); ++k) {
      double v = std::abs(c[slot(j, k)]);
      if (j < j_hi_) v = std::max({v, sup_below(j + 1, 2 * k), sup_below(j + 1, 2 * k + 1)});
      s[slot(j, k)] = v;
    }
  }
}

double LeaderPyramid::leader(double t, int j) const {
  if (j < j_lo_ || j > j_hi_) fail(ErrorKind::OutOfRange, "scale outside the pyramid");
  if (!(t >= 0.0 && t < 1.0)) fail(ErrorKind::OutOfRange, "t outside [0,1)");
  const auto k = static_cast<std::int64_t>(std::floor(std::ldexp(t, j)));
  return std::max({sup_below(j, k - 1), sup_below(j, k), sup_below(j, k + 1)});
}

double LeaderPyramid::max_leader(int j) const {
  if (j < j_lo_ || j > j_hi_) fail(ErrorKind::OutOfRange, "scale outside the pyramid");
  double m = 0.0;
  for (std::int64_t k = -1; k <= (std::int64_t{1} << j); ++k) m = std::max(m, sup_below(j, k));
  return m;
}

void LeaderPyramid::write_coeffs_csv(std::ostream& os) const {
  os << "j,k,c\n";
  for (int j = j_lo_; j <= j_hi_; ++j) {
    for (std::int64_t k = k_first(j); k <= k_last(j); ++k) {
      os << j << ',' << k << ',' << format_double(coeff(j, k)) << '\n';
    }
  }
}

void LeaderPyramid::write_leaders_csv(std::ostream& os, const std::vector<double>& t_grid) const {
  os << "j,t,d\n";
  for (int j = j_lo_; j <= j_hi_; ++j) {
    for (double t : t_grid) os << j << ',' << format_double(t) << ',' << format_double(leader(t, j)) << '\n';
  }
}

double reflected_sample(const std::vector<double>& values, std::int64_t m) {
  const auto n = static_cast<std::int64_t>(values.size()) - 1;
  if (n <= 0) return values.empty() ? 0.0 : values[0];
  const std::int64_t period = 2 * n;
  std::int64_t r = m % period;
  if (r < 0) r += period;
  if (r > n) r = period - r;
  return values[static_cast<std::size_t>(r)];
}

LeaderPyramid wavelet_coeffs(const PathGrid& path, const DaubechiesWavelet& wavelet, int j_lo, int j_hi) {
  const int g = path.grid_level;
  if (path.values.size() != (std::size_t{1} << g) + 1) fail(ErrorKind::ResolutionMismatch, "path size does not match grid level");
  if (g < j_hi + 3) fail(ErrorKind::ResolutionMismatch, "path grid must have at least 2^(j_hi+3) intervals");
  if (g - j_lo > wavelet.depth) fail(ErrorKind::ResolutionMismatch, "wavelet samples coarser than the path grid at scale j_lo");
  const int n_half = wavelet.support_halfwidth;
  LeaderPyramid pyr(j_lo, j_hi, n_half);
  const auto& v = path.values;
  for (int j = j_lo; j <= j_hi; ++j) {
    // r grid intervals per unit of x; hat i sits at x = i / r.
    const std::int64_t r = std::int64_t{1} << (g - j);
    const std::int64_t per_hat = std::int64_t{1} << (wavelet.depth - (g - j));  // samples per grid interval
    const std::int64_t span = n_half * r;
    const double h = std::ldexp(1.0, -wavelet.depth);
    std::vector<double> w(static_cast<std::size_t>(2 * span + 1), 0.0);
    // Trapezoid on the sample grid; hat kinks fall on sample nodes.
    for (std::int64_t i = -span; i <= span; ++i) {
      KahanSum acc;
      const std::int64_t c = i * per_hat;
      for (std::int64_t q = -per_hat; q <= per_hat; ++q) {
        const double hat = 1.0 - static_cast<double>(std::abs(q)) / static_cast<double>(per_hat);
        const double weight = (q == -per_hat || q == per_hat) ? 0.0 : hat;
        acc.add(weight * wavelet.at_dyadic(c + q));
      }
      w[static_cast<std::size_t>(i + span)] = acc.value() * h;
    }
    for (std::int64_t k = pyr.k_first(j); k <= pyr.k_last(j); ++k) {
      const std::int64_t m0 = k * r;
      const double f0 = reflected_sample(v, m0);
      KahanSum acc;
      for (std::int64_t i = -span; i <= span; ++i) {
        acc.add(w[static_cast<std::size_t>(i + span)] * (reflected_sample(v, m0 + i) - f0));
      }
      pyr.set_coeff(j, k, acc.value());
    }
  }
  pyr.rebuild();
  return pyr;
}

double leader_oscillation_bound(const PathGrid& path, const DaubechiesWavelet& wavelet, double t, int j) {
  const int n_half = wavelet.support_halfwidth;
  const double radius = std::ldexp(static_cast<double>(n_half + 2), -j);
  const double scale = std::ldexp(1.0, path.grid_level);
  // Grid points strictly inside the window.
  const auto lo = static_cast<std::int64_t>(std::floor((t - radius) * scale)) + 1;
  const auto hi = static_cast<std::int64_t>(std::ceil((t + radius) * scale)) - 1;
  double mn = INFINITY, mx = -INFINITY;
  for (std::int64_t m = lo; m <= hi; ++m) {
    const double x = reflected_sample(path.values, m);
    mn = std::min(mn, x);
    mx = std::max(mx, x);
  }
  return 2.0 * n_half * wavelet.sup_norm * (mx - mn);
}

}  // namespace rlab
