// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#pragma once

#include <complex>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

namespace rlab {

// Wavelet or fractional antiderivative sampled on a uniform grid, with a
// polynomial decay envelope |psi(x)| <= decay_constant (1+|x|)^-decay_exponent.
struct SampledWavelet {
  double grid_start = 0.0;
  double grid_step = 0.0;
  std::vector<double> samples;
  double freq_start = 0.0;
  double freq_step = 0.0;
  std::vector<std::complex<double>> fourier_samples;
  double decay_constant = 0.0;
  double decay_exponent = 0.0;

  double x_at(std::size_t i) const { return grid_start + grid_step * static_cast<double>(i); }
  double grid_end() const { return x_at(samples.size() - 1); }
  // Four-point interpolation between samples; zero off the grid.
  double value(double x) const;
  void write_csv(std::ostream& os) const;
};

struct FrequencyGrid {
  double lo = -3.0 * 3.14159265358979323846;
  double hi = 3.0 * 3.14159265358979323846;
  std::size_t points = std::size_t{1} << 14;
};

struct TimeGrid {
  double half_width = 64.0;
  double step = 1.0 / 1024.0;
};

// Auxiliary polynomial nu(x) = x^4 (35 - 84x + 70x^2 - 20x^3), clamped to [0,1].
double meyer_aux(double x);

// Fourier transform (convention: integral of psi(x) e^{-i xi x} dx) of the Meyer wavelet.
std::complex<double> meyer_fourier(double xi);

// Fourier transform of the fractional antiderivative of order h - 1/2:
// (i xi)^{-(h-1/2)} times the Meyer transform, principal branch.
std::complex<double> frac_fourier(double h, double xi);

// psi_h sampled on the time grid by quadrature of the inverse transform.
// Throws ToleranceNotMet when the grids cannot support the (1+|x|)^-4 envelope.
SampledWavelet frac_antiderivative(double h, const FrequencyGrid& freq = {},
                                   const TimeGrid& time = {});

// Process-wide cache keyed by h on the default grids. Thread-safe.
std::shared_ptr<const SampledWavelet> frac_antiderivative_cached(double h);

}  // namespace rlab
