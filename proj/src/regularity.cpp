// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#include "rlab/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "rlab/errors.hpp"
#include "rlab/numerics.hpp"

namespace rlab {

const char* class_name(RegularityClass c) {
  switch (c) {
    case RegularityClass::Slow: return "Slow";
    case RegularityClass::Ordinary: return "Ordinary";
    case RegularityClass::Rapid: return "Rapid";
    case RegularityClass::Indeterminate: return "Indeterminate";
  }
  return "?";
}

namespace {

double correction(int model, double j) {
  if (model == 0) return 0.0;
  if (model == 1) return std::log2(std::log(j + 1.0));
  return std::log2(j);
}

}  // namespace

PointEstimate estimate_pointwise(const std::vector<std::pair<int, double>>& dj, double margin, double alpha_ref) {
  if (dj.size() < 6) fail(ErrorKind::ConfigInvalid, "pointwise estimate needs at least 6 scales");
  std::vector<double> js, ys;
  for (const auto& [j, d] : dj) {
    if (!(d > 0.0)) fail(ErrorKind::DegenerateLeaders, "zero leader at scale " + std::to_string(j));
    if (j < 1) fail(ErrorKind::ConfigInvalid, "scales must be positive");
    js.push_back(j);
    ys.push_back(std::log2(d));
  }
  PointEstimate out;
  const LinearFit base = linear_fit(js, ys);
  out.alpha_hat = -base.slope;
  out.fit_r2 = base.r2;
  if (std::isnan(alpha_ref)) {
    // Each model subtracts its correction and refits slope and intercept.
    for (int model = 0; model < 3; ++model) {
      std::vector<double> z(ys.size());
      for (std::size_t i = 0; i < ys.size(); ++i) z[i] = ys[i] - correction(model, js[i]);
      out.rss[static_cast<std::size_t>(model)] = linear_fit(js, z).rss;
    }
  } else {
    // The classes are limsup statements, so the models are matched against
    // the running maximum of the normalized leaders 2^{j alpha} d_j.
    std::vector<double> env(ys.size());
    double run = -INFINITY;
    for (std::size_t i = 0; i < ys.size(); ++i) {
      run = std::max(run, ys[i] + js[i] * alpha_ref);
      env[i] = run;
    }
    for (int model = 0; model < 3; ++model) {
      std::vector<double> z(env.size());
      for (std::size_t i = 0; i < env.size(); ++i) z[i] = env[i] - correction(model, js[i]);
      const double m = mean(z);
      double rss = 0.0;
      for (double v : z) rss += (v - m) * (v - m);
      out.rss[static_cast<std::size_t>(model)] = rss;
    }
  }
  std::array<int, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](int a, int b) { return out.rss[a] < out.rss[b]; });
  const double best = out.rss[order[0]], second = out.rss[order[1]];
  if (best < (1.0 - margin) * second) {
    static constexpr RegularityClass kByModel[3] = {RegularityClass::Slow, RegularityClass::Ordinary,
                                                     RegularityClass::Rapid};
    out.cls = kByModel[order[0]];
  }
  return out;
}

double log_growth_slope(const std::vector<int>& scales, const std::vector<double>& log2_values) {
  std::vector<double> x;
  for (int j : scales) x.push_back(std::log2(static_cast<double>(j)));
  return linear_fit(x, log2_values).slope;
}

RegularityReport classify_grid(const LeaderPyramid& pyramid, const std::vector<double>& t_grid, const HurstPair& h,
                               int grid_level, const ClassifyOptions& opt) {
  const int j_hi = opt.j_fit_hi >= 0 ? opt.j_fit_hi : grid_level - 4;
  const int j_lo = opt.j_fit_lo;
  if (j_lo < pyramid.j_lo() || j_hi > pyramid.j_hi() || j_hi - j_lo + 1 < 6) {
    fail(ErrorKind::ConfigInvalid, "fit range must hold 6 scales inside the pyramid");
  }
  RegularityReport rep;
  std::size_t counts[4] = {0, 0, 0, 0};
  std::vector<double> alphas;
  for (double t : t_grid) {
    std::vector<std::pair<int, double>> dj;
    for (int j = j_lo; j <= j_hi; ++j) dj.emplace_back(j, pyramid.leader(t, j));
    PointEstimate e = estimate_pointwise(dj, opt.margin, h.alpha());
    e.t = t;
    ++counts[static_cast<int>(e.cls)];
    alphas.push_back(e.alpha_hat);
    rep.points.push_back(e);
  }
  const double n = static_cast<double>(t_grid.size());
  if (n > 0) {
    rep.fraction_slow = counts[0] / n;
    rep.fraction_ordinary = counts[1] / n;
    rep.fraction_rapid = counts[2] / n;
    rep.fraction_indeterminate = counts[3] / n;
    rep.median_alpha = median(alphas);
  }
  const double alpha = h.alpha();
  for (int j = std::max({opt.rapid_lo, pyramid.j_lo(), 1}); j <= pyramid.j_hi(); ++j) {
    rep.rapid_scales.push_back(j);
    rep.rapid_log_growth.push_back(std::log2(pyramid.max_leader(j)) + j * alpha);
  }
  if (rep.rapid_scales.size() >= 2) rep.rapid_slope = log_growth_slope(rep.rapid_scales, rep.rapid_log_growth);
  double best = -1.0;
  for (double t : t_grid) {
    const double d = pyramid.leader(t, j_hi);
    if (d > best) {
      best = d;
      rep.argmax_rapid_t = t;
    }
  }
  return rep;
}

RegularityReport merge_reports(const std::vector<RegularityReport>& parts) {
  RegularityReport rep;
  if (parts.empty()) return rep;
  std::size_t counts[4] = {0, 0, 0, 0};
  std::vector<double> alphas;
  for (const auto& part : parts) {
    for (const auto& e : part.points) {
      ++counts[static_cast<int>(e.cls)];
      alphas.push_back(e.alpha_hat);
      rep.points.push_back(e);
    }
  }
  const double n = static_cast<double>(rep.points.size());
  if (n > 0) {
    rep.fraction_slow = counts[0] / n;
    rep.fraction_ordinary = counts[1] / n;
    rep.fraction_rapid = counts[2] / n;
    rep.fraction_indeterminate = counts[3] / n;
    rep.median_alpha = median(alphas);
  }
  rep.rapid_scales = parts.front().rapid_scales;
  rep.rapid_log_growth.assign(rep.rapid_scales.size(), 0.0);
  double best = -INFINITY;
  for (const auto& part : parts) {
    if (part.rapid_scales != rep.rapid_scales) fail(ErrorKind::ConfigInvalid, "reports use different scales");
    for (std::size_t i = 0; i < part.rapid_log_growth.size(); ++i) {
      rep.rapid_log_growth[i] += part.rapid_log_growth[i] / static_cast<double>(parts.size());
    }
    if (!part.rapid_log_growth.empty() && part.rapid_log_growth.back() > best) {
      best = part.rapid_log_growth.back();
      rep.argmax_rapid_t = part.argmax_rapid_t;
    }
  }
  if (rep.rapid_scales.size() >= 2) rep.rapid_slope = log_growth_slope(rep.rapid_scales, rep.rapid_log_growth);
  return rep;
}

void RegularityReport::write_json(std::ostream& os) const {
  os << "{\"fraction_slow\":" << format_double(fraction_slow)
     << ",\"fraction_ordinary\":" << format_double(fraction_ordinary)
     << ",\"fraction_rapid\":" << format_double(fraction_rapid)
     << ",\"fraction_indeterminate\":" << format_double(fraction_indeterminate)
     << ",\"median_alpha\":" << format_double(median_alpha) << ",\"rapid_slope\":" << format_double(rapid_slope)
     << ",\"argmax_rapid_t\":" << format_double(argmax_rapid_t) << ",\"points\":[";
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    os << (i ? "," : "") << "{\"t\":" << format_double(p.t) << ",\"alpha_hat\":" << format_double(p.alpha_hat)
       << ",\"class\":\"" << class_name(p.cls) << "\",\"rss\":[" << format_double(p.rss[0]) << ','
       << format_double(p.rss[1]) << ',' << format_double(p.rss[2]) << "]}";
  }
  os << "]}\n";
}

void RegularityReport::write_points_csv(std::ostream& os) const {
  os << "t,alpha_hat,class\n";
  for (const auto& p : points) os << format_double(p.t) << ',' << format_double(p.alpha_hat) << ',' << class_name(p.cls) << '\n';
}

namespace {

// max over lags 2^-n, n = 1..level, of max_i |R(i+lag) - R(i)| / rate(n);
// values are sampled with the given stride on the path grid.
double modulus_statistic(const std::vector<double>& v, std::size_t stride, int level, double exponent, bool log_factor) {
  double best = 0.0;
  const std::size_t points = (v.size() - 1) / stride;
  for (int n = 1; n <= level; ++n) {
    const std::size_t lag = points >> n;
    double m = 0.0;
    for (std::size_t i = 0; i + lag <= points; ++i) m = std::max(m, std::abs(v[(i + lag) * stride] - v[i * stride]));
    double rate = std::exp2(-n * exponent);
    if (log_factor) rate *= n * std::log(2.0);
    best = std::max(best, m / rate);
  }
  return best;
}

}  // namespace

ModulusReport uniform_modulus_check(const std::vector<PathGrid>& paths, const HurstPair& h) {
  if (paths.size() < 50) fail(ErrorKind::InsufficientSamples, "uniform modulus check needs at least 50 paths");
  const int level = paths.front().grid_level;
  if (level < 12) fail(ErrorKind::ConfigInvalid, "uniform modulus check needs grid level >= 12");
  ModulusReport rep;
  rep.fine_level = level;
  rep.coarse_level = level - 2;
  rep.paths = paths.size();
  const double a = h.alpha();
  const int n_lo = 3;
  std::vector<double> min_osc(static_cast<std::size_t>(level - n_lo + 1), 0.0);
  for (const auto& p : paths) {
    if (p.grid_level != level) fail(ErrorKind::ConfigInvalid, "paths must share one grid level");
    const auto& v = p.values;
    rep.log_corrected_fine += modulus_statistic(v, 1, level, a, true);
    rep.log_corrected_coarse += modulus_statistic(v, 4, level - 2, a, true);
    rep.pure_power_fine += modulus_statistic(v, 1, level, a, false);
    rep.pure_power_coarse += modulus_statistic(v, 4, level - 2, a, false);
    rep.over_exponent_fine += modulus_statistic(v, 1, level, a + 0.2, true);
    rep.over_exponent_coarse += modulus_statistic(v, 4, level - 2, a + 0.2, true);
    for (int n = n_lo; n <= level; ++n) {
      const std::size_t len = (v.size() - 1) >> n;
      double mn = INFINITY;
      for (std::size_t k = 0; k + len < v.size(); k += len) {
        const auto [lo, hi] = std::minmax_element(v.begin() + static_cast<long>(k), v.begin() + static_cast<long>(k + len) + 1);
        mn = std::min(mn, *hi - *lo);
      }
      min_osc[static_cast<std::size_t>(n - n_lo)] += std::log2(mn) + n * a;
    }
  }
  const double np = static_cast<double>(paths.size());
  for (double* x : {&rep.log_corrected_fine, &rep.log_corrected_coarse, &rep.pure_power_fine, &rep.pure_power_coarse,
                    &rep.over_exponent_fine, &rep.over_exponent_coarse}) {
    *x /= np;
  }
  std::vector<int> scales;
  std::vector<double> ys;
  for (int n = n_lo; n <= level; ++n) {
    scales.push_back(n);
    ys.push_back(min_osc[static_cast<std::size_t>(n - n_lo)] / np);
  }
  rep.min_oscillation_exponent = log_growth_slope(scales, ys);
  rep.lower_rate_log_exponent = (1.0 - h.h1() - h.h2()) / (1.0 - h.max_h());
  return rep;
}

}  // namespace rlab
