// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#include "rlab/decomposition.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "rlab/errors.hpp"
#include "rlab/kernel_oracle.hpp"
#include "rlab/numerics.hpp"
#include "rlab/path.hpp"
#include "rlab/rng.hpp"
#include "rlab/variance.hpp"

namespace rlab {

CoefficientBox coefficient_box(int j, std::int64_t k, int m, int halfwidth) {
  CoefficientBox b;
  b.j = j;
  b.k = k;
  b.m = m;
  b.lo = std::ldexp(static_cast<double>(k - static_cast<std::int64_t>(halfwidth) * m), -j);
  b.hi = std::ldexp(static_cast<double>(k + halfwidth), -j);
  return b;
}

bool cm_condition(const std::vector<CoefficientBox>& boxes) {
  for (std::size_t a = 0; a < boxes.size(); ++a) {
    for (std::size_t b = a + 1; b < boxes.size(); ++b) {
      // (lo, hi] sides; squares meet iff their sides meet.
      if (std::max(boxes[a].lo, boxes[b].lo) < std::min(boxes[a].hi, boxes[b].hi)) return false;
    }
  }
  return true;
}

namespace {

// w(s) = int_s^N Psi for s >= 0 and -int_{-N}^s Psi for s < 0, from the
// cumulative trapezoid of the wavelet samples.
class SWeight {
 public:
  explicit SWeight(const DaubechiesWavelet& wl)
      : n_(wl.support_halfwidth), start_(wl.samples.grid_start), step_(wl.samples.grid_step) {
    const auto& s = wl.samples.samples;
    cum_.resize(s.size());
    KahanSum acc;
    cum_[0] = 0.0;
    for (std::size_t i = 1; i < s.size(); ++i) {
      acc.add(0.5 * step_ * (s[i - 1] + s[i]));
      cum_[i] = acc.value();
    }
    total_ = cum_.back();
  }
  double operator()(double sigma) const {
    if (sigma <= -n_ || sigma >= n_) return 0.0;
    const double c = cubic_sample(cum_, start_, step_, sigma);
    return sigma < 0.0 ? -c : total_ - c;
  }

 private:
  int n_;
  double start_;
  double step_;
  double total_ = 0.0;
  std::vector<double> cum_;
};

}  // namespace

CoefficientSampler::CoefficientSampler(const HurstPair& h, int j, std::int64_t k, std::vector<int> ms,
                                       const DecompositionOptions& opt)
    : h_(h), j_(j), k_(k), ms_(std::move(ms)), opt_(opt) {
  if (j < 0 || j > 20) fail(ErrorKind::ConfigInvalid, "decomposition scale must lie in [0,20]");
  if (ms_.empty()) fail(ErrorKind::ConfigInvalid, "need at least one M");
  std::sort(ms_.begin(), ms_.end());
  ms_.erase(std::unique(ms_.begin(), ms_.end()), ms_.end());
  if (ms_.front() < 2) fail(ErrorKind::ConfigInvalid, "M must be at least 2");
  if (opt.step_log2 < 1 || opt.sub_nodes < 1) fail(ErrorKind::ConfigInvalid, "bad decomposition grid");
  const auto wl = daubechies_cached(opt.wavelet_order);
  halfwidth_ = wl->support_halfwidth;
  const std::int64_t n = halfwidth_;
  const int level = j + opt.step_log2;
  const std::int64_t per_unit = std::int64_t{1} << opt.step_log2;
  const std::int64_t left_span = n * (ms_.back() + 1);
  const std::int64_t lo = (k - left_span) * per_unit;
  const std::int64_t hi = (k + n) * per_unit;
  const int far_log2 = graded_extent_log2(h, opt.far_log2_cap);
  top_level_ = -far_log2 - 3;
  cells_ = graded_layout(level, lo, hi, std::ldexp(1.0, far_log2 - j), std::ldexp(static_cast<double>(k), -j));
  const std::size_t far_count = cells_.size() - static_cast<std::size_t>(hi - lo);
  for (int m : ms_) {
    box_first_.push_back(far_count + static_cast<std::size_t>((k - n * m) * per_unit - lo));
  }

  // s-nodes: midpoints of sub-intervals of [-N, N] in coefficient units.
  const SWeight weight(*wl);
  const double eta = 1.0 / static_cast<double>(per_unit * opt.sub_nodes);
  nodes_ = static_cast<std::size_t>(2 * n * per_unit * opt.sub_nodes);
  std::vector<double> s_abs(nodes_);
  omega_.resize(nodes_);
  for (std::size_t m = 0; m < nodes_; ++m) {
    const double sigma = -static_cast<double>(n) + (static_cast<double>(m) + 0.5) * eta;
    s_abs[m] = std::ldexp(static_cast<double>(k) + sigma, -j);
    omega_[m] = std::ldexp(eta, -j) * weight(sigma);
  }
  const double b1 = h.h1() - 1.5, b2 = h.h2() - 1.5;
  const double g1 = std::tgamma(h.h1() - 0.5), g2 = std::tgamma(h.h2() - 0.5);
  const std::size_t nc = cells_.size();
  phi1_.resize(nc * nodes_);
  phi2_.resize(nc * nodes_);
  Eigen::MatrixXd p1(nodes_, nc), p2(nodes_, nc);
  Eigen::VectorXd width(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    const double a = cells_[c].left(), b = cells_[c].right();
    width(static_cast<Eigen::Index>(c)) = cells_[c].width();
    for (std::size_t m = 0; m < nodes_; ++m) {
      const double v1 = cell_average(b1, s_abs[m], a, b) / g1;
      const double v2 = cell_average(b2, s_abs[m], a, b) / g2;
      phi1_[c * nodes_ + m] = v1;
      phi2_[c * nodes_ + m] = v2;
      p1(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(c)) = v1;
      p2(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(c)) = v2;
    }
  }

  // Exact variance of the discretized quadratic form restricted to cells >= first.
  const Eigen::Map<const Eigen::VectorXd> om(omega_.data(), static_cast<Eigen::Index>(nodes_));
  auto variance_from = [&](std::size_t first) {
    const auto cols = static_cast<Eigen::Index>(nc - first);
    const auto f = static_cast<Eigen::Index>(first);
    const auto q1 = p1.middleCols(f, cols);
    const auto q2 = p2.middleCols(f, cols);
    const auto w = width.segment(f, cols);
    const Eigen::MatrixXd g11 = q1 * w.asDiagonal() * q1.transpose();
    const Eigen::MatrixXd g22 = q2 * w.asDiagonal() * q2.transpose();
    const Eigen::MatrixXd g12 = q1 * w.asDiagonal() * q2.transpose();
    const Eigen::MatrixXd kern = g11.cwiseProduct(g22) + g12.cwiseProduct(g12.transpose());
    const Eigen::VectorXd diag = q1.cwiseProduct(q2).transpose() * om;
    return om.dot(kern * om) - 2.0 * diag.cwiseProduct(w).squaredNorm();
  };
  const double var_full = variance_from(0);
  norm_full_ = std::sqrt(std::max(0.0, var_full));
  for (std::size_t i = 0; i < ms_.size(); ++i) {
    const double vn = variance_from(box_first_[i]);
    norm_near_.push_back(std::sqrt(std::max(0.0, vn)));
    norm_far_.push_back(std::sqrt(std::max(0.0, var_full - vn)));
  }
  const double ref = coefficient_norm_reference(h, *wl, PhiDomain::Full) * scale();
  deficit_fraction_ = 1.0 - var_full / (ref * ref);
  if (deficit_fraction_ > opt.max_deficit_fraction) {
    std::ostringstream os;
    os << "decomposition cells of width 2^-" << level << " lose " << deficit_fraction_
       << " of the coefficient variance, above " << opt.max_deficit_fraction;
    fail(ErrorKind::StepTooCoarse, os.str());
  }
}

CoefficientSampler::~CoefficientSampler() = default;

double CoefficientSampler::scale() const { return std::exp2(-j_ * h_.alpha()); }

CoefficientSampler::Draw CoefficientSampler::sample(std::uint64_t seed) const {
  const DyadicBrownian bm(seed, "brownian", top_level_);
  const auto inc = layout_increments(bm, cells_);
  const std::size_t nc = cells_.size(), nm = nodes_, nb = ms_.size();
  auto accumulate = [&](std::size_t c, std::vector<double>& y1, std::vector<double>& y2, std::vector<double>& d) {
    const double z = inc[c], z2 = z * z;
    const double* a = phi1_.data() + c * nm;
    const double* b = phi2_.data() + c * nm;
    for (std::size_t m = 0; m < nm; ++m) {
      y1[m] += a[m] * z;
      y2[m] += b[m] * z;
      d[m] += a[m] * b[m] * z2;
    }
  };
  // Full sums.
  std::vector<double> t1(nm, 0.0), t2(nm, 0.0), td(nm, 0.0);
  for (std::size_t c = 0; c < nc; ++c) accumulate(c, t1, t2, td);
  // Inside sums, right to left; outside sums, left to right.
  std::vector<std::vector<double>> in1(nb), in2(nb), ind(nb), out1(nb), out2(nb), outd(nb);
  {
    std::vector<double> y1(nm, 0.0), y2(nm, 0.0), d(nm, 0.0);
    std::size_t next = 0;
    for (std::size_t c = nc; c-- > 0;) {
      accumulate(c, y1, y2, d);
      while (next < nb && box_first_[next] == c) {
        in1[next] = y1;
        in2[next] = y2;
        ind[next] = d;
        ++next;
      }
    }
  }
  {
    std::vector<double> y1(nm, 0.0), y2(nm, 0.0), d(nm, 0.0);
    std::size_t c = 0;
    for (std::size_t i = nb; i-- > 0;) {
      for (; c < box_first_[i]; ++c) accumulate(c, y1, y2, d);
      out1[i] = y1;
      out2[i] = y2;
      outd[i] = d;
    }
  }
  Draw out;
  KahanSum direct;
  for (std::size_t m = 0; m < nm; ++m) direct.add(omega_[m] * (t1[m] * t2[m] - td[m]));
  out.direct = direct.value();
  for (std::size_t i = 0; i < nb; ++i) {
    KahanSum near, far;
    for (std::size_t m = 0; m < nm; ++m) {
      near.add(omega_[m] * (in1[i][m] * in2[i][m] - ind[i][m]));
      far.add(omega_[m] * (in1[i][m] * out2[i][m] + out1[i][m] * in2[i][m] + out1[i][m] * out2[i][m] - outd[i][m]));
    }
    out.near.push_back(near.value());
    out.far.push_back(far.value());
  }
  return out;
}

DecompositionReport split_coefficient(const HurstPair& h, int j, std::int64_t k, int m, std::uint64_t seed,
                                      const DecompositionOptions& opt) {
  const CoefficientSampler sampler(h, j, k, {m}, opt);
  const auto d = sampler.sample(seed);
  DecompositionReport r;
  r.j = j;
  r.k = k;
  r.m = m;
  r.seed = seed;
  r.c_near = d.near[0];
  r.c_far = d.far[0];
  r.c_direct = d.direct;
  r.norm_near_est = sampler.norm_near(0);
  r.norm_far_est = sampler.norm_far(0);
  r.box = coefficient_box(j, k, m, sampler.halfwidth());
  return r;
}

namespace {

// int_0^inf (D+y)^b (D+rho D+y)^c dy via y = D (t^{-q} - 1), q = 1/(gamma-1),
// gamma = -(b+c). The map makes the integrand (1 + rho t^q)^c, bounded and smooth.
class PowerTail {
 public:
  PowerTail(double b, double c, const std::vector<double>& t, const std::vector<double>& wt)
      : b_(b), c_(c), wt_(wt) {
    const double q = 1.0 / (-(b + c) - 1.0);
    for (double x : t) tq_.push_back(std::pow(x, q));
  }
  double operator()(double d, double rho) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < tq_.size(); ++i) acc += wt_[i] * std::pow(1.0 + rho * tq_[i], c_);
    return std::pow(d, b_ + c_ + 1.0) / (-(b_ + c_) - 1.0) * acc;
  }

 private:
  double b_, c_;
  std::vector<double> wt_, tq_;
};

struct PhiQuadrature {
  int v_panels;
  int s_panels;
};

// int int F over [-N,N]^2 for the square with lower side a (a = -inf: quadrant).
double phi_double_integral(const HurstPair& h, const SWeight& w, int n, double a, const PhiQuadrature& q) {
  const double b1 = h.h1() - 1.5, b2 = h.h2() - 1.5;
  const double p = 1.0 / (2.0 * h.alpha() - 1.0);
  const double v_max = std::pow(2.0 * n, 1.0 / p);
  std::vector<double> gx, gw, tx, tw;
  gauss_legendre(8, gx, gw);
  gauss_legendre(32, tx, tw);
  for (auto& x : tx) x = 0.5 * (x + 1.0);
  for (auto& x : tw) x *= 0.5;
  const bool tails = std::isfinite(a);
  const PowerTail t11(b1, b1, tx, tw), t22(b2, b2, tx, tw), t12(b1, b2, tx, tw), t21(b2, b1, tx, tw);
  KahanSum total;
  for (int pv = 0; pv < q.v_panels; ++pv) {
    const double v0 = v_max * pv / q.v_panels, v1 = v_max * (pv + 1) / q.v_panels;
    for (std::size_t iv = 0; iv < gx.size(); ++iv) {
      const double v = 0.5 * (v0 + v1) + 0.5 * (v1 - v0) * gx[iv];
      const double jac = 0.5 * (v1 - v0) * gw[iv] * p * std::pow(v, p - 1.0);
      const double r = std::pow(v, p);
      const double pg11 = power_gram(b1, b1, 0.0, r), pg22 = power_gram(b2, b2, 0.0, r);
      const double pg12 = power_gram(b1, b2, 0.0, r), pg21 = power_gram(b2, b1, 0.0, r);
      const double lo = -n, hi = n - r;
      KahanSum inner;
      for (int ps = 0; ps < q.s_panels; ++ps) {
        const double s0 = lo + (hi - lo) * ps / q.s_panels, s1 = lo + (hi - lo) * (ps + 1) / q.s_panels;
        for (std::size_t is = 0; is < gx.size(); ++is) {
          const double s = 0.5 * (s0 + s1) + 0.5 * (s1 - s0) * gx[is];
          const double ws = 0.5 * (s1 - s0) * gw[is] * w(s) * w(s + r);
          double g11 = pg11, g22 = pg22, g12 = pg12, g21 = pg21;
          if (tails) {
            const double d = s - a, rho = r / d;
            g11 -= t11(d, rho);
            g22 -= t22(d, rho);
            g12 -= t12(d, rho);
            g21 -= t21(d, rho);
          }
          inner.add(ws * (g11 * g22 + g12 * g21));
        }
      }
      total.add(jac * inner.value());
    }
  }
  // The integrand is symmetric; r > 0 covers half the square.
  return 2.0 * total.value();
}

double phi_norm_squared(const HurstPair& h, const DaubechiesWavelet& wl, double a) {
  const SWeight w(wl);
  const int n = wl.support_halfwidth;
  // The s-integrand is only Hoelder-smooth across integer knots, so the s
  // panels dominate the error budget.
  const double coarse = phi_double_integral(h, w, n, a, {24, 64 * n});
  const double fine = phi_double_integral(h, w, n, a, {48, 128 * n});
  if (std::abs(fine - coarse) > 1e-6 * std::abs(fine)) {
    std::ostringstream os;
    os << "Phi norm quadrature unresolved: " << coarse << " vs " << fine;
    fail(ErrorKind::ToleranceNotMet, os.str());
  }
  return 0.5 * fine;
}

}  // namespace

double phi_norm(const HurstPair& h, const DaubechiesWavelet& wavelet, PhiDomain domain, double m) {
  const int n = wavelet.support_halfwidth;
  switch (domain) {
    case PhiDomain::Empty:
      return 0.0;
    case PhiDomain::Full:
      return std::sqrt(phi_norm_squared(h, wavelet, -INFINITY));
    case PhiDomain::Square:
    case PhiDomain::Complement: {
      if (!(m >= 1.0)) fail(ErrorKind::ConfigInvalid, "square domain needs M >= 1");
      const double sq = phi_norm_squared(h, wavelet, -m * n);
      if (domain == PhiDomain::Square) return std::sqrt(sq);
      return std::sqrt(std::max(0.0, phi_norm_squared(h, wavelet, -INFINITY) - sq));
    }
  }
  return 0.0;
}

double coefficient_norm_reference(const HurstPair& h, const DaubechiesWavelet& wavelet, PhiDomain domain, double m) {
  return std::sqrt(2.0) * kernel_constant(h) * phi_norm(h, wavelet, domain, m);
}

TailReport near_tail_lower(const CoefficientSampler& sampler, std::size_t m_index, const std::vector<double>& y_grid,
                           std::uint64_t n, std::uint64_t seed, unsigned workers) {
  if (m_index >= sampler.ms().size()) fail(ErrorKind::OutOfRange, "M index");
  const double s = sampler.scale();
  return tail_estimate([&](std::uint64_t i) { return sampler.sample(replica_seed(seed, i)).near[m_index] / s; },
                       y_grid, n, workers);
}

void write_decomposition_csv(std::ostream& os, const std::vector<DecompositionReport>& rows) {
  os << "j,k,M,c_near,c_far\n";
  for (const auto& r : rows) {
    os << r.j << ',' << r.k << ',' << r.m << ',' << format_double(r.c_near) << ',' << format_double(r.c_far) << '\n';
  }
}

}  // namespace rlab
