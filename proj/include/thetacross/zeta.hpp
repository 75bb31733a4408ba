// Copyright 2026 the thetacross authors.
// SPDX-License-Identifier: Apache-2.0
//
// Certified evaluation of zeta on and near the critical line, of the
// Riemann-Siegel theta function, and of the zero-counting function N(t).
//
// zeta uses Euler-Maclaurin with N ~ 0.35 t leading terms, the trapezoid
// correction N^{-s}/2, the pole term N^{1-s}/(s-1), and an adaptive
// Bernoulli tail. The tail remainder after m correction terms is bounded by
//   |B_{2m+2}|/(2m+2)! * |poch(s, 2m+2)| * N^{-sigma-2m-1} / (sigma+2m+1),
// applied as a disk bound on both components. Per-term oscillation
// e^{-it log n} comes from the 64.128 fixed-point argument pipeline, so the
// phase t log n keeps ~128 fractional bits even at t ~ 10^5.
//
// theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log pi is computed by shifting
// the Gamma argument right by 16 and applying Stirling with eight Bernoulli
// terms; the remainder is bounded by |B_18|/306 * sec(phi/2)^18 / |z|^17
// where phi = arg z. The sixteen shift angles atan2(t/2, k + 1/4) are then
// subtracted.
//
// N(t) uses the argument principle on the rectangle corners 2, 2+it,
// 1/2+it: N(t) = theta(t)/pi + 1 + (arg variation along both legs)/pi. The
// vertical leg stays inside |zeta - 1| <= pi^2/6 - 1 < 1, so its continuous
// variation is the principal argument at the top. The horizontal leg is
// certified by adaptive bisection in sigma: on each sub-segment a rectangular
// enclosure of zeta([a,b] + it) is rotated so it lies strictly in the right
// half-plane, which pins the branch and lets endpoint arguments telescope.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "thetacross/constants.hpp"
#include "thetacross/double_double.hpp"
#include "thetacross/fixed192.hpp"
#include "thetacross/interval.hpp"
#include "thetacross/kernels.hpp"

namespace thetacross {

// Complex numbers in midpoint-radius form.
struct CMR {
  MidRad re, im;
};

inline CMR cmr_add(const CMR& a, const CMR& b) {
  return CMR{mr_add(a.re, b.re), mr_add(a.im, b.im)};
}

inline CMR cmr_sub(const CMR& a, const CMR& b) {
  return CMR{mr_sub(a.re, b.re), mr_sub(a.im, b.im)};
}

inline CMR cmr_mul(const CMR& a, const CMR& b) {
  return CMR{mr_sub(mr_mul(a.re, b.re), mr_mul(a.im, b.im)),
             mr_add(mr_mul(a.re, b.im), mr_mul(a.im, b.re))};
}

inline CMR cmr_scale(const CMR& a, const MidRad& c) {
  return CMR{mr_mul(a.re, c), mr_mul(a.im, c)};
}

inline CMR cmr_scale_d(const CMR& a, double c) {
  return CMR{mr_mul_d(a.re, c), mr_mul_d(a.im, c)};
}

// Multiply by the exact complex point c + id.
inline CMR cmr_mul_point(const CMR& a, double c, double d) {
  return CMR{mr_sub(mr_mul_d(a.re, c), mr_mul_d(a.im, d)),
             mr_add(mr_mul_d(a.im, c), mr_mul_d(a.re, d))};
}

// Divide by the exact complex point c + id (must be away from zero).
inline CMR cmr_div_point(const CMR& a, double c, double d) {
  using namespace detail;
  dd den = dd_add(dd_mul_d(dd(c), c), dd_mul_d(dd(d), d));
  MidRad denM(den, rup(kDDAddRel * dd_abs_upper(den)));
  CMR num = cmr_mul_point(a, c, -d);
  return CMR{mr_div(num.re, denM), mr_div(num.im, denM)};
}

inline double cmr_abs_hi(const CMR& a) {
  using namespace detail;
  double mre = add_ru(dd_abs_upper(a.re.mid), a.re.rad);
  double mim = add_ru(dd_abs_upper(a.im.mid), a.im.rad);
  return rup(std::sqrt(add_ru(mul_ru(mre, mre), mul_ru(mim, mim))));
}

// Complex rectangles with interval components.
struct CIBox {
  Interval re, im;
};

inline CIBox ci_from_cmr(const CMR& a) {
  return CIBox{to_interval(a.re), to_interval(a.im)};
}

inline CIBox ci_add(const CIBox& a, const CIBox& b) {
  return CIBox{a.re + b.re, a.im + b.im};
}

inline CIBox ci_mul(const CIBox& a, const CIBox& b) {
  return CIBox{a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline CIBox ci_scale(const CIBox& a, const Interval& c) {
  return CIBox{a.re * c, a.im * c};
}

inline CIBox ci_div(const CIBox& a, const CIBox& b) {
  Interval den = square(b.re) + square(b.im);
  CIBox num = ci_mul(a, CIBox{b.re, -b.im});
  return CIBox{num.re / den, num.im / den};
}

inline double ci_abs_hi(const CIBox& a) {
  using namespace detail;
  double mre = mag(a.re), mim = mag(a.im);
  return rup(std::sqrt(add_ru(mul_ru(mre, mre), mul_ru(mim, mim))));
}

namespace zeta_detail {

inline std::size_t em_length(double t) {
  double n = std::ceil(0.35 * std::abs(t));
  return n < 24.0 ? 24 : static_cast<std::size_t>(n);
}

// Per-n data reused across evaluations: log n in fixed point for the phase
// t log n, and n^{-1/2} for the critical-line modulus.
struct TermData {
  Fixed192 ln_fx;      // |value(ln_fx) - log n| <= ln_rad
  double ln_rad;
  MidRad ln_mr;        // log n for the off-line modulus n^{-sigma}
  dd inv_sqrt;         // n^{-1/2}, relative error <= inv_sqrt_rel
  double inv_sqrt_rad;
};

inline TermData make_term(std::uint64_t n) {
  using namespace detail;
  TermData td;
  td.ln_mr = log_mr(static_cast<double>(n));
  td.ln_fx = fixed_from_dd_trunc(td.ln_mr.mid);
  td.ln_rad = rup(td.ln_mr.rad + kFixedFromDDErr);
  dd s = dd_sqrt(dd(static_cast<double>(n)));
  td.inv_sqrt = dd_div(dd(1.0), s);
  td.inv_sqrt_rad = rup(dd_abs_upper(td.inv_sqrt) * 0x1p-98);
  return td;
}

inline const std::vector<TermData>& term_cache() {
  static const std::vector<TermData> cache = [] {
    std::vector<TermData> v;
    v.reserve(2048);
    for (std::uint64_t n = 1; n <= 2048; ++n) v.push_back(make_term(n));
    return v;
  }();
  return cache;
}

inline SinCos term_sincos(double t, const Fixed192& t_fx, const TermData& td) {
  using namespace detail;
  Fixed192 prod = fixed_mul_trunc(t_fx, td.ln_fx);
  double prad = add_ru(mul_ru(t, td.ln_rad), 0x1p-128);
  return sincos_fixed(prod, prad);
}

// c_k = B_{2k}/(2k)! for k = 1..24 as intervals; the factorial is built as
// an interval product, so every entry is a true enclosure.
inline const std::array<Interval, 24>& bern_fact_interval() {
  static const std::array<Interval, 24> tab = [] {
    std::array<Interval, 24> v{};
    Interval fact(1.0, 1.0);
    for (int k = 1; k <= 24; ++k) {
      fact = fact * Interval(static_cast<double>((2 * k - 1) * (2 * k)));
      v[k - 1] = constants::bernoulli_2k(k) / fact;
    }
    return v;
  }();
  return tab;
}

inline const std::array<MidRad, 24>& bern_fact_mr() {
  static const std::array<MidRad, 24> tab = [] {
    std::array<MidRad, 24> v{};
    const auto& src = bern_fact_interval();
    for (int k = 0; k < 24; ++k) v[k] = to_midrad(src[k]);
    return v;
  }();
  return tab;
}

// Stirling coefficients B_{2j}/((2j)(2j-1)) for j = 1..9.
inline const std::array<Interval, 9>& stirling_coeff() {
  static const std::array<Interval, 9> tab = [] {
    std::array<Interval, 9> v{};
    for (int j = 1; j <= 9; ++j)
      v[j - 1] = constants::bernoulli_2k(j) /
                 Interval(static_cast<double>((2 * j) * (2 * j - 1)));
    return v;
  }();
  return tab;
}

inline constexpr double kTailTol = 0x1p-77;

// Adaptive Bernoulli tail, critical-line flavor. s = 1/2 + it, u = N^{-s}.
// Only the product w_k = poch(s, 2k-1) * N^{1-s-2k} is tracked: the two
// factors separately overflow and underflow double range at large |s|.
// At the top of iteration k the accumulator holds k-1 correction terms and
// the remainder for that state is bounded by
//   |c_k| * |w_k| * |s+2k-1| / (sigma+2k-1).
inline void tail_crit(MidRad& acc_re, MidRad& acc_im, const CMR& u,
                      std::size_t n_len, double t) {
  using namespace detail;
  const auto& ck = bern_fact_mr();
  const double dn = static_cast<double>(n_len);
  dd q1 = dd_div(dd(1.0), dd(dn));
  MidRad inv_n(q1, rup(dd_abs_upper(q1) * 0x1p-99));
  dd q2 = dd_div(dd(1.0), dd(dn * dn));
  MidRad inv_n2(q2, rup(dd_abs_upper(q2) * 0x1p-99));

  CMR w = cmr_scale(cmr_mul_point(u, 0.5, t), inv_n);  // s * N^{-s-1}
  double prev_rb = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 24; ++k) {
    double c1 = 0.5 + (2.0 * k - 1.0);
    double hyp = rup(std::sqrt(add_ru(mul_ru(c1, c1), mul_ru(t, t))));
    double cb = mag(to_interval(ck[k - 1]));
    double rb = div_ru(mul_ru(mul_ru(cb, cmr_abs_hi(w)), hyp), c1);
    double scale = std::fmax(1.0, std::abs(acc_re.mid.hi));
    if (rb <= kTailTol * scale || rb >= prev_rb || k == 24) {
      acc_re.rad = rup(acc_re.rad + rb);
      acc_im.rad = rup(acc_im.rad + rb);
      return;
    }
    prev_rb = rb;
    CMR term = cmr_scale(w, ck[k - 1]);
    acc_re = mr_add(acc_re, term.re);
    acc_im = mr_add(acc_im, term.im);
    w = cmr_scale(cmr_mul_point(cmr_mul_point(w, 0.5 + (2.0 * k - 1.0), t),
                                0.5 + 2.0 * k, t),
                  inv_n2);
  }
}

// Adaptive Bernoulli tail, rectangle flavor. s = sigma + it over a box.
inline void tail_box(CIBox& acc, const CIBox& u, std::size_t n_len,
                     const Interval& sigma, double t) {
  using namespace detail;
  const auto& ck = bern_fact_interval();
  const double dn = static_cast<double>(n_len);
  Interval inv_n = Interval(1.0) / Interval(dn);
  Interval inv_n2 = Interval(1.0) / Interval(dn * dn);
  const Interval ti(t, t);

  CIBox w = ci_scale(ci_mul(u, CIBox{sigma, ti}), inv_n);
  double prev_rb = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 24; ++k) {
    double c1_lo = next_down(sigma.lo + (2.0 * k - 1.0));
    double c1_hi = add_ru(sigma.hi, 2.0 * k - 1.0);
    double hyp = rup(std::sqrt(add_ru(mul_ru(c1_hi, c1_hi), mul_ru(t, t))));
    double cb = mag(ck[k - 1]);
    double rb = div_ru(mul_ru(mul_ru(cb, ci_abs_hi(w)), hyp), c1_lo);
    double scale = std::fmax(1.0, mag(acc.re));
    if (rb <= kTailTol * scale || rb >= prev_rb || k == 24) {
      Interval slop(-rb, rb);
      acc.re = acc.re + slop;
      acc.im = acc.im + slop;
      return;
    }
    prev_rb = rb;
    acc = ci_add(acc, ci_scale(w, ck[k - 1]));
    w = ci_scale(ci_mul(ci_mul(w, CIBox{sigma + Interval(2.0 * k - 1.0), ti}),
                        CIBox{sigma + Interval(2.0 * k), ti}),
                 inv_n2);
  }
}

}  // namespace zeta_detail

// zeta(1/2 + it), certified, for t in [2, 2.2e5].
inline CMR zeta_crit(double t) {
  using namespace detail;
  if (!(t >= 2.0 && t <= 2.2e5))
    throw std::domain_error("zeta_crit: t must lie in [2, 2.2e5]");
  const std::size_t n_len = zeta_detail::em_length(t);
  const auto& cache = zeta_detail::term_cache();
  const Fixed192 t_fx = fixed_from_double_exact(t);

  MidRad acc_re(dd(1.0), 0.0), acc_im(dd(0.0), 0.0);
  for (std::size_t n = 2; n < n_len; ++n) {
    zeta_detail::TermData fresh;
    const zeta_detail::TermData& td =
        n <= cache.size() ? cache[n - 1] : (fresh = zeta_detail::make_term(n));
    SinCos sc = zeta_detail::term_sincos(t, t_fx, td);
    MidRad isq(td.inv_sqrt, td.inv_sqrt_rad);
    acc_re = mr_add(acc_re, mr_mul(isq, sc.cos));
    acc_im = mr_sub(acc_im, mr_mul(isq, sc.sin));
  }

  zeta_detail::TermData fresh_n;
  const zeta_detail::TermData& tdn =
      n_len <= cache.size() ? cache[n_len - 1]
                            : (fresh_n = zeta_detail::make_term(n_len));
  SinCos scn = zeta_detail::term_sincos(t, t_fx, tdn);
  MidRad isqn(tdn.inv_sqrt, tdn.inv_sqrt_rad);
  CMR u{mr_mul(isqn, scn.cos), mr_neg(mr_mul(isqn, scn.sin))};

  acc_re = mr_add(acc_re, mr_mul_d(u.re, 0.5));
  acc_im = mr_add(acc_im, mr_mul_d(u.im, 0.5));

  CMR pole = cmr_div_point(cmr_scale_d(u, static_cast<double>(n_len)), -0.5, t);
  acc_re = mr_add(acc_re, pole.re);
  acc_im = mr_add(acc_im, pole.im);

  zeta_detail::tail_crit(acc_re, acc_im, u, n_len, t);
  return CMR{acc_re, acc_im};
}

// zeta over the rectangle sigma + it, sigma an interval in [0.45, 4], t in
// [2, 2.2e5] exact. Degenerate sigma gives a point evaluation off the line.
inline CIBox zeta_box(const Interval& sigma, double t) {
  using namespace detail;
  if (!(sigma.lo >= 0.45 && sigma.hi <= 4.0))
    throw std::domain_error("zeta_box: sigma must lie within [0.45, 4]");
  if (!(t >= 2.0 && t <= 2.2e5))
    throw std::domain_error("zeta_box: t must lie in [2, 2.2e5]");
  const std::size_t n_len = zeta_detail::em_length(t);
  const auto& cache = zeta_detail::term_cache();
  const Fixed192 t_fx = fixed_from_double_exact(t);
  const Interval msig = -sigma;

  CIBox acc{Interval(1.0, 1.0), Interval(0.0, 0.0)};
  for (std::size_t n = 2; n < n_len; ++n) {
    zeta_detail::TermData fresh;
    const zeta_detail::TermData& td =
        n <= cache.size() ? cache[n - 1] : (fresh = zeta_detail::make_term(n));
    SinCos sc = zeta_detail::term_sincos(t, t_fx, td);
    Interval npow = exp_interval(msig * to_interval(td.ln_mr));
    acc.re = acc.re + npow * to_interval(sc.cos);
    acc.im = acc.im - npow * to_interval(sc.sin);
  }

  zeta_detail::TermData fresh_n;
  const zeta_detail::TermData& tdn =
      n_len <= cache.size() ? cache[n_len - 1]
                            : (fresh_n = zeta_detail::make_term(n_len));
  SinCos scn = zeta_detail::term_sincos(t, t_fx, tdn);
  Interval npown = exp_interval(msig * to_interval(tdn.ln_mr));
  CIBox u{npown * to_interval(scn.cos), -(npown * to_interval(scn.sin))};

  acc.re = acc.re + mul_pow2(u.re, -1);
  acc.im = acc.im + mul_pow2(u.im, -1);

  const double dn = static_cast<double>(n_len);
  CIBox pole = ci_div(ci_scale(u, Interval(dn, dn)),
                      CIBox{sigma - Interval(1.0), Interval(t, t)});
  acc = ci_add(acc, pole);

  zeta_detail::tail_box(acc, u, n_len, sigma, t);
  return acc;
}

// Riemann-Siegel theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log pi,
// certified, for t in [4, 2.2e5].
inline MidRad theta_rs(double t) {
  using namespace detail;
  if (!(t >= 4.0 && t <= 2.2e5))
    throw std::domain_error("theta_rs: t must lie in [4, 2.2e5]");
  const double y = 0.5 * t;          // exact
  const double x = 16.25;            // shifted abscissa, exact
  const auto& st = zeta_detail::stirling_coeff();

  dd y2 = dd_mul_d(dd(y), y);        // exact by two_prod
  dd z2 = dd_add(dd(264.0625), y2);  // x^2 exact
  MidRad z2m(z2, rup(kDDAddRel * dd_abs_upper(z2)));

  MidRad lg = mr_mul_d(log_mr(z2m), 0.5);
  MidRad ang = atan2_pos_x_mr(MidRad(dd(y), 0.0), MidRad(dd(x), 0.0));

  // Im[(z - 1/2) log z] - y with z = x + iy.
  MidRad th = mr_sub(mr_add(mr_mul_d(ang, x - 0.5), mr_mul_d(lg, y)),
                     MidRad(dd(y), 0.0));

  // Stirling correction: sum_j st_j * Im(z^{-(2j-1)}).
  MidRad wre = mr_div(MidRad(dd(x), 0.0), z2m);
  MidRad wim = mr_neg(mr_div(MidRad(dd(y), 0.0), z2m));
  CMR w{wre, wim};
  CMR w2 = cmr_mul(w, w);
  CMR p = w;
  for (int j = 1; j <= 8; ++j) {
    th = mr_add(th, mr_mul(p.im, to_midrad(st[j - 1])));
    p = cmr_mul(p, w2);
  }

  // Stirling remainder: |B_18|/306 * sec(phi/2)^18 / |z|^17.
  Interval z_abs = sqrt(to_interval(z2m));
  Interval sec2 = Interval(2.0) / (Interval(1.0) + Interval(x) / z_abs);
  double rb = div_ru(mul_ru(mag(st[8]), powi(sec2, 9).hi), powi(z_abs, 17).lo);
  th.rad = rup(th.rad + rb);

  // Unshift: subtract the sixteen angles arg(1/4 + k + iy).
  for (int k = 0; k < 16; ++k) {
    th = mr_sub(th, atan2_pos_x_mr(MidRad(dd(y), 0.0),
                                   MidRad(dd(0.25 + k), 0.0)));
  }

  return mr_sub(th, mr_mul_d(constants::ln_pi_mr(), y));
}

// Hardy Z(t) = e^{i theta(t)} zeta(1/2 + it), real-valued, certified. The
// imaginary part of the rotated product must straddle zero; a violation
// means an internal inconsistency, not a numeric width problem.
inline MidRad z_t(double t) {
  MidRad th = theta_rs(t);
  SinCos sc = sincos_dd(th.mid, th.rad);
  CMR ze = zeta_crit(t);
  MidRad zre = mr_sub(mr_mul(sc.cos, ze.re), mr_mul(sc.sin, ze.im));
  MidRad zim = mr_add(mr_mul(sc.cos, ze.im), mr_mul(sc.sin, ze.re));
  if (!contains_zero(to_interval(zim)))
    throw std::logic_error("z_t: rotated zeta is not certifiably real");
  return zre;
}

namespace zeta_detail {

// Certified continuous argument variation of zeta along sigma: 2 -> 1/2 at
// height t. Empty when a sub-segment cannot be pinned to a half-plane.
inline std::optional<Interval> horizontal_arg(double t) {
  struct Walker {
    double t;
    int evals = 0;
    std::optional<Interval> run(double a, double b, const CIBox& za,
                                const CIBox& zb, int depth) {
      if (depth > 36 || b - a < 1e-6 || ++evals > 4096) return std::nullopt;
      CIBox box = zeta_box(Interval(a, b), t);
      double phi = std::atan2(0.5 * (box.im.lo + box.im.hi),
                              0.5 * (box.re.lo + box.re.hi));
      Interval c(std::cos(phi)), d(std::sin(phi));
      if (certainly_positive(box.re * c + box.im * d)) {
        Interval ra = atan2_pos_x_interval(za.im * c - za.re * d,
                                           za.re * c + za.im * d);
        Interval rb = atan2_pos_x_interval(zb.im * c - zb.re * d,
                                           zb.re * c + zb.im * d);
        return ra - rb;
      }
      double m = 0.5 * (a + b);
      CIBox zm = zeta_box(Interval(m, m), t);
      auto left = run(a, m, za, zm, depth + 1);
      if (!left) return std::nullopt;
      auto right = run(m, b, zm, zb, depth + 1);
      if (!right) return std::nullopt;
      return *left + *right;
    }
  };
  Walker w{t};
  CIBox zh = zeta_box(Interval(0.5, 0.5), t);
  CIBox z2 = zeta_box(Interval(2.0, 2.0), t);
  return w.run(0.5, 2.0, zh, z2, 0);
}

}  // namespace zeta_detail

struct ZeroCount {
  std::uint64_t count;
  double t_used;  // >= requested height; nudged off zeros of Z
};

// Number of zeros of zeta with 0 < Im s <= t_used, certified by the
// argument principle. The requested height is nudged upward in steps of
// 1/16 until Z is certifiably nonzero and both legs certify.
inline ZeroCount count_zeros(double t) {
  if (!(t >= 14.0 && t <= 2.0e5))
    throw std::domain_error("count_zeros: t must lie in [14, 2e5]");
  const Interval pi_i = constants::pi_interval();
  double tu = t;
  for (int attempt = 0; attempt < 64; ++attempt, tu += 0.0625) {
    Interval zi = to_interval(z_t(tu));
    if (!(zi.lo > 0.01 || zi.hi < -0.01)) continue;

    CIBox top = zeta_box(Interval(2.0, 2.0), tu);
    if (!certainly_positive(top.re)) continue;
    Interval dvert = atan2_pos_x_interval(top.im, top.re);

    auto dhor = zeta_detail::horizontal_arg(tu);
    if (!dhor) continue;

    Interval count = to_interval(theta_rs(tu)) / pi_i + Interval(1.0) +
                     (dvert + *dhor) / pi_i;
    double cl = std::ceil(count.lo), fh = std::floor(count.hi);
    if (cl == fh && cl >= 0.0)
      return ZeroCount{static_cast<std::uint64_t>(cl), tu};
  }
  throw std::runtime_error("count_zeros: no certifiable height near request");
}

}  // namespace thetacross
