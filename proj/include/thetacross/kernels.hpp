// Copyright 2026 the thetacross authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Certified elementary functions. Each kernel works in double-double with a
// classical reduction (exp: x = k ln2 + r with a three-part ln2 so k*ln2_hi
// and k*ln2_me are exact; log: atanh series after scaling the mantissa into
// [sqrt(1/2), sqrt(2)); sin/cos: quadrant reduction against a three-part
// pi/2 after the caller's mod-2pi reduction in 192-bit fixed point; atan:
// three half-angle steps then the alternating series) and returns a MidRad
// whose radius uses a hand-derived error constant. The constants (k*Rel /
// k*Abs below) are deliberately 10-30x above the worst case the analysis
// allows, and the test suite fuzzes every kernel against 200-bit MPFR to
// confirm actual errors sit far inside them. Interval versions evaluate the
// MidRad kernel at endpoints where the function is monotone, and handle
// quadrant extrema explicitly for sin/cos over wide intervals.

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include "thetacross/interval.hpp"
#include "thetacross/double_double.hpp"
#include "thetacross/constants.hpp"
#include "thetacross/fixed192.hpp"

namespace thetacross {

inline constexpr double kExpKernelRel = 0x1p-90;
inline constexpr double kLogKernelRel = 0x1p-88;
inline constexpr double kSinCosKernelAbs = 0x1p-88;
inline constexpr double kAtanKernelAbs = 0x1p-85;

namespace detail {

inline const std::array<dd, 65>& dd_inv_int() {
  static const std::array<dd, 65> table = [] {
    std::array<dd, 65> t{};
    t[0] = dd(0.0);
    for (int n = 1; n <= 64; ++n) t[n] = dd_div(dd(1.0), dd((double)n));
    return t;
  }();
  return table;
}

inline const std::array<dd, 33>& dd_inv_factorial() {
  // index n holds 1/n!
  static const std::array<dd, 33> table = [] {
    std::array<dd, 33> t{};
    t[0] = dd(1.0);
    for (int n = 1; n <= 32; ++n) t[n] = dd_mul(t[n - 1], dd_inv_int()[n]);
    return t;
  }();
  return table;
}

inline dd ln2_dd() {
  using namespace constants;
  static const dd v = dd_add(dd_add(dd(k_ln2_hi), dd(k_ln2_me)), dd(k_ln2_lo));
  return v;
}

}  // namespace detail

// ---- exp ----

inline MidRad exp_mr(const MidRad& x) {
  using namespace detail;
  using namespace constants;
  double xh = x.mid.hi;
  if (x.rad > 0x1p-8) throw std::domain_error("exp_mr: input radius too large");
  if (xh > 709.7) throw std::overflow_error("exp_mr: result exceeds double range");
  if (xh < -745.0) {
    // Value in (0, 2^-1074]; return the enclosure [0, tiny].
    double tiny = 0x1p-1073;
    return MidRad(dd(0x1p-1074), tiny);
  }
  int k = (int)std::lround(xh * 1.4426950408889634);
  // r = x - k*ln2 using the three-part constant: the first two products are
  // exact for |k| < 2^20, and x.mid.hi - k*ln2_hi is exact by Sterbenz.
  double r0 = xh - (double)k * k_ln2_hi;
  dd r = dd_from_sum(r0, -(double)k * k_ln2_me);
  r = dd_add(r, dd(x.mid.lo));
  double pl_h, pl_l;
  detail::two_prod((double)k, k_ln2_lo, pl_h, pl_l);
  r = dd_sub(r, dd(pl_h, pl_l));

  // Taylor sum_{j<=24} r^j / j!, nested so coefficients stay double-double.
  const auto& inv = dd_inv_int();
  dd p = dd_add_d(dd_mul(r, inv[24]), 1.0);
  for (int j = 23; j >= 1; --j) {
    p = dd_add_d(dd_mul(dd_mul(r, inv[j]), p), 1.0);
  }

  dd res(std::ldexp(p.hi, k), std::ldexp(p.lo, k));
  double kernel = detail::rup(kExpKernelRel * dd_abs_upper(res) +
                              ((double)std::abs(k) + 1.0) * k_ln2_err * dd_abs_upper(res) +
                              0x1p-1070);
  // Input radius propagates through the derivative exp(x) <= |res|(1 + eps).
  double prop = detail::rup(dd_abs_upper(res) * detail::rup(x.rad * (1.0 + 2.0 * x.rad)) * (1.0 + 0x1p-80));
  return MidRad(res, detail::rup(kernel + prop));
}

inline Interval exp_interval(const Interval& a) {
  Interval lo = to_interval(exp_mr(MidRad(dd(a.lo), 0.0)));
  Interval hi = to_interval(exp_mr(MidRad(dd(a.hi), 0.0)));
  return Interval(std::fmax(0.0, lo.lo), hi.hi);
}

// ---- log ----

namespace detail {
inline dd log_dd_core(const dd& a) {  // a.hi > 0, finite
  int e;
  std::frexp(a.hi, &e);
  dd m(std::ldexp(a.hi, -e), std::ldexp(a.lo, -e));
  if (m.hi < 0.70710678118654752) {
    m = dd(m.hi * 2.0, m.lo * 2.0);
    e -= 1;
  }
  // s = (m-1)/(m+1); log m = 2 atanh(s) = 2 sum u^j s / (2j+1), u = s^2.
  dd s = dd_div(dd_add_d(m, -1.0), dd_add_d(m, 1.0));
  dd u = dd_mul(s, s);
  const auto& inv = dd_inv_int();
  dd t = inv[43];
  for (int j = 20; j >= 0; --j) {
    t = dd_add(dd_mul(u, t), inv[2 * j + 1]);
  }
  dd series = dd_mul(s, t);
  series = dd(series.hi * 2.0, series.lo * 2.0);
  return dd_add(dd_mul_d(ln2_dd(), (double)e), series);
}
}  // namespace detail

inline MidRad log_mr(const MidRad& x) {
  double lower = x.mid.hi + (x.mid.lo - x.rad);
  if (!(lower > 0.0)) throw std::domain_error("log_mr: argument not certainly positive");
  dd res = detail::log_dd_core(x.mid);
  double kernel = detail::rup(kLogKernelRel * (dd_abs_upper(res) + 1.0));
  double prop = detail::rup(x.rad / detail::next_down(lower * (1.0 - 0x1p-50)));
  return MidRad(res, detail::rup(kernel + prop));
}

inline MidRad log_mr(double x) { return log_mr(MidRad(dd(x), 0.0)); }

inline Interval log_interval(const Interval& a) {
  if (!(a.lo > 0.0)) throw std::domain_error("log_interval: argument not certainly positive");
  dd rlo = detail::log_dd_core(dd(a.lo));
  dd rhi = detail::log_dd_core(dd(a.hi));
  double klo = detail::rup(kLogKernelRel * (dd_abs_upper(rlo) + 1.0));
  double khi = detail::rup(kLogKernelRel * (dd_abs_upper(rhi) + 1.0));
  return Interval(to_interval(MidRad(rlo, klo)).lo, to_interval(MidRad(rhi, khi)).hi);
}

inline Interval log10_interval(const Interval& a) {
  return log_interval(a) / constants::ln10_interval();
}

// x^p for real p: exp(p log x); requires x certainly positive.
inline Interval pow_interval(const Interval& x, const Interval& p) {
  return exp_interval(p * log_interval(x));
}

// ---- sin / cos ----

struct SinCos {
  MidRad sin;
  MidRad cos;
};

namespace detail {

// r must lie in [-0.8, 2pi + 0.8]; rad_in is the caller's argument error.
inline SinCos sincos_reduced(const dd& r, double rad_in) {
  using namespace constants;
  int q = (int)std::lround(r.hi * 0.6366197723675814);  // 2/pi
  double y0 = r.hi - (double)q * k_pi_half3_hi;
  dd y = dd_from_sum(y0, -(double)q * k_pi_half3_me);
  y = dd_add(y, dd(r.lo));
  double ph, pl;
  two_prod((double)q, k_pi_half3_lo, ph, pl);
  y = dd_sub(y, dd(ph, pl));

  dd u = dd_mul(y, y);
  const auto& invf = dd_inv_factorial();
  // sin(y)/y = sum (-1)^j y^{2j} / (2j+1)!, cos(y) = sum (-1)^j y^{2j} / (2j)!
  dd ts = invf[27];
  for (int j = 12; j >= 0; --j) {
    dd c = invf[2 * j + 1];
    ts = dd_sub(c, dd_mul(u, ts));
  }
  dd sin_y = dd_mul(y, ts);
  dd tc = invf[28];
  for (int j = 13; j >= 0; --j) {
    tc = dd_sub(invf[2 * j], dd_mul(u, tc));
  }
  dd cos_y = tc;

  dd s, c;
  switch (((q % 4) + 4) % 4) {
    case 0: s = sin_y; c = cos_y; break;
    case 1: s = cos_y; c = dd_neg(sin_y); break;
    case 2: s = dd_neg(sin_y); c = dd_neg(cos_y); break;
    default: s = dd_neg(cos_y); c = sin_y; break;
  }
  double rad = rup(rup(kSinCosKernelAbs + (double)std::abs(q) * k_pi_half3_err) + rad_in);
  return SinCos{MidRad(s, rad), MidRad(c, rad)};
}

}  // namespace detail

// sin/cos of an angle held in 64.128 fixed point (plus its error bound).
inline SinCos sincos_fixed(const Fixed192& angle, double angle_rad) {
  Reduced2Pi red = fixed_reduce_2pi(angle, angle_rad);
  return detail::sincos_reduced(red.value, red.rad);
}

// sin/cos of a double-double angle of any magnitude below 2^52.
inline SinCos sincos_dd(const dd& angle, double angle_rad) {
  if (angle.hi < 0.0 || (angle.hi == 0.0 && angle.lo < 0.0)) {
    SinCos sc = sincos_dd(dd_neg(angle), angle_rad);
    return SinCos{MidRad(dd_neg(sc.sin.mid), sc.sin.rad), sc.cos};
  }
  Fixed192 fx = fixed_from_dd_trunc(angle);
  return sincos_fixed(fx, detail::rup(angle_rad + kFixedFromDDErr));
}

namespace detail {

// Quadrant bookkeeping for interval sin/cos: reduce an endpoint and report
// both the reduced dd and the period index.
struct EndpointRed {
  dd r;
  double rad;
  double k;
};

inline EndpointRed reduce_endpoint(double x) {
  if (x < 0.0) {
    EndpointRed pos = reduce_endpoint(-x);
    // -x = pos.k * 2pi + pos.r, so x = -(pos.k + 1) * 2pi + (2pi - pos.r).
    dd r = dd_sub(dd(constants::k_two_pi_hi, constants::k_two_pi_lo), pos.r);
    double rad = rup(pos.rad + constants::k_two_pi_err);
    return EndpointRed{r, rad, -(pos.k + 1.0)};
  }
  Fixed192 fx = fixed_from_double_trunc(x);
  Reduced2Pi red = fixed_reduce_2pi(fx, 0x1p-127);
  return EndpointRed{red.value, red.rad, red.k};
}

// Does some point congruent to c (mod 2pi), c in [0, 2pi), lie within the
// reduced span? Conservative: "maybe" counts as yes.
inline bool span_contains(const EndpointRed& lo, const EndpointRed& hi, double c) {
  const double fuzz = 0x1p-40;
  double rlo = lo.r.hi, rhi = hi.r.hi;
  if (lo.k == hi.k) return rlo <= c + fuzz && c - fuzz <= rhi;
  if (hi.k == lo.k + 1.0) return c + fuzz >= rlo || c - fuzz <= rhi;
  return true;  // spans a full period
}

}  // namespace detail

inline Interval sin_interval(const Interval& a) {
  using namespace detail;
  if (width(a) >= 6.3) return Interval(-1.0, 1.0);
  EndpointRed lo = reduce_endpoint(a.lo), hi = reduce_endpoint(a.hi);
  SinCos slo = sincos_reduced(lo.r, lo.rad);
  SinCos shi = sincos_reduced(hi.r, hi.rad);
  Interval out = hull(to_interval(slo.sin), to_interval(shi.sin));
  if (span_contains(lo, hi, 1.5707963267948966)) out = hull(out, Interval(1.0));
  if (span_contains(lo, hi, 4.71238898038469)) out = hull(out, Interval(-1.0));
  return intersect(out, Interval(-1.0, 1.0));
}

inline Interval cos_interval(const Interval& a) {
  using namespace detail;
  if (width(a) >= 6.3) return Interval(-1.0, 1.0);
  EndpointRed lo = reduce_endpoint(a.lo), hi = reduce_endpoint(a.hi);
  SinCos slo = sincos_reduced(lo.r, lo.rad);
  SinCos shi = sincos_reduced(hi.r, hi.rad);
  Interval out = hull(to_interval(slo.cos), to_interval(shi.cos));
  if (span_contains(lo, hi, 0.0) || span_contains(lo, hi, 6.283185307179586))
    out = hull(out, Interval(1.0));
  if (span_contains(lo, hi, 3.141592653589793)) out = hull(out, Interval(-1.0));
  return intersect(out, Interval(-1.0, 1.0));
}

// ---- atan ----

namespace detail {

inline dd atan_dd_core(dd x) {  // |x| <= 1.0000001
  // Three half-angle reductions: atan(x) = 2 atan(x / (1 + sqrt(1 + x^2))).
  for (int i = 0; i < 3; ++i) {
    dd s = dd_sqrt(dd_add_d(dd_mul(x, x), 1.0));
    x = dd_div(x, dd_add_d(s, 1.0));
  }
  dd u = dd_mul(x, x);
  const auto& inv = dd_inv_int();
  // atan(x)/x = sum (-1)^j u^j / (2j+1), |x| <= tan(pi/32.?) ~ 0.0985.
  dd t = inv[33];
  for (int j = 15; j >= 0; --j) {
    t = dd_sub(inv[2 * j + 1], dd_mul(u, t));
  }
  dd r = dd_mul(x, t);
  return dd(r.hi * 8.0, r.lo * 8.0);
}

}  // namespace detail

inline MidRad atan_mr(const MidRad& x) {
  using namespace detail;
  double ax = std::abs(x.mid.hi);
  dd core;
  if (ax <= 1.0) {
    core = atan_dd_core(x.mid);
  } else {
    dd recip = dd_div(dd(1.0), x.mid);
    dd base(constants::k_pi_half_hi, constants::k_pi_half_lo);
    if (x.mid.hi < 0.0) base = dd_neg(base);
    core = dd_sub(base, atan_dd_core(recip));
  }
  double rad = rup(rup(kAtanKernelAbs + constants::k_pi_half_err) + x.rad);
  return MidRad(core, rad);
}

inline Interval atan_interval(const Interval& a) {
  Interval lo = to_interval(atan_mr(MidRad(dd(a.lo), 0.0)));
  Interval hi = to_interval(atan_mr(MidRad(dd(a.hi), 0.0)));
  return Interval(lo.lo, hi.hi);
}

// Principal atan2 restricted to the open right half-plane.
inline MidRad atan2_pos_x_mr(const MidRad& y, const MidRad& x) {
  return atan_mr(mr_div(y, x));
}

inline Interval atan2_pos_x_interval(const Interval& y, const Interval& x) {
  if (!(x.lo > 0.0)) throw std::domain_error("atan2_pos_x: x not certainly positive");
  return atan_interval(y / x);
}

}  // namespace thetacross
