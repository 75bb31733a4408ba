// Copyright 2026 the thetacross authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Double-double arithmetic: an unevaluated sum hi + lo with |lo| <= ulp(hi)/2,
// giving ~106 significand bits. The algorithms are the classical error-free
// transform compositions (Dekker/Knuth two_sum, FMA two_prod, and the accurate
// double-word add/mul/div analyzed by Joldes, Muller and Popescu). Each
// operation's relative error is bounded by a small multiple of 2^-106; the
// constants below (kDD*Rel) are deliberately rounded up by 2-4x so that
// radius bookkeeping built on them survives worst cases. Certified kernels
// carry values as MidRad {dd mid, double rad}: the real number is guaranteed
// to lie in [mid - rad, mid + rad]. Radii are accumulated with rup(), a
// one-ulp upward nudge after every radius operation, so radius arithmetic
// needs no rounding-mode control either.

#include <cmath>
#include "thetacross/interval.hpp"

namespace thetacross {

struct dd {
  double hi;
  double lo;
  dd() : hi(0.0), lo(0.0) {}
  dd(double h) : hi(h), lo(0.0) {}  // NOLINT: implicit by design
  dd(double h, double l) : hi(h), lo(l) {}
};

namespace detail {

inline void quick_two_sum(double a, double b, double& s, double& e) {
  s = a + b;  // requires |a| >= |b| or a == 0
  e = b - (s - a);
}

inline void two_prod(double a, double b, double& p, double& e) {
  p = a * b;
  e = std::fma(a, b, -p);
}

// Upward nudge for radius arithmetic.
inline double rup(double x) { return next_up(x); }

}  // namespace detail

// Relative error bounds per operation, deliberately loose.
inline constexpr double kDDAddRel = 0x1p-102;
inline constexpr double kDDMulRel = 0x1p-102;
inline constexpr double kDDDivRel = 0x1p-99;
inline constexpr double kDDSqrtRel = 0x1p-100;

inline dd dd_from_sum(double a, double b) {
  dd r;
  detail::two_sum(a, b, r.hi, r.lo);
  return r;
}

inline dd dd_neg(const dd& a) { return dd(-a.hi, -a.lo); }

inline dd dd_add(const dd& x, const dd& y) {
  using namespace detail;
  double sh, sl, th, tl, vh, vl;
  two_sum(x.hi, y.hi, sh, sl);
  two_sum(x.lo, y.lo, th, tl);
  double c = sl + th;
  quick_two_sum(sh, c, vh, vl);
  double w = tl + vl;
  dd r;
  quick_two_sum(vh, w, r.hi, r.lo);
  return r;
}

inline dd dd_sub(const dd& x, const dd& y) { return dd_add(x, dd_neg(y)); }

inline dd dd_add_d(const dd& x, double y) {
  using namespace detail;
  double sh, sl;
  two_sum(x.hi, y, sh, sl);
  sl += x.lo;
  dd r;
  quick_two_sum(sh, sl, r.hi, r.lo);
  return r;
}

inline dd dd_mul(const dd& x, const dd& y) {
  using namespace detail;
  double ph, pl;
  two_prod(x.hi, y.hi, ph, pl);
  pl = std::fma(x.lo, y.lo, pl);
  pl = std::fma(x.hi, y.lo, pl);
  pl = std::fma(x.lo, y.hi, pl);
  dd r;
  quick_two_sum(ph, pl, r.hi, r.lo);
  return r;
}

inline dd dd_mul_d(const dd& x, double y) {
  using namespace detail;
  double ph, pl;
  two_prod(x.hi, y, ph, pl);
  pl = std::fma(x.lo, y, pl);
  dd r;
  quick_two_sum(ph, pl, r.hi, r.lo);
  return r;
}

inline dd dd_div(const dd& x, const dd& y) {
  using namespace detail;
  double q1 = x.hi / y.hi;
  dd r1 = dd_sub(x, dd_mul_d(y, q1));
  double q2 = r1.hi / y.hi;
  dd r2 = dd_sub(r1, dd_mul_d(y, q2));
  double q3 = r2.hi / y.hi;
  double sh, sl;
  two_sum(q1, q2, sh, sl);
  sl += q3;
  dd q;
  quick_two_sum(sh, sl, q.hi, q.lo);
  return q;
}

inline dd dd_sqrt(const dd& a) {
  using namespace detail;
  if (a.hi == 0.0 && a.lo == 0.0) return dd(0.0);
  double s = std::sqrt(a.hi);
  double s2h, s2l;
  two_prod(s, s, s2h, s2l);
  dd diff = dd_sub(a, dd(s2h, s2l));
  double corr = diff.hi / (2.0 * s);
  dd r;
  quick_two_sum(s, corr, r.hi, r.lo);
  return r;
}

inline double dd_to_double(const dd& a) { return a.hi + a.lo; }
inline double dd_abs_upper(const dd& a) {
  return detail::rup(std::abs(a.hi) + std::abs(a.lo));
}

inline bool dd_less(const dd& a, const dd& b) {
  return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}

// Certified value: the real number lies in [mid - rad, mid + rad].
struct MidRad {
  dd mid;
  double rad;
  MidRad() : mid(), rad(0.0) {}
  MidRad(dd m, double r) : mid(m), rad(r) {}
};

inline Interval to_interval(const MidRad& v) {
  using namespace detail;
  double dl = v.mid.lo - v.rad;  // rounds; |error| <= 0.5 ulp(dl), covered below
  double s, e;
  two_sum(v.mid.hi, dl, s, e);
  double lo = next_down(e >= 0.0 ? s : next_down(s));
  double du = v.mid.lo + v.rad;
  two_sum(v.mid.hi, du, s, e);
  double hi = next_up(e <= 0.0 ? s : next_up(s));
  return Interval(lo, hi);
}

inline MidRad to_midrad(const Interval& a) {
  dd m = dd_mul_d(dd_add_d(dd(a.lo), a.hi), 0.5);
  double r = detail::rup(detail::rup(std::fmax(a.hi - m.hi, m.hi - a.lo)) + 0x1p-96 * std::abs(m.hi));
  return MidRad(m, r);
}

inline MidRad mr_add(const MidRad& a, const MidRad& b) {
  using namespace detail;
  dd m = dd_add(a.mid, b.mid);
  double r = rup(rup(a.rad + b.rad) + kDDAddRel * dd_abs_upper(m));
  return MidRad(m, r);
}

inline MidRad mr_sub(const MidRad& a, const MidRad& b) {
  return mr_add(a, MidRad(dd_neg(b.mid), b.rad));
}

inline MidRad mr_neg(const MidRad& a) { return MidRad(dd_neg(a.mid), a.rad); }

inline MidRad mr_mul(const MidRad& a, const MidRad& b) {
  using namespace detail;
  dd m = dd_mul(a.mid, b.mid);
  double r = rup(rup(rup(dd_abs_upper(a.mid) * b.rad) +
                     rup(dd_abs_upper(b.mid) * a.rad)) +
                 rup(rup(a.rad * b.rad) + kDDMulRel * dd_abs_upper(m)));
  return MidRad(m, r);
}

inline MidRad mr_mul_d(const MidRad& a, double c) {
  using namespace detail;
  dd m = dd_mul_d(a.mid, c);
  double r = rup(rup(a.rad * std::abs(c)) + kDDMulRel * dd_abs_upper(m));
  return MidRad(m, r);
}

// Divide: |true(a)/true(b) - a.mid/b.mid| handled via the quotient rule with
// an upward-safe denominator lower bound. Throws if b cannot be bounded away
// from zero.
inline MidRad mr_div(const MidRad& a, const MidRad& b) {
  using namespace detail;
  double bmag_lo = std::abs(b.mid.hi) - rup(std::abs(b.mid.lo) + b.rad);
  if (!(bmag_lo > 0.0)) throw std::domain_error("midrad division by value near zero");
  bmag_lo = next_down(bmag_lo);
  dd m = dd_div(a.mid, b.mid);
  double num = rup(rup(a.rad) + rup(dd_abs_upper(m) * b.rad));
  double r = rup(rup(num / bmag_lo) + kDDDivRel * dd_abs_upper(m));
  return MidRad(m, r);
}

}  // namespace thetacross
