// Copyright 2026 the thetacross authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Outward-rounded interval arithmetic on double endpoints, without touching
// the FPU rounding mode. Every primitive computes the round-to-nearest result
// plus its exact residual (two_sum for +/-, an FMA residual for *, /, sqrt),
// then nudges the endpoint one ulp outward only when the residual shows the
// rounded value lies on the wrong side. Exact operations therefore stay
// exact: [1,2]+[3,4] is [4,6], not a 2-ulp slop around it. Residual tricks
// are unreliable in the subnormal range, so magnitudes below 2^-1000 are
// nudged unconditionally; the tightness loss there is irrelevant at our
// scales. Any endpoint that leaves the finite range throws: an interval in
// this library is always a finite, ordered pair that provably contains the
// real-number result.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <cstdio>

namespace thetacross {

namespace detail {

inline double next_down(double x) {
  return std::nextafter(x, -std::numeric_limits<double>::infinity());
}
inline double next_up(double x) {
  return std::nextafter(x, std::numeric_limits<double>::infinity());
}

// Residuals shrink below representability near the subnormal range; nudge
// unconditionally there instead of trusting them.
inline bool residual_trustworthy(double magnitude) {
  return std::abs(magnitude) >= 0x1p-1000;
}

inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  double bb = s - a;
  e = (a - (s - bb)) + (b - bb);
}

inline double add_rd(double a, double b) {
  double s, e;
  two_sum(a, b, s, e);
  return e >= 0.0 ? s : next_down(s);
}
inline double add_ru(double a, double b) {
  double s, e;
  two_sum(a, b, s, e);
  return e <= 0.0 ? s : next_up(s);
}
inline double sub_rd(double a, double b) { return add_rd(a, -b); }
inline double sub_ru(double a, double b) { return add_ru(a, -b); }

inline double mul_rd(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  double p = a * b;
  if (p == 0.0) return ((a > 0.0) == (b > 0.0)) ? 0.0 : -0x1p-1074;
  if (!residual_trustworthy(p)) return next_down(p);
  double r = std::fma(a, b, -p);  // a*b = p + r
  return r >= 0.0 ? p : next_down(p);
}
inline double mul_ru(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  double p = a * b;
  if (p == 0.0) return ((a > 0.0) == (b > 0.0)) ? 0x1p-1074 : 0.0;
  if (!residual_trustworthy(p)) return next_up(p);
  double r = std::fma(a, b, -p);
  return r <= 0.0 ? p : next_up(p);
}

inline double div_rd(double a, double b) {
  if (a == 0.0) return 0.0;
  double q = a / b;
  if (q == 0.0) return ((a > 0.0) == (b > 0.0)) ? 0.0 : -0x1p-1074;
  if (!residual_trustworthy(a) || !residual_trustworthy(q)) return next_down(q);
  double r = std::fma(q, b, -a);  // a/b = q - r/b
  if (r == 0.0) return q;
  bool true_above_q = (r > 0.0) != (b > 0.0);
  return true_above_q ? q : next_down(q);
}
inline double div_ru(double a, double b) {
  if (a == 0.0) return 0.0;
  double q = a / b;
  if (q == 0.0) return ((a > 0.0) == (b > 0.0)) ? 0x1p-1074 : 0.0;
  if (!residual_trustworthy(a) || !residual_trustworthy(q)) return next_up(q);
  double r = std::fma(q, b, -a);
  if (r == 0.0) return q;
  bool true_above_q = (r > 0.0) != (b > 0.0);
  return true_above_q ? next_up(q) : q;
}

inline double sqrt_rd(double a) {
  if (a == 0.0) return 0.0;
  double s = std::sqrt(a);
  if (!residual_trustworthy(a)) return std::fmax(0.0, next_down(s));
  double r = std::fma(s, s, -a);  // s*s - a
  return r <= 0.0 ? s : std::fmax(0.0, next_down(s));
}
inline double sqrt_ru(double a) {
  if (a == 0.0) return 0.0;
  double s = std::sqrt(a);
  if (!residual_trustworthy(a)) return next_up(s);
  double r = std::fma(s, s, -a);
  return r >= 0.0 ? s : next_up(s);
}

}  // namespace detail

struct Interval {
  double lo;
  double hi;

  Interval() : lo(0.0), hi(0.0) {}
  Interval(double point) : lo(point), hi(point) {  // NOLINT: implicit by design
    if (!std::isfinite(point)) throw std::invalid_argument("interval endpoint not finite");
  }
  Interval(double l, double h) : lo(l), hi(h) {
    if (!(std::isfinite(l) && std::isfinite(h)))
      throw std::invalid_argument("interval endpoint not finite");
    if (l > h) throw std::invalid_argument("interval endpoints out of order");
  }

  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool is_point() const { return lo == hi; }
};

namespace detail {
// Central escape hatch: arithmetic results funnel through here so overflow
// surfaces as an exception, never as an infinite endpoint.
inline Interval make_checked(double lo, double hi) {
  if (!(std::isfinite(lo) && std::isfinite(hi)))
    throw std::overflow_error("interval arithmetic overflow");
  return Interval(lo, hi);
}
}  // namespace detail

inline double mid(const Interval& a) {
  double m = 0.5 * (a.lo + a.hi);
  if (!std::isfinite(m)) m = 0.5 * a.lo + 0.5 * a.hi;
  return std::fmin(std::fmax(m, a.lo), a.hi);
}
inline double width(const Interval& a) { return detail::sub_ru(a.hi, a.lo); }
inline double rad(const Interval& a) { return detail::mul_ru(0.5, width(a)); }
inline double mag(const Interval& a) { return std::fmax(std::abs(a.lo), std::abs(a.hi)); }

inline Interval operator-(const Interval& a) { return Interval(-a.hi, -a.lo); }

inline Interval operator+(const Interval& a, const Interval& b) {
  return detail::make_checked(detail::add_rd(a.lo, b.lo), detail::add_ru(a.hi, b.hi));
}
inline Interval operator-(const Interval& a, const Interval& b) {
  return detail::make_checked(detail::sub_rd(a.lo, b.hi), detail::sub_ru(a.hi, b.lo));
}

inline Interval operator*(const Interval& a, const Interval& b) {
  using namespace detail;
  double lo = mul_rd(a.lo, b.lo);
  lo = std::fmin(lo, mul_rd(a.lo, b.hi));
  lo = std::fmin(lo, mul_rd(a.hi, b.lo));
  lo = std::fmin(lo, mul_rd(a.hi, b.hi));
  double hi = mul_ru(a.lo, b.lo);
  hi = std::fmax(hi, mul_ru(a.lo, b.hi));
  hi = std::fmax(hi, mul_ru(a.hi, b.lo));
  hi = std::fmax(hi, mul_ru(a.hi, b.hi));
  return make_checked(lo, hi);
}

inline Interval operator/(const Interval& a, const Interval& b) {
  using namespace detail;
  if (b.lo <= 0.0 && 0.0 <= b.hi)
    throw std::domain_error("interval division by interval containing zero");
  double lo = div_rd(a.lo, b.lo);
  lo = std::fmin(lo, div_rd(a.lo, b.hi));
  lo = std::fmin(lo, div_rd(a.hi, b.lo));
  lo = std::fmin(lo, div_rd(a.hi, b.hi));
  double hi = div_ru(a.lo, b.lo);
  hi = std::fmax(hi, div_ru(a.lo, b.hi));
  hi = std::fmax(hi, div_ru(a.hi, b.lo));
  hi = std::fmax(hi, div_ru(a.hi, b.hi));
  return make_checked(lo, hi);
}

inline Interval& operator+=(Interval& a, const Interval& b) { return a = a + b; }
inline Interval& operator-=(Interval& a, const Interval& b) { return a = a - b; }
inline Interval& operator*=(Interval& a, const Interval& b) { return a = a * b; }
inline Interval& operator/=(Interval& a, const Interval& b) { return a = a / b; }

inline Interval sqrt(const Interval& a) {
  if (a.lo < 0.0) throw std::domain_error("interval sqrt of negative value");
  return Interval(detail::sqrt_rd(a.lo), detail::sqrt_ru(a.hi));
}

inline Interval abs(const Interval& a) {
  if (a.lo >= 0.0) return a;
  if (a.hi <= 0.0) return -a;
  return Interval(0.0, mag(a));
}

// Exact scaling by a power of two (throws on overflow; nudges if the scaled
// value falls into the subnormal range and is no longer exact).
inline Interval mul_pow2(const Interval& a, int k) {
  double lo = std::ldexp(a.lo, k);
  double hi = std::ldexp(a.hi, k);
  if (std::ldexp(lo, -k) != a.lo) lo = detail::next_down(lo);
  if (std::ldexp(hi, -k) != a.hi) hi = detail::next_up(hi);
  return detail::make_checked(lo, hi);
}

inline Interval hull(const Interval& a, const Interval& b) {
  return Interval(std::fmin(a.lo, b.lo), std::fmax(a.hi, b.hi));
}
inline Interval intersect(const Interval& a, const Interval& b) {
  double lo = std::fmax(a.lo, b.lo), hi = std::fmin(a.hi, b.hi);
  if (lo > hi) throw std::domain_error("empty interval intersection");
  return Interval(lo, hi);
}
inline bool overlaps(const Interval& a, const Interval& b) {
  return std::fmax(a.lo, b.lo) <= std::fmin(a.hi, b.hi);
}

inline Interval imin(const Interval& a, const Interval& b) {
  return Interval(std::fmin(a.lo, b.lo), std::fmin(a.hi, b.hi));
}
inline Interval imax(const Interval& a, const Interval& b) {
  return Interval(std::fmax(a.lo, b.lo), std::fmax(a.hi, b.hi));
}

inline bool certainly_less(const Interval& a, const Interval& b) { return a.hi < b.lo; }
inline bool certainly_positive(const Interval& a) { return a.lo > 0.0; }
inline bool certainly_negative(const Interval& a) { return a.hi < 0.0; }
inline bool contains_zero(const Interval& a) { return a.lo <= 0.0 && 0.0 <= a.hi; }

inline Interval powi(Interval a, unsigned n) {
  // Even powers of zero-straddling intervals tighten via |a|.
  if (n % 2 == 0 && contains_zero(a)) a = abs(a);
  Interval result(1.0);
  while (n > 0) {
    if (n & 1u) result *= a;
    a = n > 1 ? a * a : a;
    n >>= 1u;
  }
  return result;
}

inline Interval square(const Interval& a) { return powi(a, 2); }

inline std::string to_string(const Interval& a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "[%.17g, %.17g]", a.lo, a.hi);
  return buf;
}

}  // namespace thetacross
