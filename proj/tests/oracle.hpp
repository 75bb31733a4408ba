// Copyright 2026 the thetacross authors.
// SPDX-License-Identifier: Apache-2.0

// Test-only high-precision oracle: a thin RAII wrapper over MPFR. Default
// precision is 200 bits, round-to-nearest everywhere: oracle rounding sits
// near 2^-190, ten orders below the 2^-53-scale defects these tests hunt,
// so no directed-rounding gymnastics are needed on the oracle side.

#pragma once

#include <mpfr.h>
#include <string>
#include <stdexcept>
#include "thetacross/interval.hpp"
#include "thetacross/double_double.hpp"

namespace oracle {

class Mp {
 public:
  static constexpr mpfr_prec_t kDefaultPrec = 200;

  Mp() { mpfr_init2(v_, kDefaultPrec); mpfr_set_zero(v_, 1); }
  explicit Mp(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  explicit Mp(double d) { mpfr_init2(v_, kDefaultPrec); mpfr_set_d(v_, d, MPFR_RNDN); }
  explicit Mp(const std::string& s) {
    mpfr_init2(v_, kDefaultPrec);
    if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0)
      throw std::invalid_argument("Mp: cannot parse '" + s + "'");
  }
  Mp(const Mp& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Mp(Mp&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
  Mp& operator=(const Mp& o) {
    if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  ~Mp() { mpfr_clear(v_); }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  int sign() const { return mpfr_sgn(v_); }

  friend Mp operator+(const Mp& a, const Mp& b) { Mp r; mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Mp operator-(const Mp& a, const Mp& b) { Mp r; mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Mp operator*(const Mp& a, const Mp& b) { Mp r; mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Mp operator/(const Mp& a, const Mp& b) { Mp r; mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  Mp operator-() const { Mp r; mpfr_neg(r.v_, v_, MPFR_RNDN); return r; }

  friend bool operator<(const Mp& a, const Mp& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator<=(const Mp& a, const Mp& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>(const Mp& a, const Mp& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator>=(const Mp& a, const Mp& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
  friend bool operator==(const Mp& a, const Mp& b) { return mpfr_cmp(a.v_, b.v_) == 0; }

 private:
  mpfr_t v_;
};

inline Mp mp_abs(const Mp& a) { Mp r; mpfr_abs(r.raw(), a.raw(), MPFR_RNDN); return r; }
inline Mp mp_sqrt(const Mp& a) { Mp r; mpfr_sqrt(r.raw(), a.raw(), MPFR_RNDN); return r; }
inline Mp mp_exp(const Mp& a) { Mp r; mpfr_exp(r.raw(), a.raw(), MPFR_RNDN); return r; }
inline Mp mp_log(const Mp& a) { Mp r; mpfr_log(r.raw(), a.raw(), MPFR_RNDN); return r; }
inline Mp mp_log10(const Mp& a) { Mp r; mpfr_log10(r.raw(), a.raw(), MPFR_RNDN); return r; }
inline Mp mp_sin(const Mp& a) { Mp r; mpfr_sin(r.raw(), a.raw(), MPFR_RNDN); return r; }
inline Mp mp_cos(const Mp& a) { Mp r; mpfr_cos(r.raw(), a.raw(), MPFR_RNDN); return r; }
inline Mp mp_atan(const Mp& a) { Mp r; mpfr_atan(r.raw(), a.raw(), MPFR_RNDN); return r; }
inline Mp mp_atan2(const Mp& y, const Mp& x) { Mp r; mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN); return r; }
inline Mp mp_erfc(const Mp& a) { Mp r; mpfr_erfc(r.raw(), a.raw(), MPFR_RNDN); return r; }
inline Mp mp_pow(const Mp& a, const Mp& b) { Mp r; mpfr_pow(r.raw(), a.raw(), b.raw(), MPFR_RNDN); return r; }
inline Mp mp_pi() { Mp r; mpfr_const_pi(r.raw(), MPFR_RNDN); return r; }
inline Mp mp_fmod(const Mp& a, const Mp& b) { Mp r; mpfr_fmod(r.raw(), a.raw(), b.raw(), MPFR_RNDN); return r; }
inline Mp mp_zeta_real(const Mp& a) { Mp r; mpfr_zeta(r.raw(), a.raw(), MPFR_RNDN); return r; }
inline Mp mp_gamma(const Mp& a) { Mp r; mpfr_gamma(r.raw(), a.raw(), MPFR_RNDN); return r; }

inline Mp mp_from_dd(const thetacross::dd& x) { return Mp(x.hi) + Mp(x.lo); }

inline bool interval_contains(const thetacross::Interval& I, const Mp& x) {
  return Mp(I.lo) <= x && x <= Mp(I.hi);
}

// |x - (mid.hi + mid.lo)| as a double, rounded up a touch.
inline double dist_from_dd(const thetacross::dd& mid, const Mp& x) {
  Mp d = mp_abs(x - mp_from_dd(mid));
  double r = d.to_double();
  return std::nextafter(std::nextafter(r, 1e308), 1e308);
}

inline bool midrad_contains(const thetacross::MidRad& v, const Mp& x) {
  return dist_from_dd(v.mid, x) <= v.rad ||
         mp_abs(x - mp_from_dd(v.mid)) <= Mp(v.rad);
}

}  // namespace oracle
