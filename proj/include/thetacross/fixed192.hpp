// Copyright 2026 the thetacross authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

// 64.128 fixed-point arithmetic on three 64-bit limbs (two's complement,
// little-endian), used for one job: reducing products like gamma*omega or
// t*ln(n) modulo 2*pi without catastrophic cancellation. A double pair
// entering through from_dd() is captured to within 2^-128 absolute; the
// 192x192 product keeps 128 fractional bits (truncation in [0, 2^-128));
// and the subtraction of k*two_pi_fx is exact, so the only reduction error
// is k times the 2^-128-level defect of the stored 2*pi. At gamma*omega ~
// 4e11 that is ~2^-90, far below what the downstream double-double trig
// kernels can even see.

#include <cstdint>
#include <cmath>
#include <stdexcept>
#include "thetacross/double_double.hpp"
#include "thetacross/constants.hpp"

namespace thetacross {

struct Fixed192 {
  std::uint64_t limb[3];  // value = signed(limb[2]:limb[1]:limb[0]) / 2^128

  Fixed192() : limb{0, 0, 0} {}

  bool is_negative() const { return (limb[2] >> 63) != 0; }
  bool is_zero() const { return limb[0] == 0 && limb[1] == 0 && limb[2] == 0; }
};

namespace fx_detail {

inline Fixed192 add(const Fixed192& a, const Fixed192& b) {
  Fixed192 r;
  unsigned __int128 carry = 0;
  for (int i = 0; i < 3; ++i) {
    unsigned __int128 s = (unsigned __int128)a.limb[i] + b.limb[i] + carry;
    r.limb[i] = (std::uint64_t)s;
    carry = s >> 64;
  }
  return r;
}

inline Fixed192 negate(const Fixed192& a) {
  Fixed192 r;
  unsigned __int128 carry = 1;
  for (int i = 0; i < 3; ++i) {
    unsigned __int128 s = (unsigned __int128)(~a.limb[i]) + carry;
    r.limb[i] = (std::uint64_t)s;
    carry = s >> 64;
  }
  return r;
}

inline Fixed192 sub(const Fixed192& a, const Fixed192& b) { return add(a, negate(b)); }

// Unsigned comparison; valid when both values are non-negative.
inline int cmp_unsigned(const Fixed192& a, const Fixed192& b) {
  for (int i = 2; i >= 0; --i) {
    if (a.limb[i] != b.limb[i]) return a.limb[i] < b.limb[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace fx_detail

namespace fx_detail {

inline Fixed192 from_double_impl(double x, bool* lost_bits) {
  if (!std::isfinite(x)) throw std::invalid_argument("fixed192: non-finite input");
  bool neg = x < 0.0;
  double ax = std::abs(x);
  if (ax >= 0x1p63) throw std::domain_error("fixed192: magnitude too large");
  Fixed192 r;
  *lost_bits = false;
  if (ax != 0.0) {
    int e;
    double m = std::frexp(ax, &e);              // ax = m * 2^e, m in [0.5, 1)
    std::uint64_t mant = (std::uint64_t)std::ldexp(m, 53);  // 53-bit integer
    int shift = e + 75;                         // ax * 2^128 = mant * 2^shift
    if (shift >= 0) {
      int limb_idx = shift / 64, bit = shift % 64;
      unsigned __int128 wide = (unsigned __int128)mant << bit;
      r.limb[limb_idx] = (std::uint64_t)wide;
      if (limb_idx + 1 < 3) r.limb[limb_idx + 1] = (std::uint64_t)(wide >> 64);
      else if ((std::uint64_t)(wide >> 64) != 0)
        throw std::domain_error("fixed192: magnitude too large");
    } else if (shift > -53) {
      r.limb[0] = mant >> (-shift);
      *lost_bits = (mant & (((std::uint64_t)1 << (-shift)) - 1)) != 0;
    } else {
      *lost_bits = true;
    }
  }
  return neg ? negate(r) : r;
}

}  // namespace fx_detail

// Truncates |x| toward zero at 2^-128; the dropped tail is below 2^-128 in
// magnitude. Throws if |x| >= 2^63 (integer part would not fit).
inline Fixed192 fixed_from_double_trunc(double x) {
  bool lost;
  return fx_detail::from_double_impl(x, &lost);
}

// Exact conversion; throws if x carries bits below 2^-128.
inline Fixed192 fixed_from_double_exact(double x) {
  bool lost;
  Fixed192 r = fx_detail::from_double_impl(x, &lost);
  if (lost) throw std::domain_error("fixed192: double not exactly representable");
  return r;
}

// Captures hi + lo with absolute error below 2^-127.
inline Fixed192 fixed_from_dd_trunc(const dd& x) {
  return fx_detail::add(fixed_from_double_trunc(x.hi), fixed_from_double_trunc(x.lo));
}
inline constexpr double kFixedFromDDErr = 0x1p-127;

// Product of non-negative values; truncation in [0, 2^-128). Throws if either
// operand is negative or the product overflows 63 integer bits.
inline Fixed192 fixed_mul_trunc(const Fixed192& a, const Fixed192& b) {
  if (a.is_negative() || b.is_negative())
    throw std::domain_error("fixed192 multiply: operands must be non-negative");
  std::uint64_t prod[6] = {0, 0, 0, 0, 0, 0};
  for (int i = 0; i < 3; ++i) {
    unsigned __int128 carry = 0;
    for (int j = 0; j < 3; ++j) {
      unsigned __int128 cur = (unsigned __int128)a.limb[i] * b.limb[j] + prod[i + j] + carry;
      prod[i + j] = (std::uint64_t)cur;
      carry = cur >> 64;
    }
    unsigned __int128 cur = (unsigned __int128)prod[i + 3] + carry;
    prod[i + 3] = (std::uint64_t)cur;
    for (int k = i + 4; k < 6 && (cur >> 64); ++k) {
      cur = (unsigned __int128)prod[k] + (cur >> 64);
      prod[k] = (std::uint64_t)cur;
    }
  }
  if (prod[5] != 0 || (prod[4] >> 63) != 0)
    throw std::overflow_error("fixed192 multiply: product too large");
  Fixed192 r;
  r.limb[0] = prod[2];
  r.limb[1] = prod[3];
  r.limb[2] = prod[4];
  return r;
}

struct Reduced2Pi {
  dd value;        // midpoint of x mod 2pi, in [0, 2pi)
  double rad;      // certified bound on |true(x mod 2pi) - value|
  double k;        // the subtracted multiple
};

// x mod 2pi for non-negative x (tiny negative inputs, from truncation slop,
// are wrapped once). input_rad is the caller's bound on the error already
// present in x.
inline Reduced2Pi fixed_reduce_2pi(Fixed192 x, double input_rad) {
  using namespace fx_detail;
  Fixed192 tp;
  tp.limb[0] = constants::k_two_pi_fx[0];
  tp.limb[1] = constants::k_two_pi_fx[1];
  tp.limb[2] = constants::k_two_pi_fx[2];

  double k = 0.0;
  if (x.is_negative()) {
    x = add(x, tp);
    k = -1.0;
    if (x.is_negative()) throw std::domain_error("fixed192 reduce: negative input");
  }
  // The quotient estimate below is within ~1 of the truth only while the
  // integer part converts to double exactly.
  if (x.limb[2] >= (1ull << 52)) throw std::domain_error("fixed192 reduce: input too large");
  double approx = (double)x.limb[2] / 6.283185307179586;
  if (approx > 1.5) {
    std::uint64_t k0 = (std::uint64_t)(approx - 1.0);
    // x -= k0 * tp, exact: k0 * tp computed limb-wise into 256 bits; the
    // high 64 bits must vanish since x >= k0 * tp > 0 keeps it in range.
    Fixed192 sub_amount;
    unsigned __int128 carry = 0;
    for (int i = 0; i < 3; ++i) {
      unsigned __int128 cur = (unsigned __int128)tp.limb[i] * k0 + carry;
      sub_amount.limb[i] = (std::uint64_t)cur;
      carry = cur >> 64;
    }
    if (carry != 0) throw std::overflow_error("fixed192 reduce: multiple overflow");
    x = sub(x, sub_amount);
    if (x.is_negative()) throw std::logic_error("fixed192 reduce: estimate overshot");
    k += (double)k0;
  }
  while (cmp_unsigned(x, tp) >= 0) {
    x = sub(x, tp);
    k += 1.0;
  }

  // Convert the reduced value (in [0, 2pi), so limb[2] <= 6) to dd.
  dd acc((double)x.limb[2]);
  acc = dd_add(acc, dd(std::ldexp((double)(x.limb[1] >> 32), -32)));
  acc = dd_add(acc, dd(std::ldexp((double)(x.limb[1] & 0xffffffffull), -64)));
  acc = dd_add(acc, dd(std::ldexp((double)(x.limb[0] >> 32), -96)));
  acc = dd_add(acc, dd(std::ldexp((double)(x.limb[0] & 0xffffffffull), -128)));

  // Error budget: conversion roundings, the 2^-128 defect of two_pi_fx times
  // (k+1) (the +1 covers the half-open bracket at the top), and the caller's
  // input error.
  double rad = detail::rup(detail::rup(0x1p-99 * 8.0 + (k + 1.0) * 0x1p-128) + input_rad);
  return Reduced2Pi{acc, rad, k};
}

}  // namespace thetacross
