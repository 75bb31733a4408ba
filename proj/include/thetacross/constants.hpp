// Copyright 2026 the thetacross authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Mathematical constants, machine-generated from a 420-bit reference and
// pasted verbatim. Each dd constant comes with k_*_err, an upper bound on
// |true - hi - lo|, so callers can fold the representation error into their
// radius accounting. The three-part splits (hi/me with 33-bit significands)
// allow exact multiplication by integers below 2^20 during argument
// reduction. Unit tests re-derive every value against MPFR.

#include <cstdint>
#include "thetacross/interval.hpp"
#include "thetacross/double_double.hpp"

namespace thetacross {
namespace constants {


  inline constexpr double k_pi_hi = 0x1.921fb54442d18p+1;  // pi
  inline constexpr double k_pi_lo = 0x1.1a62633145c07p-53;
  inline constexpr double k_pi_err = 0x1.f1976b7ed8fbep-109;

  inline constexpr double k_two_pi_hi = 0x1.921fb54442d18p+2;  // 2*pi
  inline constexpr double k_two_pi_lo = 0x1.1a62633145c07p-52;
  inline constexpr double k_two_pi_err = 0x1.f1976b7ed8fbep-108;

  inline constexpr double k_pi_half_hi = 0x1.921fb54442d18p+0;  // pi/2
  inline constexpr double k_pi_half_lo = 0x1.1a62633145c07p-54;
  inline constexpr double k_pi_half_err = 0x1.f1976b7ed8fbep-110;

  inline constexpr double k_ln_pi_hi = 0x1.250d048e7a1bdp+0;  // ln(pi)
  inline constexpr double k_ln_pi_lo = 0x1.7abf2ad8d5088p-57;
  inline constexpr double k_ln_pi_err = 0x1.6ccf43244818cp-113;

  inline constexpr double k_ln_two_pi_hi = 0x1.d67f1c864beb5p+0;  // ln(2*pi)
  inline constexpr double k_ln_two_pi_lo = -0x1.65b5a1b7ff5dfp-54;
  inline constexpr double k_ln_two_pi_err = 0x1.b7f70c13dc1cep-109;

  inline constexpr double k_ln10_hi = 0x1.26bb1bbb55516p+1;  // ln(10)
  inline constexpr double k_ln10_lo = -0x1.f48ad494ea3e9p-53;
  inline constexpr double k_ln10_err = 0x1.9ebae3ae0260ep-107;

  // ln2: hi+me have 33-bit significands (k*hi, k*me exact for k < 2^20)
  inline constexpr double k_ln2_hi = 0x1.62e42fef00000p-1;
  inline constexpr double k_ln2_me = 0x1.473de6af00000p-34;
  inline constexpr double k_ln2_lo = 0x1.3c7673007e5edp-69;
  inline constexpr double k_ln2_err = 0x1.7a079a193394ep-123;  // |ln2 - hi-me-lo|

  // pi_half3: hi+me have 33-bit significands (k*hi, k*me exact for k < 2^20)
  inline constexpr double k_pi_half3_hi = 0x1.921fb54400000p+0;
  inline constexpr double k_pi_half3_me = 0x1.0b4611a600000p-34;
  inline constexpr double k_pi_half3_lo = 0x1.3198a2e037073p-69;
  inline constexpr double k_pi_half3_err = 0x1.129024e088a6ap-123;  // |pi_half3 - hi-me-lo|

  // floor(2*pi * 2^128) as little-endian limbs; true 2*pi lies in [fx, fx + 2^-128)
  inline constexpr std::uint64_t k_two_pi_fx[3] = { 0x2633145c06e0e689ull, 0x487ed5110b4611a6ull, 0x0000000000000006ull };

  // Bernoulli numbers B_{2k}, k = 1..24, outward-rounded interval endpoints
  inline constexpr double k_bernoulli2k[24][2] = {
    { 0x1.5555555555555p-3, 0x1.5555555555556p-3 },  // B_2
    { -0x1.1111111111112p-5, -0x1.1111111111111p-5 },  // B_4
    { 0x1.8618618618618p-6, 0x1.8618618618619p-6 },  // B_6
    { -0x1.1111111111112p-5, -0x1.1111111111111p-5 },  // B_8
    { 0x1.364d9364d9364p-4, 0x1.364d9364d9365p-4 },  // B_10
    { -0x1.0330330330331p-2, -0x1.0330330330330p-2 },  // B_12
    { 0x1.2aaaaaaaaaaaap+0, 0x1.2aaaaaaaaaaabp+0 },  // B_14
    { -0x1.c5e5e5e5e5e5fp+2, -0x1.c5e5e5e5e5e5ep+2 },  // B_16
    { 0x1.b7c4f8f13e3c4p+5, 0x1.b7c4f8f13e3c5p+5 },  // B_18
    { -0x1.088fe72cfe72dp+9, -0x1.088fe72cfe72cp+9 },  // B_20
    { 0x1.8301f89467e25p+12, 0x1.8301f89467e26p+12 },  // B_22
    { -0x1.523440cc0cc0dp+16, -0x1.523440cc0cc0cp+16 },  // B_24
    { 0x1.5c06d2aaaaaaap+20, 0x1.5c06d2aaaaaabp+20 },  // B_26
    { -0x1.a089b7115c654p+24, -0x1.a089b7115c653p+24 },  // B_28
    { 0x1.1edb2a4f3483fp+29, 0x1.1edb2a4f34840p+29 },  // B_30
    { -0x1.c280563b8bcbdp+33, -0x1.c280563b8bcbcp+33 },  // B_32
    { 0x1.901c1cddd4aaap+38, 0x1.901c1cddd4aabp+38 },  // B_34
    { -0x1.8f0fcacf1c0abp+43, -0x1.8f0fcacf1c0aap+43 },  // B_36
    { 0x1.bc22ba679e992p+48, 0x1.bc22ba679e993p+48 },  // B_38
    { -0x1.12388bf439d5ap+54, -0x1.12388bf439d59p+54 },  // B_40
    { 0x1.75c96bc0d1733p+59, 0x1.75c96bc0d1734p+59 },  // B_42
    { -0x1.17e6cf50c4b2dp+65, -0x1.17e6cf50c4b2cp+65 },  // B_44
    { 0x1.caa23d99f255ap+70, 0x1.caa23d99f255bp+70 },  // B_46
    { -0x1.9982c61c35e52p+76, -0x1.9982c61c35e51p+76 },  // B_48
  };

  inline MidRad pi_mr() { return MidRad(dd(k_pi_hi, k_pi_lo), k_pi_err); }
  inline MidRad two_pi_mr() { return MidRad(dd(k_two_pi_hi, k_two_pi_lo), k_two_pi_err); }
  inline MidRad pi_half_mr() { return MidRad(dd(k_pi_half_hi, k_pi_half_lo), k_pi_half_err); }
  inline MidRad ln_pi_mr() { return MidRad(dd(k_ln_pi_hi, k_ln_pi_lo), k_ln_pi_err); }
  inline MidRad ln_two_pi_mr() { return MidRad(dd(k_ln_two_pi_hi, k_ln_two_pi_lo), k_ln_two_pi_err); }
  inline MidRad ln10_mr() { return MidRad(dd(k_ln10_hi, k_ln10_lo), k_ln10_err); }

  inline Interval pi_interval() { return to_interval(pi_mr()); }
  inline Interval two_pi_interval() { return to_interval(two_pi_mr()); }
  inline Interval ln_two_pi_interval() { return to_interval(ln_two_pi_mr()); }
  inline Interval ln10_interval() { return to_interval(ln10_mr()); }

  inline Interval bernoulli_2k(int k) {  // B_{2k}, 1 <= k <= 24
    if (k < 1 || k > 24) throw std::domain_error("bernoulli_2k: k out of tabulated range");
    return Interval(k_bernoulli2k[k - 1][0], k_bernoulli2k[k - 1][1]);
  }

}  // namespace constants
}  // namespace thetacross
