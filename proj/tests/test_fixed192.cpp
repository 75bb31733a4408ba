// Copyright 2026 the thetacross authors.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <random>
#include "thetacross/fixed192.hpp"
#include "oracle.hpp"

using namespace thetacross;
using oracle::Mp;

namespace {

Mp mp_from_fixed(const Fixed192& f) {
  Fixed192 x = f;
  bool neg = x.is_negative();
  if (neg) x = fx_detail::negate(x);
  Mp r((mpfr_prec_t)300);
  mpfr_set_ui(r.raw(), 0, MPFR_RNDN);
  for (int i = 2; i >= 0; --i) {
    mpfr_mul_2exp(r.raw(), r.raw(), 64, MPFR_RNDN);
    Mp limb((mpfr_prec_t)80);
    mpfr_set_ui(limb.raw(), (unsigned long)(x.limb[i] >> 32), MPFR_RNDN);
    mpfr_mul_2exp(limb.raw(), limb.raw(), 32, MPFR_RNDN);
    mpfr_add_ui(limb.raw(), limb.raw(), (unsigned long)(x.limb[i] & 0xffffffffull), MPFR_RNDN);
    mpfr_add(r.raw(), r.raw(), limb.raw(), MPFR_RNDN);
  }
  mpfr_div_2exp(r.raw(), r.raw(), 128, MPFR_RNDN);
  if (neg) mpfr_neg(r.raw(), r.raw(), MPFR_RNDN);
  return r;
}

double random_double(std::mt19937_64& rng, int emin, int emax) {
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(emin, emax);
  return std::ldexp(mant(rng), expo(rng));
}

}  // namespace

TEST_CASE("double conversion round-trips exactly") {
  std::mt19937_64 rng(11u);
  for (int i = 0; i < 20000; ++i) {
    double x = random_double(rng, -70, 60);
    Fixed192 f = fixed_from_double_exact(x);
    Mp v = mp_from_fixed(f);
    CHECK(v == Mp(x));
  }
  CHECK_THROWS_AS(fixed_from_double_exact(0x1p-129), std::domain_error);
  CHECK_THROWS_AS(fixed_from_double_exact(0x1p63), std::domain_error);
  // Lowest mantissa bit at 2^-129, below the representable 2^-128 cut.
  CHECK_THROWS_AS(fixed_from_double_exact(0x1.0000000000001p-77), std::domain_error);
  CHECK(mp_from_fixed(fixed_from_double_exact(0x1p-128)) == Mp(0x1p-128));
  CHECK(mp_from_fixed(fixed_from_double_exact(-2.75)) == Mp(-2.75));
  CHECK(mp_from_fixed(fixed_from_double_exact(0.0)) == Mp(0.0));
}

TEST_CASE("truncating conversion drops less than 2^-128") {
  std::mt19937_64 rng(12u);
  for (int i = 0; i < 20000; ++i) {
    double x = random_double(rng, -140, 50);
    Fixed192 f = fixed_from_double_trunc(x);
    Mp v = mp_from_fixed(f);
    Mp err = oracle::mp_abs(v - Mp(x));
    CHECK(err <= Mp(0x1p-128));
  }
}

TEST_CASE("dd conversion stays within 2^-127") {
  std::mt19937_64 rng(13u);
  for (int i = 0; i < 20000; ++i) {
    double hi = std::abs(random_double(rng, -20, 45));
    double lo = random_double(rng, -90, -60);
    dd x = dd_from_sum(hi, lo);
    Fixed192 f = fixed_from_dd_trunc(x);
    Mp err = oracle::mp_abs(mp_from_fixed(f) - oracle::mp_from_dd(x));
    CHECK(err <= Mp(kFixedFromDDErr));
  }
}

TEST_CASE("addition and negation match MPFR") {
  std::mt19937_64 rng(14u);
  for (int i = 0; i < 20000; ++i) {
    double a = random_double(rng, -70, 55);
    double b = random_double(rng, -70, 55);
    Fixed192 fa = fixed_from_double_exact(a), fb = fixed_from_double_exact(b);
    CHECK(mp_from_fixed(fx_detail::add(fa, fb)) == Mp(a) + Mp(b));
    CHECK(mp_from_fixed(fx_detail::sub(fa, fb)) == Mp(a) - Mp(b));
    CHECK(mp_from_fixed(fx_detail::negate(fa)) == -Mp(a));
  }
}

TEST_CASE("multiplication truncates within 2^-128") {
  std::mt19937_64 rng(15u);
  for (int i = 0; i < 20000; ++i) {
    double a = std::abs(random_double(rng, -40, 30));
    double b = std::abs(random_double(rng, -40, 30));
    Fixed192 fa = fixed_from_double_exact(a), fb = fixed_from_double_exact(b);
    Fixed192 p = fixed_mul_trunc(fa, fb);
    Mp exact = Mp(a) * Mp(b);
    Mp got = mp_from_fixed(p);
    CHECK(got <= exact);
    CHECK(exact - got <= Mp(0x1p-128));
  }
  Fixed192 big = fixed_from_double_exact(0x1p40);
  CHECK_THROWS_AS(fixed_mul_trunc(big, big), std::overflow_error);
  Fixed192 neg = fixed_from_double_exact(-1.0);
  CHECK_THROWS_AS(fixed_mul_trunc(neg, neg), std::domain_error);
}

TEST_CASE("reduction mod 2pi matches MPFR across scales") {
  std::mt19937_64 rng(16u);
  Mp two_pi = Mp(2.0) * oracle::mp_pi();
  for (int i = 0; i < 4000; ++i) {
    double x = std::abs(random_double(rng, -10, 44));
    Fixed192 f = fixed_from_double_exact(x);
    Reduced2Pi red = fixed_reduce_2pi(f, 0.0);
    // x - k*2pi must match the reduced dd within rad.
    Mp expect = Mp(x) - Mp(red.k) * two_pi;
    Mp err = oracle::mp_abs(oracle::mp_from_dd(red.value) - expect);
    CHECK(err <= Mp(red.rad));
    CHECK(red.value.hi >= -1e-15);
    CHECK(red.value.hi <= 6.2831853071795872);
    CHECK(red.rad <= 1e-24);
  }
}

TEST_CASE("reduction handles near-multiples of 2pi adversarially") {
  Mp two_pi = Mp(2.0) * oracle::mp_pi();
  for (double mult : {1.0, 7.0, 1000.0, 1048576.0, 6.4e10, 3.5e12}) {
    Mp target = Mp(mult) * two_pi;
    double x = target.to_double();  // nearest double to a 2pi multiple
    Fixed192 f = fixed_from_double_exact(x);
    Reduced2Pi red = fixed_reduce_2pi(f, 0.0);
    Mp expect = Mp(x) - Mp(red.k) * two_pi;
    Mp err = oracle::mp_abs(oracle::mp_from_dd(red.value) - expect);
    CHECK(err <= Mp(red.rad));
    CHECK(red.rad <= 1e-20);
  }
}

TEST_CASE("product-then-reduce reaches full-scale gamma*omega") {
  std::mt19937_64 rng(17u);
  Mp two_pi = Mp(2.0) * oracle::mp_pi();
  for (int i = 0; i < 2000; ++i) {
    std::uniform_real_distribution<double> gdist(10.0, 3.06e10);
    std::uniform_real_distribution<double> wdist(1.0, 729.0);
    double gamma = gdist(rng), omega = wdist(rng);
    Fixed192 fg = fixed_from_double_exact(gamma);
    Fixed192 fw = fixed_from_double_exact(omega);
    Fixed192 prod = fixed_mul_trunc(fg, fw);
    Reduced2Pi red = fixed_reduce_2pi(prod, 0x1p-128);
    Mp expect = oracle::mp_fmod(Mp(gamma) * Mp(omega), two_pi);
    // fmod and our reduction agree up to a possible extra 2pi.
    Mp got = oracle::mp_from_dd(red.value);
    Mp diff = oracle::mp_abs(got - expect);
    if (diff > Mp(3.0)) diff = oracle::mp_abs(diff - two_pi);
    CHECK(diff <= Mp(red.rad) + Mp(0x1p-127));
    CHECK(red.rad <= 1e-24);
  }
}

TEST_CASE("reduction rejects out-of-domain input") {
  CHECK_THROWS_AS(fixed_reduce_2pi(fixed_from_double_exact(-10.0), 0.0),
                  std::domain_error);
  // Tiny negative values (conversion slop) wrap cleanly.
  Reduced2Pi red = fixed_reduce_2pi(fixed_from_double_trunc(-0x1p-100), 0.0);
  CHECK(red.value.hi > 6.28);
  CHECK(red.k == -1.0);
}
