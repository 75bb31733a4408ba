// Copyright 2026 the thetacross authors.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "thetacross/crossover.hpp"
#include "thetacross/zero_finding.hpp"

using namespace thetacross;
using namespace oracle;

namespace {

// Independently computed reference values, ~30 significant digits. All inputs
// below are exact binary doubles (the published parameters were chosen to be).
const Mp kKernel11("0.24197072451914334979783019293556");
const Mp kKernelTwoPi("0.99999999999999998050914083740312");
const Mp kTailQ1("0.15865525393145705141476745436796");
const Mp kTailQ2("0.022750131948179207200282637166533");
const Mp kTailQ8("6.2209605742717841235159951725882e-16");
const Mp kTailMixed("0.0080990089345172616640635471754819");  // y=1.25, alpha=3.7
const Mp kR2Paper("1.11969340181276558499767e-10");
const Mp kR3Paper("6.112892815513956878857784e-53");
const Mp kR4Paper("2.684656418525116897165687e-13");
const Mp kSumRPaper("1.654537805823129070189484e-9");
const Mp kR2T5e9("5.9081388006929736933e-6");
const Mp kR2T6e9("3.5142520270695611934e-8");
const Mp kR3Exact400("3.34314947352102507850693409106e-29");
const Mp kSum29("-0.080511570805337871726795551996591");  // omega=1.75, alpha=5e4
const Mp kOneZeroTerm("0.0049989888337231397415483022461924");

BoundParams paper_params() {
  BoundParams p;
  p.A = 3.0610046e10;
  p.T = 6970346000.0;
  p.alpha = 1153308722614227968.0;
  p.eta = 933831.0 / 17592186044416.0;  // 933831 / 2^44
  p.omega = 727.951332655;
  return p;
}

const ZeroTable& table_to_105() {
  static ZeroTable t = compute_zeros(105.0, 1e-10);
  return t;
}

bool mentions(const std::vector<std::string>& v, const char* word) {
  for (const std::string& s : v)
    if (s.find(word) != std::string::npos) return true;
  return false;
}

// Scalar 200-bit recomputation of the tail bound, no interval arithmetic.
double tail_scalar_200(const BoundParams& p, double eta0) {
  Mp c("1.3082e-9");
  Mp two_pi = Mp("2") * Mp("3.14159265358979323846264338327950288419716939937511");
  Mp k;
  mpfr_sqrt(k.raw(), (Mp(p.alpha) / two_pi).raw(), MPFR_RNDN);
  Mp damp;
  mpfr_exp(damp.raw(), (-(Mp(p.alpha) * Mp(eta0) * Mp(eta0) / Mp(2.0))).raw(), MPFR_RNDN);
  Mp e1, e2;
  mpfr_exp(e1.raw(), ((Mp(p.omega) + Mp(p.eta)) / Mp(2.0)).raw(), MPFR_RNDN);
  mpfr_exp(e2.raw(), ((Mp(p.omega) - Mp(eta0)) / Mp(2.0)).raw(), MPFR_RNDN);
  return (c * (Mp(p.eta) - Mp(eta0)) * k * damp * (e1 + e2)).to_double();
}

}  // namespace

TEST_CASE("validate accepts the published parameters", "[crossover]") {
  CHECK(validate(paper_params()).empty());

  BoundParams p = paper_params();
  p.eta = p.omega;
  std::vector<std::string> v = validate(p);
  CHECK(v.size() >= 2);  // breaks eta <= omega/2 and omega - eta >= 400
  CHECK(mentions(v, "eta"));

  p = paper_params();
  p.T = p.A + 1.0;
  v = validate(p);
  REQUIRE(v.size() == 1);
  CHECK(mentions(v, "T"));

  p = paper_params();
  p.alpha = 2.0 * square(Interval(p.A)).hi;
  CHECK(mentions(validate(p), "alpha"));

  p = paper_params();
  p.eta = -1.0;
  CHECK(mentions(validate(p), "positive"));

  CHECK_THROWS_AS(error_terms(p), std::invalid_argument);
}

TEST_CASE("kernel matches high-precision oracles", "[crossover]") {
  Interval k = kernel(1.0, 1.0);
  CHECK(interval_contains(k, kKernel11));
  CHECK(width(k) < 1e-15);

  Interval k0 = kernel(0.0, 6.283185307179586);
  CHECK(k0.contains(1.0));
  CHECK(interval_contains(k0, kKernelTwoPi));

  CHECK_THROWS_AS(kernel(1.0, 0.0), std::domain_error);
}

TEST_CASE("kernel mass tails", "[crossover]") {
  Interval half = erf_like_tail(0.0, 7.25);
  CHECK(half.lo == 0.5);
  CHECK(half.hi == 0.5);

  Interval q1 = erf_like_tail(1.0, 1.0);
  CHECK(interval_contains(q1, kTailQ1));
  CHECK(width(q1) < 1e-15);

  // t = y sqrt(alpha) = 2: series branch with a composite argument.
  Interval q2 = erf_like_tail(0.5, 16.0);
  CHECK(interval_contains(q2, kTailQ2));

  Interval qm = erf_like_tail(1.25, 3.7);
  CHECK(interval_contains(qm, kTailMixed));
  CHECK(width(qm) < 1e-16);

  // t = 8: asymptotic branch.
  Interval q8 = erf_like_tail(8.0, 1.0);
  CHECK(interval_contains(q8, kTailQ8));
  CHECK(width(q8) / q8.lo < 1e-8);

  // Total mass is 1: both half-lines certified around 1/2.
  Interval total = mul_pow2(erf_like_tail(0.0, 1153308722614227968.0), 1);
  CHECK(total.contains(1.0));
  CHECK(width(total) < 1e-12);

  // Monotone in y, including straddling the branch cut at t = 6.
  CHECK(erf_like_tail(1.0, 1.0).lo > erf_like_tail(2.0, 1.0).hi);
  CHECK(erf_like_tail(5.9999, 1.0).lo > erf_like_tail(6.0001, 1.0).hi);

  CHECK_THROWS_AS(erf_like_tail(-1.0, 1.0), std::domain_error);
}

TEST_CASE("zero sum enclosures and cutoffs", "[crossover]") {
  const ZeroTable& t = table_to_105();
  REQUIRE(t.gammas.size() == 31);

  ZeroTable empty;
  finalize_table(empty, "empty");
  Interval z = zero_sum(empty, 3.0, 100.0, 10.0);
  CHECK(z.lo == 0.0);
  CHECK(z.hi == 0.0);
  z = zero_sum(t, 3.0, 100.0, 10.0);
  CHECK((z.lo == 0.0 && z.hi == 0.0));

  Interval s = zero_sum(t, 1.75, 50000.0, 100.0);
  CHECK(interval_contains(s, kSum29));
  CHECK(width(s) < 1e-8);

  // No zeros between 100 and 101: the sum is unchanged bit for bit.
  Interval s101 = zero_sum(t, 1.75, 50000.0, 101.0);
  CHECK(s.lo == s101.lo);
  CHECK(s.hi == s101.hi);
  // The 30th zero sits near 101.3: T = 103 picks it up.
  Interval s103 = zero_sum(t, 1.75, 50000.0, 103.0);
  CHECK(s103.lo != s.lo);

  CHECK_THROWS_AS(zero_sum(t, 1.75, 50000.0, 104.5), std::invalid_argument);
  double t_split = 0.5 * (t.gammas[29].lo + t.gammas[29].hi);
  CHECK_THROWS_AS(zero_sum(t, 1.75, 50000.0, t_split), std::invalid_argument);
}

TEST_CASE("zero sum: single-zero limit against the one-term formula", "[crossover]") {
  ZeroTable one = compute_zeros(15.0, 1e-12);
  REQUIRE(one.gammas.size() == 1);
  // The table records coverage by its last enclosure, so cut there exactly.
  Interval s = zero_sum(one, 0.0, 1e30, one.meta.max_gamma);
  CHECK(interval_contains(s, kOneZeroTerm));
  CHECK(width(s) < 2e-15);
}

TEST_CASE("zero sum is worker-independent", "[crossover]") {
  const ZeroTable& t = table_to_105();
  Interval a = zero_sum(t, 437.78249, 1153308722614227968.0, 100.0, 1);
  Interval b = zero_sum(t, 437.78249, 1153308722614227968.0, 100.0, 3);
  CHECK(a.lo == b.lo);
  CHECK(a.hi == b.hi);
}

TEST_CASE("error terms at the published parameters", "[crossover]") {
  ErrorTerms et = error_terms(paper_params());
  CHECK(interval_contains(et.r1, Mp("1.5423e-9")));
  CHECK(interval_contains(et.r2, kR2Paper));
  CHECK(interval_contains(et.r3, kR3Paper));
  CHECK(interval_contains(et.r4, kR4Paper));
  CHECK(et.r1.lo >= 0.0);
  CHECK(et.r2.lo >= 0.0);
  CHECK(et.r3.lo >= 0.0);
  CHECK(et.r4.lo >= 0.0);

  Interval sum = et.r1 + et.r2 + et.r3 + et.r4;
  CHECK(interval_contains(sum, kSumRPaper));
  CHECK(sum.hi < 1.7e-9);
  CHECK(width(sum) < 1e-18);
}

TEST_CASE("error term monotonicity", "[crossover]") {
  // Small parameters keep the Gaussian piece of R2 alive so eta bites.
  BoundParams p;
  p.A = 100.0;
  p.T = 64.0;
  p.alpha = 4000.0;
  p.eta = 0.05;
  p.omega = 500.5;
  REQUIRE(validate(p).empty());
  ErrorTerms et1 = error_terms(p);
  BoundParams p2 = p;
  p2.eta = 0.1;
  REQUIRE(validate(p2).empty());
  ErrorTerms et2 = error_terms(p2);
  CHECK(et2.r2.hi < et1.r2.lo);  // doubled eta shrinks the Gaussian spill
  CHECK(et2.r4.lo > et1.r4.hi);  // and grows the high-zero term

  // R3 falls as the window moves right.
  BoundParams q = p;
  Interval prev = error_terms(q).r3;
  for (double w : {600.5, 727.951332655}) {
    q.omega = w;
    Interval r3 = error_terms(q).r3;
    CHECK(r3.hi < prev.lo);
    prev = r3;
  }

  // R2's cutoff factor falls as T grows, alpha fixed.
  BoundParams r = paper_params();
  r.T = 5e9;
  Interval r2a = error_terms(r).r2;
  r.T = 6e9;
  Interval r2b = error_terms(r).r2;
  CHECK(interval_contains(r2a, kR2T5e9));
  CHECK(interval_contains(r2b, kR2T6e9));
  CHECK(r2a.lo > r2b.hi);
  CHECK(r2b.lo > error_terms(paper_params()).r2.hi);
}

TEST_CASE("r3 at an exactly representable 400-wide gap", "[crossover]") {
  BoundParams p;
  p.A = 1073741824.0;              // 2^30
  p.T = 1048576.0;                 // 2^20
  p.alpha = 1.152921504606847e18;  // 2^60 = A^2, boundary equality
  p.eta = 0.5;
  p.omega = 400.5;
  REQUIRE(validate(p).empty());
  Interval r3 = error_terms(p).r3;
  CHECK(interval_contains(r3, kR3Exact400));
  CHECK(width(r3) / r3.lo < 1e-12);
}

TEST_CASE("lower bound composes sum and error terms", "[crossover]") {
  BoundParams p = paper_params();
  p.T = 10.0;
  ZeroTable empty;
  finalize_table(empty, "empty");
  BoundBreakdown bd = lower_bound(p, empty);
  CHECK(bd.zero_sum.lo == 0.0);
  CHECK(bd.zero_sum.hi == 0.0);
  CHECK(bd.lower_bound.hi < -1.0);  // nothing to push the average up
  Interval recomposed =
      Interval(-1.0) - bd.zero_sum - bd.r1 - bd.r2 - bd.r3 - bd.r4;
  CHECK(bd.lower_bound.lo == recomposed.lo);
  CHECK(bd.lower_bound.hi == recomposed.hi);

  // Near the Bays-Hudson 437 candidate the bound stays negative.
  BoundParams q = paper_params();
  q.T = 100.0;
  q.omega = 437.78249;
  BoundBreakdown far = lower_bound(q, table_to_105());
  CHECK(far.lower_bound.hi < 0.0);
}

TEST_CASE("sharpen pays the measured tail", "[crossover]") {
  BoundParams p = paper_params();
  BoundBreakdown bd;
  bd.lower_bound = Interval(0.0013360261);

  // eta0 = eta: no trimmed tail, bound passes through unchanged.
  auto full = sharpen(p, bd, p.eta);
  REQUIRE(full.has_value());
  CHECK(full->integral_lb.lo == bd.lower_bound.lo);
  CHECK(full->integral_lb.hi == bd.lower_bound.hi);
  CHECK(full->successive_count_log10 > 152.0);
  CHECK(std::fabs(full->successive_count_log10 - 155.1984) < 1e-3);

  // The published eta0 = eta/4.2867 does not clear the tail bound: K(eta0)
  // only decays like exp(-88.4) against e^{(omega+eta)/2} ~ e^{364}, leaving
  // a tail near 2.14e112. Measured, not a defect in this implementation.
  double eta0_pub = p.eta / 4.2867;
  Interval tail_pub = sharpen_tail(p, eta0_pub);
  CHECK(tail_pub.lo > 2.13e112);
  CHECK(tail_pub.hi < 2.15e112);
  CHECK_FALSE(sharpen(p, bd, eta0_pub).has_value());

  // eta/2.1 clears it with room; frozen endpoints from a 60-digit oracle.
  auto cert = sharpen(p, bd, p.eta / 2.1);
  REQUIRE(cert.has_value());
  CHECK(cert->integral_lb.lo > 0.0013360257433596);
  CHECK(cert->integral_lb.hi < 0.0013360257433598);
  CHECK(std::fabs(cert->successive_count_log10 - 155.19843825407497) < 1e-6);
  CHECK(cert->successive_count_log10 > 152.0);
  CHECK(std::fabs(cert->x_lo - 727.95133262972277) < 1e-9);
  CHECK(std::fabs(cert->x_hi - 727.95133268027720) < 1e-9);
  CHECK(cert->pointwise_lb.lo > 1.5e155);
  CHECK(cert->pointwise_lb.hi < 1.7e155);

  CHECK_THROWS_AS(sharpen(p, bd, 0.0), std::domain_error);
  CHECK_THROWS_AS(sharpen(p, bd, 2.0 * p.eta), std::domain_error);

  // The 1.3082e-9 tail constant needs omega - eta > 700.
  BoundParams narrow = paper_params();
  narrow.omega = 500.5;
  bool threw = false;
  try {
    sharpen(narrow, bd, narrow.eta);
  } catch (const std::domain_error& e) {
    threw = true;
    CHECK(std::string(e.what()).find("700") != std::string::npos);
  }
  CHECK(threw);
}

TEST_CASE("auto sharpen finds the narrowest certifiable window", "[crossover]") {
  BoundParams p = paper_params();
  BoundBreakdown bd;
  bd.lower_bound = Interval(0.0013360261);
  auto cert = sharpen(p, bd);
  REQUIRE(cert.has_value());
  CHECK(cert->integral_lb.lo > 0.0);
  CHECK(cert->pointwise_lb.lo > 0.0);
  // Feasibility boundary sits at eta0 = eta / 2.1444549256 (60-digit oracle).
  double divisor = p.eta / cert->eta0;
  CHECK(std::fabs(divisor - 2.1444549256) < 1e-6);
  CHECK(cert->successive_count_log10 > 125.0);

  // Certificate soundness: a scalar 200-bit recomputation of the tail agrees
  // the sharpened bound is positive.
  double tail = tail_scalar_200(p, cert->eta0);
  CHECK(0.0013360261 - tail > 0.0);

  // An uncertifiable input yields no certificate at any width.
  BoundBreakdown bad;
  bad.lower_bound = Interval(-0.5, -0.4);
  CHECK_FALSE(sharpen(p, bad).has_value());
}

TEST_CASE("scan emits a deterministic grid", "[crossover]") {
  const ZeroTable& t = table_to_105();
  double alpha = 1153308722614227968.0;

  std::vector<ScanRow> one = scan(437.78249, 437.78249, 1.0, t, alpha, 100.0);
  REQUIRE(one.size() == 1);
  CHECK(one[0].omega == 437.78249);
  CHECK(std::isfinite(one[0].sum_mid));

  std::vector<ScanRow> rows = scan(437.78, 437.785, 2.5e-4, t, alpha, 100.0, 1);
  REQUIRE(rows.size() == 21);
  std::vector<ScanRow> again = scan(437.78, 437.785, 2.5e-4, t, alpha, 100.0, 3);
  REQUIRE(again.size() == rows.size());
  CHECK(std::memcmp(rows.data(), again.data(), rows.size() * sizeof(ScanRow)) == 0);

  for (const ScanRow& r : rows) {
    CHECK(r.lb_hi >= r.lb_lo);
    CHECK(std::fabs((r.lb_hi - r.lb_lo) - r.sum_width) < 1e-15);
    CHECK(std::fabs(r.lb_lo - (-1.0 - (r.sum_mid + 0.5 * r.sum_width))) < 1e-12);
  }

  std::string csv = scan_csv(rows);
  CHECK(csv.rfind("omega,sum_mid,sum_width,lb_lo,lb_hi\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 22);

  CHECK_THROWS_AS(scan(1.0, 0.0, 0.1, t, alpha, 100.0), std::domain_error);
  CHECK_THROWS_AS(scan(0.0, 1.0, 0.0, t, alpha, 100.0), std::domain_error);
}

TEST_CASE("certificate audit report names its constants", "[crossover]") {
  BoundParams p = paper_params();
  BoundBreakdown bd;
  bd.zero_sum = Interval(-1.0013360278, -1.0013360277);
  bd.r1 = cx_detail::around(1.5423e-9);
  bd.lower_bound = Interval(0.0013360261);
  auto cert = sharpen(p, bd, p.eta / 2.1);
  REQUIRE(cert.has_value());
  std::string rep = format_certificate(p, bd, *cert);
  for (const char* needle :
       {"1.5423e-9", "1.3082e-9", "alpha", "R4", "zeta'(0)/zeta(0)",
        "sharpened bound", "exp(", "successive integers"}) {
    INFO(needle);
    CHECK(rep.find(needle) != std::string::npos);
  }
  ScanRow row = certificate_row(bd, *cert);
  CHECK(row.omega == p.omega);
  CHECK(row.lb_lo == cert->integral_lb.lo);
}

TEST_CASE("figure-1 window stays above the line", "[.][slow][crossover]") {
  ZeroTable t = compute_zeros(5002.0, 1e-9);
  std::vector<ScanRow> rows = scan(437.78, 437.785, 5e-5, t, 1153308722614227968.0, 5000.0);
  REQUIRE(rows.size() == 101);
  double min_mid = rows[0].sum_mid;
  std::size_t at = 0;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].sum_mid < min_mid) {
      min_mid = rows[i].sum_mid;
      at = i;
    }
  CHECK(min_mid > -1.0);
  CHECK(at > 0);
  CHECK(at + 1 < rows.size());
}
