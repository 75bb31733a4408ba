// Copyright 2026 the thetacross authors.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "oracle.hpp"
#include "thetacross/chebyshev.hpp"
#include "thetacross/zero_finding.hpp"

using namespace thetacross;
using namespace oracle;

namespace {

// Independently computed reference values, 30 significant digits.
const Mp kLog2("0.693147180559945309417232121458");
const Mp kLog210("5.34710753071746868051858943505");
const Mp kLog2520("7.83201418050546899074829891489");
const Mp kTheta1000("956.245265120058867812401516766");
const Mp kPsi1000_5("996.680912247175240263021765666");
const Mp kTheta1e6("998484.175025634292133973037829695938");
const Mp kPsi1e6("999586.597495632922033061533011304464");
const Mp kMainTerms10_5("8.66667877376628243753204837571");

const ZeroTable& table_to_1000() {
  static ZeroTable t = compute_zeros(1000.0, 1e-9);
  return t;
}

}  // namespace

TEST_CASE("direct theta and psi match product oracles") {
  CHECK(interval_contains(theta_direct(2.0), kLog2));
  CHECK(interval_contains(theta_direct(10.0), kLog210));
  CHECK(interval_contains(psi_direct(10.0), kLog2520));
  CHECK(interval_contains(theta_direct(1000.5), kTheta1000));
  CHECK(interval_contains(psi_direct(1000.5), kPsi1000_5));
}

TEST_CASE("direct sums stay sharp at a million") {
  Interval th = theta_direct(1.0e6);
  Interval ps = psi_direct(1.0e6);
  CHECK(interval_contains(th, kTheta1e6));
  CHECK(interval_contains(ps, kPsi1e6));
  // binary64 endpoints at this magnitude floor the width near 2 ulp
  CHECK(th.hi - th.lo < 1e-9);
  CHECK(ps.hi - ps.lo < 1e-9);
}

TEST_CASE("desk guard rejects out-of-range x") {
  CHECK_THROWS_AS(theta_direct(1.5), std::domain_error);
  CHECK_THROWS_AS(theta_direct(2.0e10), std::domain_error);
  CHECK_THROWS_AS(psi_direct(1.0), std::domain_error);
}

TEST_CASE("psi equals the theta sum over integer root cutoffs") {
  double x = 1.0e4;
  std::uint64_t n = static_cast<std::uint64_t>(x);
  Interval acc(0.0);
  for (unsigned k = 1;; ++k) {
    std::uint64_t r = cheb_detail::iroot(n, k);
    if (r < 2) break;
    acc = acc + theta_direct(static_cast<double>(r));
  }
  CHECK(overlaps(acc, psi_direct(x)));
}

TEST_CASE("theta lower endpoints are non-decreasing on an ascending grid") {
  double prev = -1.0;
  for (double x = 10.0; x <= 150.0; x += 7.0) {
    Interval th = theta_direct(x);
    CHECK(th.lo >= prev);
    prev = th.lo;
  }
}

TEST_CASE("sample invariants hold") {
  ChebyshevSample s = chebyshev_sample(1000.5);
  CHECK(s.theta.lo >= 0.0);
  Interval gap = s.psi - s.theta;
  CHECK(gap.lo >= -1e-9);
  CHECK(gap.hi <= 1.427 * std::sqrt(s.x));
}

TEST_CASE("psi sign changes match the step-walk oracle") {
  CHECK(count_sign_changes_psi(100.0) == 24);
  CHECK(count_sign_changes_psi(2.0) == 0);
  CHECK(count_sign_changes_psi(10.0) == 0);
  CHECK(count_sign_changes_psi(18.0) == 0);
  CHECK(count_sign_changes_psi(19.0) == 1);
  CHECK(count_sign_changes_psi(19.2) == 1);
  // psi(19) = log lcm(1..19) = log 232792560 = 19.2656..., crossed by 19.3
  CHECK(count_sign_changes_psi(19.3) == 2);
  CHECK(count_sign_changes_psi(19.5) == 2);
  CHECK(count_sign_changes_psi(200.0) == 49);
  CHECK(count_sign_changes_psi(500.0) == 111);
  CHECK(count_sign_changes_psi(1000.0) == 162);
  CHECK(count_sign_changes_psi(100.0) == 24);  // deterministic rerun
  CHECK_THROWS_AS(count_sign_changes_psi(1.0e7), std::domain_error);
}

TEST_CASE("explicit formula with an empty table gives pure main terms") {
  ZeroTable empty;
  finalize_table(empty, "empty");
  PsiExplicitReport r = psi_explicit_report(10.5, empty);
  CHECK(interval_contains(r.value, kMainTerms10_5));
  CHECK(r.value.hi - r.value.lo < 1e-13);
  CHECK(r.truncation_estimate > 0.0);
}

TEST_CASE("explicit formula refuses prime powers") {
  ZeroTable empty;
  finalize_table(empty, "empty");
  CHECK_THROWS_AS(psi_explicit(8.0, empty), std::domain_error);
  CHECK_THROWS_AS(psi_explicit(9.0, empty), std::domain_error);
  CHECK_THROWS_AS(psi_explicit(1024.0, empty), std::domain_error);
  CHECK_THROWS_AS(psi_explicit(997.0, empty), std::domain_error);
  CHECK_NOTHROW(psi_explicit(10.0, empty));  // 10 = 2*5 is fine
}

TEST_CASE("explicit formula tracks direct psi at desk scale") {
  // Tolerance pinned from the first measured run: |err| = 0.994 with 649
  // zeros; the raw truncated zero sum oscillates, it does not certify.
  Interval ex = psi_explicit(1000.5, table_to_1000());
  Interval d = psi_direct(1000.5);
  CHECK(std::abs(mid(ex) - mid(d)) < 1.2);
}

TEST_CASE("dense-grid agreement improves as the table grows") {
  const ZeroTable& t = table_to_1000();
  std::vector<double> grid;
  for (int k = 10; k <= 1000; k += 30) grid.push_back(k + 0.5);
  std::vector<Interval> truth;
  for (double x : grid) truth.push_back(psi_direct(x));
  double prev_max = 1e300;
  for (std::size_t n : {std::size_t{10}, std::size_t{100}, t.gammas.size()}) {
    ZeroTable sub;
    sub.gammas.assign(t.gammas.begin(), t.gammas.begin() + n);
    finalize_table(sub, "prefix");
    double mx = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      double err = std::abs(mid(psi_explicit(grid[i], sub)) - mid(truth[i]));
      mx = std::max(mx, err);
    }
    CHECK(mx < prev_max);
    prev_max = mx;
  }
}

TEST_CASE("effective bounds hold with certified margins") {
  EffectiveBoundsReport rep = check_effective_bounds({4.0, 10.0, 1.0e3, 1.0e6});
  REQUIRE(rep.rows.size() == 4);
  for (const EffectiveBoundsRow& r : rep.rows) {
    CHECK(r.sqrt_gap_slack > 0.0);
    CHECK(r.cube_gap_slack > 0.0);
    CHECK(r.linear_theta_slack > 0.0);
  }
  CHECK(rep.max_slack > 0.0);
  std::string csv = effective_bounds_csv(rep);
  CHECK(csv.find("x,sqrt_gap_slack") == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
  std::string txt = format_effective_bounds(rep);
  CHECK(txt.find("max slack") != std::string::npos);
}

TEST_CASE("effective bounds hold at a billion", "[.][slow]") {
  EffectiveBoundsReport rep = check_effective_bounds({1.0e9});
  REQUIRE(rep.rows.size() == 1);
  CHECK(rep.rows[0].sqrt_gap_slack > 0.0);
  CHECK(rep.rows[0].cube_gap_slack > 0.0);
  CHECK(rep.rows[0].linear_theta_slack > 0.0);  // theta(1e9) < 1e9 slice
}

TEST_CASE("explicit formula near direct psi with a tall table", "[.][slow]") {
  // First measured run with zeros to 5000 gave |err| = 0.0105.
  ZeroTable t = compute_zeros(5000.0, 1e-9);
  Interval ex = psi_explicit(1000.5, t);
  Interval d = psi_direct(1000.5);
  CHECK(std::abs(mid(ex) - mid(d)) < 0.5);
}
