// Copyright 2026 the thetacross authors.
// SPDX-License-Identifier: Apache-2.0
//
// Direct Chebyshev sums as small-scale ground truth. theta sums log p over
// primes by segmented sieve with the accumulator kept in double-double
// midpoint form, so a sweep of fifty million primes stays far below any
// decision threshold in width. psi adds the theta values at exact integer
// k-th-root cutoffs. Sign changes of psi(x) - x are counted on the exact
// step function: the function falls with slope -1 between prime-power
// jumps, so each segment contributes a crossing iff the certified value
// just before the next jump has fallen negative, and each jump contributes
// one iff the certified sign flips across it. The truncated explicit
// formula rebuilds psi from a zero table as a cross-module diagnostic; its
// truncation error is an estimate, never part of a certificate.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "thetacross/constants.hpp"
#include "thetacross/interval.hpp"
#include "thetacross/kernels.hpp"
#include "thetacross/zero_table.hpp"

namespace thetacross {

struct ChebyshevSample {
  double x;
  Interval theta;
  Interval psi;
};

namespace cheb_detail {

inline std::uint64_t ipow_capped(std::uint64_t base, unsigned k,
                                 std::uint64_t cap) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (base != 0 && r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

// Largest r with r^k <= n, exact in integers.
inline std::uint64_t iroot(std::uint64_t n, unsigned k) {
  if (k == 0) throw std::logic_error("iroot: k must be positive");
  if (k == 1) return n;
  std::uint64_t r = static_cast<std::uint64_t>(
      std::pow(static_cast<double>(n), 1.0 / static_cast<double>(k)));
  while (ipow_capped(r + 1, k, n) <= n) ++r;
  while (r > 0 && ipow_capped(r, k, n) > n) --r;
  return r;
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ull, 3ull, 5ull}) {
    if (n == d) return true;
    if (n % d == 0) return false;
  }
  for (std::uint64_t d = 7; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 4) == 0) return false;
  }
  return true;
}

inline bool is_prime_power(std::uint64_t n) {
  if (n < 2) return false;
  for (unsigned k = 1; (1ull << k) <= 2 * n; ++k) {
    std::uint64_t r = iroot(n, k);
    if (r < 2) break;
    if (ipow_capped(r, k, n) == n && is_prime_u64(r)) return true;
  }
  return false;
}

// Odd-only sieve of [2, n], visiting primes in ascending order.
template <class Fn>
void for_each_prime(std::uint64_t n, Fn&& fn) {
  if (n < 2) return;
  fn(std::uint64_t{2});
  if (n < 3) return;
  std::uint64_t root = iroot(n, 2);
  std::vector<std::uint64_t> base;  // odd primes <= sqrt(n)
  {
    std::size_t m = static_cast<std::size_t>(root / 2) + 1;  // index i <-> 2i+1
    std::vector<bool> comp(m, false);
    for (std::size_t i = 1; i < m; ++i) {
      if (comp[i]) continue;
      std::uint64_t p = 2 * i + 1;
      base.push_back(p);
      for (std::uint64_t j = (p * p - 1) / 2; j < m; j += p) comp[j] = true;
    }
  }
  const std::uint64_t seg_odds = 1u << 21;  // 4M numbers per segment
  std::vector<std::uint64_t> bits(seg_odds / 64);
  for (std::uint64_t lo = 3; lo <= n; lo += 2 * seg_odds) {
    std::uint64_t hi = std::min(n, lo + 2 * seg_odds - 2);  // odd span
    std::size_t count = static_cast<std::size_t>((hi - lo) / 2) + 1;
    std::fill(bits.begin(), bits.end(), 0);
    for (std::uint64_t p : base) {
      std::uint64_t start = p * p;
      if (start > hi) break;
      if (start < lo) {
        std::uint64_t q = (lo + p - 1) / p;
        if (q % 2 == 0) ++q;
        start = q * p;
      }
      for (std::uint64_t v = start; v <= hi; v += 2 * p) {
        std::uint64_t idx = (v - lo) / 2;
        bits[idx >> 6] |= 1ull << (idx & 63);
      }
    }
    for (std::size_t i = 0; i < count; ++i) {
      if (!(bits[i >> 6] >> (i & 63) & 1)) fn(lo + 2 * i);
    }
  }
}

struct ThetaSweep {
  MidRad sum;
  std::uint64_t primes = 0;
};

inline ThetaSweep theta_sweep(std::uint64_t n) {
  ThetaSweep r;
  for_each_prime(n, [&r](std::uint64_t p) {
    r.sum = mr_add(r.sum, log_mr(static_cast<double>(p)));
    ++r.primes;
  });
  return r;
}

inline void desk_guard(double x) {
  if (!(x >= 2.0 && x <= 1.0e10))
    throw std::domain_error("chebyshev: x must lie in [2, 1e10]");
}

inline int certified_sign(const MidRad& v) {
  Interval i = to_interval(v);
  if (i.lo > 0.0) return 1;
  if (i.hi < 0.0) return -1;
  throw std::runtime_error("chebyshev: sign of psi(x) - x cannot be certified");
}

}  // namespace cheb_detail

inline Interval theta_direct(double x) {
  cheb_detail::desk_guard(x);
  return to_interval(
      cheb_detail::theta_sweep(static_cast<std::uint64_t>(x)).sum);
}

inline Interval psi_direct(double x) {
  cheb_detail::desk_guard(x);
  std::uint64_t n = static_cast<std::uint64_t>(x);
  MidRad acc;
  for (unsigned k = 1;; ++k) {
    std::uint64_t r = cheb_detail::iroot(n, k);
    if (r < 2) break;
    acc = mr_add(acc, cheb_detail::theta_sweep(r).sum);
  }
  return to_interval(acc);
}

inline ChebyshevSample chebyshev_sample(double x) {
  ChebyshevSample s{x, theta_direct(x), psi_direct(x)};
  if (!(s.theta.lo >= 0.0) || !certainly_less(s.theta - s.psi, Interval(1e-15)))
    throw std::logic_error("chebyshev_sample: 0 <= theta <= psi violated");
  return s;
}

struct PsiExplicitReport {
  Interval value;
  double truncation_estimate;  // rough scale of the dropped zero-sum tail
};

// Truncated explicit formula for psi, paired-zero real form. The zero sum
// uses each table enclosure whole; the dropped tail above the table height
// is only estimated, so the result is a diagnostic, not a certificate.
inline PsiExplicitReport psi_explicit_report(double x, const ZeroTable& zeros) {
  cheb_detail::desk_guard(x);
  std::uint64_t n = static_cast<std::uint64_t>(x);
  if (x == std::floor(x) && cheb_detail::is_prime_power(n))
    throw std::domain_error(
        "psi_explicit: x is a prime power, the formula value differs from psi "
        "by half a jump");
  Interval xi(x);
  Interval lx = log_interval(xi);
  Interval sum(0.0);
  for (const Interval& g : zeros.gammas) {
    Interval phase = g * lx;
    Interval num = cos_interval(phase) + 2.0 * g * sin_interval(phase);
    sum = sum + num / (Interval(0.25) + square(g));
  }
  Interval value = xi - sqrt(xi) * sum - constants::ln_two_pi_interval() -
                   mul_pow2(log_interval(Interval(1.0) - powi(Interval(1.0) / xi, 2)), -1);
  double big_t = zeros.gammas.empty() ? 14.0 : zeros.gammas.back().hi;
  double lxt = std::log(x * big_t);
  return PsiExplicitReport{value, x * lxt * lxt / big_t};
}

inline Interval psi_explicit(double x, const ZeroTable& zeros) {
  return psi_explicit_report(x, zeros).value;
}

// Sign changes of psi(x) - x on (0, x_hi], counted on the exact step
// function: one per jump whose certified sign flips, one per inter-jump
// segment where the certified value has fallen through zero.
inline int count_sign_changes_psi(double x_hi) {
  if (!(x_hi > 0.0 && x_hi <= 1.0e6))
    throw std::domain_error("count_sign_changes_psi: x_hi must lie in (0, 1e6]");
  std::uint64_t n = static_cast<std::uint64_t>(x_hi);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> jumps;  // (q = p^m, p)
  cheb_detail::for_each_prime(n, [&jumps, n](std::uint64_t p) {
    for (std::uint64_t q = p; q <= n; q *= p) {
      jumps.push_back({q, p});
      if (q > n / p) break;
    }
  });
  std::sort(jumps.begin(), jumps.end());
  MidRad psi;
  int s_cur = -1;  // psi - x = -x < 0 on (0, 2)
  int count = 0;
  for (const auto& [q, p] : jumps) {
    double qd = static_cast<double>(q);
    int s_pre = s_cur;
    if (s_cur > 0) {
      s_pre = cheb_detail::certified_sign(mr_sub(psi, MidRad(dd(qd), 0.0)));
      if (s_pre < 0) ++count;  // fell through zero inside the open segment
    }
    psi = mr_add(psi, log_mr(static_cast<double>(p)));
    int s_post = cheb_detail::certified_sign(mr_sub(psi, MidRad(dd(qd), 0.0)));
    if (s_post != s_pre) ++count;  // jump carried the value across zero
    s_cur = s_post;
  }
  if (s_cur > 0 &&
      cheb_detail::certified_sign(mr_sub(psi, MidRad(dd(x_hi), 0.0))) < 0)
    ++count;  // final crossing at x = psi itself, inside (q_last, x_hi]
  return count;
}

struct EffectiveBoundsRow {
  double x;
  // Certified margins (rhs lower end minus lhs upper end); all must be > 0.
  double sqrt_gap_slack;    // 1.427 sqrt(x) - (psi - theta)
  double cube_gap_slack;    // 3 x^(1/3) - (psi - theta - theta(sqrt x))
  double linear_theta_slack;  // (1 + 7.5e-7) x - theta
};

struct EffectiveBoundsReport {
  std::vector<EffectiveBoundsRow> rows;
  double max_slack = 0.0;
};

inline EffectiveBoundsReport check_effective_bounds(
    const std::vector<double>& samples) {
  EffectiveBoundsReport rep;
  for (double x : samples) {
    cheb_detail::desk_guard(x);
    Interval xi(x);
    Interval theta = theta_direct(x);
    Interval psi = psi_direct(x);
    Interval theta_root =
        x >= 4.0 ? theta_direct(std::sqrt(x)) : Interval(0.0);
    Interval gap = psi - theta;
    Interval s1 = 1.427 * sqrt(xi) - gap;
    Interval s2 = 3.0 * pow_interval(xi, Interval(1.0) / 3.0) -
                  (gap - theta_root);
    Interval s3 = (Interval(1.0) + Interval(7.5e-7)) * xi - theta;
    EffectiveBoundsRow row{x, s1.lo, s2.lo, s3.lo};
    if (!(row.sqrt_gap_slack > 0.0 && row.cube_gap_slack > 0.0 &&
          row.linear_theta_slack > 0.0)) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "effective bound violated at x=%.17g (slacks %.3g %.3g "
                    "%.3g): arithmetic bug",
                    x, row.sqrt_gap_slack, row.cube_gap_slack,
                    row.linear_theta_slack);
      throw std::logic_error(buf);
    }
    rep.max_slack = std::max(
        {rep.max_slack, row.sqrt_gap_slack, row.cube_gap_slack,
         row.linear_theta_slack});
    rep.rows.push_back(row);
  }
  return rep;
}

inline std::string effective_bounds_csv(const EffectiveBoundsReport& rep) {
  std::string out = "x,sqrt_gap_slack,cube_gap_slack,linear_theta_slack\n";
  char line[160];
  for (const EffectiveBoundsRow& r : rep.rows) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g\n", r.x,
                  r.sqrt_gap_slack, r.cube_gap_slack, r.linear_theta_slack);
    out += line;
  }
  return out;
}

inline std::string format_effective_bounds(const EffectiveBoundsReport& rep) {
  std::string out =
      "        x        sqrt_gap_slack   cube_gap_slack   linear_theta_slack\n";
  char line[160];
  for (const EffectiveBoundsRow& r : rep.rows) {
    std::snprintf(line, sizeof line, "%13.6g %16.6g %16.6g %16.6g\n", r.x,
                  r.sqrt_gap_slack, r.cube_gap_slack, r.linear_theta_slack);
    out += line;
  }
  std::snprintf(line, sizeof line, "max slack: %.6g\n", rep.max_slack);
  out += line;
  return out;
}

}  // namespace thetacross
