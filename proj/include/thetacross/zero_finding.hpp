// Copyright 2026 the thetacross authors.
// SPDX-License-Identifier: Apache-2.0
//
// Locate all nontrivial zeta zeros up to a desk-scale height, certified.
//
// Pipeline: count_zeros fixes the certified target count at a nudged cut
// height where Z is provably nonzero. A plain-double asymptotic Z screens a
// 0.1 grid, refining to 0.01 wherever |Z| < 0.5 or the sign flips; each
// fine-grid sign change yields an approximate crossing point. Crossings are
// never trusted as brackets (the approximation displaces them): instead the
// midpoints between consecutive crossings become separators, so the
// brackets cover [14, t_cut] completely with disjoint interiors. Each
// bracket is certified with interval Z evaluations and shrunk below the
// target width by an Illinois iteration stepping on certified signs only
// (enclosure midpoints merely steer, a forced bisection every third round
// guarantees progress). A certified sign change pins at least one zero per
// bracket; a bracket whose endpoint signs agree contributes none. Coverage
// plus the argument-principle count then proves exactly one zero per
// certified bracket and none anywhere else. On a count mismatch the scan
// reruns on an unconditional 0.002 grid; if the mismatch survives, the
// error names the widest gap between certified zeros.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "thetacross/parallel.hpp"
#include "thetacross/zero_table.hpp"
#include "thetacross/zeta.hpp"

namespace thetacross {
namespace zf_detail {

// Asymptotic theta, plain doubles: screening only, never trusted.
inline double theta_approx(double t) {
  double u = 0.5 * t;
  return u * std::log(t / (2.0 * M_PI)) - u - M_PI / 8.0 + 1.0 / (48.0 * t) +
         7.0 / (5760.0 * t * t * t);
}

// Riemann-Siegel main sum with the leading correction, plain doubles.
inline double z_approx(double t) {
  double a = std::sqrt(t / (2.0 * M_PI));
  std::size_t nu = static_cast<std::size_t>(a);
  double th = theta_approx(t);
  double s = 0.0;
  for (std::size_t n = 1; n <= nu; ++n)
    s += std::cos(th - t * std::log(static_cast<double>(n))) /
         std::sqrt(static_cast<double>(n));
  s *= 2.0;
  double p = a - static_cast<double>(nu);
  double cd = std::cos(2.0 * M_PI * p);
  double corr = 0.0;
  if (std::abs(cd) > 0.05)
    corr = std::cos(2.0 * M_PI * (p * p - p - 0.0625)) / cd;
  double sign = (nu % 2 == 1) ? 1.0 : -1.0;  // (-1)^{nu+1}
  return s + sign * corr / std::sqrt(a);
}

// Approximate crossing points of the screening Z, strictly increasing. In
// deep mode the whole range is scanned at the fine step; otherwise only
// screened coarse cells are.
inline std::vector<double> scan_crossings(double t_cut, bool deep) {
  const double coarse = deep ? 0.01 : 0.1;
  const double fine = deep ? 0.002 : 0.01;
  std::vector<double> out;
  double prev_t = 14.0;
  double prev_z = z_approx(prev_t);
  for (std::size_t i = 1; prev_t < t_cut; ++i) {
    double t = 14.0 + coarse * static_cast<double>(i);
    if (t > t_cut) t = t_cut;
    double z = z_approx(t);
    bool screen = deep || std::abs(prev_z) < 0.5 || std::abs(z) < 0.5 ||
                  (prev_z < 0.0) != (z < 0.0);
    if (screen) {
      int steps = static_cast<int>(std::ceil((t - prev_t) / fine));
      double a = prev_t, za = prev_z;
      for (int j = 1; j <= steps; ++j) {
        double b = prev_t + (t - prev_t) * j / steps;
        double zb = z_approx(b);
        if ((za < 0.0) != (zb < 0.0)) out.push_back(0.5 * (a + b));
        a = b;
        za = zb;
      }
    }
    prev_t = t;
    prev_z = z;
  }
  return out;
}

struct SignAt {
  double t;
  int sign;
  double mid;
};

// Certified sign at t, probing a deterministic ladder of nearby points
// when the enclosure straddles zero (t essentially on a zero of Z). Probes
// outside [lo_lim, hi_lim] are skipped; `span` signs and scales the ladder.
inline std::optional<SignAt> certified_sign(double t, double span,
                                            double lo_lim, double hi_lim) {
  static constexpr double kShift[] = {0.0, 0.0625, -0.0625, 0.125, -0.125};
  for (double sh : kShift) {
    double u = t + sh * span;
    if (!(u >= lo_lim && u <= hi_lim)) continue;
    MidRad z = z_t(u);
    Interval zi = to_interval(z);
    if (zi.lo > 0.0) return SignAt{u, 1, z.mid.hi};
    if (zi.hi < 0.0) return SignAt{u, -1, z.mid.hi};
  }
  return std::nullopt;
}

// Certify a covering bracket and shrink it below `acc`. Endpoint probes
// only move inward, preserving disjoint interiors across brackets. Returns
// nullopt when the certified endpoint signs agree (no zero pinned here).
inline std::optional<Interval> certify_and_refine(double lo, double hi,
                                                  double acc) {
  double w0 = hi - lo;
  auto sl = certified_sign(lo, w0, lo, lo + 0.125 * w0);
  auto sr = certified_sign(hi, -w0, hi - 0.125 * w0, hi);
  if (!sl || !sr)
    throw std::runtime_error(
        "zero finding: cannot resolve Z sign at a bracket endpoint");
  if (sl->sign == sr->sign) return std::nullopt;
  double l = sl->t, r = sr->t, fl = sl->mid, fr = sr->mid;
  int sgn_l = sl->sign;
  int guard = 0;
  while (r - l > acc) {
    if (++guard > 200)
      throw std::runtime_error("zero finding: refinement stalled");
    double w = r - l;
    double m;
    if (guard % 3 == 0 || !(fr != fl)) {
      m = l + 0.5 * w;
    } else {
      m = (l * fr - r * fl) / (fr - fl);
      if (!(m >= l + 0.125 * w && m <= r - 0.125 * w)) m = l + 0.5 * w;
    }
    auto sm = certified_sign(m, w, std::nextafter(l, r), std::nextafter(r, l));
    if (!sm)
      throw std::runtime_error(
          "zero finding: target accuracy unreachable (Z sign unresolvable)");
    if (sm->sign == sgn_l) {
      l = sm->t;
      fl = sm->mid;
      fr *= 0.5;  // Illinois: halve the stale opposite value
    } else {
      r = sm->t;
      fr = sm->mid;
      fl *= 0.5;
    }
  }
  return Interval(l, r);
}

}  // namespace zf_detail

// All zero ordinates in (0, t_cut], t_cut >= t_max, each enclosed at width
// <= target_accuracy, completeness certified against the argument
// principle. Bit-reproducible for fixed inputs regardless of worker count.
inline ZeroTable compute_zeros(double t_max, double target_accuracy,
                               unsigned workers = 0) {
  if (!(t_max >= 14.0 && t_max <= 1.0e5))
    throw std::domain_error("compute_zeros: t_max must lie in [14, 1e5]");
  if (!(target_accuracy >= 1e-12 && target_accuracy <= 0.01))
    throw std::domain_error(
        "compute_zeros: target_accuracy must lie in [1e-12, 0.01]");
  double ulp_max =
      std::nextafter(t_max, std::numeric_limits<double>::infinity()) - t_max;
  if (4.0 * ulp_max > target_accuracy)
    throw std::domain_error(
        "compute_zeros: target accuracy unreachable at this height");

  ZeroCount zc = count_zeros(t_max);
  const double t_cut = zc.t_used;
  double ulp_cut =
      std::nextafter(t_cut, std::numeric_limits<double>::infinity()) - t_cut;
  if (4.0 * ulp_cut > target_accuracy)
    throw std::domain_error(
        "compute_zeros: target accuracy unreachable at this height");
  if (workers == 0) workers = default_workers();

  std::vector<Interval> zeros;
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::vector<double> cross = zf_detail::scan_crossings(t_cut, attempt == 1);
    std::vector<double> sep;
    sep.reserve(cross.size() + 1);
    sep.push_back(14.0);
    for (std::size_t i = 0; i + 1 < cross.size(); ++i)
      sep.push_back(0.5 * (cross[i] + cross[i + 1]));
    sep.push_back(t_cut);
    std::size_t n_brackets = cross.size();
    std::vector<std::optional<Interval>> slot(n_brackets);
    parallel_for_chunks(n_brackets, workers, [&](std::size_t i) {
      slot[i] = zf_detail::certify_and_refine(sep[i], sep[i + 1],
                                              target_accuracy);
    });
    zeros.clear();
    for (const auto& s : slot)
      if (s) zeros.push_back(*s);
    if (static_cast<std::uint64_t>(zeros.size()) == zc.count) break;
    if (attempt == 1) {
      double gap_lo = 14.0, gap_hi = t_cut, widest = 0.0;
      double prev = 14.0;
      for (const Interval& z : zeros) {
        if (z.lo - prev > widest) {
          widest = z.lo - prev;
          gap_lo = prev;
          gap_hi = z.lo;
        }
        prev = z.hi;
      }
      if (t_cut - prev > widest) {
        gap_lo = prev;
        gap_hi = t_cut;
      }
      char buf[256];
      std::snprintf(buf, sizeof buf,
                    "compute_zeros: completeness check failed: %llu certified "
                    "zeros below %.17g but the argument principle requires "
                    "%llu; widest candidate gap is (%.17g, %.17g)",
                    static_cast<unsigned long long>(zeros.size()), t_cut,
                    static_cast<unsigned long long>(zc.count), gap_lo, gap_hi);
      throw std::runtime_error(buf);
    }
  }

  ZeroTable table;
  table.gammas = std::move(zeros);
  char src[96];
  std::snprintf(src, sizeof src, "computed(t_max=%.17g, accuracy=%.3g)", t_max,
                target_accuracy);
  finalize_table(table, src);
  if (table.meta.count > 0 && table.meta.abs_accuracy > target_accuracy)
    throw std::logic_error("compute_zeros: enclosure wider than target");
  return table;
}

}  // namespace thetacross
