// Copyright 2026 the thetacross authors.
// SPDX-License-Identifier: Apache-2.0
//
// Segmented verification that theta(x) = sum_{p <= x} log p stays below x.
// The range [0, B) is tiled into segments; each segment is sieved with a
// mod-30 wheel and reports an interval enclosure of its log-sum T, plus the
// running minimum of the deficit walk Delta anchored at its first prime:
// Delta(p_i) = sum_{m=2..i} ((p_m - p_{m-1}) - log p_m), so that
// D(p_i) = p_i - theta(p_i) equals D(p_1) + Delta(p_i). A segment is safe
// when D(p_1) + min(0, Delta) > 0 with D(p_1) reattached from the cumulative
// theta of the preceding segments; between primes the deficit only grows.
// Results are journaled to an append-only ledger of fixed-width CRC-guarded
// records, so interrupted runs resume and finalized files are byte-identical
// regardless of completion order. All enclosures round outward.

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "thetacross/double_double.hpp"
#include "thetacross/interval.hpp"
#include "thetacross/kernels.hpp"
#include "thetacross/parallel.hpp"

namespace thetacross {

struct Segment {
  std::uint64_t x_lo = 0;
  std::uint64_t x_hi = 0;
  std::uint64_t index = 0;
};

struct SegmentResult {
  std::uint64_t index = 0;
  std::uint64_t x_lo = 0;
  std::uint64_t x_hi = 0;
  Interval theta_sum;
  Interval delta_min;
  std::uint64_t prime_count = 0;
  std::uint64_t first_prime = 0;
  std::uint64_t last_prime = 0;
  std::uint64_t checksum = 0;
};

enum class Verdict { verified_below, crossover_found, incomplete };

struct GlobalLedger {
  std::uint64_t bound = 0;
  std::uint64_t seg_width = 0;
  std::vector<std::optional<SegmentResult>> results;
  std::vector<std::uint64_t> pending;
  std::size_t damaged_records = 0;
  std::vector<Interval> cum_theta;  // filled by aggregate, boundary after j
  Verdict verdict = Verdict::incomplete;
  std::uint64_t first_failure = 0;  // meaningful when crossover_found

  std::uint64_t segment_count() const {
    return seg_width ? (bound + seg_width - 1) / seg_width : 0;
  }
  Segment tile(std::uint64_t i) const {
    return Segment{i * seg_width, std::min((i + 1) * seg_width, bound), i};
  }
};

struct WalkRow {
  std::uint64_t x = 0;
  Interval value;
};

struct CrosscheckReport {
  std::size_t rows_checked = 0;
  std::vector<std::string> violations;
};

namespace sieve_detail {

inline constexpr std::uint64_t kMaxBound = 4000000000000000000ull;
inline constexpr std::uint64_t kMaxSegmentSpan = 1ull << 44;
inline constexpr std::uint64_t kBlockGroups = 1ull << 18;  // 30-number groups
inline constexpr std::uint64_t kMaxPrimeGap = 4096;  // > any gap below 4e18
inline constexpr std::size_t kRecordSize = 88;

inline constexpr std::array<std::uint8_t, 8> kRes = {1,  7,  11, 13,
                                                     17, 19, 23, 29};
inline constexpr std::array<std::uint8_t, 8> kGap = {6, 4, 2, 4, 2, 4, 6, 2};

struct WheelTables {
  std::array<std::uint8_t, 30> idx;         // residue -> bit position, 255 off-wheel
  std::array<std::uint8_t, 30> to_coprime;  // delta to the next wheel residue
};

inline const WheelTables& wheel() {
  static const WheelTables w = [] {
    WheelTables t{};
    t.idx.fill(255);
    for (std::size_t i = 0; i < 8; ++i) t.idx[kRes[i]] = std::uint8_t(i);
    for (std::uint32_t r = 0; r < 30; ++r) {
      std::uint32_t d = 0;
      while (t.idx[(r + d) % 30] == 255) ++d;
      t.to_coprime[r] = std::uint8_t(d);
    }
    return t;
  }();
  return w;
}

inline std::uint64_t crc64(const unsigned char* data, std::size_t n,
                           std::uint64_t seed = 0) {
  static const std::array<std::uint64_t, 256> table = [] {
    std::array<std::uint64_t, 256> t{};
    for (std::uint64_t i = 0; i < 256; ++i) {
      std::uint64_t c = i;
      for (int k = 0; k < 8; ++k)
        c = (c >> 1) ^ ((c & 1) ? 0xC96C5795D7870F42ull : 0);
      t[i] = c;
    }
    return t;
  }();
  std::uint64_t c = ~seed;
  for (std::size_t i = 0; i < n; ++i)
    c = (c >> 8) ^ table[(c ^ data[i]) & 0xFF];
  return ~c;
}

inline void store_le64(unsigned char* out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out[i] = (unsigned char)(v >> (8 * i));
}
inline std::uint64_t load_le64(const unsigned char* in) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t(in[i]) << (8 * i);
  return v;
}
inline void store_f64(unsigned char* out, double v) {
  store_le64(out, std::bit_cast<std::uint64_t>(v));
}
inline double load_f64(const unsigned char* in) {
  return std::bit_cast<double>(load_le64(in));
}

inline dd u64_to_dd(std::uint64_t n) {
  double hi = static_cast<double>(n);
  std::uint64_t hi_u = static_cast<std::uint64_t>(hi);
  double lo = (hi_u >= n) ? -static_cast<double>(hi_u - n)
                          : static_cast<double>(n - hi_u);
  return dd(hi, lo);
}

inline Interval u64_interval(std::uint64_t n) {
  return to_interval(MidRad(u64_to_dd(n), 0.0));
}

inline std::uint64_t isqrt_u64(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r > n / r) --r;
  while ((r + 1) <= n / (r + 1)) ++r;
  return r;
}

// Base primes up to at least `limit`, cached monotonically across calls.
inline std::shared_ptr<const std::vector<std::uint32_t>> primes_to(
    std::uint32_t limit) {
  static std::mutex m;
  static std::shared_ptr<const std::vector<std::uint32_t>> cache;
  static std::uint32_t cache_limit = 0;
  std::lock_guard<std::mutex> lock(m);
  if (cache && cache_limit >= limit) return cache;
  std::uint32_t n = std::max<std::uint32_t>(limit, 1024);
  std::vector<std::uint64_t> odd((n / 2 + 64) / 64, ~0ull);
  for (std::uint64_t p = 3; p * p <= n; p += 2)
    if (odd[(p >> 1) >> 6] & (1ull << ((p >> 1) & 63)))
      for (std::uint64_t q = p * p; q <= n; q += 2 * p)
        odd[(q >> 1) >> 6] &= ~(1ull << ((q >> 1) & 63));
  auto primes = std::make_shared<std::vector<std::uint32_t>>();
  primes->push_back(2);
  for (std::uint64_t p = 3; p <= n; p += 2)
    if (odd[(p >> 1) >> 6] & (1ull << ((p >> 1) & 63)))
      primes->push_back(std::uint32_t(p));
  cache = primes;
  cache_limit = n;
  return cache;
}

// Enumerates primes in [lo, hi) ascending through fn(p), block by block.
template <class Fn>
void for_primes_in(std::uint64_t lo, std::uint64_t hi, Fn&& fn) {
  if (hi > kMaxBound + kMaxSegmentSpan)
    throw std::invalid_argument("sieve range exceeds the supported bound");
  if (lo >= hi) return;
  for (std::uint64_t p : {2ull, 3ull, 5ull})
    if (p >= lo && p < hi) fn(p);
  auto base = primes_to(std::uint32_t(
      std::min<std::uint64_t>(isqrt_u64(hi - 1), 0xFFFFFFFFull)));
  const WheelTables& w = wheel();
  std::vector<std::uint8_t> bm;
  std::uint64_t q_end = (hi + 29) / 30;
  for (std::uint64_t q_lo = lo / 30; q_lo < q_end; q_lo += kBlockGroups) {
    std::uint64_t q_hi = std::min(q_lo + kBlockGroups, q_end);
    std::uint64_t blo = q_lo * 30, bhi = q_hi * 30;
    bm.assign(std::size_t(q_hi - q_lo), 0xFF);
    if (q_lo == 0) bm[0] &= ~std::uint8_t(1);  // 1 is not prime
    for (std::uint32_t p : *base) {
      if (p < 7) continue;
      std::uint64_t pp = std::uint64_t(p) * p;
      if (pp >= bhi) break;
      std::uint64_t m = std::max<std::uint64_t>(p, (blo + p - 1) / p);
      m += w.to_coprime[m % 30];
      std::uint32_t wi = w.idx[m % 30];
      std::uint64_t n = p * m;
      while (n < bhi) {
        bm[std::size_t(n / 30 - q_lo)] &= std::uint8_t(~(1u << w.idx[n % 30]));
        n += std::uint64_t(p) * kGap[wi];
        wi = (wi + 1) & 7;
      }
    }
    for (std::size_t i = 0; i < bm.size(); ++i) {
      std::uint32_t b = bm[i];
      while (b) {
        int pos = std::countr_zero(b);
        std::uint64_t n = (q_lo + i) * 30 + kRes[pos];
        if (n >= lo && n < hi && n > 1) fn(n);
        b &= b - 1;
      }
    }
  }
}

inline Interval log_prime(std::uint64_t p) {
  return to_interval(log_mr(MidRad(u64_to_dd(p), 0.0)));
}

}  // namespace sieve_detail

// Lists the primes in [lo, hi); a utility for validation and spot checks.
inline std::vector<std::uint64_t> segment_primes(std::uint64_t lo,
                                                 std::uint64_t hi) {
  if (hi - lo > (1ull << 26))
    throw std::length_error("segment_primes window wider than 2^26");
  std::vector<std::uint64_t> out;
  sieve_detail::for_primes_in(lo, hi, [&](std::uint64_t p) { out.push_back(p); });
  return out;
}

// Largest prime strictly below x, or 0 when none exists (x <= 2).
inline std::uint64_t preceding_prime_for(std::uint64_t x) {
  if (x <= 2) return 0;
  for (std::uint64_t margin = 512;; margin *= 2) {
    std::uint64_t lo = (x > margin) ? x - margin : 0;
    std::vector<std::uint64_t> ps = segment_primes(lo, x);
    if (!ps.empty()) return ps.back();
    if (lo == 0) return 0;
    if (margin > sieve_detail::kMaxPrimeGap)
      throw std::runtime_error("no prime found in an implausibly wide gap");
  }
}

inline SegmentResult sieve_segment(const Segment& seg,
                                   std::uint64_t preceding_prime);

namespace sieve_detail {

inline void serialize_record(SegmentResult& r, unsigned char out[kRecordSize]) {
  store_le64(out + 0, r.index);
  store_le64(out + 8, r.x_lo);
  store_le64(out + 16, r.x_hi);
  store_f64(out + 24, r.theta_sum.lo);
  store_f64(out + 32, r.theta_sum.hi);
  store_f64(out + 40, r.delta_min.lo);
  store_f64(out + 48, r.delta_min.hi);
  store_le64(out + 56, r.prime_count);
  store_le64(out + 64, r.first_prime);
  store_le64(out + 72, r.last_prime);
  r.checksum = crc64(out, 80);
  store_le64(out + 80, r.checksum);
}

inline bool parse_record(const unsigned char in[kRecordSize], SegmentResult& r) {
  if (crc64(in, 80) != load_le64(in + 80)) return false;
  r.index = load_le64(in + 0);
  r.x_lo = load_le64(in + 8);
  r.x_hi = load_le64(in + 16);
  r.theta_sum = Interval(load_f64(in + 24), load_f64(in + 32));
  r.delta_min = Interval(load_f64(in + 40), load_f64(in + 48));
  r.prime_count = load_le64(in + 56);
  r.first_prime = load_le64(in + 64);
  r.last_prime = load_le64(in + 72);
  r.checksum = load_le64(in + 80);
  return true;
}

inline std::string ledger_header(std::uint64_t bound, std::uint64_t width) {
  char buf[128];
  std::uint64_t count = width ? (bound + width - 1) / width : 0;
  std::snprintf(buf, sizeof buf, "thetaledger v1 bound=%llu segment=%llu count=%llu\n",
                (unsigned long long)bound, (unsigned long long)width,
                (unsigned long long)count);
  return buf;
}

inline bool same_record_bytes(const SegmentResult& a, const SegmentResult& b) {
  unsigned char ra[kRecordSize], rb[kRecordSize];
  SegmentResult ca = a, cb = b;
  serialize_record(ca, ra);
  serialize_record(cb, rb);
  return std::memcmp(ra, rb, kRecordSize) == 0;
}

}  // namespace sieve_detail

// Sieves one segment. preceding_prime must be the largest prime below x_lo
// (0 when x_lo <= 2); it anchors nothing in the arithmetic but is validated
// so a driver wiring segments together cannot mis-pair them silently.
inline SegmentResult sieve_segment(const Segment& seg,
                                   std::uint64_t preceding_prime) {
  namespace d = sieve_detail;
  if (seg.x_lo >= seg.x_hi)
    throw std::invalid_argument("segment is empty: x_lo >= x_hi");
  if (seg.x_hi > d::kMaxBound)
    throw std::invalid_argument("segment exceeds the supported bound 4e18");
  if (seg.x_hi - seg.x_lo > d::kMaxSegmentSpan)
    throw std::length_error(
        "segment too wide for the memory budget: split it below 2^44");
  if (seg.x_lo <= 2) {
    if (preceding_prime != 0)
      throw std::invalid_argument("no prime precedes x_lo <= 2: pass 0");
  } else {
    if (preceding_prime == 0 || preceding_prime >= seg.x_lo)
      throw std::invalid_argument("preceding_prime must be a prime below x_lo");
    if (seg.x_lo - preceding_prime > d::kMaxPrimeGap)
      throw std::invalid_argument(
          "preceding_prime implausibly far below the segment");
    std::vector<std::uint64_t> gap =
        segment_primes(preceding_prime, seg.x_lo);
    if (gap.empty() || gap.front() != preceding_prime)
      throw std::invalid_argument("preceding_prime is not prime");
    if (gap.size() != 1)
      throw std::invalid_argument(
          "preceding_prime is not maximal below the segment");
  }

  SegmentResult r;
  r.index = seg.index;
  r.x_lo = seg.x_lo;
  r.x_hi = seg.x_hi;
  MidRad theta(dd(0.0), 0.0);
  MidRad delta(dd(0.0), 0.0);
  Interval dmin(0.0);
  std::uint64_t prev = 0;
  d::for_primes_in(seg.x_lo, seg.x_hi, [&](std::uint64_t p) {
    MidRad l = log_mr(MidRad(d::u64_to_dd(p), 0.0));
    theta = mr_add(theta, l);
    if (r.prime_count == 0) {
      r.first_prime = p;
    } else {
      MidRad gap(dd(static_cast<double>(p - prev)), 0.0);
      delta = mr_add(delta, mr_sub(gap, l));
      dmin = imin(dmin, to_interval(delta));
    }
    prev = p;
    ++r.prime_count;
  });
  r.last_prime = prev;
  r.theta_sum = r.prime_count ? to_interval(theta) : Interval(0.0);
  r.delta_min = r.prime_count ? dmin : Interval(0.0);
  unsigned char buf[d::kRecordSize];
  d::serialize_record(r, buf);
  return r;
}

// Creates the ledger file with its header if absent; validates it otherwise.
inline void create_ledger(const std::string& path, std::uint64_t bound,
                          std::uint64_t seg_width) {
  namespace d = sieve_detail;
  std::string header = d::ledger_header(bound, seg_width);
  if (std::filesystem::exists(path)) {
    std::ifstream in(path, std::ios::binary);
    std::string line;
    if (!std::getline(in, line) || line + "\n" != header)
      throw std::invalid_argument("ledger header mismatch at " + path);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot create ledger at " + path);
  out << header;
  if (!out.flush()) throw std::runtime_error("cannot write ledger header");
}

inline void append_record(const std::string& path, const SegmentResult& res) {
  namespace d = sieve_detail;
  unsigned char buf[d::kRecordSize];
  SegmentResult copy = res;
  d::serialize_record(copy, buf);
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw std::runtime_error("cannot open ledger for append: " + path);
  out.write(reinterpret_cast<const char*>(buf), d::kRecordSize);
  if (!out.flush()) throw std::runtime_error("ledger append failed: " + path);
}

// Reads a ledger back: valid records land in results, everything else is
// re-queued implicitly because its segment never registers as done.
inline GlobalLedger resume(const std::string& path) {
  namespace d = sieve_detail;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open ledger: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("ledger has no header: " + path);
  GlobalLedger led;
  {
    unsigned long long b = 0, w = 0, c = 0;
    if (std::sscanf(line.c_str(), "thetaledger v1 bound=%llu segment=%llu count=%llu",
                    &b, &w, &c) != 3 || w == 0 || b == 0)
      throw std::invalid_argument("unrecognized ledger header: " + line);
    led.bound = b;
    led.seg_width = w;
    if (c != led.segment_count())
      throw std::invalid_argument("ledger header count disagrees with tiling");
  }
  led.results.resize(std::size_t(led.segment_count()));
  unsigned char buf[d::kRecordSize];
  while (in.read(reinterpret_cast<char*>(buf), d::kRecordSize)) {
    SegmentResult r;
    if (!d::parse_record(buf, r)) {
      ++led.damaged_records;
      continue;
    }
    if (r.index >= led.segment_count()) {
      ++led.damaged_records;
      continue;
    }
    Segment want = led.tile(r.index);
    if (r.x_lo != want.x_lo || r.x_hi != want.x_hi) {
      ++led.damaged_records;
      continue;
    }
    auto& slot = led.results[std::size_t(r.index)];
    if (slot) {
      if (!d::same_record_bytes(*slot, r))
        throw std::runtime_error(
            "ledger holds conflicting records for segment " +
            std::to_string(r.index));
      continue;
    }
    slot = r;
  }
  if (in.gcount() != 0) ++led.damaged_records;  // trailing partial record
  for (std::uint64_t i = 0; i < led.segment_count(); ++i)
    if (!led.results[std::size_t(i)]) led.pending.push_back(i);
  return led;
}

// Rewrites the ledger sorted by index via tmp+rename. Requires completeness
// so that finalized files are canonical: byte-identical for identical runs.
inline void finalize_ledger(const std::string& path) {
  namespace d = sieve_detail;
  GlobalLedger led = resume(path);
  if (!led.pending.empty())
    throw std::invalid_argument("cannot finalize an incomplete ledger: " +
                                std::to_string(led.pending.size()) +
                                " segments missing");
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << d::ledger_header(led.bound, led.seg_width);
    for (auto& slot : led.results) {
      unsigned char buf[d::kRecordSize];
      d::serialize_record(*slot, buf);
      out.write(reinterpret_cast<const char*>(buf), d::kRecordSize);
    }
    if (!out.flush()) throw std::runtime_error("cannot write " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

// Certifies theta(w) < w across every segment, or reports the first failure.
inline Verdict aggregate(GlobalLedger& led) {
  namespace d = sieve_detail;
  led.cum_theta.clear();
  led.verdict = Verdict::incomplete;
  for (auto& slot : led.results)
    if (!slot) return led.verdict;
  std::uint64_t n = led.segment_count();
  led.cum_theta.resize(std::size_t(n));
  Interval cum(0.0);
  for (std::uint64_t j = 0; j < n; ++j) {
    cum = cum + led.results[std::size_t(j)]->theta_sum;
    led.cum_theta[std::size_t(j)] = cum;
  }
  for (std::uint64_t j = 0; j < n; ++j) {
    const SegmentResult& r = *led.results[std::size_t(j)];
    Interval cum_prev = j ? led.cum_theta[std::size_t(j - 1)] : Interval(0.0);
    // Left edge: deficit at x_lo covers [x_lo, first prime). x_lo = 0 is the
    // trivially safe pre-prime region (theta vanishes below 2).
    bool ok = true;
    if (r.x_lo > 0)
      ok = certainly_positive(d::u64_interval(r.x_lo) - cum_prev);
    if (ok && r.prime_count > 0) {
      Interval anchor = d::u64_interval(r.first_prime) - cum_prev -
                        d::log_prime(r.first_prime);
      ok = certainly_positive(anchor + r.delta_min);
    }
    if (!ok) {
      led.verdict = Verdict::crossover_found;
      led.first_failure = j;
      return led.verdict;
    }
  }
  led.verdict = Verdict::verified_below;
  return led.verdict;
}

// Compares cumulative prime counts against an independent table of pi(x).
// File format: "pi_checkpoints v1" header, then "x,pi" rows at boundaries.
inline CrosscheckReport checkpoint_crosscheck(const GlobalLedger& led,
                                              const std::string& pi_csv_path) {
  std::ifstream in(pi_csv_path);
  if (!in) throw std::runtime_error("cannot open pi table: " + pi_csv_path);
  CrosscheckReport rep;
  std::string line;
  if (!std::getline(in, line) || line != "pi_checkpoints v1") {
    rep.violations.push_back("pi table missing 'pi_checkpoints v1' header");
    return rep;
  }
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    unsigned long long x = 0, pi = 0;
    if (std::sscanf(line.c_str(), "%llu,%llu", &x, &pi) != 2) {
      rep.violations.push_back("unparseable row at line " +
                               std::to_string(lineno));
      continue;
    }
    ++rep.rows_checked;
    bool boundary = (x == led.bound) ||
                    (x > 0 && x < led.bound && x % led.seg_width == 0);
    if (!boundary) {
      rep.violations.push_back("x=" + std::to_string(x) +
                               " is not a segment boundary");
      continue;
    }
    std::uint64_t j_end = (x + led.seg_width - 1) / led.seg_width;
    std::uint64_t count = 0;
    bool complete = true;
    for (std::uint64_t j = 0; j < j_end; ++j) {
      if (!led.results[std::size_t(j)]) {
        complete = false;
        break;
      }
      count += led.results[std::size_t(j)]->prime_count;
    }
    if (!complete) {
      rep.violations.push_back("segments missing below boundary " +
                               std::to_string(x));
      continue;
    }
    if (count != pi)
      rep.violations.push_back("boundary " + std::to_string(x) +
                               ": ledger prime count " + std::to_string(count) +
                               " != table " + std::to_string(pi));
  }
  return rep;
}

// One row per segment boundary: the normalized deficit (x - theta(x))/sqrt(x).
inline std::vector<WalkRow> emit_walk(const GlobalLedger& led) {
  namespace d = sieve_detail;
  if (led.verdict == Verdict::incomplete)
    throw std::domain_error("walk needs an aggregated, complete ledger");
  std::vector<WalkRow> rows;
  rows.reserve(led.cum_theta.size());
  for (std::uint64_t j = 0; j < led.cum_theta.size(); ++j) {
    std::uint64_t x = led.tile(j).x_hi;
    Interval xi = d::u64_interval(x);
    rows.push_back(WalkRow{x, (xi - led.cum_theta[std::size_t(j)]) / sqrt(xi)});
  }
  return rows;
}

inline std::string walk_csv(const std::vector<WalkRow>& rows) {
  std::string out = "x,value_mid,value_width\n";
  char buf[96];
  for (const WalkRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%llu,%.17g,%.17g\n",
                  (unsigned long long)r.x, mid(r.value), width(r.value));
    out += buf;
  }
  return out;
}

// Drives the whole range: resumes (or creates) the ledger at path, sieves
// every pending segment, and journals results through a single writer.
inline void validate_sieve_params(std::uint64_t bound, std::uint64_t seg_width) {
  if (bound < 2 || bound > sieve_detail::kMaxBound)
    throw std::invalid_argument("bound must lie in [2, 4e18]");
  if (seg_width < 30 || seg_width > sieve_detail::kMaxSegmentSpan)
    throw std::invalid_argument("segment width must lie in [30, 2^44]");
}

inline GlobalLedger run_sieve(std::uint64_t bound, std::uint64_t seg_width,
                              const std::string& path, unsigned workers = 0) {
  namespace d = sieve_detail;
  validate_sieve_params(bound, seg_width);
  create_ledger(path, bound, seg_width);
  GlobalLedger led = resume(path);
  if (led.bound != bound || led.seg_width != seg_width)
    throw std::invalid_argument("existing ledger disagrees with parameters");
  if (led.pending.empty()) return led;
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw std::runtime_error("cannot open ledger for append: " + path);
  std::mutex writer;
  std::vector<std::uint64_t> todo = led.pending;
  parallel_for_chunks(todo.size(), workers, [&](std::size_t i) {
    Segment seg = led.tile(todo[i]);
    std::uint64_t pre = preceding_prime_for(seg.x_lo);
    SegmentResult res = sieve_segment(seg, pre);
    unsigned char buf[d::kRecordSize];
    d::serialize_record(res, buf);
    std::lock_guard<std::mutex> lock(writer);
    out.write(reinterpret_cast<const char*>(buf), d::kRecordSize);
    if (!out.flush()) throw std::runtime_error("ledger append failed");
    led.results[std::size_t(res.index)] = res;
  });
  led.pending.clear();
  return led;
}

}  // namespace thetacross
