// Copyright 2026 the thetacross authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Tables of zeta-zero ordinates and their two interchange formats.
//
// Text (canonical): ASCII, LF line ends, '#'-prefixed "key: value" header
// lines (version, source, count, half_width), then one ordinate per line in
// decimal with 25 significant digits. A printed value v under header
// half_width h claims |v - gamma| <= h, so loading reconstructs [v-h, v+h]
// widened one ulp each side for the decimal conversion.
//
// Packed: one ASCII header line "thetacross-zeros-packed v1 count=N
// source=...", then N 18-byte little-endian records: uint64 integer part and
// uint64 fraction of a 64.64 fixed-point midpoint, plus uint16 E encoding a
// half-width of 2^-E. Both writers are deterministic byte-for-byte.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "thetacross/bytes.hpp"
#include "thetacross/double_double.hpp"
#include "thetacross/fixed192.hpp"
#include "thetacross/interval.hpp"

namespace thetacross {

struct ZeroTableMeta {
  std::uint64_t count = 0;
  double max_gamma = 0.0;
  std::string source;
  double abs_accuracy = 0.0;
};

struct ZeroTable {
  std::vector<Interval> gammas;
  ZeroTableMeta meta;
};

enum class ZeroFormat { text, packed };

inline void validate_table(const ZeroTable& t) {
  auto fail = [](std::size_t i, const std::string& msg) {
    throw std::runtime_error("zero table invalid at index " + std::to_string(i) + ": " + msg);
  };
  if (t.meta.count != t.gammas.size())
    throw std::runtime_error("zero table meta.count " + std::to_string(t.meta.count) +
                             " does not match " + std::to_string(t.gammas.size()) + " entries");
  for (std::size_t i = 0; i < t.gammas.size(); ++i) {
    const Interval& g = t.gammas[i];
    if (!(g.lo > 0.0)) fail(i, "ordinate not positive");
    if (i == 0 && !(g.lo > 14.1)) fail(i, "first ordinate below 14.1, no zero exists there");
    if (detail::sub_ru(g.hi, g.lo) > t.meta.abs_accuracy)
      fail(i, "interval width exceeds abs_accuracy " + std::to_string(t.meta.abs_accuracy));
    if (i > 0) {
      if (!(t.gammas[i - 1].hi < g.lo)) fail(i, "ordinates not strictly increasing");
      if (g.hi - t.gammas[i - 1].lo >= 10.0 && t.gammas[i - 1].hi <= 1.0e5)
        fail(i, "gap to previous ordinate is 10 or more, table is missing zeros");
    }
  }
}

inline void finalize_table(ZeroTable& t, const std::string& source) {
  t.meta.source = source;
  t.meta.count = t.gammas.size();
  t.meta.max_gamma = t.gammas.empty() ? 0.0 : t.gammas.back().hi;
  double acc = 0.0;
  for (const Interval& g : t.gammas) acc = std::max(acc, detail::sub_ru(g.hi, g.lo));
  t.meta.abs_accuracy = acc;
  validate_table(t);
}

namespace zt_detail {

inline std::string sanitize_meta(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c == '\n' || c == '\r' || c == '\t') c = ' ';
  return out;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

inline double parse_double(std::string_view s, const std::string& where) {
  double v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    throw std::runtime_error(where + ": not a finite decimal: '" + std::string(s) + "'");
  return v;
}

inline std::uint64_t parse_u64(std::string_view s, const std::string& where) {
  std::uint64_t v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::runtime_error(where + ": not a count: '" + std::string(s) + "'");
  return v;
}

}  // namespace zt_detail

inline ZeroTable load_zeros_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  ZeroTable t;
  double half_width = 0.0;
  bool have_count = false;
  std::uint64_t count = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = path + ":" + std::to_string(lineno);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
      line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string_view s = zt_detail::trim(std::string_view(line).substr(1));
      if (s.substr(0, 16) == "thetacross-zeros") {
        if (s != "thetacross-zeros v1")
          throw std::runtime_error(where + ": unsupported version: '" + std::string(s) + "'");
      } else if (s.substr(0, 7) == "source:") {
        t.meta.source = std::string(zt_detail::trim(s.substr(7)));
      } else if (s.substr(0, 11) == "half_width:") {
        half_width = zt_detail::parse_double(zt_detail::trim(s.substr(11)), where);
        if (half_width < 0.0) throw std::runtime_error(where + ": half_width must be >= 0");
      } else if (s.substr(0, 6) == "count:") {
        count = zt_detail::parse_u64(zt_detail::trim(s.substr(6)), where);
        have_count = true;
      }
      continue;
    }
    double v = zt_detail::parse_double(line, where);
    if (v <= 0.0) throw std::runtime_error(where + ": ordinate must be positive");
    double lo = detail::next_down(v), hi = detail::next_up(v);
    if (half_width > 0.0) {
      lo = detail::sub_rd(lo, half_width);
      hi = detail::add_ru(hi, half_width);
    }
    if (!t.gammas.empty() && !(t.gammas.back().hi < lo))
      throw std::runtime_error(where + ": ordinates not strictly increasing");
    t.gammas.push_back(Interval(lo, hi));
  }
  if (have_count && count != t.gammas.size())
    throw std::runtime_error(path + ": header count " + std::to_string(count) + " but " +
                             std::to_string(t.gammas.size()) + " ordinates");
  finalize_table(t, t.meta.source);
  return t;
}

inline void save_zeros_text(const ZeroTable& t, const std::string& path) {
  double h = 0.0;
  for (const Interval& g : t.gammas) {
    double s, e;
    detail::two_sum(g.lo, g.hi, s, e);
    double m = s * 0.5;
    double slop = std::ldexp(std::abs(m), -52);
    h = std::max(h, detail::add_ru(detail::sub_ru(g.hi, m), slop));
    h = std::max(h, detail::add_ru(detail::sub_ru(m, g.lo), slop));
  }
  std::string out;
  out += "# thetacross-zeros v1\n";
  out += "# source: " + zt_detail::sanitize_meta(t.meta.source) + "\n";
  out += "# count: " + std::to_string(t.gammas.size()) + "\n";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", h);
  out += "# half_width: " + std::string(buf) + "\n";
  for (const Interval& g : t.gammas) {
    double s, e;
    detail::two_sum(g.lo, g.hi, s, e);
    std::snprintf(buf, sizeof buf, "%.24e", s * 0.5);
    out += buf;
    out += '\n';
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw std::runtime_error("write failed for " + path);
}

inline ZeroTable load_zeros_packed(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string hdr;
  if (!std::getline(in, hdr)) throw std::runtime_error(path + ": missing header line");
  const std::string magic = "thetacross-zeros-packed v1 count=";
  if (hdr.compare(0, magic.size(), magic) != 0)
    throw std::runtime_error(path + ": not a packed zero table");
  std::size_t sp = hdr.find(' ', magic.size());
  if (sp == std::string::npos || hdr.compare(sp, 8, " source=") != 0)
    throw std::runtime_error(path + ": malformed packed header");
  std::uint64_t count =
      zt_detail::parse_u64(std::string_view(hdr).substr(magic.size(), sp - magic.size()), path);
  ZeroTable t;
  t.meta.source = hdr.substr(sp + 8);
  t.gammas.reserve(count);
  unsigned char rec[18];
  for (std::uint64_t i = 0; i < count; ++i) {
    in.read(reinterpret_cast<char*>(rec), sizeof rec);
    if (in.gcount() != static_cast<std::streamsize>(sizeof rec))
      throw std::runtime_error(path + ": truncated at record " + std::to_string(i));
    std::uint64_t ip = detail::load_le64(rec);
    std::uint64_t fr = detail::load_le64(rec + 8);
    int expo = detail::load_le16(rec + 16);
    if (ip >= (1ull << 53))
      throw std::runtime_error(path + ": record " + std::to_string(i) + " ordinate too large");
    double a = static_cast<double>(ip);
    double b = static_cast<double>(fr >> 32) * 0x1p-32;
    double c = static_cast<double>(fr & 0xffffffffull) * 0x1p-64;
    dd m = dd_add(dd_from_sum(a, b), dd(c));
    double slop = detail::mul_ru(0x1p-102, detail::add_ru(a, 1.0));
    double rad = detail::add_ru(std::ldexp(1.0, -expo), slop);
    t.gammas.push_back(to_interval(MidRad(m, rad)));
  }
  char extra;
  if (in.read(&extra, 1); in.gcount() != 0)
    throw std::runtime_error(path + ": trailing data after last record");
  finalize_table(t, t.meta.source);
  return t;
}

inline void save_zeros_packed(const ZeroTable& t, const std::string& path) {
  std::string hdr = "thetacross-zeros-packed v1 count=" + std::to_string(t.gammas.size()) +
                    " source=" + zt_detail::sanitize_meta(t.meta.source) + "\n";
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f.write(hdr.data(), static_cast<std::streamsize>(hdr.size()));
  unsigned char rec[18];
  for (const Interval& g : t.gammas) {
    double s, e;
    detail::two_sum(g.lo, g.hi, s, e);
    dd m{s * 0.5, e * 0.5};
    Fixed192 fx = fixed_from_dd_trunc(m);
    double rad = 0.5 * detail::sub_ru(g.hi, g.lo);
    double rad_needed = detail::add_ru(rad, 0x1p-63);
    int ex;
    std::frexp(rad_needed, &ex);
    if (ex > 0) throw std::domain_error("interval too wide for a packed record");
    detail::store_le64(rec, fx.limb[2]);
    detail::store_le64(rec + 8, fx.limb[1]);
    detail::store_le16(rec + 16, static_cast<std::uint16_t>(-ex));
    f.write(reinterpret_cast<const char*>(rec), sizeof rec);
  }
  if (!f) throw std::runtime_error("write failed for " + path);
}

inline ZeroTable load_zeros(const std::string& path, ZeroFormat fmt) {
  return fmt == ZeroFormat::text ? load_zeros_text(path) : load_zeros_packed(path);
}

inline void save_zeros(const ZeroTable& t, const std::string& path, ZeroFormat fmt) {
  if (fmt == ZeroFormat::text)
    save_zeros_text(t, path);
  else
    save_zeros_packed(t, path);
}

struct AgreementReport {
  std::size_t pairs = 0;
  double max_mid_diff = 0.0;
};

inline AgreementReport validate_against(const ZeroTable& table, const ZeroTable& reference) {
  std::size_t n = std::min(table.gammas.size(), reference.gammas.size());
  if (n == 0) throw std::invalid_argument("validate_against: tables share no zeros");
  AgreementReport r;
  r.pairs = n;
  for (std::size_t i = 0; i < n; ++i) {
    const Interval& a = table.gammas[i];
    const Interval& b = reference.gammas[i];
    if (!overlaps(a, b))
      throw std::runtime_error("zero tables disagree at index " + std::to_string(i) + ": " +
                               to_string(a) + " vs " + to_string(b));
    r.max_mid_diff = std::max(r.max_mid_diff, std::abs(mid(a) - mid(b)));
  }
  return r;
}

}  // namespace thetacross
