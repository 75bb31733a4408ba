// Copyright 2026 the thetacross authors.
// SPDX-License-Identifier: Apache-2.0
//
// Flat key=value run configuration. Every knob a run depends on lives in one
// RunConfig so the resolved state can be emitted, stored, and replayed. The
// serialize/parse pair is lossless: numbers round-trip through shortest-form
// decimal, so serialize(parse(serialize(c))) == serialize(c) byte for byte.
// Unknown keys are hard errors with a nearest-key hint, never warnings: a
// silently ignored typo could weaken a certification run.

#pragma once

#include <array>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace thetacross {

struct RunConfig {
  std::string zeros_path = "zeros.txt";
  std::string zeros_format = "text";
  double zeros_t_max = 100.0;
  double zeros_accuracy = 1e-9;
  double bound_a = 30610046000.0;
  double bound_t = 6970346000.0;
  double bound_alpha = 1153308722614227968.0;
  double bound_eta = 933831.0 / 17592186044416.0;
  double bound_omega = 727.951332655;
  double bound_eta0 = 0.0;
  double scan_lo = 727.9513;
  double scan_hi = 727.9514;
  double scan_step = 5e-6;
  std::uint64_t sieve_bound = 1000000000;
  std::uint64_t sieve_segment = 10000000;
  std::string ledger_path = "theta.ledger";
  std::string out_path;
  std::uint64_t workers = 1;

  bool operator==(const RunConfig&) const = default;
};

namespace cfg_detail {

enum class Kind { text, real, count };

struct KeyDesc {
  const char* name;
  Kind kind;
  std::string RunConfig::* s;
  double RunConfig::* d;
  std::uint64_t RunConfig::* u;
};

inline constexpr std::array<KeyDesc, 18> kKeys{{
    {"zeros.path", Kind::text, &RunConfig::zeros_path, nullptr, nullptr},
    {"zeros.format", Kind::text, &RunConfig::zeros_format, nullptr, nullptr},
    {"zeros.t_max", Kind::real, nullptr, &RunConfig::zeros_t_max, nullptr},
    {"zeros.accuracy", Kind::real, nullptr, &RunConfig::zeros_accuracy, nullptr},
    {"bound.a", Kind::real, nullptr, &RunConfig::bound_a, nullptr},
    {"bound.t", Kind::real, nullptr, &RunConfig::bound_t, nullptr},
    {"bound.alpha", Kind::real, nullptr, &RunConfig::bound_alpha, nullptr},
    {"bound.eta", Kind::real, nullptr, &RunConfig::bound_eta, nullptr},
    {"bound.omega", Kind::real, nullptr, &RunConfig::bound_omega, nullptr},
    {"bound.eta0", Kind::real, nullptr, &RunConfig::bound_eta0, nullptr},
    {"scan.lo", Kind::real, nullptr, &RunConfig::scan_lo, nullptr},
    {"scan.hi", Kind::real, nullptr, &RunConfig::scan_hi, nullptr},
    {"scan.step", Kind::real, nullptr, &RunConfig::scan_step, nullptr},
    {"sieve.bound", Kind::count, nullptr, nullptr, &RunConfig::sieve_bound},
    {"sieve.segment", Kind::count, nullptr, nullptr, &RunConfig::sieve_segment},
    {"ledger.path", Kind::text, &RunConfig::ledger_path, nullptr, nullptr},
    {"out.path", Kind::text, &RunConfig::out_path, nullptr, nullptr},
    {"workers", Kind::count, nullptr, nullptr, &RunConfig::workers},
}};

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      row[j] = std::min({up + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

inline const KeyDesc* find_key(std::string_view name) {
  for (const KeyDesc& k : kKeys)
    if (name == k.name) return &k;
  return nullptr;
}

inline std::string nearest_key(std::string_view name) {
  std::size_t best = 3;
  const char* hit = nullptr;
  for (const KeyDesc& k : kKeys) {
    std::size_t d = edit_distance(name, k.name);
    if (d < best) { best = d; hit = k.name; }
  }
  return hit ? std::string(hit) : std::string();
}

inline double parse_real(std::string_view s, const std::string& where) {
  double v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    throw std::invalid_argument(where + ": not a finite number: '" + std::string(s) + "'");
  return v;
}

inline std::uint64_t parse_count(std::string_view s, const std::string& where) {
  std::uint64_t v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec == std::errc() && ptr == s.data() + s.size()) return v;
  // Scientific and decimal-point forms go through long double, whose 64-bit
  // mantissa resolves every integer below 2^64, so 1e9 or 1.39e17 land
  // exactly; non-integers and out-of-range values are rejected, not rounded.
  std::string z(s);
  errno = 0;
  char* end = nullptr;
  long double d = std::strtold(z.c_str(), &end);
  if (z.empty() || end != z.c_str() + z.size() || errno == ERANGE)
    throw std::invalid_argument(where + ": not a finite number: '" + std::string(s) + "'");
  if (!(d >= 0.0L) || d >= 18446744073709551616.0L || d != std::floor(d))
    throw std::invalid_argument(where + ": not a whole number in [0, 2^64): '" + std::string(s) +
                                "'");
  return static_cast<std::uint64_t>(d);
}

inline std::string format_real(double v) {
  char buf[48];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace cfg_detail

inline void set_key(RunConfig& c, std::string_view key, std::string_view value,
                    const std::string& where) {
  using namespace cfg_detail;
  const KeyDesc* k = find_key(key);
  if (!k) {
    std::string msg = where + ": unknown config key '" + std::string(key) + "'";
    std::string near = nearest_key(key);
    if (!near.empty()) msg += " (did you mean '" + near + "'?)";
    throw std::invalid_argument(msg);
  }
  switch (k->kind) {
    case Kind::text: {
      for (char ch : value)
        if (static_cast<unsigned char>(ch) < 0x20)
          throw std::invalid_argument(where + ": control character in value for '" +
                                      std::string(key) + "'");
      c.*(k->s) = std::string(value);
      if (key == "zeros.format" && value != "text" && value != "packed")
        throw std::invalid_argument(where + ": zeros.format must be 'text' or 'packed', got '" +
                                    std::string(value) + "'");
      break;
    }
    case Kind::real:
      c.*(k->d) = parse_real(value, where);
      break;
    case Kind::count:
      c.*(k->u) = parse_count(value, where);
      break;
  }
}

inline RunConfig parse_config(const std::string& text, const std::string& origin) {
  RunConfig c;
  std::vector<std::string_view> seen;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = origin + ":" + std::to_string(lineno);
    std::string_view s = cfg_detail::trim(line);
    if (s.empty() || s.front() == '#') continue;
    std::size_t eq = s.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument(where + ": expected key=value, got '" + std::string(s) + "'");
    std::string_view key = cfg_detail::trim(s.substr(0, eq));
    std::string_view value = cfg_detail::trim(s.substr(eq + 1));
    if (key.empty()) throw std::invalid_argument(where + ": empty key");
    const cfg_detail::KeyDesc* k = cfg_detail::find_key(key);
    if (k) {
      for (std::string_view prev : seen)
        if (prev == key)
          throw std::invalid_argument(where + ": duplicate key '" + std::string(key) + "'");
      seen.push_back(std::string_view(k->name));
    }
    set_key(c, key, value, where);
  }
  return c;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

inline std::string serialize_config(const RunConfig& c) {
  using namespace cfg_detail;
  std::string out = "# thetacross config v1\n";
  for (const KeyDesc& k : kKeys) {
    out += k.name;
    out += '=';
    switch (k.kind) {
      case Kind::text: out += c.*(k.s); break;
      case Kind::real: out += format_real(c.*(k.d)); break;
      case Kind::count: out += std::to_string(c.*(k.u)); break;
    }
    out += '\n';
  }
  return out;
}

// Bare zero-table filenames resolve against env_dir when one is set, so a
// single exported directory can hold the tables shared by every run. A path
// with any directory component states a location and is left alone.
inline std::string resolve_zeros_path(std::string path, const char* env_dir) {
  if (path.empty() || !env_dir || !*env_dir) return path;
  if (path.find('/') != std::string::npos) return path;
  std::string dir(env_dir);
  if (dir.back() != '/') dir += '/';
  return dir + path;
}

}  // namespace thetacross
