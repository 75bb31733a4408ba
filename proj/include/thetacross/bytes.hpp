// Copyright 2026 the thetacross authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>

namespace thetacross {
namespace detail {

inline void store_le16(unsigned char* p, std::uint16_t v) {
  p[0] = static_cast<unsigned char>(v & 0xff);
  p[1] = static_cast<unsigned char>(v >> 8);
}

inline void store_le64(unsigned char* p, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) p[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
}

inline std::uint16_t load_le16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (std::uint16_t(p[1]) << 8));
}

inline std::uint64_t load_le64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t(p[i]) << (8 * i);
  return v;
}

// CRC-64/XZ: reflected ECMA-182 polynomial, init and xorout all-ones.
// crc64("123456789") == 0x995dc9bbdf1939fa.
inline std::uint64_t crc64(const unsigned char* data, std::size_t len,
                           std::uint64_t seed = 0) {
  static const auto table = [] {
    struct T {
      std::uint64_t e[256];
    } t{};
    for (std::uint64_t i = 0; i < 256; ++i) {
      std::uint64_t c = i;
      for (int k = 0; k < 8; ++k) c = (c & 1) ? (c >> 1) ^ 0xC96C5795D7870F42ull : c >> 1;
      t.e[i] = c;
    }
    return t;
  }();
  std::uint64_t crc = ~seed;
  for (std::size_t i = 0; i < len; ++i)
    crc = table.e[(crc ^ data[i]) & 0xff] ^ (crc >> 8);
  return ~crc;
}

}  // namespace detail
}  // namespace thetacross
