#pragma once

// Checked 128-bit signed arithmetic. Every library value lives in this
// budget; overflow raises OverflowError instead of wrapping.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace eqmat {

using i128 = __int128;

inline constexpr i128 kI128Max = static_cast<i128>((~static_cast<unsigned __int128>(0)) >> 1);
inline constexpr i128 kI128Min = -kI128Max - 1;

inline i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError();
  return r;
}

inline i128 checked_sub(i128 a, i128 b) {
  i128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError();
  return r;
}

inline i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError();
  return r;
}

inline i128 checked_neg(i128 a) {
  if (a == kI128Min) throw OverflowError();
  return -a;
}

inline i128 abs128(i128 a) { return a < 0 ? checked_neg(a) : a; }

/* Integer power; throws on overflow. */
inline i128 checked_pow(i128 base, unsigned exp) {
  i128 r = 1;
  for (unsigned i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

/* Saturating helpers for work estimates (uint64, clamps at UINT64_MAX). */
inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) return UINT64_MAX;
  return r;
}

inline std::uint64_t sat_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) r = sat_mul(r, base);
  return r;
}

/* Mathematical floor modulus: result in [0, m). */
inline i128 floor_mod(i128 a, i128 m) {
  i128 r = a % m;
  return r < 0 ? r + m : r;
}

inline std::string to_string(i128 v) {
  if (v == 0) return "0";
  unsigned __int128 u = v < 0 ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  std::string s;
  while (u != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (v < 0) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

/* Parses an optionally signed decimal integer; the whole token must be consumed. */
inline i128 parse_i128(std::string_view token) {
  if (token.empty()) throw ParseError("empty integer token");
  std::size_t pos = 0;
  bool negative = false;
  if (token[0] == '-' || token[0] == '+') {
    negative = token[0] == '-';
    pos = 1;
  }
  if (pos == token.size()) throw ParseError("non-integer token '" + std::string(token) + "'");
  i128 value = 0;
  for (; pos < token.size(); ++pos) {
    char c = token[pos];
    if (c < '0' || c > '9') throw ParseError("non-integer token '" + std::string(token) + "'");
    i128 digit = c - '0';
    if (__builtin_mul_overflow(value, i128{10}, &value) ||
        __builtin_sub_overflow(value, digit, &value))  // accumulate negatively to reach kI128Min
      throw ParseError("integer out of 128-bit range '" + std::string(token) + "'");
  }
  if (!negative) {
    if (value == kI128Min) throw ParseError("integer out of 128-bit range '" + std::string(token) + "'");
    value = -value;
  }
  return value;
}

}  // namespace eqmat
