#pragma once

// Recursive decoder for the Sylvester-type EQ matrices built from the
// base [1] with q = 2. With z = A_k x and the split x = (x1, x2, x3),
// z = (z1, z2):
//   z1 = A x1 + A x2 + x3,   z2 = A x1 - A x2
// so x3 = (z1 + z2) mod 2, A x1 = (z1 + z2 - x3)/2, A x2 = (z1 - z2 - x3)/2.
// T(m) = 2T(m/2) + O(m) = O(m log m) = O(n).

#include <cstdint>
#include <span>
#include <string>

#include "matrix.hpp"

namespace eqmat {

struct DecodeStats {
  std::uint64_t arithmetic_ops = 0;
};

/* Per-element arithmetic cost is at most this many operations per column. */
inline constexpr std::uint64_t kDecodeOpsPerColumn = 7;

namespace detail {

inline void decode_level(std::int64_t k, std::span<const i128> z, std::span<i128> x, DecodeStats& stats) {
  if (k == 0) {
    ++stats.arithmetic_ops;
    if (z[0] != 0 && z[0] != 1) throw NotInImage("base-case value " + to_string(z[0]) + " is not a bit");
    x[0] = z[0];
    return;
  }
  const std::size_t h = z.size() / 2;        // m_{k-1}
  const std::size_t half = (x.size() - h) / 2;  // n_{k-1}
  auto z1 = z.first(h), z2 = z.subspan(h);
  auto x1 = x.first(half), x2 = x.subspan(half, half), x3 = x.subspan(2 * half);
  IntVector t1(h), t2(h);
  for (std::size_t i = 0; i < h; ++i) {
    const i128 s = checked_add(z1[i], z2[i]);
    const i128 bit = floor_mod(s, 2);
    x3[i] = bit;
    // Both numerators are even: z1 - z2 has the parity of z1 + z2.
    t1[i] = (s - bit) / 2;
    t2[i] = (checked_sub(z1[i], z2[i]) - bit) / 2;
  }
  stats.arithmetic_ops += 7 * h;
  decode_level(k - 1, t1, x1, stats);
  decode_level(k - 1, t2, x2, stats);
}

}  // namespace detail

/*
  Unique x in {0,1}^n with A_k x = z, where A_k is described by the trace.
  Throws NotInImage when z has no binary preimage.
*/
inline IntVector decode(const ConstructionTrace& trace, std::span<const i128> z, DecodeStats* stats = nullptr) {
  if (trace.q != 2 || trace.m0 != 1 || trace.n0 != 1)
    throw PreconditionError("decoder supports only q=2 constructions from the base [1]");
  if (trace.k < 0 || trace.k > 40) throw PreconditionError("iteration count out of range");
  const i128 m = trace.rows();
  if (static_cast<i128>(z.size()) != m)
    throw DimensionError("z has length " + std::to_string(z.size()) + ", expected " + to_string(m));
  IntVector x(static_cast<std::size_t>(trace.cols()), 0);
  DecodeStats local;
  detail::decode_level(trace.k, z, x, stats ? *stats : local);
  return x;
}

/* A x for binary x. */
inline IntVector encode(const IntMatrix& a, std::span<const i128> x) {
  for (i128 v : x)
    if (v != 0 && v != 1) throw PreconditionError("encode expects a binary vector");
  return matvec(a, x);
}

}  // namespace eqmat
