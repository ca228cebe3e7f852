#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "matrix.hpp"
#include "verification.hpp"

namespace eqmat {

/* splitmix64 finalizer. */
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/* Counter-based generator: a pure function of its key. */
inline std::uint64_t counter_random(std::uint64_t seed, std::uint64_t attempt, std::uint64_t row, std::uint64_t col,
                                    std::uint64_t draw) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ attempt);
  h = mix64(h ^ row);
  h = mix64(h ^ col);
  return mix64(h ^ draw);
}

/* Uniform on {-W,...,W}, by rejection so every value is exactly equiprobable. */
inline std::int64_t uniform_entry(std::uint64_t seed, std::uint64_t attempt, std::uint64_t row, std::uint64_t col,
                                  std::int64_t w) {
  if (w == 0) return 0;
  const std::uint64_t range = 2 * static_cast<std::uint64_t>(w) + 1;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
  for (std::uint64_t draw = 0;; ++draw) {
    std::uint64_t v = counter_random(seed, attempt, row, col, draw);
    if (v < limit) return static_cast<std::int64_t>(v % range) - w;
  }
}

inline IntMatrix sample_matrix(std::size_t rows, std::size_t n, std::int64_t w, std::uint64_t seed,
                               std::uint64_t attempt) {
  if (w < 0) throw PreconditionError("W must be >= 0");
  std::vector<i128> e(rows * n);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < n; ++j) e[i * n + j] = uniform_entry(seed, attempt, i, j, w);
  return IntMatrix(rows, n, std::move(e));
}

struct SearchParams {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t r = 1;
  int q = 2;
  std::int64_t w = 1;
  std::uint64_t seed = 0;
  std::uint64_t max_attempts = 100'000;
};

struct SearchOutcome {
  std::optional<IntMatrix> matrix;  // empty when exhausted
  std::uint64_t attempts = 0;
  bool exhausted() const noexcept { return !matrix.has_value(); }
};

/*
  Samples rm x n matrices with entries uniform on {-W,...,W} until one is
  RMDS_q. Attempts are sequential, so the result depends only on the
  parameters and seed. Requests with r above the MDS rate bound k^(k+1),
  k = 2W + 1, are refused: no such matrix exists.
*/
inline SearchOutcome search_rmds(const SearchParams& p, const Limits& limits = {}) {
  if (p.n < 1 || p.m < 1 || p.r < 1) throw PreconditionError("n, m, r must be >= 1");
  if (p.w < 0) throw PreconditionError("W must be >= 0");
  if (exceeds_mds_rate_bound(static_cast<i128>(p.r), 2 * p.w + 1))
    throw PreconditionError("r=" + std::to_string(p.r) + " exceeds the MDS rate bound k^(k+1) for alphabet size k=" +
                            std::to_string(2 * p.w + 1));
  const std::size_t rows = p.r * p.m;
  for (std::uint64_t attempt = 0; attempt < p.max_attempts; ++attempt) {
    IntMatrix candidate = sample_matrix(rows, p.n, p.w, p.seed, attempt);
    if (is_rmds(candidate, p.m, p.q, limits).passed()) return SearchOutcome{std::move(candidate), attempt + 1};
  }
  return SearchOutcome{std::nullopt, p.max_attempts};
}

struct SuggestedParams {
  std::size_t m = 0;
  std::int64_t w = 0;
};

/* m = ceil(n / log2 n), W = max(c r, 2). */
inline SuggestedParams suggest_params(std::size_t n, std::size_t r, int q, std::int64_t c = 4) {
  if (n < 2) throw PreconditionError("n must be >= 2");
  if (q < 2) throw PreconditionError("q must be >= 2");
  const long double ratio = static_cast<long double>(n) / std::log2(static_cast<long double>(n));
  auto m = static_cast<std::size_t>(std::ceil(ratio - 1e-12L));
  return SuggestedParams{m, std::max<std::int64_t>(c * static_cast<std::int64_t>(r), 2)};
}

}  // namespace eqmat
