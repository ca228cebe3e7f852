#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "matrix.hpp"

namespace eqmat {

struct Construction {
  IntMatrix matrix;
  ConstructionTrace trace;
};

/* Deterministic trial-division primality; fine for the prime sizes used here. */
inline bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  if (p < 4) return true;
  if (p % 2 == 0) return false;
  for (std::int64_t d = 3; d <= p / d; d += 2)
    if (p % d == 0) return false;
  return true;
}

namespace detail {

inline void require_ternary(const IntMatrix& base) {
  for (i128 a : base.entries())
    if (a < -1 || a > 1) throw PreconditionError("base matrix entries must lie in {-1,0,1}");
}

}  // namespace detail

/*
  q-ary Sylvester-type recursion. Each iteration maps A (m x n) to the
  qm x (qn + m) matrix

      [ A   A   A  ...  A   I ]
      [ A  -A   0  ...  0   0 ]
      [ 0   A  -A  ...  0   0 ]
      [ ...                   ]
      [ 0   0  ...  A  -A   0 ]

  and preserves the EQ_q property of the base. For q = 2 this is
  [[A, A, I], [A, -A, 0]].
*/
inline Construction construct_eq_q(const IntMatrix& base, int k, int q) {
  if (q < 2) throw PreconditionError("arity q must be >= 2");
  if (k < 0) throw PreconditionError("iteration count k must be >= 0");
  detail::require_ternary(base);

  ConstructionTrace trace{static_cast<std::int64_t>(base.rows()), static_cast<std::int64_t>(base.cols()), k, q};
  // Validates that the final dimensions fit before any allocation.
  const i128 final_rows = trace.rows();
  const i128 final_cols = trace.cols();
  if (checked_mul(final_rows, final_cols) > (i128{1} << 40))
    throw PreconditionError("construction too large: " + to_string(final_rows) + " x " + to_string(final_cols));

  std::vector<i128> cur(base.entries().begin(), base.entries().end());
  std::size_t m = base.rows();
  std::size_t n = base.cols();
  const auto uq = static_cast<std::size_t>(q);

  for (int it = 0; it < k; ++it) {
    const std::size_t nm = uq * m;
    const std::size_t nn = uq * n + m;
    std::vector<i128> next(nm * nn, 0);
    auto put = [&](std::size_t block_row, std::size_t block_col, int sign) {
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
          next[(block_row * m + i) * nn + block_col * n + j] = sign * cur[i * n + j];
    };
    for (std::size_t b = 0; b < uq; ++b) put(0, b, 1);
    for (std::size_t i = 0; i < m; ++i) next[i * nn + uq * n + i] = 1;
    for (std::size_t t = 1; t < uq; ++t) {
      put(t, t - 1, 1);
      put(t, t, -1);
    }
    cur = std::move(next);
    m = nm;
    n = nn;
  }

  if (static_cast<i128>(m) != final_rows || static_cast<i128>(n) != final_cols)
    throw DimensionError("construction dimensions disagree with the closed form");
  return Construction{IntMatrix(m, n, std::move(cur)), trace};
}

inline Construction construct_eq(const IntMatrix& base, int k) { return construct_eq_q(base, k, 2); }

/* Default base is the 1x1 identity. */
inline Construction construct_eq(int k) { return construct_eq(IntMatrix::identity(1), k); }
inline Construction construct_eq_q(int k, int q) { return construct_eq_q(IntMatrix::identity(1), k, q); }

namespace detail {

// Product of the primes, or nullopt when it does not fit in 127 bits.
inline std::optional<i128> prime_product(const std::vector<std::int64_t>& primes) {
  i128 prod = 1;
  for (auto p : primes)
    if (__builtin_mul_overflow(prod, static_cast<i128>(p), &prod)) return std::nullopt;
  return prod;
}

inline bool product_exceeds_pow2(const std::vector<std::int64_t>& primes, int n) {
  auto prod = prime_product(primes);
  if (!prod) return true;  // >= 2^127 > 2^n for n <= 126
  return *prod > (i128{1} << n);
}

inline void require_bit_width(int n) {
  if (n < 1 || n > 126) throw PreconditionError("bit width n must be in [1, 126]");
}

}  // namespace detail

/* Row i holds 2^(j-1) mod p_i. Refuses prime sets whose product is <= 2^n. */
inline IntMatrix build_crt(int n, const std::vector<std::int64_t>& primes) {
  detail::require_bit_width(n);
  if (primes.empty()) throw PreconditionError("need at least one prime");
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (!is_prime(primes[i])) throw PreconditionError(std::to_string(primes[i]) + " is not prime");
    if (i > 0 && primes[i] <= primes[i - 1]) throw PreconditionError("primes must be distinct and ascending");
  }
  if (!detail::product_exceeds_pow2(primes, n))
    throw PreconditionError("prime product does not exceed 2^" + std::to_string(n) + "; matrix would not be EQ");

  const auto un = static_cast<std::size_t>(n);
  std::vector<i128> e(primes.size() * un);
  for (std::size_t i = 0; i < primes.size(); ++i) {
    i128 r = 1 % primes[i];
    for (std::size_t j = 0; j < un; ++j) {
      e[i * un + j] = r;
      r = (r * 2) % primes[i];
    }
  }
  return IntMatrix(primes.size(), un, std::move(e));
}

/*
  Consecutive primes starting at 3. Without a count, stops at the first
  prefix whose product exceeds 2^n; with a count, takes that many and
  checks the product.
*/
inline std::vector<std::int64_t> choose_primes(int n, std::optional<int> count = std::nullopt) {
  detail::require_bit_width(n);
  if (count && *count < 1) throw PreconditionError("prime count must be >= 1");
  std::vector<std::int64_t> primes;
  for (std::int64_t p = 3;; p += 2) {
    if (!is_prime(p)) continue;
    primes.push_back(p);
    if (count) {
      if (static_cast<int>(primes.size()) == *count) break;
    } else if (detail::product_exceeds_pow2(primes, n)) {
      break;
    }
  }
  if (count && !detail::product_exceeds_pow2(primes, n))
    throw PreconditionError("the first " + std::to_string(*count) + " primes from 3 have product <= 2^" +
                            std::to_string(n));
  return primes;
}

/* Column submatrix on `keep` (0-based, any order, no duplicates). */
inline IntMatrix truncate_columns(const IntMatrix& a, std::vector<std::size_t> keep) {
  if (keep.empty()) throw PreconditionError("column selection is empty");
  std::vector<std::size_t> sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw PreconditionError("duplicate column in selection");
  if (sorted.back() >= a.cols()) throw PreconditionError("column index out of range");
  return a.select_columns(sorted);
}

}  // namespace eqmat
